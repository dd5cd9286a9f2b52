#include "treepack/error.hpp"

namespace treepack {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::NotAnEdge: return "NotAnEdge";
        case ErrorCode::StarInput: return "StarInput";
        case ErrorCode::SizeTooLarge: return "SizeTooLarge";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::IdOutOfRange: return "IdOutOfRange";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::BadVertex: return "BadVertex";
        case ErrorCode::ConstructionBug: return "ConstructionBug";
        case ErrorCode::PreconditionViolation: return "PreconditionViolation";
        case ErrorCode::UncoveredCase: return "UncoveredCase";
        case ErrorCode::NoNonBadVertex: return "NoNonBadVertex";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace treepack
