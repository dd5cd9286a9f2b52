#include "treepack/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace treepack {

namespace {
std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }
}  // namespace

int CycleDecomposition::max_length() const noexcept {
    std::size_t best = 0;
    for (const auto& c : cycles) best = std::max(best, c.size());
    return static_cast<int>(best);
}

Permutation Permutation::identity(int n) {
    std::vector<Vertex> image(idx(n));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::from_image(std::vector<Vertex> image) {
    std::vector<char> hit(image.size(), 0);
    for (Vertex v : image) {
        if (v < 0 || idx(v) >= image.size())
            throw Error(ErrorCode::IdOutOfRange, "image value " + std::to_string(v) + " out of range");
        if (hit[idx(v)]) throw Error(ErrorCode::DuplicateId, "image value " + std::to_string(v) + " repeated");
        hit[idx(v)] = 1;
    }
    return Permutation(std::move(image));
}

Permutation Permutation::from_cycles(int n, std::span<const Cycle> cycles) {
    std::vector<Vertex> image(idx(n));
    std::iota(image.begin(), image.end(), 0);
    std::vector<char> listed(idx(n), 0);
    for (const auto& cycle : cycles) {
        for (Vertex v : cycle) {
            if (v < 0 || v >= n) throw Error(ErrorCode::IdOutOfRange, "cycle entry " + std::to_string(v) + " out of range");
            if (listed[idx(v)]) throw Error(ErrorCode::DuplicateId, "cycle entry " + std::to_string(v) + " listed twice");
            listed[idx(v)] = 1;
        }
        for (std::size_t i = 0; i < cycle.size(); ++i) image[idx(cycle[i])] = cycle[(i + 1) % cycle.size()];
    }
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
    std::vector<Vertex> inv(image_.size());
    for (std::size_t v = 0; v < image_.size(); ++v) inv[idx(image_[v])] = static_cast<Vertex>(v);
    return Permutation(std::move(inv));
}

bool Permutation::is_fixed_point_free() const {
    for (std::size_t v = 0; v < image_.size(); ++v)
        if (image_[v] == static_cast<Vertex>(v)) return false;
    return true;
}

bool Permutation::is_identity() const {
    for (std::size_t v = 0; v < image_.size(); ++v)
        if (image_[v] != static_cast<Vertex>(v)) return false;
    return true;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.size() != inner.size())
        throw Error(ErrorCode::SizeMismatch, "composing permutations of different sizes");
    std::vector<Vertex> image(idx(inner.size()));
    for (Vertex v = 0; v < inner.size(); ++v) image[idx(v)] = outer(inner(v));
    return Permutation::from_image(std::move(image));
}

CycleDecomposition cycle_decomposition(const Permutation& p) {
    CycleDecomposition out;
    std::vector<char> seen(idx(p.size()), 0);
    for (Vertex start = 0; start < p.size(); ++start) {
        if (seen[idx(start)]) continue;
        Cycle cycle;
        for (Vertex v = start; !seen[idx(v)]; v = p(v)) {
            seen[idx(v)] = 1;
            cycle.push_back(v);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

std::string format_cycles(const Permutation& p) {
    std::string out;
    for (const auto& cycle : cycle_decomposition(p).cycles) {
        out += '(';
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(cycle[i] + 1);
        }
        out += ')';
    }
    return out;
}

Permutation parse_cycles(int n, std::string_view text) {
    std::vector<Cycle> cycles;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_space();
    while (i < text.size()) {
        if (text[i] != '(') throw Error(ErrorCode::ParseError, "expected '(' in cycle notation");
        ++i;
        Cycle cycle;
        while (true) {
            skip_space();
            if (i >= text.size()) throw Error(ErrorCode::ParseError, "unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            int value = 0;
            auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
            if (ec != std::errc{}) throw Error(ErrorCode::ParseError, "bad id in cycle notation");
            i = static_cast<std::size_t>(ptr - text.data());
            if (value < 1 || value > n)
                throw Error(ErrorCode::IdOutOfRange, "cycle id " + std::to_string(value) + " outside 1.." + std::to_string(n));
            cycle.push_back(value - 1);
        }
        if (cycle.empty()) throw Error(ErrorCode::ParseError, "empty cycle");
        cycles.push_back(std::move(cycle));
        skip_space();
    }
    return Permutation::from_cycles(n, cycles);
}

}  // namespace treepack
