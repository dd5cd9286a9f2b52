#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treepack/permutation.hpp"
#include "treepack/tree.hpp"

namespace treepack {

enum class CertificateTag { Path4, WellPath, GoodPath, WellTree, GoodTree };
std::string_view to_string(CertificateTag tag) noexcept;

struct CertificateKind {
    CertificateTag tag = CertificateTag::WellTree;
    // Special vertex x, or the end u with dist(u, sigma(u)) = 1 for Path4.
    Vertex x = -1;
    // Path4 only: the end v with dist(v, sigma(v)) <= 1.
    Vertex other_end = -1;

    static CertificateKind path4(Vertex u, Vertex v) { return {CertificateTag::Path4, u, v}; }
    static CertificateKind well_path(Vertex x) { return {CertificateTag::WellPath, x, -1}; }
    static CertificateKind good_path(Vertex x) { return {CertificateTag::GoodPath, x, -1}; }
    static CertificateKind well_tree(Vertex x) { return {CertificateTag::WellTree, x, -1}; }
    static CertificateKind good_tree(Vertex x) { return {CertificateTag::GoodTree, x, -1}; }

    int power() const noexcept;
};

struct ConditionResult {
    bool ok = true;
    bool vacuous = false;  // clause not part of this kind's definition
    std::optional<std::string> witness;
};

namespace condition {
inline constexpr const char* fixed_point_free = "fixed_point_free";
inline constexpr const char* two_placement = "two_placement";
inline constexpr const char* power_containment = "power_containment";
inline constexpr const char* dist_x = "dist_x";
inline constexpr const char* dist_neighbors_of_x = "dist_neighbors_of_x";
inline constexpr const char* dist_leaves = "dist_leaves";
inline constexpr const char* cycle_length_bound = "cycle_length_bound";
inline constexpr const char* precondition = "precondition";
inline constexpr const char* labels_constant_on_cycles = "labels_constant_on_cycles";
}  // namespace condition

struct VerificationReport {
    std::map<std::string, ConditionResult> conditions;
    std::optional<int> label_count;

    bool overall() const;
    bool ok(const std::string& name) const;
    void add(const std::string& name, ConditionResult result) { conditions[name] = std::move(result); }
    // First failing condition with its witness, or "ok".
    std::string summary() const;
    std::string to_json() const;
};

VerificationReport verify_two_placement(const Tree& t, const Permutation& sigma);
VerificationReport verify_power_containment(const Tree& t, const Permutation& sigma, int k);
VerificationReport verify_certificate(const Tree& t, const Permutation& sigma, const CertificateKind& kind);
VerificationReport verify_certificate(const Tree& t, const DistanceTable& dist, const Permutation& sigma,
                                      const CertificateKind& kind);
VerificationReport verify_labeled_packing(const Tree& t, const Permutation& sigma, const std::vector<int>& labels, int k);

}  // namespace treepack
