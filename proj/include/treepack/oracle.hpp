#pragma once

#include <optional>
#include <vector>

#include "treepack/permutation.hpp"
#include "treepack/tree.hpp"
#include "treepack/verifier.hpp"

namespace treepack {

inline constexpr int kOracleMaxVertices = 9;

struct SearchConstraints {
    int power = 6;
    bool fixed_point_free = false;
    std::optional<int> max_cycle_length;
    // Per-vertex bounds lo <= dist(v, sigma(v)) <= hi; empty means unbounded.
    std::vector<int> dist_lo;
    std::vector<int> dist_hi;

    // Only the 2-placement and sigma(T) within T^power clauses.
    static SearchConstraints placement(const Tree& t, int power);
    // Mirrors every clause verify_certificate checks for `kind`.
    static SearchConstraints for_kind(const Tree& t, const CertificateKind& kind);
};

// Every permutation (or the first `limit`) meeting the constraints, in
// lexicographic order of the image array. Throws SizeTooLarge for n > 9.
std::vector<Permutation> search_placements(const Tree& t, const SearchConstraints& c, std::optional<int> limit = std::nullopt);

// Largest cycle count (fixed points included) over all 2-placements into T^k;
// 0 when none exists. A labeling is preserved by sigma exactly when it is
// constant on the cycles of sigma, so this is the labeled packing k-power
// number.
int max_label_count(const Tree& t, int k);

}  // namespace treepack
