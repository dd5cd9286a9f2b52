#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treepack/figures.hpp"
#include "treepack/permutation.hpp"
#include "treepack/tree.hpp"

namespace treepack {

// Neighbor F-trees of `anchor` grouped by shape: a_i are single leaves,
// (b_i, c_i) two-vertex paths, (d_i, e_i, f_i) three-vertex paths with d_i
// adjacent to the anchor.
struct FTreePartition {
    Vertex anchor = -1;
    std::vector<Vertex> a;
    std::vector<std::pair<Vertex, Vertex>> bc;
    std::vector<std::array<Vertex, 3>> def;

    int r() const noexcept { return static_cast<int>(a.size()); }
    int p() const noexcept { return static_cast<int>(bc.size()); }
    int q() const noexcept { return static_cast<int>(def.size()); }
    std::vector<Vertex> vertices() const;
    std::vector<Vertex> attachments() const;
};

// Groups the components T_(h, anchor) for the given neighbors h; each must be
// a neighbor F-tree of the anchor (PreconditionViolation otherwise).
FTreePartition make_f_tree_partition(const Tree& t, Vertex anchor, std::span<const Vertex> attachments);

// Name of the product rule that handles (r, p, q), e.g. "r=1,p=0,q>1".
std::string extension_rule(int r, int p, int q);

// Extends a placement of T' = T minus the partitioned F-trees, given as a
// permutation of V(T) fixing every peeled vertex, to all of T. Requires
// dist(anchor, sigma(anchor)) <= 3 for Well and <= 2 for Good.
Permutation extend_over_f_trees(const Tree& t, Vertex anchor, const FTreePartition& part, const Permutation& sigma_inner,
                                PlacementKind kind = PlacementKind::Well);

struct SubtreePlacement {
    InducedSubtree subtree;
    Permutation sigma;  // on the subtree's local ids
};

// Piecewise union: `inner` (fixing every subtree vertex) on the core and each
// subtree placement on its own vertices. Requires dist(x, inner(x)) <= 3 for
// Well and <= 2 for Good, and every subtree to hang off x.
Permutation glue_placements(const Tree& t, Vertex x, const Permutation& inner, std::span<const SubtreePlacement> subtrees,
                            PlacementKind kind = PlacementKind::Well);

struct ConstructionOptions {
    // Substitute an exhaustive-search placement when a component of at most
    // nine vertices cannot be built by the case analysis.
    bool oracle_fallback = false;
};

struct Construction {
    Permutation sigma;
    std::vector<std::string> trace;  // branch taken at each recursion level
    bool used_oracle_fallback = false;
};

Construction construct_placement(const Tree& t, Vertex x, PlacementKind kind, const ConstructionOptions& options = {});

// (T, x)-well placement into T^6.
Permutation well_placement(const Tree& t, Vertex x);
// (T, x)-good placement into T^5; x must not be the center of P5.
Permutation good_placement(const Tree& t, Vertex x);

}  // namespace treepack
