#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treepack/error.hpp"

namespace treepack {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Immutable tree on the dense ids 0..n-1 with sorted adjacency lists.
class Tree {
public:
    // Throws NotATree unless the edges form a spanning tree on n vertices.
    static Tree from_edges(int n, std::span<const Edge> edges);
    static Tree single_vertex();

    int size() const noexcept { return static_cast<int>(adj_.size()); }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool has_edge(Vertex u, Vertex v) const;
    bool contains(Vertex v) const noexcept { return v >= 0 && v < size(); }

    // Edges as (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;
    std::vector<Vertex> leaves() const;

    friend bool operator==(const Tree&, const Tree&) = default;

private:
    explicit Tree(std::vector<std::vector<Vertex>> adj) : adj_(std::move(adj)) {}
    std::vector<std::vector<Vertex>> adj_;
};

class DistanceTable {
public:
    explicit DistanceTable(const Tree& t);
    int size() const noexcept { return n_; }
    int operator()(Vertex u, Vertex v) const {
        return dist_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)];
    }

private:
    int n_;
    std::vector<int> dist_;
};

DistanceTable all_pairs_distance(const Tree& t);

// Distance queries through lowest common ancestors: O(n log n) to build,
// O(log n) per query. Used where only a few pairs are needed.
class AncestorDistance {
public:
    explicit AncestorDistance(const Tree& t);
    int operator()(Vertex u, Vertex v) const;

private:
    std::vector<int> depth_;
    std::vector<std::vector<Vertex>> up_;  // up_[k][v]: 2^k-th ancestor
};
std::vector<int> bfs_distances(const Tree& t, Vertex source);

// A connected vertex subset re-indexed as its own tree. Local ids follow the
// ascending order of the parent ids.
struct InducedSubtree {
    Tree tree;
    std::vector<Vertex> to_parent;

    Vertex local_of(Vertex parent_id) const;  // -1 when absent
};

InducedSubtree induced_subtree(const Tree& t, std::vector<Vertex> vertices);

// Vertex set of T_(x,y): the component of x once the edge xy is deleted.
std::vector<Vertex> component_vertices(const Tree& t, Vertex x, Vertex y);

struct SplitComponents {
    InducedSubtree side_x;
    InducedSubtree side_y;
};

SplitComponents split_at_edge(const Tree& t, Vertex x, Vertex y);

bool is_star(const Tree& t);
bool is_path(const Tree& t);
bool is_bad_vertex(const Tree& t, Vertex v);

enum class FTreeKind { NotFTree, P1, P2, P3EndAttached };
std::string_view to_string(FTreeKind kind) noexcept;

// Classifies T_(x,y) as a neighbor F-tree of y.
FTreeKind f_tree_kind(const Tree& t, Vertex x, Vertex y);

struct LeafRemoval {
    int count = 0;
    std::vector<Vertex> witness;  // sorted leaf ids
};

// Largest set of leaves whose removal leaves a non-star tree.
LeafRemoval compute_m_T(const Tree& t);

int mis_size(const Tree& t);

std::string rooted_canonical_form(const Tree& t, Vertex root);
std::vector<Vertex> tree_centers(const Tree& t);
std::string canonical_form(const Tree& t);

// Maps every vertex of `a` to a vertex of `b` so that ra goes to rb and
// adjacency is preserved, if such a rooted isomorphism exists.
std::optional<std::vector<Vertex>> rooted_isomorphism(const Tree& a, Vertex ra, const Tree& b, Vertex rb);

Tree tree_from_pruefer(std::span<const Vertex> code);
std::vector<Tree> enumerate_trees(int n);
Tree random_tree(int n, std::uint64_t seed);

Tree path_tree(int n);
Tree star_tree(int leaves);

Tree parse_tree(std::string_view text);
std::string format_tree(const Tree& t);

}  // namespace treepack
