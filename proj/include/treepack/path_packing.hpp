#pragma once

#include <vector>

#include "treepack/permutation.hpp"
#include "treepack/tree.hpp"

namespace treepack {

// A path tree together with its vertices listed end to end, starting from
// the end with the smaller id.
class PathView {
public:
    // Throws KindMismatch if t is not a path.
    static PathView from_tree(Tree t);

    const Tree& tree() const noexcept { return tree_; }
    std::span<const Vertex> order() const noexcept { return order_; }
    int size() const noexcept { return tree_.size(); }
    Vertex at(int position) const { return order_[static_cast<std::size_t>(position)]; }
    int position(Vertex v) const { return position_[static_cast<std::size_t>(v)]; }
    Vertex first() const { return order_.front(); }
    Vertex last() const { return order_.back(); }

private:
    PathView(Tree t, std::vector<Vertex> order);
    Tree tree_;
    std::vector<Vertex> order_;
    std::vector<int> position_;
};

// Into P_n^4; dist(first, .) = 1 and dist(last, .) <= 1; cycles of length <= 4.
Permutation path4_placement(const PathView& p);
Permutation well_path_placement(const PathView& p, Vertex x);
Permutation good_path_placement(const PathView& p, Vertex x);

}  // namespace treepack
