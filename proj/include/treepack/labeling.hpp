#pragma once

#include <vector>

#include "treepack/path_packing.hpp"
#include "treepack/permutation.hpp"
#include "treepack/tree.hpp"

namespace treepack {

struct LabeledPacking {
    Permutation sigma;
    std::vector<int> labels;  // one positive label per vertex
    int label_count = 0;
    int power = 0;
};

// Each cycle of the P^4 placement gets its own label.
LabeledPacking labeled_pack_path4(const PathView& p);

// Witness leaves of m_T become fixed points labeled 1..m_T; the remaining
// core gets a well placement whose cycles are labeled m_T+1, m_T+2, ...
LabeledPacking labeled_pack_t6(const Tree& t);

// As above with a good placement on the core and one shared label m_T+1.
LabeledPacking labeled_pack_t5(const Tree& t);

// |I| + floor((n - |I|) / 2) for a maximum independent set I.
int lambda2_upper_bound(const Tree& t);

}  // namespace treepack
