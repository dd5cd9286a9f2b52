#include "treepack/labeling.hpp"

#include <optional>
#include <set>

#include "treepack/tree_packing.hpp"
#include "treepack/verifier.hpp"

namespace treepack {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

int distinct(const std::vector<int>& labels) { return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size()); }

struct Core {
    InducedSubtree sub;
    std::vector<Vertex> removed;
};

Core core_of(const Tree& t) {
    if (is_star(t)) throw Error(ErrorCode::StarInput, "stars admit no 2-placement");
    auto removal = compute_m_T(t);
    std::vector<char> gone(idx(t.size()), 0);
    for (Vertex v : removal.witness) gone[idx(v)] = 1;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < t.size(); ++v)
        if (!gone[idx(v)]) keep.push_back(v);
    return {induced_subtree(t, keep), removal.witness};
}

// The removed leaves stay fixed, so their fathers must not move further
// than k - 1. The core placement only bounds a few vertices, hence the
// special vertex is tried in id order until the lifted placement verifies.
template <class Build>
LabeledPacking pack_core(const Tree& t, int k, Build build) {
    Core core = core_of(t);
    const int m = static_cast<int>(core.removed.size());
    std::string last_failure = "no admissible special vertex";
    for (Vertex x = 0; x < core.sub.tree.size(); ++x) {
        auto local = build(core.sub.tree, x, m);
        if (!local) continue;
        auto& [s, core_labels] = *local;
        std::vector<Vertex> image(idx(t.size()));
        std::vector<int> labels(idx(t.size()));
        for (std::size_t i = 0; i < core.removed.size(); ++i) {
            image[idx(core.removed[i])] = core.removed[i];
            labels[idx(core.removed[i])] = static_cast<int>(i) + 1;
        }
        for (Vertex v = 0; v < core.sub.tree.size(); ++v) {
            Vertex pv = core.sub.to_parent[idx(v)];
            image[idx(pv)] = core.sub.to_parent[idx(s(v))];
            labels[idx(pv)] = core_labels[idx(v)];
        }
        LabeledPacking out{Permutation::from_image(std::move(image)), std::move(labels), 0, k};
        auto report = verify_labeled_packing(t, out.sigma, out.labels, k);
        if (!report.overall()) {
            last_failure = report.summary();
            continue;
        }
        out.label_count = distinct(out.labels);
        return out;
    }
    throw Error(ErrorCode::ConstructionBug, "labeled packing of " + canonical_form(t) + " failed: " + last_failure);
}

}  // namespace

LabeledPacking labeled_pack_path4(const PathView& p) {
    Permutation s = path4_placement(p);
    auto cycles = cycle_decomposition(s);
    std::vector<int> labels(idx(p.size()));
    for (std::size_t i = 0; i < cycles.cycles.size(); ++i)
        for (Vertex v : cycles.cycles[i]) labels[idx(v)] = static_cast<int>(i) + 1;
    return {s, labels, cycles.count(), 4};
}

LabeledPacking labeled_pack_t6(const Tree& t) {
    using Result = std::optional<std::pair<Permutation, std::vector<int>>>;
    return pack_core(t, 6, [](const Tree& core, Vertex x, int m) -> Result {
        Permutation s = well_placement(core, x);
        std::vector<int> labels(idx(core.size()));
        auto cycles = cycle_decomposition(s);
        for (std::size_t i = 0; i < cycles.cycles.size(); ++i)
            for (Vertex v : cycles.cycles[i]) labels[idx(v)] = m + static_cast<int>(i) + 1;
        return std::make_pair(s, labels);
    });
}

LabeledPacking labeled_pack_t5(const Tree& t) {
    using Result = std::optional<std::pair<Permutation, std::vector<int>>>;
    bool any_good = false;
    try {
        return pack_core(t, 5, [&](const Tree& core, Vertex x, int m) -> Result {
            if (is_bad_vertex(core, x)) return std::nullopt;
            any_good = true;
            return std::make_pair(good_placement(core, x), std::vector<int>(idx(core.size()), m + 1));
        });
    } catch (const Error& e) {
        if (!any_good && e.code() == ErrorCode::ConstructionBug) throw Error(ErrorCode::NoNonBadVertex, "every core vertex is the center of P5");
        throw;
    }
}

int lambda2_upper_bound(const Tree& t) {
    int i = mis_size(t);
    return i + (t.size() - i) / 2;
}

}  // namespace treepack
