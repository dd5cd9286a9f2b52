#include "treepack/verifier.hpp"

#include <set>

#include <json.hpp>

namespace treepack {

namespace {

std::string id(Vertex v) { return std::to_string(v + 1); }

void check_sizes(const Tree& t, const Permutation& sigma) {
    if (t.size() != sigma.size())
        throw Error(ErrorCode::SizeMismatch,
                    "tree has " + std::to_string(t.size()) + " vertices, permutation " + std::to_string(sigma.size()));
}

ConditionResult vacuous() { return {true, true, std::nullopt}; }
ConditionResult pass() { return {true, false, std::nullopt}; }
ConditionResult fail(std::string witness) { return {false, false, std::move(witness)}; }

ConditionResult two_placement_clause(const Tree& t, const Permutation& sigma) {
    for (auto [u, v] : t.edges()) {
        Vertex a = sigma(u), b = sigma(v);
        if (t.has_edge(a, b))
            return fail("edge " + id(u) + "-" + id(v) + " maps to edge " + id(a) + "-" + id(b));
    }
    return pass();
}

template <class Distance>
ConditionResult power_clause(const Tree& t, const Distance& dist, const Permutation& sigma, int k) {
    for (auto [u, v] : t.edges()) {
        int d = dist(sigma(u), sigma(v));
        if (d < 1 || d > k)
            return fail("edge " + id(u) + "-" + id(v) + " maps to " + id(sigma(u)) + "-" + id(sigma(v)) + " at distance " +
                        std::to_string(d) + " (allowed 1.." + std::to_string(k) + ")");
    }
    return pass();
}

ConditionResult fixed_point_clause(const Permutation& sigma) {
    for (Vertex v = 0; v < sigma.size(); ++v)
        if (sigma(v) == v) return fail("vertex " + id(v) + " is fixed");
    return pass();
}

// dist(v, sigma(v)) must lie in [lo, hi] for each listed vertex.
template <class Distance>
ConditionResult displacement_clause(const Distance& dist, const Permutation& sigma, const std::vector<Vertex>& vs,
                                    int lo, int hi) {
    for (Vertex v : vs) {
        int d = dist(v, sigma(v));
        if (d < lo || d > hi) {
            std::string range = lo == hi ? "= " + std::to_string(lo) : "<= " + std::to_string(hi);
            return fail("dist(" + id(v) + ", " + id(sigma(v)) + ") = " + std::to_string(d) + ", required " + range);
        }
    }
    return pass();
}

ConditionResult cycle_clause(const Permutation& sigma, int bound) {
    for (const auto& cycle : cycle_decomposition(sigma).cycles)
        if (static_cast<int>(cycle.size()) > bound)
            return fail("cycle through " + id(cycle.front()) + " has length " + std::to_string(cycle.size()) +
                        " > " + std::to_string(bound));
    return pass();
}

bool path_end(const Tree& t, Vertex v) { return t.contains(v) && t.degree(v) <= 1; }

}  // namespace

std::string_view to_string(CertificateTag tag) noexcept {
    switch (tag) {
        case CertificateTag::Path4: return "Path4";
        case CertificateTag::WellPath: return "WellPath";
        case CertificateTag::GoodPath: return "GoodPath";
        case CertificateTag::WellTree: return "WellTree";
        case CertificateTag::GoodTree: return "GoodTree";
    }
    return "?";
}

int CertificateKind::power() const noexcept {
    switch (tag) {
        case CertificateTag::Path4: return 4;
        case CertificateTag::GoodPath:
        case CertificateTag::GoodTree: return 5;
        case CertificateTag::WellPath:
        case CertificateTag::WellTree: return 6;
    }
    return 0;
}

bool VerificationReport::overall() const {
    for (const auto& [name, r] : conditions)
        if (!r.ok) return false;
    return true;
}

bool VerificationReport::ok(const std::string& name) const {
    auto it = conditions.find(name);
    return it != conditions.end() && it->second.ok;
}

std::string VerificationReport::summary() const {
    for (const auto& [name, r] : conditions)
        if (!r.ok) return name + ": " + r.witness.value_or("failed");
    return "ok";
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["overall"] = overall();
    nlohmann::ordered_json conds = nlohmann::ordered_json::object();
    for (const auto& [name, r] : conditions) {
        nlohmann::ordered_json c;
        c["ok"] = r.ok;
        c["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
        conds[name] = c;
    }
    j["conditions"] = conds;
    j["label_count"] = label_count ? nlohmann::ordered_json(*label_count) : nlohmann::ordered_json(nullptr);
    return j.dump();
}

VerificationReport verify_two_placement(const Tree& t, const Permutation& sigma) {
    check_sizes(t, sigma);
    VerificationReport report;
    report.add(condition::two_placement, two_placement_clause(t, sigma));
    return report;
}

VerificationReport verify_power_containment(const Tree& t, const Permutation& sigma, int k) {
    check_sizes(t, sigma);
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "power must be at least 1");
    VerificationReport report;
    report.add(condition::power_containment, power_clause(t, AncestorDistance(t), sigma, k));
    return report;
}

namespace {

template <class Distance>
VerificationReport certify(const Tree& t, const Distance& dist, const Permutation& sigma, const CertificateKind& kind) {
    if (!t.contains(kind.x)) throw Error(ErrorCode::IdOutOfRange, "special vertex outside the tree");

    bool path_kind = kind.tag == CertificateTag::Path4 || kind.tag == CertificateTag::WellPath ||
                     kind.tag == CertificateTag::GoodPath;
    if (path_kind && !is_path(t)) throw Error(ErrorCode::KindMismatch, std::string(to_string(kind.tag)) + " on a non-path");

    VerificationReport report;
    Vertex x = kind.x;
    std::vector<Vertex> nbrs(t.neighbors(x).begin(), t.neighbors(x).end());
    std::vector<Vertex> leaves = t.leaves();

    if (kind.tag == CertificateTag::Path4) {
        if (!path_end(t, kind.x) || !path_end(t, kind.other_end) || kind.x == kind.other_end)
            throw Error(ErrorCode::KindMismatch, "Path4 needs the two distinct ends of the path");
        report.add(condition::precondition, t.size() >= 4 ? pass() : fail("path has fewer than 4 vertices"));
        report.add(condition::fixed_point_free, vacuous());
        report.add(condition::two_placement, two_placement_clause(t, sigma));
        report.add(condition::power_containment, power_clause(t, dist, sigma, 4));
        report.add(condition::dist_x, displacement_clause(dist, sigma, {kind.x}, 1, 1));
        report.add(condition::dist_neighbors_of_x, vacuous());
        report.add(condition::dist_leaves, displacement_clause(dist, sigma, {kind.other_end}, 0, 1));
        report.add(condition::cycle_length_bound, cycle_clause(sigma, 4));
        return report;
    }

    bool well = kind.tag == CertificateTag::WellPath || kind.tag == CertificateTag::WellTree;
    ConditionResult pre = pass();
    if (is_star(t))
        pre = fail("tree is a star");
    else if (!well && is_bad_vertex(t, x))
        pre = fail("vertex " + id(x) + " is the center of P5");
    report.add(condition::precondition, pre);
    report.add(condition::fixed_point_free, fixed_point_clause(sigma));
    report.add(condition::two_placement, two_placement_clause(t, sigma));
    report.add(condition::power_containment, power_clause(t, dist, sigma, kind.power()));

    int leaf_cap = 4;
    if (kind.tag == CertificateTag::WellPath) leaf_cap = 3;
    if (kind.tag == CertificateTag::GoodPath) leaf_cap = 2;
    if (well) {
        report.add(condition::dist_x, displacement_clause(dist, sigma, {x}, 0, 2));
        report.add(condition::dist_neighbors_of_x, displacement_clause(dist, sigma, nbrs, 0, 3));
        report.add(condition::cycle_length_bound, cycle_clause(sigma, 5));
    } else {
        report.add(condition::dist_x, displacement_clause(dist, sigma, {x}, 1, 1));
        report.add(condition::dist_neighbors_of_x, displacement_clause(dist, sigma, nbrs, 0, 2));
        report.add(condition::cycle_length_bound, vacuous());
    }
    report.add(condition::dist_leaves, displacement_clause(dist, sigma, leaves, 0, leaf_cap));
    return report;
}

}  // namespace

VerificationReport verify_certificate(const Tree& t, const Permutation& sigma, const CertificateKind& kind) {
    check_sizes(t, sigma);
    return certify(t, AncestorDistance(t), sigma, kind);
}

VerificationReport verify_certificate(const Tree& t, const DistanceTable& dist, const Permutation& sigma,
                                      const CertificateKind& kind) {
    check_sizes(t, sigma);
    if (dist.size() != t.size()) throw Error(ErrorCode::SizeMismatch, "distance table does not match tree");
    return certify(t, dist, sigma, kind);
}

VerificationReport verify_labeled_packing(const Tree& t, const Permutation& sigma, const std::vector<int>& labels, int k) {
    check_sizes(t, sigma);
    if (static_cast<int>(labels.size()) != t.size())
        throw Error(ErrorCode::SizeMismatch, "label array length differs from vertex count");
    for (int l : labels)
        if (l < 1) throw Error(ErrorCode::InvalidArgument, "labels must be positive integers");
    VerificationReport report;
    report.add(condition::two_placement, two_placement_clause(t, sigma));
    report.add(condition::power_containment, power_clause(t, AncestorDistance(t), sigma, k));
    ConditionResult constant = pass();
    for (Vertex v = 0; v < t.size(); ++v)
        if (labels[static_cast<std::size_t>(v)] != labels[static_cast<std::size_t>(sigma(v))]) {
            constant = fail("label of " + id(v) + " differs from label of its image " + id(sigma(v)));
            break;
        }
    report.add(condition::labels_constant_on_cycles, constant);
    report.label_count = static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
    return report;
}

}  // namespace treepack
