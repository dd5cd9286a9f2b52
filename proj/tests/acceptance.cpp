// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "treepack/figures.hpp"
#include "treepack/labeling.hpp"
#include "treepack/oracle.hpp"
#include "treepack/path_packing.hpp"
#include "treepack/tree_packing.hpp"
#include "treepack/verifier.hpp"

using namespace treepack;
using support::Kind;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

int ceil_div(int a, int b) { return (a + b - 1) / b; }

struct Outcome {
    int checked = 0;
    int failures = 0;
    std::string first_failure;
    std::string extra;

    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok) fail(what);
    }
};

// Runs f, turning an escaped exception into a failure.
template <class F>
bool guarded(Outcome& o, const std::string& what, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        ++o.checked;
        o.fail(what + ": " + e.what());
        return false;
    }
}

std::vector<Tree> non_star_corpus(int max_n) {
    std::vector<Tree> out;
    for (int n = 4; n <= max_n; ++n)
        for (Tree& t : enumerate_trees(n))
            if (!is_star(t)) out.push_back(std::move(t));
    return out;
}

std::string describe(const Tree& t, Vertex x = -1) {
    std::string s = canonical_form(t);
    if (x >= 0) s += " x=" + std::to_string(x + 1);
    return s;
}

bool report(int id, const std::string& title, const Outcome& o, double elapsed, double limit, bool extra_ok = true) {
    bool ok = o.failures == 0 && elapsed < limit && extra_ok;
    std::printf("criterion %d %s  %s: %d checks, %d failures, %.2f s (limit %.0f s)%s%s\n", id, ok ? "PASS" : "FAIL",
                title.c_str(), o.checked, o.failures, elapsed, limit, o.extra.empty() ? "" : ", ",
                o.extra.c_str());
    if (o.failures) std::printf("  first failure: %s\n", o.first_failure.c_str());
    std::fflush(stdout);
    return ok;
}

bool criterion_path4() {
    auto start = Clock::now();
    Outcome o;
    for (int n = 4; n <= 200; ++n) {
        guarded(o, "P" + std::to_string(n), [&] {
            auto view = PathView::from_tree(path_tree(n));
            Permutation s = path4_placement(view);
            std::string tag = "P" + std::to_string(n);
            o.expect(verify_certificate(view.tree(), s, CertificateKind::path4(view.first(), view.last())).overall(),
                     tag + " certificate");
            if (n <= 40) o.expect(support::literal_check(view.tree(), s, Kind::Path4, view.first(), view.last()), tag + " literal");
            o.expect(static_cast<int>(support::orbits(s).size()) >= ceil_div(n, 4), tag + " cycle count");
            auto lp = labeled_pack_path4(view);
            o.expect(verify_labeled_packing(view.tree(), lp.sigma, lp.labels, 4).overall(), tag + " labeled");
            o.expect(lp.label_count >= ceil_div(n, 4), tag + " label count");
            return true;
        });
    }
    return report(1, "path P4 packing, n=4..200", o, seconds_since(start), 5);
}

bool criterion_placements(PlacementKind kind) {
    auto start = Clock::now();
    Outcome o;
    auto corpus = non_star_corpus(9);
    bool well = kind == PlacementKind::Well;
    for (const Tree& t : corpus)
        for (Vertex x = 0; x < t.size(); ++x) {
            if (!well && is_bad_vertex(t, x)) continue;
            guarded(o, describe(t, x), [&] {
                Permutation s = well ? well_placement(t, x) : good_placement(t, x);
                auto ck = well ? CertificateKind::well_tree(x) : CertificateKind::good_tree(x);
                o.expect(verify_certificate(t, s, ck).overall(), describe(t, x) + " verifier");
                o.expect(support::literal_check(t, s, well ? Kind::WellTree : Kind::GoodTree, x), describe(t, x) + " literal");
                return true;
            });
        }
    // 92 classes on 4..9 vertices, one of each size a star.
    std::size_t classes = 0;
    for (int n = 4; n <= 9; ++n) classes += enumerate_trees(n).size();
    o.extra = std::to_string(corpus.size()) + " non-star of " + std::to_string(classes) + " classes";
    bool complete = classes == 92 && corpus.size() == 86;
    return report(well ? 2 : 3, well ? "well placements into T^6, n<=9, every x" : "good placements into T^5, n<=9, every non-bad x",
                  o, seconds_since(start), 60, complete);
}

bool criterion_oracle() {
    auto start = Clock::now();
    Outcome o;
    for (const Tree& t : non_star_corpus(7))
        for (Vertex x = 0; x < t.size(); ++x) {
            guarded(o, describe(t, x), [&] {
                o.expect(!search_placements(t, SearchConstraints::for_kind(t, CertificateKind::well_tree(x)), 1).empty(),
                         describe(t, x) + " no well placement");
                if (!is_bad_vertex(t, x))
                    o.expect(!search_placements(t, SearchConstraints::for_kind(t, CertificateKind::good_tree(x)), 1).empty(),
                             describe(t, x) + " no good placement");
                return true;
            });
        }
    // Power n leaves only the 2-placement clause binding.
    for (int leaves = 1; leaves <= 4; ++leaves) {
        Tree star = star_tree(leaves);
        o.expect(search_placements(star, SearchConstraints::placement(star, star.size())).empty(),
                 "K1," + std::to_string(leaves) + " has a 2-placement");
    }
    return report(4, "oracle concordance, n<=7 and stars n<=5", o, seconds_since(start), 600);
}

bool criterion_labeled() {
    auto start = Clock::now();
    Outcome o;
    for (const Tree& t : non_star_corpus(9)) {
        guarded(o, describe(t), [&] {
            const int n = t.size();
            const int m = support::brute_m_T(t);
            const int cap = lambda2_upper_bound(t);
            auto t6 = labeled_pack_t6(t);
            auto t5 = labeled_pack_t5(t);
            std::string d = describe(t);
            o.expect(verify_labeled_packing(t, t6.sigma, t6.labels, 6).overall(), d + " t6 invalid");
            o.expect(verify_labeled_packing(t, t5.sigma, t5.labels, 5).overall(), d + " t5 invalid");
            o.expect(t6.label_count >= m + ceil_div(n - m, 5), d + " t6 below bound");
            o.expect(t5.label_count == m + 1, d + " t5 count");
            o.expect(t6.label_count <= cap && t5.label_count <= cap, d + " above lambda2 cap");
            if (n <= 7) {
                o.expect(t6.label_count <= max_label_count(t, 6), d + " t6 above optimum");
                o.expect(t5.label_count <= max_label_count(t, 5), d + " t5 above optimum");
            }
            return true;
        });
    }
    return report(5, "labeled packing bounds, n<=9", o, seconds_since(start), 600);
}

// Small path placements listed cycle by cycle on positions 1..n, with the
// special vertices each one is claimed for.
struct ListedPath {
    int n;
    Kind kind;
    std::vector<int> xs;
    std::vector<std::vector<int>> cycles;
};

Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<Vertex> image(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) image[static_cast<std::size_t>(v)] = v;
    for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k) image[static_cast<std::size_t>(c[k] - 1)] = c[(k + 1) % c.size()] - 1;
    return Permutation::from_image(std::move(image));
}

bool criterion_certificates() {
    auto start = Clock::now();
    Outcome o;
    const std::vector<ListedPath> listed = {
        {4, Kind::Path4, {1}, {{1, 2, 4, 3}}},
        {5, Kind::Path4, {1}, {{1, 2, 5, 4}}},
        {6, Kind::Path4, {1}, {{1, 2, 5, 4}}},
        {7, Kind::Path4, {1}, {{1, 2, 5}, {3, 7, 6}}},
        {4, Kind::WellPath, {1, 2, 3, 4}, {{1, 2, 4, 3}}},
        {5, Kind::WellPath, {1, 2, 3, 4, 5}, {{1, 2, 4, 5, 3}}},
        {6, Kind::WellPath, {1, 2}, {{1, 2, 4}, {3, 6, 5}}},
        {6, Kind::WellPath, {3}, {{3, 1}, {5, 2}, {6, 4}}},
        {7, Kind::WellPath, {1, 3, 4, 6}, {{1, 2, 5, 3}, {4, 6, 7}}},
        {4, Kind::GoodPath, {1}, {{1, 2, 4, 3}}},
        {4, Kind::GoodPath, {2}, {{1, 3, 4, 2}}},
        {5, Kind::GoodPath, {1, 4}, {{1, 2, 4, 5, 3}}},
        {6, Kind::GoodPath, {1}, {{1, 2, 4, 3, 6, 5}}},
        {6, Kind::GoodPath, {2, 3}, {{1, 3, 4, 6, 5, 2}}},
        {7, Kind::GoodPath, {1, 4}, {{1, 2, 4, 5, 7, 6, 3}}},
        {7, Kind::GoodPath, {2, 3}, {{1, 3, 4, 6, 7, 5, 2}}},
    };
    for (const auto& l : listed) {
        Tree t = path_tree(l.n);
        Permutation s = from_cycles(l.n, l.cycles);
        for (int x : l.xs) {
            std::string d = "P" + std::to_string(l.n) + " x" + std::to_string(x);
            CertificateKind ck = l.kind == Kind::Path4      ? CertificateKind::path4(0, l.n - 1)
                                 : l.kind == Kind::WellPath ? CertificateKind::well_path(x - 1)
                                                            : CertificateKind::good_path(x - 1);
            o.expect(verify_certificate(t, s, ck).overall(), d + " verifier");
            o.expect(support::literal_check(t, s, l.kind, x - 1, l.n - 1), d + " literal");
        }
    }
    int families = 0;
    for (const auto& fam : FigureCatalogue::builtin().families()) {
        ++families;
        std::vector<std::optional<int>> params{std::nullopt};
        if (fam.parameterized()) {
            params.clear();
            for (int k = fam.parameter_min; k <= fam.parameter_min + 6; ++k) params.push_back(k);
        }
        for (auto k : params) {
            guarded(o, fam.name, [&] {
                auto inst = instantiate(fam, k);
                std::string d = fam.name + (k ? "(" + std::to_string(*k) + ")" : "");
                int claims = 0;
                for (auto kind : {PlacementKind::Well, PlacementKind::Good}) {
                    const auto& s = inst.placement(kind);
                    if (!s) continue;
                    bool well = kind == PlacementKind::Well;
                    for (Vertex v : inst.claimed(kind)) {
                        ++claims;
                        o.expect(verify_certificate(inst.tree, *s, well ? CertificateKind::well_tree(v) : CertificateKind::good_tree(v))
                                     .overall(),
                                 d + " " + inst.names[static_cast<std::size_t>(v)]);
                        o.expect(support::literal_check(inst.tree, *s, well ? Kind::WellTree : Kind::GoodTree, v),
                                 d + " literal " + inst.names[static_cast<std::size_t>(v)]);
                    }
                }
                o.expect(claims > 0, d + " has no claims");
                return true;
            });
        }
    }
    o.extra = std::to_string(families) + " catalogue families";
    return report(6, "listed placements verify", o, seconds_since(start), 60);
}

bool criterion_random() {
    auto start = Clock::now();
    Outcome o;
    double median_100 = 0;
    for (int n : {20, 50, 100}) {
        std::vector<double> times;
        for (int i = 0; i < 1000; ++i) {
            std::uint64_t seed = 7919u * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i);
            Tree t = random_tree(n, seed);
            if (is_star(t)) continue;
            Vertex x = static_cast<Vertex>(seed % static_cast<std::uint64_t>(n));
            Vertex y = x;
            while (is_bad_vertex(t, y)) y = (y + 1) % n;
            std::string d = "n=" + std::to_string(n) + " seed=" + std::to_string(seed);
            auto tree_start = Clock::now();
            guarded(o, d, [&] {
                Permutation w = well_placement(t, x);
                Permutation g = good_placement(t, y);
                auto t6 = labeled_pack_t6(t);
                auto t5 = labeled_pack_t5(t);
                o.expect(verify_certificate(t, w, CertificateKind::well_tree(x)).overall(), d + " well");
                o.expect(verify_certificate(t, g, CertificateKind::good_tree(y)).overall(), d + " good");
                o.expect(verify_labeled_packing(t, t6.sigma, t6.labels, 6).overall(), d + " t6");
                o.expect(verify_labeled_packing(t, t5.sigma, t5.labels, 5).overall(), d + " t5");
                return true;
            });
            times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - tree_start).count());
        }
        std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2), times.end());
        double median = times[times.size() / 2];
        if (n == 100) median_100 = median;
        o.extra += (o.extra.empty() ? "" : ", ") + std::string("median n=") + std::to_string(n) + " " +
                   std::to_string(median).substr(0, 5) + " ms";
    }
    return report(7, "random trees n=20,50,100 x1000", o, seconds_since(start), 600, median_100 < 50);
}

}  // namespace

int main() {
    std::vector<std::function<bool()>> criteria = {
        criterion_path4,
        [] { return criterion_placements(PlacementKind::Well); },
        [] { return criterion_placements(PlacementKind::Good); },
        criterion_oracle,
        criterion_labeled,
        criterion_certificates,
        criterion_random,
    };
    int failed = 0;
    for (auto& c : criteria) failed += c() ? 0 : 1;
    std::printf("%s: %d of %zu criteria passed\n", failed ? "FAIL" : "PASS", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed ? 1 : 0;
}
