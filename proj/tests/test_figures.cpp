#include <doctest.h>

#include "support.hpp"
#include "treepack/figures.hpp"
#include "treepack/verifier.hpp"

using namespace treepack;

namespace {

struct Claim {
    Permutation sigma;
    CertificateKind kind;
};

std::vector<Claim> claims_of(const FigureInstance& inst) {
    std::vector<Claim> out;
    for (auto kind : {PlacementKind::Well, PlacementKind::Good}) {
        const auto& s = inst.placement(kind);
        if (!s) continue;
        for (Vertex v : inst.claimed(kind))
            out.push_back({*s, kind == PlacementKind::Well ? CertificateKind::well_tree(v) : CertificateKind::good_tree(v)});
    }
    return out;
}

// Number of labelings of the instance's shape (trees on its named vertices
// isomorphic to it) on which every stored placement verifies for every
// claimed role.
int labelings_accepting(const FigureInstance& inst) {
    const int n = inst.tree.size();
    auto claims = claims_of(inst);
    const std::string shape = canonical_form(inst.tree);
    std::vector<int> want_degrees;
    for (Vertex v = 0; v < n; ++v) want_degrees.push_back(inst.tree.degree(v));
    std::sort(want_degrees.begin(), want_degrees.end());
    std::vector<int> degrees;
    std::vector<Vertex> code(static_cast<std::size_t>(n - 2), 0);
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n));
    std::vector<Edge> edges;
    int count = 0;
    while (true) {
        // Pruefer decoding into bit masks.
        std::fill(degree.begin(), degree.end(), 1);
        std::fill(adj.begin(), adj.end(), 0u);
        for (Vertex c : code) ++degree[static_cast<std::size_t>(c)];
        degrees = degree;
        std::sort(degrees.begin(), degrees.end());
        if (degrees != want_degrees) {
            int j = n - 3;
            while (j >= 0 && code[static_cast<std::size_t>(j)] == n - 1) code[static_cast<std::size_t>(j--)] = 0;
            if (j < 0) break;
            ++code[static_cast<std::size_t>(j)];
            continue;
        }
        edges.clear();
        for (Vertex c : code) {
            Vertex leaf = 0;
            while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
            edges.emplace_back(leaf, c);
            --degree[static_cast<std::size_t>(leaf)];
            --degree[static_cast<std::size_t>(c)];
        }
        Vertex u = -1, v = -1;
        for (Vertex w = 0; w < n; ++w)
            if (degree[static_cast<std::size_t>(w)] == 1) (u < 0 ? u : v) = w;
        edges.emplace_back(u, v);
        for (auto [a, b] : edges) {
            adj[static_cast<std::size_t>(a)] |= 1u << b;
            adj[static_cast<std::size_t>(b)] |= 1u << a;
        }
        bool placed = true;
        for (const auto& c : claims) {
            for (auto [a, b] : edges)
                if (adj[static_cast<std::size_t>(c.sigma(a))] >> c.sigma(b) & 1u) {
                    placed = false;
                    break;
                }
            if (!placed) break;
        }
        if (placed) {
            Tree t = Tree::from_edges(n, edges);
            bool all = canonical_form(t) == shape;
            for (const auto& c : claims) {
                if (!all || !verify_certificate(t, c.sigma, c.kind).overall()) {
                    all = false;
                    break;
                }
            }
            count += all;
        }
        int i = n - 3;
        while (i >= 0 && code[static_cast<std::size_t>(i)] == n - 1) code[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++code[static_cast<std::size_t>(i)];
    }
    return count;
}

}  // namespace

TEST_SUITE("figures") {

TEST_CASE("catalogue parses") {
    const auto& cat = FigureCatalogue::builtin();
    CHECK(cat.families().size() == 27);
    CHECK(cat.family("broom").parameterized());
    CHECK_THROWS_AS(cat.family("nonexistent"), Error);
    CHECK_THROWS_AS(FigureCatalogue::parse("format 1\nfamily x\n  edges a-b\n"), Error);
    CHECK_THROWS_AS(FigureCatalogue::parse("format 2\n"), Error);
}

TEST_CASE("every stored placement verifies for its claimed roles") {
    for (const auto& fam : FigureCatalogue::builtin().families()) {
        std::vector<std::optional<int>> params{std::nullopt};
        if (fam.parameterized()) {
            params.clear();
            for (int k = fam.parameter_min; k <= fam.parameter_min + 6; ++k) params.push_back(k);
        }
        for (auto k : params) {
            auto inst = instantiate(fam, k);
            int param = k.value_or(-1);
            CAPTURE(fam.name);
            CAPTURE(param);
            auto claims = claims_of(inst);
            CHECK_FALSE(claims.empty());
            for (const auto& c : claims) CHECK(verify_certificate(inst.tree, c.sigma, c.kind).overall());
        }
    }
}

TEST_CASE("stored placements, spelled out") {
    const auto& cat = FigureCatalogue::builtin();
    auto fork = instantiate(cat.family("fork_good"));
    auto s = *fork.placement(PlacementKind::Good);
    CHECK(s(fork.vertex("x")) == fork.vertex("y"));
    CHECK(s(fork.vertex("y")) == fork.vertex("x'"));
    CHECK(s(fork.vertex("l")) == fork.vertex("x"));
    CHECK(fork.claimed(PlacementKind::Good).size() == 2);

    auto spur = instantiate(cat.family("spur_p2_p2"));
    auto w = *spur.placement(PlacementKind::Well);
    CHECK(w(spur.vertex("x")) == spur.vertex("y"));
    CHECK(w(spur.vertex("z2")) == spur.vertex("x"));
    CHECK(w(spur.vertex("y1")) == spur.vertex("z1"));

    auto legs = instantiate(cat.family("spider_legs3"));
    auto g = *legs.placement(PlacementKind::Good);
    CHECK(g(legs.vertex("x")) == legs.vertex("y3"));
    CHECK(g(legs.vertex("x1")) == legs.vertex("x"));
    CHECK(cycle_decomposition(g).count() == 1);

    auto broom = instantiate(cat.family("broom"), 5);
    CHECK(broom.tree.size() == 8);
    CHECK(cycle_decomposition(*broom.placement(PlacementKind::Well)).count() == 3);
}

TEST_CASE("matching") {
    const auto& cat = FigureCatalogue::builtin();
    auto inst = instantiate(cat.family("spur_p2_p2"));
    auto m = match_figure(inst.tree, inst.vertex("x"), PlacementKind::Well);
    REQUIRE(m);
    CHECK(m->family == "spur_p2_p2");
    CHECK(verify_certificate(inst.tree, m->sigma, CertificateKind::well_tree(inst.vertex("x"))).overall());

    auto fork = instantiate(cat.family("fork_good"));
    for (const char* role : {"x", "x'"}) {
        auto fm = match_figure(fork.tree, fork.vertex(role), PlacementKind::Good);
        REQUIRE(fm);
        CHECK(verify_certificate(fork.tree, fm->sigma, CertificateKind::good_tree(fork.vertex(role))).overall());
    }
    CHECK_FALSE(match_figure(path_tree(10), 0, PlacementKind::Well));
    CHECK_FALSE(match_figure(path_tree(10), 0, PlacementKind::Good));

    // Relabelled copies still match.
    auto broom = instantiate(cat.family("broom"), 4);
    std::vector<Vertex> perm(broom.tree.size());
    std::iota(perm.rbegin(), perm.rend(), 0);
    std::vector<Edge> e;
    for (auto [u, v] : broom.tree.edges()) e.emplace_back(perm[u], perm[v]);
    Tree relabelled = Tree::from_edges(broom.tree.size(), e);
    auto bm = match_figure(relabelled, perm[broom.vertex("x1")], PlacementKind::Well);
    REQUIRE(bm);
    CHECK(bm->parameter == 4);
}

}

TEST_SUITE("figure_audit") {

TEST_CASE("recorded labeling counts match a recount") {
    int audited = 0;
    for (const auto& fam : FigureCatalogue::builtin().families()) {
        auto inst = instantiate(fam, fam.parameterized() ? std::optional<int>(fam.parameter_min) : std::nullopt);
        if (inst.tree.size() > 9) continue;
        ++audited;
        CAPTURE(fam.name);
        int shapes = labelings_accepting(inst);
        CHECK(shapes >= 1);
        CHECK(fam.labelings == shapes);
    }
    CHECK(audited == 27);
}

}
