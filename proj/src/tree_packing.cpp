#include "treepack/tree_packing.hpp"

#include <algorithm>
#include <optional>

#include "treepack/oracle.hpp"
#include "treepack/path_packing.hpp"
#include "treepack/verifier.hpp"

namespace treepack {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }
std::string name(Vertex v) { return std::to_string(v + 1); }

int displacement_bound(PlacementKind kind) { return kind == PlacementKind::Well ? 3 : 2; }

CertificateKind certificate(PlacementKind kind, Vertex x) {
    return kind == PlacementKind::Well ? CertificateKind::well_tree(x) : CertificateKind::good_tree(x);
}

int distance(const Tree& t, Vertex a, Vertex b) { return bfs_distances(t, a)[idx(b)]; }

// ---------------------------------------------------------------------------
// F-tree extension products

struct ExtensionPlan {
    std::string rule;
    std::vector<std::vector<Cycle>> factors;  // leftmost factor first
};

std::string count_label(char name, int value) {
    std::string s(1, name);
    return s + (value > 1 ? ">1" : "=" + std::to_string(value));
}

ExtensionPlan plan_extension(const FTreePartition& P) {
    const int r = P.r(), p = P.p(), q = P.q();
    auto A = [&](int i) { return P.a[idx(i - 1)]; };
    auto B = [&](int i) { return P.bc[idx(i - 1)].first; };
    auto C = [&](int i) { return P.bc[idx(i - 1)].second; };
    auto D = [&](int i) { return P.def[idx(i - 1)][0]; };
    auto E = [&](int i) { return P.def[idx(i - 1)][1]; };
    auto F = [&](int i) { return P.def[idx(i - 1)][2]; };

    // Transpositions / 4-cycles / 3-cycle pairs over an index window.
    auto a_pairs_from = [&](std::vector<Cycle>& out, int first_j, bool odd_style) {
        int top = r / 2;
        for (int j = first_j; j <= top; ++j)
            out.push_back(odd_style ? Cycle{A(2 * j), A(2 * j + 1)} : Cycle{A(2 * j - 1), A(2 * j)});
    };
    auto bc_even_from = [&](std::vector<Cycle>& out, int first_j) {
        for (int j = first_j; j <= p / 2; ++j) out.push_back({B(2 * j), C(2 * j), B(2 * j - 1), C(2 * j - 1)});
    };
    auto bc_odd_from = [&](std::vector<Cycle>& out, int first_j) {
        for (int j = first_j; j <= p / 2; ++j) out.push_back({B(2 * j + 1), C(2 * j + 1), B(2 * j), C(2 * j)});
    };
    auto def_even_from = [&](std::vector<Cycle>& out, int first_j) {
        for (int j = first_j; j <= q / 2; ++j) {
            out.push_back({E(2 * j - 1), F(2 * j), D(2 * j - 1)});
            out.push_back({E(2 * j), F(2 * j - 1), D(2 * j)});
        }
    };
    auto def_odd_from = [&](std::vector<Cycle>& out, int first_j) {
        for (int j = first_j; j <= q / 2; ++j) {
            out.push_back({E(2 * j), F(2 * j + 1), D(2 * j)});
            out.push_back({E(2 * j + 1), F(2 * j), D(2 * j + 1)});
        }
    };

    auto theta = [&] {
        std::vector<Cycle> out;
        if (r % 2 == 0) {
            a_pairs_from(out, 1, false);
        } else {
            out.push_back({A(1), A(2), A(3)});
            a_pairs_from(out, 2, true);
        }
        return out;
    };
    auto epsilon = [&] {
        std::vector<Cycle> out;
        if (p % 2 == 0) {
            bc_even_from(out, 1);
        } else {
            out.push_back({B(1), B(2), B(3)});
            out.push_back({C(1), C(3), C(2)});
            bc_odd_from(out, 2);
        }
        return out;
    };
    auto delta = [&] {
        std::vector<Cycle> out;
        if (q % 2 == 0) {
            def_even_from(out, 1);
        } else {
            out.push_back({D(1), E(1), F(2), E(2), F(1)});
            out.push_back({D(2), D(3), F(3), E(3)});
            def_odd_from(out, 2);
        }
        return out;
    };

    ExtensionPlan plan;
    plan.rule = count_label('r', r) + "," + count_label('p', p) + "," + count_label('q', q);
    auto& fs = plan.factors;

    if (r > 1 && p > 1 && q > 1) {
        fs = {theta(), epsilon(), delta()};
    } else if (r == 1) {
        // The single leaf a1 is absorbed into a cycle of another F-tree.
        auto epsilon_with_leaf = [&] {
            std::vector<Cycle> out;
            if (p % 2 == 0) {
                out.push_back({A(1), B(1)});
                out.push_back({B(2), C(2), C(1)});
                bc_even_from(out, 2);
            } else {
                out.push_back({A(1), B(1), C(1)});
                bc_odd_from(out, 1);
            }
            return out;
        };
        if (p > 1 && q > 1) {
            fs = {delta(), epsilon_with_leaf()};
        } else if (p > 1 && q == 1) {
            fs = {epsilon(), {{A(1), D(1), F(1), E(1)}}};
        } else if (p > 1 && q == 0) {
            fs = {epsilon_with_leaf()};
        } else if (p == 1 && q > 1) {
            fs = {{{A(1), B(1), C(1)}}, delta()};
        } else if (p == 1 && q == 1) {
            fs = {{{A(1), B(1), C(1), E(1)}, {F(1), D(1)}}};
        } else if (p == 1 && q == 0) {
            fs = {{{A(1), B(1), C(1)}}};
        } else if (p == 0 && q > 1) {
            std::vector<Cycle> out;
            if (q % 2 == 0) {
                out.push_back({D(1), E(1), F(2)});
                out.push_back({F(1), A(1), D(2), E(2)});
                def_even_from(out, 2);
            } else {
                out.push_back({A(1), D(1), F(1), E(1)});
                def_odd_from(out, 1);
            }
            fs = {out};
        } else if (p == 0 && q == 1) {
            fs = {{{A(1), D(1), F(1), E(1)}}};
        }
    } else if (p == 1) {
        auto theta_with_path = [&] {
            std::vector<Cycle> out;
            if (r % 2 == 0) {
                out.push_back({A(1), B(1), C(1), A(2)});
                a_pairs_from(out, 2, false);
            } else {
                out.push_back({B(1), C(1), A(1)});
                a_pairs_from(out, 1, true);
            }
            return out;
        };
        if (r > 1 && q > 1) {
            fs = {theta_with_path(), delta()};
        } else if (r > 1 && q == 1) {
            fs = {{{C(1), E(1), B(1)}, {F(1), D(1)}}, theta()};
        } else if (r > 1 && q == 0) {
            fs = {theta_with_path()};
        } else if (r == 0 && q > 1) {
            std::vector<Cycle> out;
            if (q % 2 == 0) {
                out.push_back({D(1), F(1), B(1), C(1)});
                out.push_back({F(2), D(2)});
                out.push_back({E(1), E(2)});
                def_even_from(out, 2);
            } else {
                out.push_back({C(1), E(1), F(1), D(1), B(1)});
                def_odd_from(out, 1);
            }
            fs = {out};
        } else if (r == 0 && q == 1) {
            fs = {{{C(1), E(1), F(1), D(1), B(1)}}};
        }
    } else if (q == 1) {
        if (r > 1) {
            std::vector<Cycle> out;
            if (r % 2 == 0) {
                out.push_back({D(1), F(1), E(1), A(1), A(2)});
                a_pairs_from(out, 2, false);
            } else {
                out.push_back({A(1), D(1), F(1), E(1)});
                a_pairs_from(out, 1, true);
            }
            if (p > 1)
                fs = {out, epsilon()};
            else
                fs = {out};
        } else if (r == 0 && p > 1) {
            std::vector<Cycle> out;
            if (p % 2 == 0) {
                out.push_back({E(1), B(2), B(1), C(1), C(2)});
                out.push_back({D(1), F(1)});
                bc_even_from(out, 2);
            } else {
                out.push_back({E(1), F(1), D(1), B(1), C(1)});
                for (int j = 1; j <= p / 2; ++j) out.push_back({B(2 * j), C(2 * j), B(2 * j + 1), C(2 * j + 1)});
            }
            fs = {out};
        }
    } else if (r == 0) {
        if (p > 1 && q > 1)
            fs = {epsilon(), delta()};
        else if (p > 1)
            fs = {epsilon()};
        else if (q > 1)
            fs = {delta()};
    } else if (p == 0) {
        if (q > 1)
            fs = {theta(), delta()};
        else
            fs = {theta()};
    } else if (q == 0) {
        fs = {theta(), epsilon()};
    }
    if (fs.empty()) throw Error(ErrorCode::UncoveredCase, "no extension rule for " + plan.rule);
    return plan;
}

void check_partition(const Tree& t, const FTreePartition& P) {
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::PreconditionViolation, "F-tree partition at " + name(P.anchor) + ": " + what);
    };
    Vertex x = P.anchor;
    if (!t.contains(x)) fail("anchor outside the tree");
    auto hangs = [&](Vertex v, Vertex from, int deg) { return t.contains(v) && t.has_edge(v, from) && t.degree(v) == deg; };
    for (Vertex a : P.a)
        if (!hangs(a, x, 1)) fail("vertex " + name(a) + " is not a leaf on the anchor");
    for (auto [b, c] : P.bc)
        if (!hangs(b, x, 2) || !hangs(c, b, 1)) fail("pair " + name(b) + "," + name(c) + " is not a hanging P2");
    for (auto [d, e, f] : P.def)
        if (!hangs(d, x, 2) || !hangs(e, d, 2) || !hangs(f, e, 1))
            fail("triple " + name(d) + "," + name(e) + "," + name(f) + " is not an end-attached P3");
    if (P.r() + P.p() + P.q() < 2) fail("fewer than two F-trees");
    auto peeled = P.vertices();
    auto sorted = peeled;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("an F-tree is listed twice");
    bool kept_neighbor = false;
    for (Vertex w : t.neighbors(x))
        if (!std::binary_search(sorted.begin(), sorted.end(), w)) kept_neighbor = true;
    if (!kept_neighbor) fail("no neighbor of the anchor stays in the inner tree");
}

// ---------------------------------------------------------------------------
// Recursive construction

using Image = std::vector<Vertex>;  // -1 marks an unplaced vertex

struct Context {
    const ConstructionOptions& options;
    std::vector<std::string> trace;
    bool used_fallback = false;
    int depth = 0;
};

struct DepthGuard {
    Context& ctx;
    explicit DepthGuard(Context& c) : ctx(c) { ++ctx.depth; }
    ~DepthGuard() { --ctx.depth; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
};

Permutation solve(const Tree& t, Vertex x, PlacementKind kind, Context& ctx);

void note(Context& ctx, const Tree& t, Vertex x, PlacementKind kind, const std::string& branch) {
    ctx.trace.push_back(std::string(idx(2 * (ctx.depth - 1)), ' ') + std::string(to_string(kind)) + " n=" +
                        std::to_string(t.size()) + " x=" + name(x) + ": " + branch);
}

Permutation completed(const Image& img) {
    for (Vertex v : img)
        if (v < 0) throw Error(ErrorCode::ConstructionBug, "construction left a vertex unplaced");
    return Permutation::from_image(img);
}

// Identity on every unplaced vertex.
Permutation partial(const Image& img) {
    Image full = img;
    for (std::size_t v = 0; v < full.size(); ++v)
        if (full[v] < 0) full[v] = static_cast<Vertex>(v);
    return Permutation::from_image(std::move(full));
}

void lift(const InducedSubtree& sub, const Permutation& s, Image& img) {
    for (Vertex v = 0; v < sub.tree.size(); ++v) img[idx(sub.to_parent[idx(v)])] = sub.to_parent[idx(s(v))];
}

std::vector<Vertex> leaf_neighbors(const Tree& t, Vertex u) {
    std::vector<Vertex> out;
    for (Vertex w : t.neighbors(u))
        if (t.degree(w) == 1) out.push_back(w);
    return out;
}

std::vector<Vertex> all_but(const Tree& t, const std::vector<Vertex>& removed) {
    std::vector<char> gone(idx(t.size()), 0);
    for (Vertex v : removed) gone[idx(v)] = 1;
    std::vector<Vertex> out;
    for (Vertex v = 0; v < t.size(); ++v)
        if (!gone[idx(v)]) out.push_back(v);
    return out;
}

std::vector<Vertex> joined(std::vector<Vertex> a, const std::vector<Vertex>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::vector<Vertex> other_neighbors(const Tree& t, Vertex u, std::initializer_list<Vertex> skip) {
    std::vector<Vertex> out;
    for (Vertex w : t.neighbors(u))
        if (std::find(skip.begin(), skip.end(), w) == skip.end()) out.push_back(w);
    return out;
}

bool star_on(const Tree& t, const std::vector<Vertex>& vs) { return is_star(induced_subtree(t, vs).tree); }

bool bad_on(const Tree& t, const std::vector<Vertex>& vs, Vertex v) {
    auto sub = induced_subtree(t, vs);
    return is_bad_vertex(sub.tree, sub.local_of(v));
}

// Solves the problem on the connected vertex set vs with special vertex
// `special` and copies the result into img.
void place(const Tree& t, const std::vector<Vertex>& vs, Vertex special, PlacementKind kind, Context& ctx, Image& img) {
    auto sub = induced_subtree(t, vs);
    lift(sub, solve(sub.tree, sub.local_of(special), kind, ctx), img);
}

// Good placements of a hanging subtree are rooted at its attachment vertex,
// or at a neighbor of it when the attachment is the center of a P5.
void place_good_hanging(const Tree& t, const std::vector<Vertex>& vs, Vertex v, Context& ctx, Image& img) {
    auto sub = induced_subtree(t, vs);
    Vertex root = sub.local_of(v);
    if (is_bad_vertex(sub.tree, root)) root = sub.tree.neighbors(root)[0];
    lift(sub, solve(sub.tree, root, PlacementKind::Good, ctx), img);
}

// Places a figure-family member on vs (special x) and copies it into img.
bool place_figure(const Tree& t, const std::vector<Vertex>& vs, Vertex x, PlacementKind kind, Context& ctx, Image& img) {
    auto sub = induced_subtree(t, vs);
    auto m = match_figure(sub.tree, sub.local_of(x), kind);
    if (!m) return false;
    note(ctx, t, x, kind, "figure " + m->family + (m->parameter ? "(" + std::to_string(*m->parameter) + ")" : ""));
    lift(sub, m->sigma, img);
    return true;
}

Permutation whole_figure(const Tree& t, Vertex x, PlacementKind kind, Context& ctx, const std::string& where) {
    Image img(idx(t.size()), -1);
    if (!place_figure(t, all_but(t, {}), x, kind, ctx, img))
        throw Error(ErrorCode::UncoveredCase, where + ": no figure family matches");
    return completed(img);
}

// Extends img from the placed core through the subtrees hanging at v: at
// least two neighbor F-trees go through the product extension, every other
// subtree gets its own placement.
void attach(const Tree& t, Vertex v, const std::vector<Vertex>& hanging, PlacementKind kind, Context& ctx, Image& img) {
    if (hanging.empty()) return;
    if (img[idx(v)] < 0 || distance(t, v, img[idx(v)]) > displacement_bound(kind))
        throw Error(ErrorCode::PreconditionViolation, "vertex " + name(v) + " moves too far to attach subtrees");
    std::vector<Vertex> ftrees, others;
    for (Vertex h : hanging) (f_tree_kind(t, h, v) == FTreeKind::NotFTree ? others : ftrees).push_back(h);
    if (ftrees.size() == 1)
        throw Error(ErrorCode::PreconditionViolation, "a single neighbor F-tree cannot be peeled at " + name(v));
    if (!ftrees.empty()) {
        auto part = make_f_tree_partition(t, v, ftrees);
        Permutation ext = extend_over_f_trees(t, v, part, partial(img), kind);
        for (Vertex u : part.vertices()) img[idx(u)] = ext(u);
        ctx.trace.push_back(std::string(idx(2 * ctx.depth), ' ') + "extend at " + name(v) + " (" +
                            plan_extension(part).rule + ")");
    }
    for (Vertex h : others) {
        auto vs = component_vertices(t, h, v);
        if (star_on(t, vs))
            throw Error(ErrorCode::UncoveredCase, "star subtree hanging at " + name(v) + " through " + name(h));
        if (kind == PlacementKind::Good)
            place_good_hanging(t, vs, h, ctx, img);
        else
            place(t, vs, h, kind, ctx, img);
    }
}

// Vertices of the F-tree hanging at v through h.
std::vector<Vertex> f_tree_vertices(const Tree& t, Vertex h, Vertex v) { return component_vertices(t, h, v); }

std::vector<Vertex> f_tree_neighbors(const Tree& t, Vertex v, const std::vector<Vertex>& hanging, bool want_f) {
    std::vector<Vertex> out;
    for (Vertex h : hanging)
        if ((f_tree_kind(t, h, v) != FTreeKind::NotFTree) == want_f) out.push_back(h);
    return out;
}

// Cycle on the leaves of a leaf set: a single cycle while it stays short,
// otherwise transpositions and one 3-cycle.
std::vector<Cycle> leaf_cycles(const std::vector<Vertex>& leaves, bool bounded) {
    if (!bounded || leaves.size() <= 5) return {leaves};
    std::vector<Cycle> out;
    std::size_t i = 0;
    if (leaves.size() % 2 != 0) {
        out.push_back({leaves[0], leaves[1], leaves[2]});
        i = 3;
    }
    for (; i < leaves.size(); i += 2) out.push_back({leaves[i], leaves[i + 1]});
    return out;
}

// A father of at least two leaves none of whose other neighbors is internal.
std::optional<Vertex> leaf_set_father(const Tree& t, Vertex skip) {
    for (Vertex b = 0; b < t.size(); ++b) {
        if (b == skip) continue;
        auto lv = leaf_neighbors(t, b);
        if (lv.size() >= 2 && t.degree(b) == static_cast<int>(lv.size()) + 1) return b;
    }
    return std::nullopt;
}

struct Walk {
    std::vector<Vertex> path;  // x, ..., z' (all of degree <= 2)
    Vertex z = -1;              // first vertex of degree > 2
};

Walk walk_from_leaf(const Tree& t, Vertex x) {
    Walk w;
    Vertex prev = -1, cur = x;
    while (true) {
        w.path.push_back(cur);
        Vertex next = -1;
        for (Vertex n : t.neighbors(cur))
            if (n != prev) next = n;
        prev = cur;
        cur = next;
        if (t.degree(cur) > 2) break;
    }
    w.z = cur;
    return w;
}

// x is a leaf whose father y carries only neighbor F-trees besides x, none
// of them a single leaf.
Permutation leaf_plus_f_trees(const Tree& t, Vertex x, Vertex y, PlacementKind kind, Context& ctx) {
    auto hanging = other_neighbors(t, y, {x});
    if (hanging.size() == 2) return whole_figure(t, x, kind, ctx, "leaf beside two F-trees");
    // Prefer a two-vertex path for the seed path through x and y.
    Vertex seed = hanging.front();
    for (Vertex h : hanging)
        if (f_tree_kind(t, h, y) == FTreeKind::P2) {
            seed = h;
            break;
        }
    note(ctx, t, x, kind, "leaf beside F-trees: seed path through " + name(seed));
    Image img(idx(t.size()), -1);
    auto core = joined({x, y}, f_tree_vertices(t, seed, y));
    place(t, core, x, kind, ctx, img);
    hanging.erase(std::find(hanging.begin(), hanging.end(), seed));
    attach(t, y, hanging, kind, ctx, img);
    return completed(img);
}

// ---------------------------------------------------------------------------
// Well placements

Permutation well_leaf_case(const Tree& t, Vertex x, Context& ctx) {
    const auto kind = PlacementKind::Well;
    Vertex y = t.neighbors(x)[0];
    Image img(idx(t.size()), -1);

    auto siblings = other_neighbors(t, y, {x});
    std::erase_if(siblings, [&](Vertex s) { return t.degree(s) != 1; });
    if (!siblings.empty()) {
        Vertex alpha = siblings.front();
        note(ctx, t, x, kind, "sibling leaf " + name(alpha));
        place(t, all_but(t, {x}), alpha, kind, ctx, img);
        img[idx(x)] = img[idx(alpha)];
        img[idx(alpha)] = x;
        Permutation swapped = Permutation::from_image(img);
        auto report = verify_certificate(t, swapped, certificate(kind, x));
        if (report.overall()) return swapped;
        // Inserting x can stretch a cycle past the bound; peel the pair
        // {x, alpha} at their father instead.
        note(ctx, t, x, kind, "sibling swap rejected (" + report.summary() + "); peel leaf pair at " + name(y));
        auto rest = all_but(t, {x, alpha});
        std::fill(img.begin(), img.end(), -1);
        if (star_on(t, rest)) return whole_figure(t, x, kind, ctx, "leaf pair over a star");
        place(t, rest, y, kind, ctx, img);
        attach(t, y, {x, alpha}, kind, ctx, img);
        return completed(img);
    }

    if (auto beta = leaf_set_father(t, -1)) {
        auto leaves = leaf_neighbors(t, *beta);
        auto rest = all_but(t, leaves);
        if (star_on(t, rest)) return whole_figure(t, x, kind, ctx, "leaf set over a star");
        note(ctx, t, x, kind, "leaf set at " + name(*beta));
        place(t, rest, x, kind, ctx, img);
        for (const auto& c : leaf_cycles(leaves, true))
            for (std::size_t i = 0; i < c.size(); ++i) img[idx(c[i])] = c[(i + 1) % c.size()];
        return completed(img);
    }

    Walk w = walk_from_leaf(t, x);
    Vertex z = w.z, zp = w.path.back();
    const int len = static_cast<int>(w.path.size());
    auto at_z = other_neighbors(t, z, {zp});

    if (len >= 4) {
        note(ctx, t, x, kind, "path of " + std::to_string(len) + " to branch vertex " + name(z));
        place(t, w.path, x, kind, ctx, img);
        attach(t, zp, {z}, kind, ctx, img);
        return completed(img);
    }
    if (len == 1) {
        auto non_f = f_tree_neighbors(t, z, at_z, false);
        if (non_f.empty()) return leaf_plus_f_trees(t, x, z, kind, ctx);
        Vertex z1 = non_f.front();
        note(ctx, t, x, kind, "split at " + name(z) + "-" + name(z1));
        place(t, component_vertices(t, z, z1), x, kind, ctx, img);
        attach(t, z, {z1}, kind, ctx, img);
        return completed(img);
    }

    auto fz = f_tree_neighbors(t, z, at_z, true);
    auto nz = f_tree_neighbors(t, z, at_z, false);
    if (fz.size() == 1 || fz.size() >= 3) {
        Vertex f1 = fz.front();
        note(ctx, t, x, kind, "fold F-tree " + name(f1) + " into the path");
        auto core = joined(joined(w.path, {z}), f_tree_vertices(t, f1, z));
        place(t, core, x, kind, ctx, img);
        attach(t, z, other_neighbors(t, z, {zp, f1}), kind, ctx, img);
        return completed(img);
    }
    if (len == 3) {
        note(ctx, t, x, kind, "P4 to branch vertex " + name(z));
        place(t, joined(w.path, {z}), x, kind, ctx, img);
        attach(t, z, at_z, kind, ctx, img);
        return completed(img);
    }
    // len == 2
    if (fz.empty()) {
        Vertex z1 = nz.front();
        auto at_z1 = other_neighbors(t, z1, {z});
        auto f1 = f_tree_neighbors(t, z1, at_z1, true);
        auto core = joined(w.path, {z, z1});
        std::vector<Vertex> hang_z1 = at_z1;
        if (f1.size() == 1) {
            core = joined(core, f_tree_vertices(t, f1.front(), z1));
            hang_z1 = f_tree_neighbors(t, z1, at_z1, false);
        }
        note(ctx, t, x, kind, "path through " + name(z) + " to " + name(z1));
        place(t, core, x, kind, ctx, img);
        attach(t, z, other_neighbors(t, z, {zp, z1}), kind, ctx, img);
        attach(t, z1, hang_z1, kind, ctx, img);
        return completed(img);
    }
    // Two F-trees at z: x, z', z and both F-trees form a figure tree.
    auto core = joined(w.path, {z});
    for (Vertex f : fz) core = joined(core, f_tree_vertices(t, f, z));
    if (!place_figure(t, core, x, kind, ctx, img))
        throw Error(ErrorCode::UncoveredCase, "two F-trees at the branch vertex: no figure family matches");
    attach(t, z, nz, kind, ctx, img);
    return completed(img);
}

Permutation well_inner_case(const Tree& t, Vertex x, Context& ctx) {
    const auto kind = PlacementKind::Well;
    Image img(idx(t.size()), -1);

    std::vector<Vertex> fathers{x};
    for (Vertex y : t.neighbors(x)) fathers.push_back(y);
    bool any_father = false;
    for (Vertex beta : fathers) {
        auto lv = leaf_neighbors(t, beta);
        if (lv.size() < 2) continue;
        any_father = true;
        auto rest = all_but(t, {lv[0], lv[1]});
        if (star_on(t, rest)) continue;
        note(ctx, t, x, kind, "leaf pair at " + name(beta));
        place(t, rest, x, kind, ctx, img);
        attach(t, beta, {lv[0], lv[1]}, kind, ctx, img);
        return completed(img);
    }
    if (any_father) return whole_figure(t, x, kind, ctx, "leaf pairs only over stars");

    if (auto beta = leaf_set_father(t, -1)) {
        auto leaves = leaf_neighbors(t, *beta);
        auto rest = all_but(t, leaves);
        if (star_on(t, rest)) throw Error(ErrorCode::UncoveredCase, "leaf set over a star");
        note(ctx, t, x, kind, "leaf set at " + name(*beta));
        place(t, rest, x, kind, ctx, img);
        for (const auto& c : leaf_cycles(leaves, true))
            for (std::size_t i = 0; i < c.size(); ++i) img[idx(c[i])] = c[(i + 1) % c.size()];
        return completed(img);
    }

    struct Side {
        Vertex y;
        bool x_side_nonstar;
        FTreeKind y_kind;
    };
    std::vector<Side> sides;
    for (Vertex y : t.neighbors(x))
        sides.push_back({y, !star_on(t, component_vertices(t, x, y)), f_tree_kind(t, y, x)});

    for (const auto& s : sides)
        if (s.x_side_nonstar && s.y_kind == FTreeKind::NotFTree) {
            note(ctx, t, x, kind, "split at " + name(x) + "-" + name(s.y));
            place(t, component_vertices(t, x, s.y), x, kind, ctx, img);
            attach(t, x, {s.y}, kind, ctx, img);
            return completed(img);
        }
    for (const auto& s : sides)
        if (s.x_side_nonstar && s.y_kind == FTreeKind::P3EndAttached) {
            note(ctx, t, x, kind, "P4 through " + name(s.y) + ", F-trees at x");
            place(t, joined({x}, component_vertices(t, s.y, x)), x, kind, ctx, img);
            attach(t, x, other_neighbors(t, x, {s.y}), kind, ctx, img);
            return completed(img);
        }
    for (const auto& s : sides) {
        if (!s.x_side_nonstar || s.y_kind != FTreeKind::P2) continue;
        if (t.degree(x) == 2) {
            Vertex y1 = other_neighbors(t, x, {s.y}).front();
            auto at_y1 = other_neighbors(t, y1, {x});
            auto f1 = f_tree_neighbors(t, y1, at_y1, true);
            auto core = joined(component_vertices(t, s.y, x), {x, y1});
            std::vector<Vertex> hang = at_y1;
            if (f1.size() == 1) {
                core = joined(core, f_tree_vertices(t, f1.front(), y1));
                hang = f_tree_neighbors(t, y1, at_y1, false);
            }
            note(ctx, t, x, kind, "path through x to " + name(y1));
            place(t, core, x, kind, ctx, img);
            attach(t, y1, hang, kind, ctx, img);
            return completed(img);
        }
        // Every neighbor tree of x is a two-vertex path, apart from at most one leaf.
        if (t.degree(x) == 3) return whole_figure(t, x, kind, ctx, "three short legs");
        std::vector<Vertex> legs, single;
        for (Vertex y : t.neighbors(x)) (t.degree(y) == 1 ? single : legs).push_back(y);
        std::vector<Vertex> seed{legs[0]};
        seed.push_back(single.empty() ? legs[1] : single[0]);
        note(ctx, t, x, kind, "short legs: seed path through " + name(seed[0]) + " and " + name(seed[1]));
        auto core = joined(joined({x}, component_vertices(t, seed[0], x)), component_vertices(t, seed[1], x));
        place(t, core, x, kind, ctx, img);
        attach(t, x, other_neighbors(t, x, {seed[0], seed[1]}), kind, ctx, img);
        return completed(img);
    }
    for (const auto& s : sides) {
        if (!s.x_side_nonstar || s.y_kind != FTreeKind::P1 || t.degree(x) != 2) continue;
        Vertex yp = other_neighbors(t, x, {s.y}).front();
        if (t.degree(yp) == 2) {
            Vertex a = other_neighbors(t, yp, {x}).front();
            auto at_a = other_neighbors(t, a, {yp});
            auto fa = f_tree_neighbors(t, a, at_a, true);
            std::vector<Vertex> core{s.y, x, yp, a};
            std::vector<Vertex> hang = at_a;
            if (fa.size() == 1) {
                core = joined(core, f_tree_vertices(t, fa.front(), a));
                hang = f_tree_neighbors(t, a, at_a, false);
            }
            note(ctx, t, x, kind, "leaf at x, path to " + name(a));
            place(t, joined(core, {}), x, kind, ctx, img);
            attach(t, a, hang, kind, ctx, img);
            return completed(img);
        }
        auto at_yp = other_neighbors(t, yp, {x});
        auto non_f = f_tree_neighbors(t, yp, at_yp, false);
        if (!non_f.empty()) {
            Vertex h = non_f.front();
            note(ctx, t, x, kind, "split at " + name(yp) + "-" + name(h));
            place(t, component_vertices(t, yp, h), x, kind, ctx, img);
            attach(t, yp, {h}, kind, ctx, img);
            return completed(img);
        }
        if (t.degree(yp) == 3) return whole_figure(t, x, kind, ctx, "leaf at x beside two F-trees");
        Vertex f1 = at_yp.front();
        note(ctx, t, x, kind, "leaf at x, F-trees at " + name(yp));
        place(t, joined({s.y, x, yp}, f_tree_vertices(t, f1, yp)), x, kind, ctx, img);
        attach(t, yp, other_neighbors(t, yp, {x, f1}), kind, ctx, img);
        return completed(img);
    }
    throw Error(ErrorCode::UncoveredCase, "well placement: no branch applies at an inner vertex");
}

Permutation build_well(const Tree& t, Vertex x, Context& ctx) {
    if (is_path(t)) {
        note(ctx, t, x, PlacementKind::Well, "path");
        return well_path_placement(PathView::from_tree(t), x);
    }
    return t.degree(x) == 1 ? well_leaf_case(t, x, ctx) : well_inner_case(t, x, ctx);
}

// ---------------------------------------------------------------------------
// Good placements

Permutation good_leaf_case(const Tree& t, Vertex x, Context& ctx) {
    const auto kind = PlacementKind::Good;
    Vertex y = t.neighbors(x)[0];
    Image img(idx(t.size()), -1);

    auto siblings = other_neighbors(t, y, {x});
    std::erase_if(siblings, [&](Vertex s) { return t.degree(s) != 1; });
    if (!siblings.empty()) {
        Vertex alpha = siblings.front();
        note(ctx, t, x, kind, "sibling leaf " + name(alpha));
        place(t, all_but(t, {x}), alpha, kind, ctx, img);
        img[idx(x)] = img[idx(alpha)];
        img[idx(alpha)] = x;
        return completed(img);
    }

    if (auto beta = leaf_set_father(t, -1)) {
        auto leaves = leaf_neighbors(t, *beta);
        auto rest = all_but(t, leaves);
        if (star_on(t, rest)) return whole_figure(t, x, kind, ctx, "leaf set over a star");
        note(ctx, t, x, kind, "leaf set at " + name(*beta));
        place(t, rest, x, kind, ctx, img);
        for (std::size_t i = 0; i < leaves.size(); ++i) img[idx(leaves[i])] = leaves[(i + 1) % leaves.size()];
        return completed(img);
    }

    Walk w = walk_from_leaf(t, x);
    Vertex z = w.z, zp = w.path.back();
    const int len = static_cast<int>(w.path.size());

    if (len >= 4) {
        note(ctx, t, x, kind, "path of " + std::to_string(len) + " to branch vertex " + name(z));
        place(t, w.path, x, kind, ctx, img);
        place_good_hanging(t, component_vertices(t, z, zp), z, ctx, img);
        return completed(img);
    }
    if (len == 3) {
        // x - w - z' - z: z' takes x's place in the rest of the tree.
        Vertex mid = w.path[1];
        note(ctx, t, x, kind, "path of 3: thread x through " + name(zp));
        place(t, all_but(t, {x, mid}), zp, kind, ctx, img);
        Vertex next = img[idx(zp)];
        img[idx(zp)] = x;
        img[idx(x)] = mid;
        img[idx(mid)] = next;
        return completed(img);
    }
    if (len == 2) {
        auto rest = component_vertices(t, z, zp);
        if (bad_on(t, rest, z)) return whole_figure(t, x, kind, ctx, "short path to a P5 center");
        note(ctx, t, x, kind, "path of 2: thread x through " + name(z));
        place(t, rest, z, kind, ctx, img);
        Vertex next = img[idx(z)];
        img[idx(z)] = x;
        img[idx(x)] = zp;
        img[idx(zp)] = next;
        return completed(img);
    }
    // x hangs directly off the branch vertex z = y.
    auto at_z = other_neighbors(t, z, {x});
    auto non_f = f_tree_neighbors(t, z, at_z, false);
    if (non_f.empty()) return leaf_plus_f_trees(t, x, z, kind, ctx);
    Vertex z1 = non_f.front();
    note(ctx, t, x, kind, "split at " + name(z) + "-" + name(z1));
    place_good_hanging(t, component_vertices(t, z1, z), z1, ctx, img);
    place(t, component_vertices(t, z, z1), x, kind, ctx, img);
    return completed(img);
}

Permutation good_inner_case(const Tree& t, Vertex x, Context& ctx) {
    const auto kind = PlacementKind::Good;
    Image img(idx(t.size()), -1);

    std::vector<Vertex> fathers{x};
    for (Vertex y : t.neighbors(x)) fathers.push_back(y);
    bool any_father = false;
    for (Vertex beta : fathers) {
        auto lv = leaf_neighbors(t, beta);
        if (lv.size() < 2) continue;
        any_father = true;
        auto rest = all_but(t, {lv[0], lv[1]});
        if (star_on(t, rest) || bad_on(t, rest, x)) continue;
        note(ctx, t, x, kind, "leaf pair at " + name(beta));
        place(t, rest, x, kind, ctx, img);
        attach(t, beta, {lv[0], lv[1]}, kind, ctx, img);
        return completed(img);
    }
    if (any_father) return whole_figure(t, x, kind, ctx, "leaf pairs only over stars or P5");

    if (auto beta = leaf_set_father(t, -1)) {
        auto leaves = leaf_neighbors(t, *beta);
        auto rest = all_but(t, leaves);
        if (star_on(t, rest)) throw Error(ErrorCode::UncoveredCase, "leaf set over a star");
        if (bad_on(t, rest, x)) return whole_figure(t, x, kind, ctx, "leaf set at the end of a P5");
        note(ctx, t, x, kind, "leaf set at " + name(*beta));
        place(t, rest, x, kind, ctx, img);
        for (std::size_t i = 0; i < leaves.size(); ++i) img[idx(leaves[i])] = leaves[(i + 1) % leaves.size()];
        return completed(img);
    }

    struct Side {
        Vertex y;
        std::vector<Vertex> x_side;
        bool x_side_nonstar;
        FTreeKind y_kind;
    };
    std::vector<Side> sides;
    for (Vertex y : t.neighbors(x)) {
        auto xs = component_vertices(t, x, y);
        bool nonstar = !star_on(t, xs);
        sides.push_back({y, std::move(xs), nonstar, f_tree_kind(t, y, x)});
    }

    // For x the center of the P5 T_(x,y): its two legs x - x_i - y_i.
    auto p5_legs = [&](Vertex y) {
        std::vector<std::pair<Vertex, Vertex>> legs;
        for (Vertex xi : other_neighbors(t, x, {y})) legs.emplace_back(xi, other_neighbors(t, xi, {x}).front());
        return legs;
    };

    for (const auto& s : sides) {
        if (!s.x_side_nonstar || s.y_kind != FTreeKind::NotFTree) continue;
        if (!bad_on(t, s.x_side, x)) {
            note(ctx, t, x, kind, "split at " + name(x) + "-" + name(s.y));
            place(t, s.x_side, x, kind, ctx, img);
            place_good_hanging(t, component_vertices(t, s.y, x), s.y, ctx, img);
            return completed(img);
        }
        note(ctx, t, x, kind, "x centers a P5 side; place x with " + name(s.y) + "'s side");
        place(t, joined({x}, component_vertices(t, s.y, x)), x, kind, ctx, img);
        auto legs = p5_legs(s.y);
        Cycle c{legs[1].first, legs[1].second, legs[0].first, legs[0].second};
        for (std::size_t i = 0; i < c.size(); ++i) img[idx(c[i])] = c[(i + 1) % c.size()];
        return completed(img);
    }
    for (const auto& s : sides) {
        if (!s.x_side_nonstar || s.y_kind != FTreeKind::P1) continue;
        if (bad_on(t, s.x_side, x)) return whole_figure(t, x, kind, ctx, "P5 center with a pendant leaf");
        note(ctx, t, x, kind, "pendant leaf " + name(s.y));
        place(t, s.x_side, x, kind, ctx, img);
        Vertex next = img[idx(x)];
        img[idx(x)] = s.y;
        img[idx(s.y)] = next;
        return completed(img);
    }
    for (const auto& s : sides) {
        if (!s.x_side_nonstar || s.y_kind != FTreeKind::P3EndAttached) continue;
        if (bad_on(t, s.x_side, x)) return whole_figure(t, x, kind, ctx, "P5 center with a pendant P3");
        Vertex yy = s.y;
        Vertex zz = other_neighbors(t, yy, {x}).front();
        Vertex ww = other_neighbors(t, zz, {yy}).front();
        note(ctx, t, x, kind, "pendant P3 at " + name(yy));
        place(t, s.x_side, x, kind, ctx, img);
        Vertex next = img[idx(x)];
        img[idx(x)] = yy;
        img[idx(yy)] = ww;
        img[idx(ww)] = zz;
        img[idx(zz)] = next;
        return completed(img);
    }
    for (const auto& s : sides) {
        if (!s.x_side_nonstar || s.y_kind != FTreeKind::P2) continue;
        if (t.degree(x) > 2) {
            // Every leg at x is a two-vertex path.
            int d = t.degree(x);
            if (d <= 4) return whole_figure(t, x, kind, ctx, "short legs only");
            auto legs = other_neighbors(t, x, {});
            std::vector<Vertex> core{x};
            for (int i = 0; i < 3; ++i) core = joined(core, component_vertices(t, legs[idx(i)], x));
            if (!place_figure(t, core, x, kind, ctx, img))
                throw Error(ErrorCode::UncoveredCase, "three short legs: no figure family matches");
            attach(t, x, std::vector<Vertex>(legs.begin() + 3, legs.end()), kind, ctx, img);
            return completed(img);
        }
        Vertex y1 = s.y, x1 = other_neighbors(t, y1, {x}).front();
        Vertex y2 = other_neighbors(t, x, {y1}).front();
        auto at_y2 = other_neighbors(t, y2, {x});
        auto non_f = f_tree_neighbors(t, y2, at_y2, false);
        if (non_f.empty()) {
            note(ctx, t, x, kind, "P4 through x, F-trees at " + name(y2));
            place(t, {x1, y1, x, y2}, x, kind, ctx, img);
            attach(t, y2, at_y2, kind, ctx, img);
            return completed(img);
        }
        Vertex a1 = non_f.front();
        auto rest = component_vertices(t, y2, a1);
        if (!bad_on(t, rest, x)) {
            note(ctx, t, x, kind, "split at " + name(y2) + "-" + name(a1));
            place_good_hanging(t, component_vertices(t, a1, y2), a1, ctx, img);
            place(t, rest, x, kind, ctx, img);
            return completed(img);
        }
        // rest is the P5 x1 - y1 - x - y2 - a2.
        Vertex a2 = other_neighbors(t, y2, {x, a1}).front();
        auto at_a1 = other_neighbors(t, a1, {y2});
        auto f1 = f_tree_neighbors(t, a1, at_a1, true);
        std::vector<Vertex> core{x1, y1, x, y2, a2, a1};
        std::vector<Vertex> hang = at_a1;
        if (f1.size() == 1) {
            core = joined(core, f_tree_vertices(t, f1.front(), a1));
            hang = f_tree_neighbors(t, a1, at_a1, false);
        }
        if (!place_figure(t, joined(core, {}), x, kind, ctx, img))
            throw Error(ErrorCode::UncoveredCase, "P5 tail: no figure family matches");
        attach(t, a1, hang, kind, ctx, img);
        return completed(img);
    }
    throw Error(ErrorCode::UncoveredCase, "good placement: no branch applies at an inner vertex");
}

Permutation build_good(const Tree& t, Vertex x, Context& ctx) {
    if (is_path(t)) {
        note(ctx, t, x, PlacementKind::Good, "path");
        return good_path_placement(PathView::from_tree(t), x);
    }
    return t.degree(x) == 1 ? good_leaf_case(t, x, ctx) : good_inner_case(t, x, ctx);
}

bool recoverable(ErrorCode code) {
    return code == ErrorCode::UncoveredCase || code == ErrorCode::ConstructionBug ||
           code == ErrorCode::PreconditionViolation;
}

Permutation oracle_placement(const Tree& t, Vertex x, PlacementKind kind, Context& ctx, const std::string& why) {
    note(ctx, t, x, kind, "oracle fallback (" + why + ")");
    auto found = search_placements(t, SearchConstraints::for_kind(t, certificate(kind, x)), 1);
    if (found.empty()) throw Error(ErrorCode::ConstructionBug, "oracle fallback found no placement");
    ctx.used_fallback = true;
    return found.front();
}

Permutation solve(const Tree& t, Vertex x, PlacementKind kind, Context& ctx) {
    if (!t.contains(x)) throw Error(ErrorCode::IdOutOfRange, "special vertex outside the tree");
    if (is_star(t)) throw Error(ErrorCode::StarInput, "stars admit no 2-placement");
    if (kind == PlacementKind::Good && is_bad_vertex(t, x)) throw Error(ErrorCode::BadVertex, "x is the center of P5");
    DepthGuard guard(ctx);
    const bool may_fall_back = ctx.options.oracle_fallback && t.size() <= kOracleMaxVertices;
    std::optional<Permutation> sigma;
    try {
        sigma = kind == PlacementKind::Well ? build_well(t, x, ctx) : build_good(t, x, ctx);
    } catch (const Error& e) {
        if (!may_fall_back || !recoverable(e.code())) throw;
        return oracle_placement(t, x, kind, ctx, e.what());
    }
    auto report = verify_certificate(t, *sigma, certificate(kind, x));
    if (!report.overall()) {
        if (may_fall_back) return oracle_placement(t, x, kind, ctx, report.summary());
        throw Error(ErrorCode::ConstructionBug, std::string(to_string(kind)) + " placement of " + canonical_form(t) +
                                                    " at x=" + name(x) + " fails: " + report.summary());
    }
    return *sigma;
}

}  // namespace

std::vector<Vertex> FTreePartition::vertices() const {
    std::vector<Vertex> out(a.begin(), a.end());
    for (auto [b, c] : bc) {
        out.push_back(b);
        out.push_back(c);
    }
    for (const auto& t : def) out.insert(out.end(), t.begin(), t.end());
    return out;
}

std::vector<Vertex> FTreePartition::attachments() const {
    std::vector<Vertex> out(a.begin(), a.end());
    for (auto [b, c] : bc) out.push_back(b);
    for (const auto& t : def) out.push_back(t[0]);
    return out;
}

FTreePartition make_f_tree_partition(const Tree& t, Vertex anchor, std::span<const Vertex> attachments) {
    FTreePartition part;
    part.anchor = anchor;
    std::vector<Vertex> hs(attachments.begin(), attachments.end());
    std::sort(hs.begin(), hs.end());
    for (Vertex h : hs) {
        switch (f_tree_kind(t, h, anchor)) {
            case FTreeKind::P1: part.a.push_back(h); break;
            case FTreeKind::P2: part.bc.emplace_back(h, other_neighbors(t, h, {anchor}).front()); break;
            case FTreeKind::P3EndAttached: {
                Vertex e = other_neighbors(t, h, {anchor}).front();
                Vertex f = other_neighbors(t, e, {h}).front();
                part.def.push_back({h, e, f});
                break;
            }
            case FTreeKind::NotFTree:
                throw Error(ErrorCode::PreconditionViolation,
                            "component at " + name(h) + " is not a neighbor F-tree of " + name(anchor));
        }
    }
    return part;
}

std::string extension_rule(int r, int p, int q) {
    FTreePartition P;
    P.a.assign(idx(r), 0);
    P.bc.assign(idx(p), {0, 0});
    P.def.assign(idx(q), {0, 0, 0});
    if (r + p + q < 2) throw Error(ErrorCode::PreconditionViolation, "fewer than two F-trees");
    return plan_extension(P).rule;
}

Permutation extend_over_f_trees(const Tree& t, Vertex anchor, const FTreePartition& part, const Permutation& sigma_inner,
                                PlacementKind kind) {
    if (sigma_inner.size() != t.size()) throw Error(ErrorCode::SizeMismatch, "inner placement has the wrong size");
    if (part.anchor != anchor) throw Error(ErrorCode::PreconditionViolation, "partition is anchored elsewhere");
    check_partition(t, part);
    for (Vertex v : part.vertices())
        if (sigma_inner(v) != v)
            throw Error(ErrorCode::PreconditionViolation, "inner placement moves peeled vertex " + name(v));
    int d = distance(t, anchor, sigma_inner(anchor));
    if (d > displacement_bound(kind))
        throw Error(ErrorCode::PreconditionViolation,
                    "dist(" + name(anchor) + ", sigma) = " + std::to_string(d) + " exceeds " +
                        std::to_string(displacement_bound(kind)));
    ExtensionPlan plan = plan_extension(part);
    Permutation result = sigma_inner;
    for (auto it = plan.factors.rbegin(); it != plan.factors.rend(); ++it)
        result = compose(Permutation::from_cycles(t.size(), *it), result);
    return result;
}

Permutation glue_placements(const Tree& t, Vertex x, const Permutation& inner, std::span<const SubtreePlacement> subtrees,
                            PlacementKind kind) {
    if (inner.size() != t.size()) throw Error(ErrorCode::SizeMismatch, "inner placement has the wrong size");
    if (subtrees.empty()) return inner;
    int d = distance(t, x, inner(x));
    if (d > displacement_bound(kind))
        throw Error(ErrorCode::PreconditionViolation, "dist(" + name(x) + ", sigma) = " + std::to_string(d) + " too large");
    Image img(inner.image().begin(), inner.image().end());
    for (const auto& s : subtrees) {
        if (s.sigma.size() != s.subtree.tree.size()) throw Error(ErrorCode::SizeMismatch, "subtree placement size");
        Vertex h = -1;
        for (Vertex v : s.subtree.to_parent)
            if (t.has_edge(v, x)) h = v;
        if (h < 0 || component_vertices(t, h, x) != s.subtree.to_parent)
            throw Error(ErrorCode::PreconditionViolation, "subtree does not hang off " + name(x));
        for (Vertex v : s.subtree.to_parent)
            if (inner(v) != v) throw Error(ErrorCode::PreconditionViolation, "inner placement moves subtree vertex " + name(v));
        lift(s.subtree, s.sigma, img);
    }
    return Permutation::from_image(std::move(img));
}

Construction construct_placement(const Tree& t, Vertex x, PlacementKind kind, const ConstructionOptions& options) {
    Context ctx{options, {}, false, 0};
    Permutation sigma = solve(t, x, kind, ctx);
    return {std::move(sigma), std::move(ctx.trace), ctx.used_fallback};
}

Permutation well_placement(const Tree& t, Vertex x) { return construct_placement(t, x, PlacementKind::Well).sigma; }

Permutation good_placement(const Tree& t, Vertex x) { return construct_placement(t, x, PlacementKind::Good).sigma; }

}  // namespace treepack
