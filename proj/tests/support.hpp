#pragma once

// Helpers shared by the test suites. The checkers here are deliberately
// naive re-statements of the definitions so that they share no code with
// the library they check.

#include <algorithm>
#include <functional>
#include <optional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "treepack/error.hpp"
#include "treepack/permutation.hpp"
#include "treepack/tree.hpp"

namespace support {

using treepack::Permutation;
using treepack::Tree;
using treepack::Vertex;

// Tree from 1-based edges.
inline Tree tree_of(int n, std::initializer_list<std::pair<int, int>> edges) {
    std::vector<treepack::Edge> e;
    for (auto [u, v] : edges) e.emplace_back(u - 1, v - 1);
    return Tree::from_edges(n, e);
}

// Center 1 with legs of the given lengths, numbered leg by leg outward.
inline Tree spider(std::initializer_list<int> legs) {
    std::vector<treepack::Edge> e;
    int next = 1;
    for (int len : legs) {
        int prev = 0;
        for (int i = 0; i < len; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
    }
    return Tree::from_edges(next, e);
}

// Permutation from 1-based cycles.
inline Permutation cycles_of(int n, std::initializer_list<std::initializer_list<int>> cycles) {
    std::vector<treepack::Cycle> cs;
    for (auto c : cycles) {
        treepack::Cycle cycle;
        for (int v : c) cycle.push_back(v - 1);
        cs.push_back(cycle);
    }
    return Permutation::from_cycles(n, cs);
}

using Matrix = std::vector<std::vector<int>>;

inline Matrix adjacency(const Tree& t) {
    int n = t.size();
    Matrix a(n, std::vector<int>(n, 0));
    for (auto [u, v] : t.edges()) a[u][v] = a[v][u] = 1;
    return a;
}

// Floyd-Warshall hop distances.
inline Matrix floyd(const Tree& t) {
    int n = t.size();
    const int inf = 1 << 20;
    Matrix d(n, std::vector<int>(n, inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (auto [u, v] : t.edges()) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

inline int degree(const Matrix& a, int v) {
    int d = 0;
    for (int x : a[v]) d += x;
    return d;
}

// At most one vertex of degree two or more.
inline bool naive_star(const Tree& t) {
    auto a = adjacency(t);
    int big = 0;
    for (int v = 0; v < t.size(); ++v) big += degree(a, v) >= 2;
    return big <= 1;
}

inline bool naive_path(const Tree& t) {
    auto a = adjacency(t);
    for (int v = 0; v < t.size(); ++v)
        if (degree(a, v) > 2) return false;
    return true;
}

inline bool naive_bad(const Tree& t, int v) {
    if (t.size() != 5 || !naive_path(t)) return false;
    auto d = floyd(t);
    auto a = adjacency(t);
    for (int u = 0; u < 5; ++u)
        if (degree(a, u) == 1 && d[u][v] != 2) return false;
    return true;
}

inline std::vector<std::vector<int>> orbits(const Permutation& s) {
    std::vector<std::vector<int>> out;
    std::vector<int> seen(s.size(), 0);
    for (int v = 0; v < s.size(); ++v) {
        if (seen[v]) continue;
        std::vector<int> c;
        for (int u = v; !seen[u]; u = s(u)) {
            seen[u] = 1;
            c.push_back(u);
        }
        out.push_back(c);
    }
    return out;
}

enum class Kind { Path4, WellPath, GoodPath, WellTree, GoodTree };

// Literal reading of each definition: every clause spelled out, nothing shared.
inline bool literal_check(const Tree& t, const Permutation& s, Kind kind, int x, int other_end = -1) {
    int n = t.size();
    auto a = adjacency(t);
    auto d = floyd(t);
    int power = kind == Kind::Path4 ? 4 : (kind == Kind::WellPath || kind == Kind::WellTree) ? 6 : 5;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!a[u][v]) continue;
            if (a[s(u)][s(v)]) return false;
            if (d[s(u)][s(v)] > power) return false;
        }
    auto displaced = [&](int v) { return d[v][s(v)]; };
    auto leaves_within = [&](int cap) {
        for (int v = 0; v < n; ++v)
            if (degree(a, v) == 1 && displaced(v) > cap) return false;
        return true;
    };
    auto neighbors_within = [&](int cap) {
        for (int y = 0; y < n; ++y)
            if (a[x][y] && displaced(y) > cap) return false;
        return true;
    };
    auto cycles_within = [&](int cap) {
        for (const auto& c : orbits(s))
            if (static_cast<int>(c.size()) > cap) return false;
        return true;
    };
    auto no_fixed = [&] {
        for (int v = 0; v < n; ++v)
            if (s(v) == v) return false;
        return true;
    };
    switch (kind) {
        case Kind::Path4:
            return naive_path(t) && n >= 4 && displaced(x) == 1 && displaced(other_end) <= 1 && cycles_within(4);
        case Kind::WellPath:
            return naive_path(t) && no_fixed() && displaced(x) <= 2 && neighbors_within(3) && leaves_within(3) &&
                   cycles_within(5);
        case Kind::GoodPath:
            return naive_path(t) && !naive_bad(t, x) && no_fixed() && displaced(x) == 1 && neighbors_within(2) &&
                   leaves_within(2);
        case Kind::WellTree:
            return !naive_star(t) && no_fixed() && displaced(x) <= 2 && neighbors_within(3) && leaves_within(4) &&
                   cycles_within(5);
        case Kind::GoodTree:
            return !naive_star(t) && !naive_bad(t, x) && no_fixed() && displaced(x) == 1 && neighbors_within(2) &&
                   leaves_within(4);
    }
    return false;
}

// Canonical string as the least rooted encoding over every root.
inline std::string encode_rooted(const Matrix& a, int v, int parent) {
    std::vector<std::string> kids;
    for (int u = 0; u < static_cast<int>(a.size()); ++u)
        if (a[v][u] && u != parent) kids.push_back(encode_rooted(a, u, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    return s + ")";
}

inline std::string naive_canonical(const Tree& t) {
    auto a = adjacency(t);
    std::string best;
    for (int r = 0; r < t.size(); ++r) {
        auto s = encode_rooted(a, r, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

// Calls f on every labeled tree with n >= 2 vertices (Pruefer order).
inline void for_each_labeled_tree(int n, const std::function<void(const Tree&)>& f) {
    if (n == 2) {
        f(Tree::from_edges(2, std::vector<treepack::Edge>{{0, 1}}));
        return;
    }
    std::vector<Vertex> code(n - 2, 0);
    while (true) {
        f(treepack::tree_from_pruefer(code));
        int i = n - 3;
        while (i >= 0 && code[i] == n - 1) code[i--] = 0;
        if (i < 0) break;
        ++code[i];
    }
}

inline int brute_mis(const Tree& t) {
    int n = t.size();
    auto a = adjacency(t);
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if ((mask >> u & 1) && (mask >> v & 1) && a[u][v]) ok = false;
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

// Removes a vertex set, returns the remaining tree re-indexed (no check).
inline Tree without(const Tree& t, const std::vector<int>& removed) {
    std::vector<int> id(t.size(), -1);
    int next = 0;
    for (int v = 0; v < t.size(); ++v)
        if (std::find(removed.begin(), removed.end(), v) == removed.end()) id[v] = next++;
    std::vector<treepack::Edge> e;
    for (auto [u, v] : t.edges())
        if (id[u] >= 0 && id[v] >= 0) e.emplace_back(id[u], id[v]);
    return Tree::from_edges(next, e);
}

// Largest leaf set whose removal leaves a non-star, by trying every subset.
inline int brute_m_T(const Tree& t) {
    auto a = adjacency(t);
    std::vector<int> leaves;
    for (int v = 0; v < t.size(); ++v)
        if (degree(a, v) == 1) leaves.push_back(v);
    int best = -1;
    int m = static_cast<int>(leaves.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> removed;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) removed.push_back(leaves[i]);
        if (static_cast<int>(removed.size()) >= t.size()) continue;
        if (!naive_star(without(t, removed))) best = std::max(best, static_cast<int>(removed.size()));
    }
    return best;
}

// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<treepack::ErrorCode> error_code(F&& f) {
    try {
        f();
    } catch (const treepack::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace support
