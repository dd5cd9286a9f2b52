#include "treepack/tree.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace treepack {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(idx(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[idx(v)] != v) {
            parent[idx(v)] = parent[idx(parent[idx(v)])];
            v = parent[idx(v)];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[idx(a)] = b;
        return true;
    }
};

// BFS order from root plus the parent of every vertex (-1 for the root).
void bfs_order(const Tree& t, Vertex root, std::vector<Vertex>& order, std::vector<Vertex>& parent) {
    order.clear();
    parent.assign(idx(t.size()), -1);
    std::vector<char> seen(idx(t.size()), 0);
    order.push_back(root);
    seen[idx(root)] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        Vertex u = order[head];
        for (Vertex w : t.neighbors(u)) {
            if (seen[idx(w)]) continue;
            seen[idx(w)] = 1;
            parent[idx(w)] = u;
            order.push_back(w);
        }
    }
}

// AHU encodings of every vertex for the tree rooted at root.
std::vector<std::string> rooted_encodings(const Tree& t, Vertex root) {
    std::vector<Vertex> order, parent;
    bfs_order(t, root, order, parent);
    std::vector<std::string> enc(idx(t.size()));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex u = *it;
        std::vector<const std::string*> kids;
        for (Vertex w : t.neighbors(u))
            if (w != parent[idx(u)]) kids.push_back(&enc[idx(w)]);
        std::sort(kids.begin(), kids.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
        std::string s = "(";
        for (const std::string* k : kids) s += *k;
        s += ')';
        enc[idx(u)] = std::move(s);
    }
    return enc;
}

void require_edge(const Tree& t, Vertex x, Vertex y) {
    if (!t.contains(x) || !t.contains(y) || !t.has_edge(x, y))
        throw Error(ErrorCode::NotAnEdge, std::to_string(x + 1) + "-" + std::to_string(y + 1) + " is not an edge");
}

}  // namespace

Tree Tree::from_edges(int n, std::span<const Edge> edges) {
    if (n < 1) throw Error(ErrorCode::NotATree, "a tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != n - 1)
        throw Error(ErrorCode::NotATree, "expected " + std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
    std::vector<std::vector<Vertex>> adj(idx(n));
    DisjointSets sets(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error(ErrorCode::IdOutOfRange, "edge endpoint outside 1.." + std::to_string(n));
        if (u == v) throw Error(ErrorCode::NotATree, "self-loop at " + std::to_string(u + 1));
        if (!sets.unite(u, v))
            throw Error(ErrorCode::NotATree, "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " closes a cycle");
        adj[idx(u)].push_back(v);
        adj[idx(v)].push_back(u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return Tree(std::move(adj));
}

Tree Tree::single_vertex() { return Tree(std::vector<std::vector<Vertex>>(1)); }

bool Tree::has_edge(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    auto list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Tree::edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::vector<Vertex> Tree::leaves() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
        if (degree(v) == 1) out.push_back(v);
    return out;
}

std::vector<int> bfs_distances(const Tree& t, Vertex source) {
    std::vector<int> dist(idx(t.size()), -1);
    std::vector<Vertex> queue{source};
    dist[idx(source)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex w : t.neighbors(u)) {
            if (dist[idx(w)] >= 0) continue;
            dist[idx(w)] = dist[idx(u)] + 1;
            queue.push_back(w);
        }
    }
    return dist;
}

DistanceTable::DistanceTable(const Tree& t) : n_(t.size()), dist_(idx(n_) * idx(n_)) {
    for (Vertex s = 0; s < n_; ++s) {
        auto row = bfs_distances(t, s);
        std::copy(row.begin(), row.end(), dist_.begin() + static_cast<std::ptrdiff_t>(idx(s) * idx(n_)));
    }
}

AncestorDistance::AncestorDistance(const Tree& t) : depth_(static_cast<std::size_t>(t.size()), -1) {
    const auto n = static_cast<std::size_t>(t.size());
    std::vector<Vertex> parent(n, 0), queue{0};
    depth_[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex w : t.neighbors(v))
            if (depth_[static_cast<std::size_t>(w)] < 0) {
                depth_[static_cast<std::size_t>(w)] = depth_[static_cast<std::size_t>(v)] + 1;
                parent[static_cast<std::size_t>(w)] = v;
                queue.push_back(w);
            }
    }
    up_.push_back(std::move(parent));
    while ((std::size_t{1} << up_.size()) < n) {
        const auto& prev = up_.back();
        std::vector<Vertex> next(n);
        for (std::size_t v = 0; v < n; ++v) next[v] = prev[static_cast<std::size_t>(prev[v])];
        up_.push_back(std::move(next));
    }
}

int AncestorDistance::operator()(Vertex u, Vertex v) const {
    int du = depth_[static_cast<std::size_t>(u)], dv = depth_[static_cast<std::size_t>(v)];
    int total = du + dv;
    if (du < dv) {
        std::swap(u, v);
        std::swap(du, dv);
    }
    for (std::size_t k = 0; du > dv; ++k)
        if ((du - dv) >> k & 1) {
            u = up_[k][static_cast<std::size_t>(u)];
            du -= 1 << k;
        }
    if (u != v) {
        for (std::size_t k = up_.size(); k-- > 0;)
            if (up_[k][static_cast<std::size_t>(u)] != up_[k][static_cast<std::size_t>(v)]) {
                u = up_[k][static_cast<std::size_t>(u)];
                v = up_[k][static_cast<std::size_t>(v)];
            }
        u = up_[0][static_cast<std::size_t>(u)];
    }
    return total - 2 * depth_[static_cast<std::size_t>(u)];
}

DistanceTable all_pairs_distance(const Tree& t) { return DistanceTable(t); }

Vertex InducedSubtree::local_of(Vertex parent_id) const {
    auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent_id);
    if (it == to_parent.end() || *it != parent_id) return -1;
    return static_cast<Vertex>(it - to_parent.begin());
}

InducedSubtree induced_subtree(const Tree& t, std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex set");
    std::vector<Vertex> local(idx(t.size()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[idx(vertices[i])] = static_cast<Vertex>(i);
    std::vector<Edge> edges;
    for (Vertex u : vertices)
        for (Vertex w : t.neighbors(u))
            if (u < w && local[idx(w)] >= 0) edges.emplace_back(local[idx(u)], local[idx(w)]);
    int n = static_cast<int>(vertices.size());
    if (n == 1) return {Tree::single_vertex(), std::move(vertices)};
    return {Tree::from_edges(n, edges), std::move(vertices)};
}

std::vector<Vertex> component_vertices(const Tree& t, Vertex x, Vertex y) {
    require_edge(t, x, y);
    std::vector<char> seen(idx(t.size()), 0);
    seen[idx(x)] = seen[idx(y)] = 1;
    std::vector<Vertex> out{x};
    for (std::size_t head = 0; head < out.size(); ++head)
        for (Vertex w : t.neighbors(out[head]))
            if (!seen[idx(w)]) {
                seen[idx(w)] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

SplitComponents split_at_edge(const Tree& t, Vertex x, Vertex y) {
    return {induced_subtree(t, component_vertices(t, x, y)), induced_subtree(t, component_vertices(t, y, x))};
}

bool is_star(const Tree& t) {
    int internal = 0;
    for (Vertex v = 0; v < t.size(); ++v)
        if (t.degree(v) >= 2) ++internal;
    return internal <= 1;
}

bool is_path(const Tree& t) {
    for (Vertex v = 0; v < t.size(); ++v)
        if (t.degree(v) > 2) return false;
    return true;
}

bool is_bad_vertex(const Tree& t, Vertex v) {
    if (t.size() != 5 || !is_path(t) || !t.contains(v)) return false;
    auto dist = bfs_distances(t, v);
    return *std::max_element(dist.begin(), dist.end()) == 2;
}

std::string_view to_string(FTreeKind kind) noexcept {
    switch (kind) {
        case FTreeKind::NotFTree: return "NotFTree";
        case FTreeKind::P1: return "P1";
        case FTreeKind::P2: return "P2";
        case FTreeKind::P3EndAttached: return "P3EndAttached";
    }
    return "?";
}

FTreeKind f_tree_kind(const Tree& t, Vertex x, Vertex y) {
    require_edge(t, x, y);
    // Walk away from y while the component stays a path hanging from x.
    int count = 1;
    Vertex prev = y, cur = x;
    while (true) {
        int deg_inside = t.degree(cur) - 1;
        if (deg_inside == 0) break;
        if (deg_inside > 1 || count == 3) return FTreeKind::NotFTree;
        Vertex next = t.neighbors(cur)[0] == prev ? t.neighbors(cur)[1] : t.neighbors(cur)[0];
        prev = cur;
        cur = next;
        ++count;
    }
    switch (count) {
        case 1: return FTreeKind::P1;
        case 2: return FTreeKind::P2;
        default: return FTreeKind::P3EndAttached;
    }
}

LeafRemoval compute_m_T(const Tree& t) {
    if (is_star(t)) throw Error(ErrorCode::StarInput, "m_T is undefined for a star");
    // T - S is non-star iff two adjacent internal vertices keep degree >= 2.
    // For an internal edge uv, u needs one kept leaf exactly when every other
    // neighbor of u is a leaf.
    auto need = [&](Vertex u, Vertex v) {
        for (Vertex w : t.neighbors(u))
            if (w != v && t.degree(w) >= 2) return 0;
        return 1;
    };
    int best = 3;
    Edge best_edge{-1, -1};
    for (auto [u, v] : t.edges()) {
        if (t.degree(u) < 2 || t.degree(v) < 2) continue;
        int cost = need(u, v) + need(v, u);
        if (cost < best) {
            best = cost;
            best_edge = {u, v};
        }
    }
    std::vector<Vertex> keep;
    auto keep_leaf_of = [&](Vertex u, Vertex v) {
        if (!need(u, v)) return;
        for (Vertex w : t.neighbors(u))
            if (w != v && t.degree(w) == 1) {
                keep.push_back(w);
                return;
            }
    };
    keep_leaf_of(best_edge.first, best_edge.second);
    keep_leaf_of(best_edge.second, best_edge.first);
    LeafRemoval out;
    for (Vertex leaf : t.leaves())
        if (std::find(keep.begin(), keep.end(), leaf) == keep.end()) out.witness.push_back(leaf);
    out.count = static_cast<int>(out.witness.size());
    return out;
}

int mis_size(const Tree& t) {
    std::vector<Vertex> order, parent;
    bfs_order(t, 0, order, parent);
    std::vector<int> with(idx(t.size()), 1), without(idx(t.size()), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex u = *it;
        Vertex p = parent[idx(u)];
        if (p < 0) continue;
        with[idx(p)] += without[idx(u)];
        without[idx(p)] += std::max(with[idx(u)], without[idx(u)]);
    }
    return std::max(with[0], without[0]);
}

std::string rooted_canonical_form(const Tree& t, Vertex root) { return rooted_encodings(t, root)[idx(root)]; }

std::vector<Vertex> tree_centers(const Tree& t) {
    int n = t.size();
    if (n == 1) return {0};
    std::vector<int> deg(idx(n));
    std::vector<Vertex> layer;
    for (Vertex v = 0; v < n; ++v) {
        deg[idx(v)] = t.degree(v);
        if (deg[idx(v)] == 1) layer.push_back(v);
    }
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<Vertex> next;
        for (Vertex leaf : layer)
            for (Vertex w : t.neighbors(leaf))
                if (--deg[idx(w)] == 1) next.push_back(w);
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

std::string canonical_form(const Tree& t) {
    std::string best;
    for (Vertex c : tree_centers(t)) {
        std::string enc = rooted_canonical_form(t, c);
        if (best.empty() || enc < best) best = std::move(enc);
    }
    return best;
}

std::optional<std::vector<Vertex>> rooted_isomorphism(const Tree& a, Vertex ra, const Tree& b, Vertex rb) {
    if (a.size() != b.size()) return std::nullopt;
    auto enc_a = rooted_encodings(a, ra);
    auto enc_b = rooted_encodings(b, rb);
    if (enc_a[idx(ra)] != enc_b[idx(rb)]) return std::nullopt;
    std::vector<Vertex> map(idx(a.size()), -1);
    std::vector<Vertex> pa(idx(a.size()), -1), pb(idx(b.size()), -1);
    map[idx(ra)] = rb;
    std::vector<Vertex> queue{ra};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        Vertex w = map[idx(u)];
        std::vector<Vertex> ka, kb;
        for (Vertex c : a.neighbors(u))
            if (c != pa[idx(u)]) ka.push_back(c);
        for (Vertex c : b.neighbors(w))
            if (c != pb[idx(w)]) kb.push_back(c);
        auto by_a = [&](Vertex l, Vertex r) { return enc_a[idx(l)] < enc_a[idx(r)]; };
        auto by_b = [&](Vertex l, Vertex r) { return enc_b[idx(l)] < enc_b[idx(r)]; };
        std::stable_sort(ka.begin(), ka.end(), by_a);
        std::stable_sort(kb.begin(), kb.end(), by_b);
        for (std::size_t i = 0; i < ka.size(); ++i) {
            map[idx(ka[i])] = kb[i];
            pa[idx(ka[i])] = u;
            pb[idx(kb[i])] = w;
            queue.push_back(ka[i]);
        }
    }
    return map;
}

Tree tree_from_pruefer(std::span<const Vertex> code) {
    int n = static_cast<int>(code.size()) + 2;
    std::vector<int> deg(idx(n), 1);
    for (Vertex v : code) {
        if (v < 0 || v >= n) throw Error(ErrorCode::IdOutOfRange, "Pruefer entry out of range");
        ++deg[idx(v)];
    }
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (Vertex v = 0; v < n; ++v)
        if (deg[idx(v)] == 1) leaves.push(v);
    std::vector<Edge> edges;
    for (Vertex v : code) {
        Vertex leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, v);
        if (--deg[idx(v)] == 1) leaves.push(v);
    }
    Vertex u = leaves.top();
    leaves.pop();
    edges.emplace_back(u, leaves.top());
    return Tree::from_edges(n, edges);
}

std::vector<Tree> enumerate_trees(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (n > 10) throw Error(ErrorCode::SizeTooLarge, "enumeration is limited to n <= 10");
    std::map<std::string, Tree> level{{canonical_form(Tree::single_vertex()), Tree::single_vertex()}};
    for (int k = 2; k <= n; ++k) {
        std::map<std::string, Tree> next;
        for (const auto& [form, t] : level) {
            auto edges = t.edges();
            for (Vertex v = 0; v < t.size(); ++v) {
                auto grown = edges;
                grown.emplace_back(v, t.size());
                Tree g = Tree::from_edges(k, grown);
                next.try_emplace(canonical_form(g), std::move(g));
            }
        }
        level = std::move(next);
    }
    std::vector<Tree> out;
    for (auto& [form, t] : level) out.push_back(t);
    return out;
}

Tree random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (n == 1) return Tree::single_vertex();
    if (n == 2) {
        Edge e{0, 1};
        return Tree::from_edges(2, std::span<const Edge>(&e, 1));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    std::vector<Vertex> code(idx(n - 2));
    for (auto& v : code) v = pick(rng);
    return tree_from_pruefer(code);
}

Tree path_tree(int n) {
    if (n == 1) return Tree::single_vertex();
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Tree::from_edges(n, edges);
}

Tree star_tree(int leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    if (edges.empty()) return Tree::single_vertex();
    return Tree::from_edges(leaves + 1, edges);
}

Tree parse_tree(std::string_view text) {
    std::vector<Edge> edges;
    int n = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        fields >> a >> b;
        if (b.empty() || (fields >> extra))
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected two vertex ids");
        auto to_id = [&](const std::string& s) {
            int value = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
            if (ec != std::errc{} || ptr != s.data() + s.size() || value < 1)
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad vertex id '" + s + "'");
            return value;
        };
        int u = to_id(a), v = to_id(b);
        n = std::max({n, u, v});
        edges.emplace_back(u - 1, v - 1);
    }
    if (edges.empty()) throw Error(ErrorCode::ParseError, "no edges found");
    return Tree::from_edges(n, edges);
}

std::string format_tree(const Tree& t) {
    std::string out;
    for (auto [u, v] : t.edges()) out += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return out;
}

}  // namespace treepack
