#include "treepack/path_packing.hpp"

#include <optional>

#include "treepack/verifier.hpp"

namespace treepack {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// Cycles over 1-based path positions x_1..x_n.
using PositionCycles = std::vector<std::vector<int>>;
// image[i] = position that position i is sent to (0-based).
using PositionImage = std::vector<int>;

PositionImage realize(int n, const PositionCycles& cycles) {
    PositionImage image(idx(n));
    for (int i = 0; i < n; ++i) image[idx(i)] = i;
    for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k) image[idx(c[k] - 1)] = c[(k + 1) % c.size()] - 1;
    return image;
}

// Conjugate by the reversal i -> n-1-i.
PositionImage reversed(const PositionImage& image) {
    int n = static_cast<int>(image.size());
    PositionImage out(image.size());
    for (int i = 0; i < n; ++i) out[idx(i)] = n - 1 - image[idx(n - 1 - i)];
    return out;
}

using Table = std::optional<PositionCycles> (*)(int n, int x);

// Looks x up directly, otherwise through the mirrored vertex.
PositionImage from_table(Table table, int n, int x0) {
    if (auto c = table(n, x0 + 1)) return realize(n, *c);
    if (auto c = table(n, n - x0)) return reversed(realize(n, *c));
    throw Error(ErrorCode::UncoveredCase, "no base placement for P" + std::to_string(n) + " at x" + std::to_string(x0 + 1));
}

std::optional<PositionCycles> path4_table(int n, int) {
    switch (n) {
        case 4: return PositionCycles{{1, 2, 4, 3}};
        case 5: return PositionCycles{{1, 2, 5, 4}, {3}};
        case 6: return PositionCycles{{1, 2, 5, 4}, {3}, {6}};
        case 7: return PositionCycles{{1, 2, 5}, {3, 7, 6}, {4}};
        default: return std::nullopt;
    }
}

std::optional<PositionCycles> well_table(int n, int x) {
    switch (n) {
        case 4: return PositionCycles{{1, 2, 4, 3}};
        case 5: return PositionCycles{{1, 2, 4, 5, 3}};
        case 6:
            if (x == 1 || x == 2) return PositionCycles{{1, 2, 4}, {3, 6, 5}};
            if (x == 3) return PositionCycles{{3, 1}, {5, 2}, {6, 4}};
            return std::nullopt;
        case 7:
            if (x == 1 || x == 6 || x == 3 || x == 4) return PositionCycles{{1, 2, 5, 3}, {4, 6, 7}};
            return std::nullopt;
        default: return std::nullopt;
    }
}

std::optional<PositionCycles> good_table(int n, int x) {
    switch (n) {
        case 4:
            if (x == 1) return PositionCycles{{1, 2, 4, 3}};
            if (x == 2) return PositionCycles{{1, 3, 4, 2}};
            return std::nullopt;
        case 5:
            if (x == 1 || x == 4) return PositionCycles{{1, 2, 4, 5, 3}};
            return std::nullopt;
        case 6:
            if (x == 1) return PositionCycles{{1, 2, 4, 3, 6, 5}};
            if (x == 2 || x == 3) return PositionCycles{{1, 3, 4, 6, 5, 2}};
            return std::nullopt;
        case 7:
            if (x == 1 || x == 4) return PositionCycles{{1, 2, 4, 5, 7, 6, 3}};
            if (x == 2 || x == 3) return PositionCycles{{1, 3, 4, 6, 7, 5, 2}};
            return std::nullopt;
        default: return std::nullopt;
    }
}

// Writes `part` (a placement of a sub-segment) into `image` at `offset`.
void paste(PositionImage& image, const PositionImage& part, int offset) {
    for (std::size_t i = 0; i < part.size(); ++i) image[idx(offset) + i] = part[i] + offset;
}

PositionImage path4_positions(int n) {
    if (n <= 7) return from_table(path4_table, n, 0);
    PositionImage image(idx(n));
    paste(image, path4_positions(n - 4), 0);
    paste(image, from_table(path4_table, 4, 0), n - 4);
    return image;
}

PositionImage xpath_positions(Table table, int n, int x, bool good) {
    if (n <= 7) return from_table(table, n, x);
    bool detach_suffix = x <= n - 1 - x;
    // Position of x inside the kept part when the detached block has `len` vertices.
    auto kept_x = [&](int len) { return detach_suffix ? x : x - len; };
    int len = 4;
    if (good && n - len == 5 && kept_x(len) == 2) len = 5;

    PositionImage image(idx(n));
    int kept = n - len;
    if (detach_suffix) {
        paste(image, xpath_positions(table, kept, kept_x(len), good), 0);
        paste(image, xpath_positions(table, len, 0, good), kept);
    } else {
        paste(image, xpath_positions(table, len, len - 1, good), 0);
        paste(image, xpath_positions(table, kept, kept_x(len), good), len);
    }
    return image;
}

Permutation to_vertices(const PathView& p, const PositionImage& image) {
    std::vector<Vertex> out(idx(p.size()));
    for (int i = 0; i < p.size(); ++i) out[idx(p.at(i))] = p.at(image[idx(i)]);
    return Permutation::from_image(std::move(out));
}

void require_length(const PathView& p) {
    if (p.size() < 4) throw Error(ErrorCode::TooShort, "path placements need at least 4 vertices");
}

void require_vertex(const PathView& p, Vertex x) {
    if (!p.tree().contains(x)) throw Error(ErrorCode::IdOutOfRange, "vertex outside the path");
}

Permutation certified(const PathView& p, Permutation sigma, const CertificateKind& kind) {
    auto report = verify_certificate(p.tree(), sigma, kind);
    if (!report.overall())
        throw Error(ErrorCode::ConstructionBug,
                    std::string(to_string(kind.tag)) + " self-check failed: " + report.to_json());
    return sigma;
}

}  // namespace

PathView::PathView(Tree t, std::vector<Vertex> order) : tree_(std::move(t)), order_(std::move(order)) {
    position_.assign(idx(tree_.size()), -1);
    for (std::size_t i = 0; i < order_.size(); ++i) position_[idx(order_[i])] = static_cast<int>(i);
}

PathView PathView::from_tree(Tree t) {
    if (!is_path(t)) throw Error(ErrorCode::KindMismatch, "tree is not a path");
    std::vector<Vertex> order;
    Vertex start = 0;
    for (Vertex v = 0; v < t.size(); ++v)
        if (t.degree(v) <= 1) {
            start = v;
            break;
        }
    Vertex prev = -1, cur = start;
    while (true) {
        order.push_back(cur);
        Vertex next = -1;
        for (Vertex w : t.neighbors(cur))
            if (w != prev) next = w;
        if (next < 0) break;
        prev = cur;
        cur = next;
    }
    return PathView(std::move(t), std::move(order));
}

Permutation path4_placement(const PathView& p) {
    require_length(p);
    return certified(p, to_vertices(p, path4_positions(p.size())), CertificateKind::path4(p.first(), p.last()));
}

Permutation well_path_placement(const PathView& p, Vertex x) {
    require_length(p);
    require_vertex(p, x);
    auto image = xpath_positions(well_table, p.size(), p.position(x), false);
    return certified(p, to_vertices(p, image), CertificateKind::well_path(x));
}

Permutation good_path_placement(const PathView& p, Vertex x) {
    require_length(p);
    require_vertex(p, x);
    if (is_bad_vertex(p.tree(), x)) throw Error(ErrorCode::BadVertex, "x is the center of P5");
    auto image = xpath_positions(good_table, p.size(), p.position(x), true);
    return certified(p, to_vertices(p, image), CertificateKind::good_path(x));
}

}  // namespace treepack
