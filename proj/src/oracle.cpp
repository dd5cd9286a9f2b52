#include "treepack/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace treepack {

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max();
std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

void check_size(const Tree& t) {
    if (t.size() > kOracleMaxVertices)
        throw Error(ErrorCode::SizeTooLarge, "exhaustive search is limited to " + std::to_string(kOracleMaxVertices) + " vertices");
}

class Search {
public:
    Search(const Tree& t, const SearchConstraints& c)
        : t_(t), c_(c), dist_(t), n_(t.size()), image_(idx(n_), -1), preimage_(idx(n_), -1) {
        lo_ = c.dist_lo.empty() ? std::vector<int>(idx(n_), 0) : c.dist_lo;
        hi_ = c.dist_hi.empty() ? std::vector<int>(idx(n_), kUnbounded) : c.dist_hi;
    }

    // Calls visit on every complete assignment; visit returns false to stop.
    void run(const std::function<bool(const std::vector<Vertex>&)>& visit) {
        visit_ = &visit;
        stopped_ = false;
        extend(0);
    }

    // Number of closed cycles so far, used by the label-count bound.
    int closed_cycles = 0;
    int closed_vertices = 0;
    std::function<bool(int assigned)> prune;

private:
    bool admissible(Vertex v, Vertex w) const {
        if (preimage_[idx(w)] >= 0) return false;
        if (c_.fixed_point_free && v == w) return false;
        int d = dist_(v, w);
        if (d < lo_[idx(v)] || d > hi_[idx(v)]) return false;
        for (Vertex u : t_.neighbors(v)) {
            Vertex su = image_[idx(u)];
            if (su < 0) continue;
            int e = dist_(su, w);
            if (e == 1 || e < 1 || e > c_.power) return false;
        }
        if (c_.max_cycle_length) {
            // Length of the chain v -> w -> ... and back through preimages of v.
            int len = 1;
            Vertex cur = w;
            while (cur != v && cur >= 0) {
                ++len;
                cur = image_[idx(cur)];
            }
            if (cur != v)
                for (Vertex back = preimage_[idx(v)]; back >= 0; back = preimage_[idx(back)]) ++len;
            if (len > *c_.max_cycle_length) return false;
        }
        return true;
    }

    // True when assigning v -> w closes a cycle.
    bool closes(Vertex v, Vertex w) const {
        Vertex cur = w;
        while (cur >= 0 && cur != v) cur = image_[idx(cur)];
        return cur == v;
    }

    int cycle_size(Vertex v) const {
        int len = 1;
        for (Vertex cur = image_[idx(v)]; cur != v; cur = image_[idx(cur)]) ++len;
        return len;
    }

    void extend(Vertex v) {
        if (stopped_) return;
        if (v == n_) {
            if (!(*visit_)(image_)) stopped_ = true;
            return;
        }
        if (prune && prune(v)) return;
        for (Vertex w = 0; w < n_ && !stopped_; ++w) {
            if (!admissible(v, w)) continue;
            bool closing = closes(v, w);
            image_[idx(v)] = w;
            preimage_[idx(w)] = v;
            int size = closing ? cycle_size(v) : 0;
            if (closing) {
                ++closed_cycles;
                closed_vertices += size;
            }
            extend(v + 1);
            if (closing) {
                --closed_cycles;
                closed_vertices -= size;
            }
            image_[idx(v)] = -1;
            preimage_[idx(w)] = -1;
        }
    }

    const Tree& t_;
    const SearchConstraints& c_;
    DistanceTable dist_;
    int n_;
    std::vector<int> lo_, hi_;
    std::vector<Vertex> image_, preimage_;
    const std::function<bool(const std::vector<Vertex>&)>* visit_ = nullptr;
    bool stopped_ = false;
};

}  // namespace

SearchConstraints SearchConstraints::placement(const Tree&, int power) {
    SearchConstraints c;
    c.power = power;
    return c;
}

SearchConstraints SearchConstraints::for_kind(const Tree& t, const CertificateKind& kind) {
    SearchConstraints c;
    c.power = kind.power();
    std::size_t n = idx(t.size());
    c.dist_lo.assign(n, 0);
    c.dist_hi.assign(n, kUnbounded);
    auto cap = [&](Vertex v, int lo, int hi) {
        c.dist_lo[idx(v)] = std::max(c.dist_lo[idx(v)], lo);
        c.dist_hi[idx(v)] = std::min(c.dist_hi[idx(v)], hi);
    };
    if (kind.tag == CertificateTag::Path4) {
        c.max_cycle_length = 4;
        cap(kind.x, 1, 1);
        cap(kind.other_end, 0, 1);
        return c;
    }
    bool well = kind.tag == CertificateTag::WellTree || kind.tag == CertificateTag::WellPath;
    c.fixed_point_free = true;
    if (well) c.max_cycle_length = 5;
    int leaf_cap = kind.tag == CertificateTag::WellPath ? 3 : kind.tag == CertificateTag::GoodPath ? 2 : 4;
    for (Vertex v : t.leaves()) cap(v, 0, leaf_cap);
    for (Vertex y : t.neighbors(kind.x)) cap(y, 0, well ? 3 : 2);
    if (well)
        cap(kind.x, 0, 2);
    else
        cap(kind.x, 1, 1);
    return c;
}

std::vector<Permutation> search_placements(const Tree& t, const SearchConstraints& c, std::optional<int> limit) {
    check_size(t);
    std::vector<Permutation> out;
    if (limit && *limit <= 0) return out;
    Search search(t, c);
    search.run([&](const std::vector<Vertex>& image) {
        out.push_back(Permutation::from_image(image));
        return !limit || static_cast<int>(out.size()) < *limit;
    });
    return out;
}

int max_label_count(const Tree& t, int k) {
    check_size(t);
    SearchConstraints c = SearchConstraints::placement(t, k);
    Search search(t, c);
    int best = 0;
    // Every vertex outside a closed cycle could at best end up a fixed point.
    search.prune = [&](int) { return search.closed_cycles + (t.size() - search.closed_vertices) <= best; };
    search.run([&](const std::vector<Vertex>& image) {
        best = std::max(best, cycle_decomposition(Permutation::from_image(image)).count());
        return true;
    });
    return best;
}

}  // namespace treepack
