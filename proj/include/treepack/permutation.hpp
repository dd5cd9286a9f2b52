#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treepack/tree.hpp"

namespace treepack {

using Cycle = std::vector<Vertex>;

struct CycleDecomposition {
    // Each cycle starts at its minimum id; cycles sorted by that id.
    std::vector<Cycle> cycles;

    int count() const noexcept { return static_cast<int>(cycles.size()); }
    int max_length() const noexcept;
};

class Permutation {
public:
    static Permutation identity(int n);
    // Throws DuplicateId / IdOutOfRange unless image is a bijection on 0..n-1.
    static Permutation from_image(std::vector<Vertex> image);
    // Unlisted ids become fixed points.
    static Permutation from_cycles(int n, std::span<const Cycle> cycles);

    int size() const noexcept { return static_cast<int>(image_.size()); }
    Vertex operator()(Vertex v) const { return image_[static_cast<std::size_t>(v)]; }
    std::span<const Vertex> image() const noexcept { return image_; }

    Permutation inverse() const;
    bool is_fixed_point_free() const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {}
    std::vector<Vertex> image_;
};

// Rightmost factor acts first: compose(a, b)(v) = a(b(v)).
Permutation compose(const Permutation& outer, const Permutation& inner);

CycleDecomposition cycle_decomposition(const Permutation& p);

// "(1 2 4 3)(5)": 1-based ids, fixed points included.
std::string format_cycles(const Permutation& p);
// Fixed points may be omitted in the input.
Permutation parse_cycles(int n, std::string_view text);

}  // namespace treepack
