#include <doctest.h>

#include "support.hpp"
#include "treepack/permutation.hpp"

using namespace treepack;
using support::cycles_of;

namespace {

Permutation random_permutation(int n, std::mt19937& rng) {
    std::vector<Vertex> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation::from_image(img);
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("permutation") {

TEST_CASE("from cycles") {
    std::vector<Cycle> c4{{0, 1, 3, 2}};
    Permutation p4 = Permutation::from_cycles(4, c4);
    CHECK(std::vector<Vertex>(p4.image().begin(), p4.image().end()) == std::vector<Vertex>{1, 3, 0, 2});
    Permutation p5 = cycles_of(5, {{1, 2, 5, 4}});
    CHECK(p5(2) == 2);
    CHECK(Permutation::from_cycles(3, {}).is_identity());
    std::vector<Cycle> dup{{0, 1}, {1, 2}};
    CHECK(code_of([&] { Permutation::from_cycles(4, dup); }) == ErrorCode::DuplicateId);
    std::vector<Cycle> out{{0, 7}};
    CHECK(code_of([&] { Permutation::from_cycles(4, out); }) == ErrorCode::IdOutOfRange);
    CHECK(code_of([] { Permutation::from_image({0, 0}); }) == ErrorCode::DuplicateId);
}

TEST_CASE("composition applies the right factor first") {
    Permutation a = cycles_of(3, {{1, 2}});
    Permutation b = cycles_of(3, {{2, 3}});
    Permutation ab = compose(a, b);
    CHECK(ab(0) == 1);  // b fixes 1, a sends it to 2
    CHECK(ab(1) == 2);  // 2 -> 3 under b, fixed by a
    CHECK(ab(2) == 0);  // 3 -> 2 -> 1
    CHECK(code_of([&] { compose(a, Permutation::identity(4)); }) == ErrorCode::SizeMismatch);

    Permutation s = cycles_of(6, {{1, 3, 5}, {2, 6}});
    CHECK(compose(s, Permutation::identity(6)) == s);
    CHECK(compose(s, s.inverse()).is_identity());
    Permutation t1 = cycles_of(4, {{1, 2}}), t2 = cycles_of(4, {{3, 4}});
    CHECK(compose(t1, t2) == compose(t2, t1));
}

TEST_CASE("composition matches pointwise application") {
    std::mt19937 rng(5);
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            Permutation a = random_permutation(n, rng), b = random_permutation(n, rng), c = random_permutation(n, rng);
            Permutation ab = compose(a, b);
            for (Vertex v = 0; v < n; ++v) CHECK(ab(v) == a(b(v)));
            CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        }
}

TEST_CASE("cycle decomposition") {
    auto id = cycle_decomposition(Permutation::identity(5));
    CHECK(id.count() == 5);
    CHECK(id.max_length() == 1);
    auto c4 = cycle_decomposition(Permutation::from_image({1, 3, 0, 2}));
    REQUIRE(c4.count() == 1);
    CHECK(c4.cycles[0] == Cycle{0, 1, 3, 2});
    auto p6 = cycle_decomposition(cycles_of(6, {{1, 2, 5, 4}}));
    CHECK(p6.count() == 3);
    CHECK(p6.max_length() == 4);
}

TEST_CASE("decomposition round trip") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 9;
        Permutation p = random_permutation(n, rng);
        auto d = cycle_decomposition(p);
        CHECK(Permutation::from_cycles(n, d.cycles) == p);
        int total = 0;
        for (std::size_t i = 0; i < d.cycles.size(); ++i) {
            const auto& c = d.cycles[i];
            total += static_cast<int>(c.size());
            CHECK(c.front() == *std::min_element(c.begin(), c.end()));
            if (i > 0) CHECK(d.cycles[i - 1].front() < c.front());
        }
        CHECK(total == n);
        bool no_fixed = std::all_of(d.cycles.begin(), d.cycles.end(), [](const Cycle& c) { return c.size() >= 2; });
        CHECK(p.is_fixed_point_free() == no_fixed);
    }
}

TEST_CASE("cycle notation text") {
    Permutation p = cycles_of(5, {{1, 2, 4, 3}});
    CHECK(format_cycles(p) == "(1 2 4 3)(5)");
    CHECK(parse_cycles(5, "(1 2 4 3)") == p);
    CHECK(parse_cycles(5, " ( 1 2 4 3 ) ( 5 ) ") == p);
    CHECK(parse_cycles(3, "").is_identity());
    CHECK(code_of([] { parse_cycles(3, "(1 2"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_cycles(3, "(1 4)"); }) == ErrorCode::IdOutOfRange);
    CHECK(code_of([] { parse_cycles(3, "(1 2)(2 3)"); }) == ErrorCode::DuplicateId);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Permutation r = random_permutation(8, rng);
        CHECK(parse_cycles(8, format_cycles(r)) == r);
    }
}

}
