#include <doctest.h>

#include "dycert/dyadic.hpp"

using namespace dycert;

namespace {

// Endpoint-based oracle, independent of the (m, n) index arithmetic.
struct RatIv {
    Rational lo, hi;
    RatIv left() const { return {lo, (lo + hi) / 2}; }
    RatIv right() const { return {(lo + hi) / 2, hi}; }
    Rational jp() const { return lo + (hi - lo) / 3; }
};

void compare_trees(const DyadicInterval& a, const RatIv& b, int depth) {
    REQUIRE(a.lo() == b.lo);
    REQUIRE(a.hi() == b.hi);
    REQUIRE(a.jumping_point() == b.jp());
    if (depth == 0) return;
    compare_trees(a.left(), b.left(), depth - 1);
    compare_trees(a.right(), b.right(), depth - 1);
}

DyadicInterval iv(long m, int n) { return DyadicInterval(Integer(m), n); }

}  // namespace

TEST_CASE("index arithmetic matches endpoint arithmetic to depth 6") {
    compare_trees(unit_interval(), RatIv{Rational(0), Rational(1)}, 6);
}

TEST_CASE("children") {
    CHECK(unit_interval().left() == iv(0, 1));                 // [0,1/2)
    CHECK(iv(1, 2).right() == iv(3, 3));                       // [1/4,1/2) -> [3/8,1/2)
    CHECK(iv(1, 2).left().right() == iv(5, 4));                // two applications -> [5/16,3/8)
    CHECK(iv(5, 4).lo() == make_rational(5, 16));
    CHECK(iv(5, 4).hi() == make_rational(3, 8));
}

TEST_CASE("parent child consistency") {
    DyadicInterval I = iv(5, 4);
    CHECK(I.left().parent() == I);
    CHECK(I.right().parent() == I);
    CHECK_THROWS_AS(unit_interval().parent(), std::invalid_argument);
}

TEST_CASE("jumping point") {
    CHECK(unit_interval().jumping_point() == make_rational(1, 3));
    CHECK(iv(5, 4).jumping_point() == make_rational(1, 3));  // shared along the chain
    CHECK(iv(4, 3).jumping_point() == make_rational(13, 24));
}

TEST_CASE("jumping point is interior at relative position 1/3") {
    for (long m : {0L, 1L, 5L, 11L, 21L})
        for (int n : {5, 6, 7}) {
            DyadicInterval I(Integer(m), n);
            Rational jp = I.jumping_point();
            CHECK(I.lo() < jp);
            CHECK(jp < I.hi());
            CHECK((jp - I.lo()) / I.length() == make_rational(1, 3));
        }
}

TEST_CASE("right end") {
    CHECK(unit_interval().right_end() == 1);
    CHECK(iv(5, 4).right_end() == make_rational(3, 8));
    CHECK(iv(12, 5).right_end() == make_rational(13, 32));
}

TEST_CASE("left-left grandchild") {
    CHECK(iv(1, 1).left_left_grandchild() == iv(4, 3));    // [1/2,1) -> [1/2,5/8)
    CHECK(iv(3, 3).left_left_grandchild() == iv(12, 5));   // [3/8,1/2) -> [3/8,13/32)
    CHECK(unit_interval().left_left_grandchild() == iv(0, 2));
    for (long m : {0L, 3L, 7L}) {
        DyadicInterval I(Integer(m), 3);
        CHECK(I.left_left_grandchild().length() == I.length() / 4);
        CHECK(I.left_left_grandchild() == I.left().left());
    }
}

TEST_CASE("alternation of the jumping point to depth 12") {
    // Walking down the chain of intervals containing jp(J), the side of the
    // child holding jp alternates, starting left.
    for (DyadicInterval J : {unit_interval(), iv(1, 2), iv(5, 4), iv(4, 3)}) {
        Rational jp = J.jumping_point();
        DyadicInterval cur = J;
        Side expected = Side::Left;
        for (int d = 0; d < 12; ++d) {
            DyadicInterval l = cur.left(), r = cur.right();
            bool in_left = l.contains_point(jp);
            CHECK(in_left != r.contains_point(jp));
            CHECK(in_left == (expected == Side::Left));
            cur = in_left ? l : r;
            expected = (expected == Side::Left) ? Side::Right : Side::Left;
        }
    }
}

TEST_CASE("containment and disjointness") {
    CHECK(unit_interval().contains(iv(5, 4)));
    CHECK(iv(1, 2).contains(iv(5, 4)));
    CHECK_FALSE(iv(5, 4).contains(iv(1, 2)));
    CHECK(iv(0, 1).disjoint_from(iv(1, 1)));
    CHECK_FALSE(iv(0, 1).disjoint_from(iv(1, 2)));
    CHECK(iv(3, 3).contains(iv(3, 3)));
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(DyadicInterval(Integer(-1), 2), std::invalid_argument);
    CHECK_THROWS_AS(DyadicInterval(Integer(4), 2), std::invalid_argument);
    CHECK_THROWS_AS(DyadicInterval(Integer(0), -1), std::invalid_argument);
}

TEST_CASE("rational serialization") {
    CHECK(rat_str(make_rational(2, 6)) == "1/3");
    CHECK(rat_str(Rational(-5) / 72) == "-5/72");
    CHECK(rat_str(Rational(0)) == "0/1");
    CHECK(rat_parse("16/48") == make_rational(1, 3));
    CHECK(rat_parse("7") == Rational(7));
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
}
