#include <doctest.h>

#include "dycert/builder.hpp"

using namespace dycert;

namespace {

Rational rq(long n, long d) { return make_rational(n, d); }
DyadicInterval iv(long m, int n) { return DyadicInterval(Integer(m), n); }

}  // namespace

TEST_CASE("model measure") {
    StepMeasure m0 = model_measure(unit_interval(), Rational(1));
    REQUIRE(m0.blocks().size() == 1);
    CHECK(m0.blocks()[0].lo == rq(1, 3));
    CHECK(m0.blocks()[0].hi == 1);
    CHECK(m0.total_mass() == rq(2, 3));

    StepMeasure m1 = model_measure(iv(4, 3), Rational(6));
    CHECK(m1.blocks()[0].lo == rq(13, 24));
    CHECK(m1.blocks()[0].hi == rq(5, 8));
    CHECK(m1.total_mass() == rq(1, 2));

    StepMeasure m2 = model_measure(iv(12, 5), Rational(6));
    CHECK(m2.blocks()[0].lo == rq(37, 96));
    CHECK(m2.total_mass() == rq(1, 8));

    CHECK_THROWS_AS(model_measure(unit_interval(), Rational(0)), std::invalid_argument);

    for (const auto& J : {unit_interval(), iv(5, 4)})
        for (long lambda : {1L, 6L})
            CHECK(model_measure(J, Rational(lambda)).total_mass() ==
                  rq(2, 3) * lambda * J.length());
}

TEST_CASE("default stage count") {
    CHECK(default_stage_count(1) == 18);
    CHECK(default_stage_count(2) == 281);
    CHECK(default_stage_count(3) == 4500);

    // Defining property: (1-2^{-4k})^{M-1} > 1/3 >= (1-2^{-4k})^M.
    for (int k : {1, 2, 3}) {
        int M = default_stage_count(k);
        Integer a = Integer(1) << (4 * k);
        Rational base = make_rational(a - 1, a);
        CHECK(rpow(base, static_cast<unsigned long>(M) - 1) > rq(1, 3));
        CHECK(rpow(base, static_cast<unsigned long>(M)) <= rq(1, 3));
    }
}

TEST_CASE("required node count") {
    CHECK(required_node_count(1, 18) == Integer((1L << 19) - 1));
    CHECK(required_node_count(2, 2) == 21);
    CHECK(required_node_count(3, 1) == 7);
}

TEST_CASE("build base case") {
    Construction c = build(1, 0);
    CHECK(c.node_count() == 1);
    CHECK(c.root.interval == unit_interval());
    CHECK(c.root.children.empty());
    CHECK(c.weight == model_measure(unit_interval(), Rational(1)));
}

TEST_CASE("build one stage, frozen values") {
    Construction c = build(1, 1);
    REQUIRE(c.root.children.size() == 2);
    CHECK(c.root.children[0].interval == iv(12, 5));  // [3/8,13/32)
    CHECK(c.root.children[1].interval == iv(4, 3));   // [1/2,5/8)
    CHECK(c.root.children[0].stage == 1);

    const auto& bs = c.weight.blocks();
    REQUIRE(bs.size() == 3);
    CHECK(bs[0].lo == rq(1, 3));
    CHECK(bs[0].hi == rq(3, 8));
    CHECK(bs[0].height == 1);
    CHECK(bs[1].lo == rq(37, 96));
    CHECK(bs[1].hi == rq(39, 96));
    CHECK(bs[1].height == 6);
    CHECK(bs[2].lo == rq(13, 24));
    CHECK(bs[2].hi == rq(15, 24));
    CHECK(bs[2].height == 6);
    CHECK(c.weight.total_mass() == rq(2, 3));
}

TEST_CASE("node counts per stage are (2k)^j") {
    for (int k : {1, 2, 3}) {
        Construction c = build(k, 2);
        std::size_t expect = 1;
        for (int j = 0; j <= 2; ++j) {
            CHECK(nodes_at_stage(c.root, j).size() == expect);
            expect *= static_cast<std::size_t>(2 * k);
        }
    }
}

TEST_CASE("children sit on the left-left grandchildren of the plus intervals") {
    Construction c = build(2, 1);
    XiCollection x = c.root.xi(2);
    REQUIRE(c.root.children.size() == x.plus.size());
    for (const auto& I : x.plus) {
        bool found = false;
        for (const auto& ch : c.root.children)
            found |= ch.interval == I.left_left_grandchild();
        CHECK(found);
    }
    // Position order.
    for (std::size_t i = 0; i + 1 < c.root.children.size(); ++i)
        CHECK(c.root.children[i].interval.hi() <= c.root.children[i + 1].interval.lo());
}

TEST_CASE("mass conservation across stages") {
    Construction c = build(1, 8);
    for (int j = 0; j <= 8; ++j)
        CHECK(stage_measure(c, j).total_mass() == rq(2, 3));
    Construction c3 = build(3, 1);
    CHECK(stage_measure(c3, 0).total_mass() == rq(2, 3));
    CHECK(stage_measure(c3, 1).total_mass() == rq(2, 3));
}

TEST_CASE("stage measures") {
    Construction c = build(1, 3);
    CHECK(stage_measure(c, 0) == model_measure(unit_interval(), Rational(1)));
    CHECK(stage_measure(c, 1) == build(1, 1).weight);
    CHECK(stage_measure(c, 3) == c.weight);
    CHECK_THROWS_AS(stage_measure(c, 4), std::out_of_range);
    CHECK_THROWS_AS(stage_measure(c, -1), std::out_of_range);
}

TEST_CASE("terminal intervals disjoint from other stopping intervals") {
    // Literal all-pairs oracle on a small forest.
    Construction c = build(1, 4);
    std::vector<const StoppingNode*> nodes;
    visit(c.root, [&](const StoppingNode& n) { nodes.push_back(&n); });
    for (const StoppingNode* a : nodes) {
        DyadicInterval ta = a->xi(c.k).terminal();
        for (const StoppingNode* b : nodes) {
            if (b->stage == 0) continue;  // stage >= 1 in the statement
            if (b == a) continue;
            if (b->interval.contains(a->interval)) continue;  // ancestors contain I(L) trivially
            CHECK(ta.disjoint_from(b->interval));
            CHECK(ta.disjoint_from(b->xi(c.k).terminal()));
        }
        // Terminals pairwise disjoint, including against ancestors' terminals.
        for (const StoppingNode* b : nodes)
            if (b != a) CHECK(ta.disjoint_from(b->xi(c.k).terminal()));
    }
}

TEST_CASE("resource cap") {
    CHECK_THROWS_AS(build(1, 21, 1000), ResourceCapError);
    try {
        build(2, default_stage_count(2));
        FAIL("expected ResourceCapError");
    } catch (const ResourceCapError& e) {
        CHECK(e.required_nodes == required_node_count(2, 281).get_str());
        CHECK(e.node_cap == kDefaultNodeCap);
        CHECK(e.required_nodes.size() > 100);  // a 4^281-scale count
    }
}

TEST_CASE("sign assignment") {
    Construction c = build(1, 2);
    assign_signs_all_plus(c);
    visit(c.root, [](const StoppingNode& n) { CHECK(n.sign == 1); });
    CHECK(c.sign_mode == "plus");

    assign_signs_random(c, 42);
    std::vector<int> first;
    visit(c.root, [&](const StoppingNode& n) { first.push_back(n.sign); });
    assign_signs_random(c, 42);
    std::vector<int> second;
    visit(c.root, [&](const StoppingNode& n) { second.push_back(n.sign); });
    CHECK(first == second);
    CHECK(c.sign_mode == "random");

    Construction c0 = build(1, 0);
    std::map<DyadicInterval, int> m{{unit_interval(), -1}};
    assign_signs_explicit(c0, m);
    CHECK(c0.root.sign == -1);
    Construction c1 = build(1, 1);
    CHECK_THROWS_AS(assign_signs_explicit(c1, m), std::invalid_argument);
}
