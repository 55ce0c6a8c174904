#include "dycert/builder.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace dycert {

std::size_t Construction::node_count() const {
    std::size_t n = 0;
    visit(root, [&](const StoppingNode&) { ++n; });
    return n;
}

std::vector<const StoppingNode*> nodes_at_stage(const StoppingNode& root, int stage) {
    std::vector<const StoppingNode*> out;
    visit(root, [&](const StoppingNode& n) {
        if (n.stage == stage) out.push_back(&n);
    });
    return out;
}

StepMeasure model_measure(const DyadicInterval& J, const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("model measure requires lambda > 0");
    return StepMeasure::from_sorted_disjoint({{J.jumping_point(), J.right_end(), lambda}});
}

int default_stage_count(int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    Integer a = Integer(1) << (4 * k);  // 2^{4k}
    Integer b = a - 1;
    // Largest m with a^m <= 3 b^m, then one more.
    Integer lhs = 1, rhs = 3;
    int m = 0;
    while (true) {
        Integer nl = lhs * a;
        Integer nr = rhs * b;
        if (nl > nr) break;
        lhs = std::move(nl);
        rhs = std::move(nr);
        ++m;
    }
    return m + 1;
}

Integer required_node_count(int k, int stages) {
    Integer total = 0, term = 1;
    for (int j = 0; j <= stages; ++j) {
        total += term;
        term *= 2 * k;
    }
    return total;
}

namespace {

void grow(StoppingNode& node, int k, int stages) {
    if (node.stage >= stages) return;
    XiCollection x = node.xi(k);
    node.children.reserve(x.plus.size());
    // Xi_L^+ is listed outermost first; the grandchildren increase in
    // position in the reverse order.
    for (auto it = x.plus.rbegin(); it != x.plus.rend(); ++it) {
        StoppingNode child;
        child.interval = it->left_left_grandchild();
        child.stage = node.stage + 1;
        node.children.push_back(std::move(child));
    }
    for (auto& ch : node.children) grow(ch, k, stages);
}

void emit_stage_blocks(const StoppingNode& node, int k, int j,
                       const std::vector<Rational>& pow6, std::vector<Block>& out) {
    if (node.stage == j) {
        out.push_back({node.interval.jumping_point(), node.interval.right_end(), pow6[j]});
        return;
    }
    DyadicInterval term = node.xi(k).terminal();
    out.push_back({node.interval.jumping_point(), term.right_end(),
                   pow6[static_cast<std::size_t>(node.stage)]});
    for (const auto& ch : node.children) emit_stage_blocks(ch, k, j, pow6, out);
}

}  // namespace

Construction build(int k, int stages, std::uint64_t node_cap) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (stages < 0) throw std::invalid_argument("stages must be >= 0");
    Integer required = required_node_count(k, stages);
    if (required > Integer(static_cast<unsigned long>(node_cap)))
        throw ResourceCapError(required.get_str(), node_cap);

    Construction c;
    c.k = k;
    c.stages = stages;
    c.root.interval = unit_interval();
    c.root.stage = 0;
    grow(c.root, k, stages);
    c.weight = stage_measure(c, stages);
    return c;
}

StepMeasure stage_measure(const Construction& c, int j) {
    if (j < 0 || j > c.stages) throw std::out_of_range("stage out of range");
    std::vector<Rational> pow6;
    pow6.reserve(static_cast<std::size_t>(j) + 1);
    for (int i = 0; i <= j; ++i) pow6.push_back(Rational(ipow(Integer(6), static_cast<unsigned long>(i))));
    std::vector<Block> blocks;
    emit_stage_blocks(c.root, c.k, j, pow6, blocks);
    return StepMeasure::from_sorted_disjoint(std::move(blocks));
}

void assign_signs_all_plus(Construction& c) {
    visit(c.root, [](StoppingNode& n) { n.sign = +1; });
    c.sign_mode = "plus";
}

void assign_signs_random(Construction& c, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    visit(c.root, [&](StoppingNode& n) { n.sign = (gen() & 1) ? +1 : -1; });
    c.sign_mode = "random";
}

void assign_signs_explicit(Construction& c, const std::map<DyadicInterval, int>& signs) {
    visit(c.root, [&](StoppingNode& n) {
        auto it = signs.find(n.interval);
        if (it == signs.end())
            throw std::invalid_argument("explicit sign map misses node " + n.interval.str());
        if (it->second != 1 && it->second != -1)
            throw std::invalid_argument("explicit sign must be +1 or -1");
        n.sign = it->second;
    });
    c.sign_mode = "explicit";
}

}  // namespace dycert
