#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dycert/haar.hpp"
#include "dycert/step.hpp"

namespace dycert {

// Thrown when a requested build would exceed the node cap; carries the exact
// required node count (which for k >= 2 full builds is astronomically large).
struct ResourceCapError : std::runtime_error {
    ResourceCapError(std::string required, std::uint64_t cap)
        : std::runtime_error("construction requires " + required + " nodes, cap is " +
                             std::to_string(cap)),
          required_nodes(std::move(required)),
          node_cap(cap) {}
    std::string required_nodes;
    std::uint64_t node_cap;
};

// A stopping interval L of the construction: stage j, sign r_L, and one child
// L'(I) = I^{--} per I in Xi_L^+ (children kept in position order).
struct StoppingNode {
    DyadicInterval interval;
    int stage = 0;
    int sign = +1;
    std::vector<StoppingNode> children;

    XiCollection xi(int k) const { return dycert::xi(interval, k); }
};

struct Construction {
    int k = 1;
    int stages = 0;  // M'
    StoppingNode root;
    StepMeasure weight;  // mu_{M'}
    std::string sign_mode = "plus";

    std::size_t node_count() const;
};

template <class F>
void visit(const StoppingNode& n, F&& f) {
    f(n);
    for (const auto& ch : n.children) visit(ch, f);
}

template <class F>
void visit(StoppingNode& n, F&& f) {
    f(n);
    for (auto& ch : n.children) visit(ch, f);
}

std::vector<const StoppingNode*> nodes_at_stage(const StoppingNode& root, int stage);

// mu_J^lambda: the single block [jp(J), rep(J)) at height lambda; its total
// mass is (2/3) lambda |J|.
StepMeasure model_measure(const DyadicInterval& J, const Rational& lambda);

// M(k) = [log 3 / log (1 - 2^{-4k})^{-1}] + 1, evaluated without floating
// logarithms: the floor is the largest m with 2^{4km} <= 3 (2^{4k} - 1)^m.
int default_stage_count(int k);

// Sum over j <= stages of (2k)^j, exact.
Integer required_node_count(int k, int stages);

constexpr std::uint64_t kDefaultNodeCap = std::uint64_t(1) << 21;

Construction build(int k, int stages, std::uint64_t node_cap = kDefaultNodeCap);

// mu_j reconstructed from the forest: one frozen block [jp(L), rep(I(L))) at
// height 6^i per node L of stage i < j, one live block [jp(L'), rep(L')) at
// height 6^j per stage-j node.
StepMeasure stage_measure(const Construction& c, int j);

void assign_signs_all_plus(Construction& c);
void assign_signs_random(Construction& c, std::uint64_t seed);
// Throws std::invalid_argument unless the map covers every node.
void assign_signs_explicit(Construction& c, const std::map<DyadicInterval, int>& signs);

}  // namespace dycert
