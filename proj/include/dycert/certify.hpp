#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dycert/builder.hpp"
#include "dycert/corona.hpp"

namespace dycert {

struct Witness {
    std::string label;
    std::string value;  // rational "num/den", interval list, or short token
};

struct CheckParams {
    int k = 0;
    int stages = 0;
    std::optional<std::uint64_t> seed;
    std::string signs = "plus";
};

// The unit of verification output: every witness is an exact value and the
// verdict derives only from exact comparisons.
struct Certificate {
    std::string name;
    CheckParams params;
    std::vector<Witness> witnesses;
    bool pass = false;
    std::int64_t runtime_ms = 0;
};

struct EnergyReport {
    int k = 0;
    int stages = 0;
    Rational expectation_energy;  // sum over L of int |S_L w|^2 dsigma
    Rational achieved_energy;     // int |sum r_L S_L w|^2 dsigma for chosen signs
    Rational ratio;               // achieved / (k^2 w([0,1)))
};

// Lemma: the level set is exactly I(J)^-, its mass is (1/4) 2^{-4k} mu(J)
// (the proof's equality, strengthening the stated >=), and the multiplier
// plateaus at (2k+1) lambda / 3 on it.
Certificate check_dist_estimate(const DyadicInterval& J, const Rational& lambda, int k);

// Measure Preserving Lemma items (1)-(7) as exact statements between
// stage_measure(c, j) and stage_measure(c, j+1), item (1) as equality.
Certificate check_measure_preserving(const Construction& c, int j);

// sum over nodes of w(level set) equals (1/6)(1 - (1-2^{-4k})^{M'+1}); at the
// default stage count additionally certifies the strict bound > (1/6) w([0,1]).
Certificate check_main_estimate(const Construction& c);

// Generic stopping-time corona of the built weight equals the constructed
// forest stage by stage, plus the five density relations on every I in Xi_L^+.
Certificate check_corona_match(const Construction& c);

// Mw <= 8^l w(L)/|L| and Mw >= 4^{l-1} w(L)/|L| on supp(w) ∩ Delta_l, the
// sigma lower bound on every node interval and terminal level set; reports
// the 4^l lower-bound variant without asserting it.
Certificate check_maximal_bounds(const Construction& c);

// Rademacher expectation identity: E_r int |sum r_L S_L w|^2 dsigma equals
// the sign-independent sum of squares.
Rational expectation_energy(const Construction& c);

struct DerandomizedSigns {
    std::vector<int> signs;  // depth-first preorder
    EnergyReport report;
};

// Greedy conditional-expectation pass in depth-first order; the chosen signs
// are written into c and guarantee achieved >= expectation exactly.
DerandomizedSigns derandomize_signs(Construction& c);

// Exhaustive-signs oracle: truncates to the largest build with <= 7 nodes,
// certifies expectation_energy == mean of achieved energies over all sign
// patterns, and derandomized achieved >= that mean.
Certificate check_sign_oracle(int k, int stages);

// The full chain with derandomized signs:
//   achieved >= expectation >= sum (k w(L)/|L|)^2 sigma(level set)
//     >= (k^2/64) sum w(Delta_1(level set)) = (k^2/64) sum w(level set),
// every link an exact comparison, plus the closed-form value of the last sum.
std::pair<EnergyReport, Certificate> main_lemma_report(int k, int stages,
                                                       std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace dycert
