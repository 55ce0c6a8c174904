#pragma once

#include <stdexcept>
#include <vector>

#include "dycert/builder.hpp"
#include "dycert/step.hpp"

namespace dycert {

struct UnsupportedGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoronaScanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoronaNode {
    DyadicInterval interval;
    Rational density;  // w(L) / |L|
    std::vector<CoronaNode> children;
};

struct CoronaForest {
    CoronaNode root;
};

struct CoronaOptions {
    // Levels below the root the stopping-time scan may descend. Max-height
    // pruning terminates on every constructed weight long before this; a
    // measure whose corona is genuinely infinite trips the cap instead of
    // hanging (see CoronaScanError).
    int max_scan_depth = 4096;
};

// Stopping-time corona decomposition relative to w: children of L are the
// maximal dyadic J ⊊ L with w(J)/|J| >= 4 w(L)/|L|; subtrees whose max block
// height sits below the threshold are pruned. Requires w(root) > 0.
CoronaForest corona(const StepMeasure& w, const DyadicInterval& root,
                    const CoronaOptions& opts = {});

// Exact dyadic maximal function restricted to supp(w). For x in a block of
// height h with zero-mass gaps (g-, g+) to its neighbours, every dyadic
// Q ∋ x smaller than both gaps lies inside the block extended by the gaps,
// so its average is <= h; only Q with |Q| >= min(g-, g+) need enumeration
// (a gap against the domain boundary never constrains). Touching blocks of
// equal height are merged by normalization; a zero gap between blocks of
// different heights is reported as unsupported geometry.
StepFunction maximal_on_support(const StepMeasure& w);

// sigma = w / (Mw)^2 on supp(w), zero elsewhere.
StepMeasure sigma(const StepMeasure& w);

struct DeltaRegion {
    DyadicInterval base;
    int level = 1;
    IntervalList region;
};

// "Take away the children": for E in the corona cell of a stage-j node,
// Delta_1 E = E minus the stage-(j+1) stopping intervals inside E, and
// Delta_l E for l > 1 peels between stages j+l-1 and j+l.
DeltaRegion delta_region(const DyadicInterval& E, const StoppingNode& forest, int l);
DeltaRegion delta_region(const DyadicInterval& E, const CoronaForest& forest, int l);

// Sum over l >= 1 of 8^{-2l} (|L|/w(L))^2 w(Delta_l E) with L the minimal
// stopping interval containing E; finitely many terms are nonzero.
Rational sigma_lower_bound(const StepMeasure& w, const StoppingNode& forest,
                           const DyadicInterval& E);

// Gamma(E): the minimal stopping interval containing E.
const StoppingNode* corona_cell(const StoppingNode& forest, const DyadicInterval& E);

}  // namespace dycert
