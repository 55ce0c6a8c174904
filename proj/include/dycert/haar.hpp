#pragma once

#include <vector>

#include "dycert/dyadic.hpp"
#include "dycert/step.hpp"

namespace dycert {

// The chain J = I_0 ⊇ ... ⊇ I_{2k} with |I_i| = 4|I_{i+1}| and the jumping
// point of J inside every I_i^-, together with the right children of the
// non-terminal chain members.
struct XiCollection {
    DyadicInterval J;
    int k = 1;
    std::vector<DyadicInterval> chain;  // I_0 .. I_{2k}
    std::vector<DyadicInterval> plus;   // I_0^+ .. I_{2k-1}^+

    const DyadicInterval& terminal() const { return chain.back(); }  // I(J)
};

// Closed-form descent I_{i+1} = (I_i^-)^+; the alternation of the jumping
// point between left and right halves makes this the unique chain.
XiCollection xi(const DyadicInterval& J, int k);

// c_I = <w, h_I> / sqrt(|I|) = (w(I^+) - w(I^-)) / |I|. The sqrt never
// appears: multiplier outputs use c_I (1_{I^+} - 1_{I^-}) and squared
// coefficients use c_I^2 |I|, so the whole pipeline stays rational.
Rational haar_ratio(const StepMeasure& w, const DyadicInterval& I);

// S_{J,r} w = r * sum over the chain of c_I (1_{I^+} - 1_{I^-}).
StepFunction apply_block(const DyadicInterval& J, int k, int sign, const StepMeasure& w);

// Exact region where |f| > t (strict), t >= 0.
IntervalList level_set(const StepFunction& f, const Rational& t);

}  // namespace dycert
