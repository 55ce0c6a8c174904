#include "dycert/haar.hpp"

#include <stdexcept>

namespace dycert {

XiCollection xi(const DyadicInterval& J, int k) {
    if (k < 1) throw std::invalid_argument("xi requires k >= 1");
    XiCollection x;
    x.J = J;
    x.k = k;
    x.chain.reserve(2 * k + 1);
    x.plus.reserve(2 * k);
    x.chain.push_back(J);
    for (int i = 0; i < 2 * k; ++i) {
        const DyadicInterval& cur = x.chain.back();
        x.plus.push_back(cur.right());
        x.chain.push_back(cur.left().right());
    }
    return x;
}

Rational haar_ratio(const StepMeasure& w, const DyadicInterval& I) {
    Rational mid = I.midpoint();
    return (w.mass(mid, I.hi()) - w.mass(I.lo(), mid)) / I.length();
}

StepFunction apply_block(const DyadicInterval& J, int k, int sign, const StepMeasure& w) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    XiCollection x = xi(J, k);
    std::vector<Rational> c;
    c.reserve(x.chain.size());
    for (const auto& I : x.chain) c.push_back(haar_ratio(w, I));

    // Value regions, left to right: I_i^{--} for i < 2k carry the partial sums
    // -(c_0+...+c_i); then I(J)^- carries the full sum negated, I(J)^+ flips
    // the last term, and the I_i^+ walk back out.
    std::vector<Piece> pieces;
    pieces.reserve(2 * x.chain.size() + 1);
    Rational r(sign);
    Rational running = 0;
    for (int i = 0; i < 2 * k; ++i) {
        running += c[static_cast<std::size_t>(i)];
        DyadicInterval region = x.chain[static_cast<std::size_t>(i)].left().left();
        pieces.push_back({region.lo(), region.hi(), -r * running});
    }
    const DyadicInterval& term = x.terminal();
    Rational full = running + c.back();
    pieces.push_back({term.left().lo(), term.left().hi(), -r * full});
    pieces.push_back({term.right().lo(), term.right().hi(), r * (c.back() - running)});
    for (int i = 2 * k - 1; i >= 0; --i) {
        running -= c[static_cast<std::size_t>(i)];
        pieces.push_back({x.plus[static_cast<std::size_t>(i)].lo(),
                          x.plus[static_cast<std::size_t>(i)].hi(),
                          r * (c[static_cast<std::size_t>(i)] - running)});
    }
    return StepFunction::from_pieces(std::move(pieces));
}

IntervalList level_set(const StepFunction& f, const Rational& t) {
    if (t < 0) throw std::invalid_argument("level_set requires t >= 0");
    IntervalList out;
    for (const auto& p : f.pieces()) {
        if (abs(p.value) > t) out.push_back({p.lo, p.hi});
    }
    return normalize_spans(std::move(out));
}

}  // namespace dycert
