#pragma once

#include <vector>

#include "dycert/dyadic.hpp"
#include "dycert/rational.hpp"

namespace dycert {

// Half-open interval [lo, hi) with rational endpoints.
struct Span {
    Rational lo;
    Rational hi;

    bool operator==(const Span& o) const { return lo == o.lo && hi == o.hi; }
};

using IntervalList = std::vector<Span>;

// Normal form: sorted, disjoint, lo < hi, touching spans merged.
IntervalList normalize_spans(IntervalList spans);
// a \ b, both in normal form.
IntervalList subtract_spans(const IntervalList& a, const IntervalList& b);
IntervalList intersect_spans(const IntervalList& a, const IntervalList& b);
Rational spans_total_length(const IntervalList& a);

struct Block {
    Rational lo;
    Rational hi;
    Rational height;  // > 0
};

struct SupportBlock {
    Block block;
    Rational left_margin;   // zero-mass gap to the previous block or to 0
    Rational right_margin;  // zero-mass gap to the next block or to 1
};

// A finite nonnegative piecewise-constant measure on [0,1). Blocks are
// sorted, pairwise disjoint, strictly inside [0,1], with positive heights;
// touching blocks of equal height are merged and zero-height blocks dropped.
// Prefix masses are kept for O(log n) mass queries.
class StepMeasure {
  public:
    StepMeasure() = default;

    static StepMeasure from_blocks(std::vector<Block> blocks);
    // Trusted fast path for already sorted/disjoint input (still verified).
    static StepMeasure from_sorted_disjoint(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

    // w([a,b)), requires a <= b.
    Rational mass(const Rational& a, const Rational& b) const;
    Rational mass(const Span& s) const { return mass(s.lo, s.hi); }
    Rational mass(const DyadicInterval& I) const { return mass(I.lo(), I.hi()); }
    Rational mass(const IntervalList& region) const;
    Rational total_mass() const;

    // w(I)/|I|.
    Rational average(const DyadicInterval& I) const;

    // Max block height among blocks intersecting (a,b); 0 if none.
    Rational max_height_in(const Rational& a, const Rational& b) const;

    // Blocks clipped to the complement of the given normal-form region.
    StepMeasure restrict_outside(const IntervalList& region) const;
    StepMeasure restrict_to(const Span& s) const;

    std::vector<SupportBlock> support_blocks() const;

    bool operator==(const StepMeasure& o) const { return same_blocks(o); }
    bool operator!=(const StepMeasure& o) const { return !same_blocks(o); }

  private:
    bool same_blocks(const StepMeasure& o) const;
    void build_prefix();

    std::vector<Block> blocks_;
    std::vector<Rational> prefix_;  // prefix_[i] = mass of blocks_[0..i)
};

// Pointwise sum of finitely many step measures.
StepMeasure combine(const std::vector<StepMeasure>& ms);

struct Piece {
    Rational lo;
    Rational hi;
    Rational value;  // any sign, nonzero
};

// A signed piecewise-constant function, zero outside its pieces. Pieces are
// sorted, disjoint, nonzero, with touching equal-valued pieces merged.
class StepFunction {
  public:
    StepFunction() = default;

    static StepFunction from_pieces(std::vector<Piece> pieces);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    StepFunction scaled(const Rational& c) const;
    IntervalList support() const;

    bool operator==(const StepFunction& o) const { return pieces_same(o); }

  private:
    bool pieces_same(const StepFunction& o) const;
    std::vector<Piece> pieces_;
};

StepFunction add(const StepFunction& f, const StepFunction& g);

// Exact integral of f^2 dw over the common refinement of breakpoints.
Rational integrate_square(const StepFunction& f, const StepMeasure& w);
// Exact integral of f*g dw.
Rational integrate_product(const StepFunction& f, const StepFunction& g, const StepMeasure& w);

}  // namespace dycert
