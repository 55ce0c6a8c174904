#include "dycert/step.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace dycert {

IntervalList normalize_spans(IntervalList spans) {
    IntervalList in;
    in.reserve(spans.size());
    for (auto& s : spans) {
        if (s.lo > s.hi) throw std::invalid_argument("span with lo > hi");
        if (s.lo < s.hi) in.push_back(std::move(s));
    }
    std::sort(in.begin(), in.end(),
              [](const Span& a, const Span& b) { return a.lo < b.lo; });
    IntervalList out;
    for (auto& s : in) {
        if (!out.empty() && s.lo <= out.back().hi) {
            if (s.hi > out.back().hi) out.back().hi = s.hi;  // union semantics
        } else {
            out.push_back(std::move(s));
        }
    }
    return out;
}

IntervalList subtract_spans(const IntervalList& a, const IntervalList& b) {
    IntervalList out;
    std::size_t j = 0;
    for (const auto& s : a) {
        Rational cur = s.lo;
        while (j < b.size() && b[j].hi <= cur) ++j;
        std::size_t jj = j;
        while (cur < s.hi) {
            if (jj >= b.size() || b[jj].lo >= s.hi) {
                out.push_back({cur, s.hi});
                break;
            }
            if (b[jj].lo > cur) out.push_back({cur, b[jj].lo});
            cur = b[jj].hi;
            ++jj;
        }
    }
    return normalize_spans(std::move(out));
}

IntervalList intersect_spans(const IntervalList& a, const IntervalList& b) {
    IntervalList out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        Rational lo = std::max(a[i].lo, b[j].lo);
        Rational hi = std::min(a[i].hi, b[j].hi);
        if (lo < hi) out.push_back({lo, hi});
        if (a[i].hi <= b[j].hi) ++i;
        else ++j;
    }
    return out;
}

Rational spans_total_length(const IntervalList& a) {
    Rational t = 0;
    for (const auto& s : a) t += s.hi - s.lo;
    return t;
}

StepMeasure StepMeasure::from_blocks(std::vector<Block> blocks) {
    std::vector<Block> in;
    in.reserve(blocks.size());
    for (auto& b : blocks) {
        if (b.height < 0) throw std::invalid_argument("negative block height");
        if (b.lo > b.hi) throw std::invalid_argument("block with lo > hi");
        if (b.height == 0 || b.lo == b.hi) continue;  // zero-height blocks are dropped
        in.push_back(std::move(b));
    }
    std::sort(in.begin(), in.end(),
              [](const Block& a, const Block& b) { return a.lo < b.lo; });
    return from_sorted_disjoint(std::move(in));
}

StepMeasure StepMeasure::from_sorted_disjoint(std::vector<Block> blocks) {
    StepMeasure m;
    for (auto& b : blocks) {
        if (b.height <= 0 || b.lo >= b.hi)
            throw std::invalid_argument("degenerate block");
        if (b.lo < 0 || b.hi > 1)
            throw std::invalid_argument("block outside [0,1)");
        if (!m.blocks_.empty()) {
            Block& prev = m.blocks_.back();
            if (b.lo < prev.hi) throw std::invalid_argument("overlapping blocks");
            if (b.lo == prev.hi && b.height == prev.height) {
                prev.hi = std::move(b.hi);
                continue;
            }
        }
        m.blocks_.push_back(std::move(b));
    }
    m.build_prefix();
    return m;
}

void StepMeasure::build_prefix() {
    prefix_.clear();
    prefix_.reserve(blocks_.size() + 1);
    prefix_.emplace_back(0);
    for (const auto& b : blocks_)
        prefix_.push_back(prefix_.back() + b.height * (b.hi - b.lo));
}

Rational StepMeasure::mass(const Rational& a, const Rational& b) const {
    if (a > b) throw std::invalid_argument("mass with a > b");
    if (blocks_.empty() || a == b) return Rational(0);
    // First block with hi > a.
    auto first = std::partition_point(blocks_.begin(), blocks_.end(),
                                      [&](const Block& blk) { return blk.hi <= a; });
    // First block with lo >= b.
    auto last = std::partition_point(first, blocks_.end(),
                                     [&](const Block& blk) { return blk.lo < b; });
    if (first == last) return Rational(0);
    std::size_t i0 = static_cast<std::size_t>(first - blocks_.begin());
    std::size_t i1 = static_cast<std::size_t>(last - blocks_.begin());
    Rational total = prefix_[i1] - prefix_[i0];
    const Block& bf = blocks_[i0];
    if (a > bf.lo) total -= bf.height * (a - bf.lo);
    const Block& bl = blocks_[i1 - 1];
    if (b < bl.hi) total -= bl.height * (bl.hi - b);
    return total;
}

Rational StepMeasure::mass(const IntervalList& region) const {
    Rational t = 0;
    for (const auto& s : region) t += mass(s.lo, s.hi);
    return t;
}

Rational StepMeasure::total_mass() const {
    return prefix_.empty() ? Rational(0) : prefix_.back();
}

Rational StepMeasure::average(const DyadicInterval& I) const {
    return mass(I) / I.length();
}

Rational StepMeasure::max_height_in(const Rational& a, const Rational& b) const {
    auto first = std::partition_point(blocks_.begin(), blocks_.end(),
                                      [&](const Block& blk) { return blk.hi <= a; });
    Rational best = 0;
    for (auto it = first; it != blocks_.end() && it->lo < b; ++it)
        if (it->height > best) best = it->height;
    return best;
}

StepMeasure StepMeasure::restrict_outside(const IntervalList& region) const {
    IntervalList keep = subtract_spans({{Rational(0), Rational(1)}}, region);
    std::vector<Block> out;
    std::size_t j = 0;
    for (const auto& b : blocks_) {
        while (j < keep.size() && keep[j].hi <= b.lo) ++j;
        for (std::size_t jj = j; jj < keep.size() && keep[jj].lo < b.hi; ++jj) {
            Rational lo = std::max(b.lo, keep[jj].lo);
            Rational hi = std::min(b.hi, keep[jj].hi);
            if (lo < hi) out.push_back({lo, hi, b.height});
        }
    }
    return from_sorted_disjoint(std::move(out));
}

StepMeasure StepMeasure::restrict_to(const Span& s) const {
    auto first = std::partition_point(blocks_.begin(), blocks_.end(),
                                      [&](const Block& blk) { return blk.hi <= s.lo; });
    std::vector<Block> out;
    for (auto it = first; it != blocks_.end() && it->lo < s.hi; ++it)
        out.push_back({std::max(it->lo, s.lo), std::min(it->hi, s.hi), it->height});
    return from_sorted_disjoint(std::move(out));
}

std::vector<SupportBlock> StepMeasure::support_blocks() const {
    std::vector<SupportBlock> out;
    out.reserve(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        Rational left = (i == 0) ? blocks_[i].lo : blocks_[i].lo - blocks_[i - 1].hi;
        Rational right =
            (i + 1 == blocks_.size()) ? Rational(1) - blocks_[i].hi : blocks_[i + 1].lo - blocks_[i].hi;
        out.push_back({blocks_[i], std::move(left), std::move(right)});
    }
    return out;
}

bool StepMeasure::same_blocks(const StepMeasure& o) const {
    if (blocks_.size() != o.blocks_.size()) return false;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].lo != o.blocks_[i].lo || blocks_[i].hi != o.blocks_[i].hi ||
            blocks_[i].height != o.blocks_[i].height)
            return false;
    }
    return true;
}

StepMeasure combine(const std::vector<StepMeasure>& ms) {
    // Sweep over all block endpoints, accumulating the pointwise height.
    struct Event {
        Rational x;
        Rational delta;
    };
    std::vector<Event> events;
    for (const auto& m : ms)
        for (const auto& b : m.blocks()) {
            events.push_back({b.lo, b.height});
            events.push_back({b.hi, -b.height});
        }
    if (events.empty()) return StepMeasure();
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.x < b.x; });
    std::vector<Block> out;
    Rational height = 0;
    Rational x = events.front().x;
    std::size_t i = 0;
    while (i < events.size()) {
        Rational nx = events[i].x;
        if (height != 0 && x < nx) out.push_back({x, nx, height});
        while (i < events.size() && events[i].x == nx) {
            height += events[i].delta;
            ++i;
        }
        x = std::move(nx);
    }
    return StepMeasure::from_sorted_disjoint(std::move(out));
}

StepFunction StepFunction::from_pieces(std::vector<Piece> pieces) {
    std::vector<Piece> in;
    in.reserve(pieces.size());
    for (auto& p : pieces) {
        if (p.lo > p.hi) throw std::invalid_argument("piece with lo > hi");
        if (p.lo == p.hi || p.value == 0) continue;
        in.push_back(std::move(p));
    }
    std::sort(in.begin(), in.end(),
              [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    StepFunction f;
    for (auto& p : in) {
        if (!f.pieces_.empty()) {
            Piece& prev = f.pieces_.back();
            if (p.lo < prev.hi) throw std::invalid_argument("overlapping pieces");
            if (p.lo == prev.hi && p.value == prev.value) {
                prev.hi = std::move(p.hi);
                continue;
            }
        }
        f.pieces_.push_back(std::move(p));
    }
    return f;
}

StepFunction StepFunction::scaled(const Rational& c) const {
    if (c == 0) return StepFunction();
    std::vector<Piece> out = pieces_;
    for (auto& p : out) p.value *= c;
    return from_pieces(std::move(out));
}

IntervalList StepFunction::support() const {
    IntervalList out;
    for (const auto& p : pieces_) out.push_back({p.lo, p.hi});
    return normalize_spans(std::move(out));
}

bool StepFunction::pieces_same(const StepFunction& o) const {
    if (pieces_.size() != o.pieces_.size()) return false;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].lo != o.pieces_[i].lo || pieces_[i].hi != o.pieces_[i].hi ||
            pieces_[i].value != o.pieces_[i].value)
            return false;
    }
    return true;
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
    struct Event {
        Rational x;
        Rational delta;
    };
    std::vector<Event> events;
    for (const auto& p : f.pieces()) {
        events.push_back({p.lo, p.value});
        events.push_back({p.hi, -p.value});
    }
    for (const auto& p : g.pieces()) {
        events.push_back({p.lo, p.value});
        events.push_back({p.hi, -p.value});
    }
    if (events.empty()) return StepFunction();
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.x < b.x; });
    std::vector<Piece> out;
    Rational value = 0;
    Rational x = events.front().x;
    std::size_t i = 0;
    while (i < events.size()) {
        Rational nx = events[i].x;
        if (value != 0 && x < nx) out.push_back({x, nx, value});
        while (i < events.size() && events[i].x == nx) {
            value += events[i].delta;
            ++i;
        }
        x = std::move(nx);
    }
    return StepFunction::from_pieces(std::move(out));
}

Rational integrate_square(const StepFunction& f, const StepMeasure& w) {
    const auto& ps = f.pieces();
    const auto& bs = w.blocks();
    Rational total = 0;
    std::size_t i = 0, j = 0;
    while (i < ps.size() && j < bs.size()) {
        Rational lo = std::max(ps[i].lo, bs[j].lo);
        Rational hi = std::min(ps[i].hi, bs[j].hi);
        if (lo < hi)
            total += ps[i].value * ps[i].value * bs[j].height * (hi - lo);
        if (ps[i].hi <= bs[j].hi) ++i;
        else ++j;
    }
    return total;
}

Rational integrate_product(const StepFunction& f, const StepFunction& g, const StepMeasure& w) {
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    const auto& bs = w.blocks();
    Rational total = 0;
    std::size_t i = 0, j = 0, l = 0;
    while (i < fp.size() && j < gp.size() && l < bs.size()) {
        Rational lo = std::max(std::max(fp[i].lo, gp[j].lo), bs[l].lo);
        Rational hi = std::min(std::min(fp[i].hi, gp[j].hi), bs[l].hi);
        if (lo < hi)
            total += fp[i].value * gp[j].value * bs[l].height * (hi - lo);
        // Advance whichever interval ends first.
        const Rational& fh = fp[i].hi;
        const Rational& gh = gp[j].hi;
        const Rational& bh = bs[l].hi;
        Rational m = std::min(std::min(fh, gh), bh);
        if (fh == m) ++i;
        if (gh == m) ++j;
        if (bh == m) ++l;
    }
    return total;
}

}  // namespace dycert
