#include "dycert/corona.hpp"

#include <algorithm>
#include <utility>

namespace dycert {

namespace {

void scan_for_children(const StepMeasure& w, const DyadicInterval& J, const Rational& thresh,
                       int depth_left, std::vector<CoronaNode>& out) {
    if (depth_left <= 0)
        throw CoronaScanError("corona scan depth cap exceeded at " + J.str() +
                              "; the measure may have an infinite corona");
    for (Side s : {Side::Left, Side::Right}) {
        DyadicInterval H = J.child(s);
        Rational m = w.mass(H);
        if (m == 0) continue;
        if (m / H.length() >= thresh) {
            out.push_back({H, m / H.length(), {}});
            continue;
        }
        if (w.max_height_in(H.lo(), H.hi()) < thresh) continue;  // no deeper stop possible
        scan_for_children(w, H, thresh, depth_left - 1, out);
    }
}

void expand(const StepMeasure& w, CoronaNode& node, int depth_left) {
    scan_for_children(w, node.interval, 4 * node.density, depth_left, node.children);
    for (auto& ch : node.children)
        expand(w, ch, depth_left - (ch.interval.scale() - node.interval.scale()));
}

}  // namespace

CoronaForest corona(const StepMeasure& w, const DyadicInterval& root, const CoronaOptions& opts) {
    Rational m = w.mass(root);
    if (m <= 0) throw std::invalid_argument("corona requires w(root) > 0");
    CoronaForest f;
    f.root = {root, m / root.length(), {}};
    expand(w, f.root, opts.max_scan_depth);
    return f;
}

namespace {

Integer floor_quotient(const Rational& x, const Rational& len) {
    Integer q;
    Integer num = x.get_num() * len.get_den();
    Integer den = x.get_den() * len.get_num();
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

StepFunction maximal_on_support(const StepMeasure& w) {
    std::vector<Piece> pieces;
    auto support = w.support_blocks();
    for (const auto& sb : support) {
        const Block& B = sb.block;
        bool left_boundary = (B.lo == 0);
        bool right_boundary = (B.hi == 1);
        if ((!left_boundary && sb.left_margin == 0) || (!right_boundary && sb.right_margin == 0))
            throw UnsupportedGeometryError("zero margin at block " + rat_str(B.lo) + ".." +
                                           rat_str(B.hi) + " not removable by merging");

        // Smallest candidate scale: the largest s with 2^{-s} >= min effective
        // margin. Boundary gaps do not constrain (no dyadic Q ⊆ [0,1) crosses
        // the boundary), so a block touching both boundaries needs only s = 0.
        int s_max = 0;
        bool have_margin = false;
        Rational margin;
        if (!left_boundary) { margin = sb.left_margin; have_margin = true; }
        if (!right_boundary && (!have_margin || sb.right_margin < margin)) {
            margin = sb.right_margin;
            have_margin = true;
        }
        if (have_margin)
            while (pow2(-(s_max + 1)) >= margin) ++s_max;

        // Candidate overlay: at scale s the dyadic grid cells intersecting B,
        // each contributing its average on the overlap.
        struct Overlay {
            Rational lo, hi, value;
        };
        std::vector<Overlay> overlays;
        std::vector<Rational> cuts;
        cuts.push_back(B.lo);
        cuts.push_back(B.hi);
        for (int s = 0; s <= s_max; ++s) {
            Rational len = pow2(-s);
            Integer q0 = floor_quotient(B.lo, len);
            for (Integer q = q0;; ++q) {
                Rational qlo = Rational(q) * len;
                if (qlo >= B.hi) break;
                Rational qhi = qlo + len;
                Rational avg = w.mass(qlo, qhi) / len;
                Rational olo = std::max(qlo, B.lo);
                Rational ohi = std::min(qhi, B.hi);
                overlays.push_back({olo, ohi, std::move(avg)});
                if (olo > B.lo) cuts.push_back(olo);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        // Pointwise max over the refinement cells of h and all overlays.
        std::sort(overlays.begin(), overlays.end(),
                  [](const Overlay& a, const Overlay& b) { return a.lo < b.lo; });
        for (std::size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
            Rational best = B.height;
            for (const auto& o : overlays) {
                if (o.lo > cuts[ci]) break;
                if (o.hi >= cuts[ci + 1] && o.value > best) best = o.value;
            }
            pieces.push_back({cuts[ci], cuts[ci + 1], std::move(best)});
        }
    }
    return StepFunction::from_pieces(std::move(pieces));
}

StepMeasure sigma(const StepMeasure& w) {
    StepFunction mw = maximal_on_support(w);
    // Mw >= height > 0 on every support block; refine blocks by Mw pieces.
    std::vector<Block> out;
    const auto& bs = w.blocks();
    const auto& ps = mw.pieces();
    std::size_t i = 0, j = 0;
    while (i < bs.size() && j < ps.size()) {
        Rational lo = std::max(bs[i].lo, ps[j].lo);
        Rational hi = std::min(bs[i].hi, ps[j].hi);
        if (lo < hi)
            out.push_back({lo, hi, bs[i].height / (ps[j].value * ps[j].value)});
        if (bs[i].hi <= ps[j].hi) ++i;
        else ++j;
    }
    return StepMeasure::from_sorted_disjoint(std::move(out));
}

const StoppingNode* corona_cell(const StoppingNode& forest, const DyadicInterval& E) {
    if (!forest.interval.contains(E)) return nullptr;
    const StoppingNode* cur = &forest;
    for (;;) {
        const StoppingNode* next = nullptr;
        for (const auto& ch : cur->children)
            if (ch.interval.contains(E)) {
                next = &ch;
                break;
            }
        if (!next) return cur;
        cur = next;
    }
}

namespace {

template <class Node>
void collect_contained_at_depth(const Node& n, const DyadicInterval& E, int depth,
                                IntervalList& out) {
    if (depth == 0) {
        if (E.contains(n.interval)) out.push_back({n.interval.lo(), n.interval.hi()});
        return;
    }
    // Children of Gamma(E) never contain E (minimality), so every relevant
    // descendant is inside E; disjoint branches are skipped.
    for (const auto& ch : n.children) {
        if (!E.contains(ch.interval)) continue;
        collect_contained_at_depth(ch, E, depth - 1, out);
    }
}

template <class Node>
DeltaRegion delta_region_impl(const DyadicInterval& E, const Node& root, int l) {
    if (l < 1) throw std::invalid_argument("delta level must be >= 1");
    const Node* cell = nullptr;
    {
        // Minimal node interval containing E.
        if (!root.interval.contains(E))
            throw std::invalid_argument("E is not contained in the forest root");
        const Node* cur = &root;
        for (;;) {
            const Node* next = nullptr;
            for (const auto& ch : cur->children)
                if (ch.interval.contains(E)) {
                    next = &ch;
                    break;
                }
            if (!next) break;
            cur = next;
        }
        cell = cur;
    }
    DeltaRegion d;
    d.base = E;
    d.level = l;
    if (l == 1) {
        IntervalList inner;
        collect_contained_at_depth(*cell, E, 1, inner);
        d.region = subtract_spans({{E.lo(), E.hi()}}, normalize_spans(std::move(inner)));
    } else {
        IntervalList outer, inner;
        collect_contained_at_depth(*cell, E, l - 1, outer);
        collect_contained_at_depth(*cell, E, l, inner);
        d.region = subtract_spans(normalize_spans(std::move(outer)),
                                  normalize_spans(std::move(inner)));
    }
    return d;
}

}  // namespace

DeltaRegion delta_region(const DyadicInterval& E, const StoppingNode& forest, int l) {
    return delta_region_impl(E, forest, l);
}

DeltaRegion delta_region(const DyadicInterval& E, const CoronaForest& forest, int l) {
    return delta_region_impl(E, forest.root, l);
}

Rational sigma_lower_bound(const StepMeasure& w, const StoppingNode& forest,
                           const DyadicInterval& E) {
    const StoppingNode* cell = corona_cell(forest, E);
    if (!cell) throw std::invalid_argument("E is not contained in the forest root");
    Rational wE = w.mass(E);
    if (wE == 0) return Rational(0);
    Rational wL = w.mass(cell->interval);
    Rational ratio = cell->interval.length() / wL;  // |L| / w(L)
    Rational ratio2 = ratio * ratio;
    Rational total = 0;
    Rational factor = make_rational(1, 64);  // 8^{-2l}, starting at l = 1
    for (int l = 1;; ++l) {
        DeltaRegion d = delta_region(E, forest, l);
        if (l > 1 && d.region.empty()) break;
        total += factor * ratio2 * w.mass(d.region);
        factor /= 64;
    }
    return total;
}

}  // namespace dycert
