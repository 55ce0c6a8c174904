#pragma once

#include <string>

#include "dycert/rational.hpp"

namespace dycert {

enum class Side { Left, Right };

// A dyadic interval [m 2^-n, (m+1) 2^-n) of the standard grid, restricted to
// [0,1): 0 <= m < 2^n, n >= 0. The position index m is arbitrary precision
// (the construction reaches scales around 2^-94 for k = 1).
class DyadicInterval {
  public:
    DyadicInterval() : m_(0), n_(0) {}

    DyadicInterval(Integer m, int n) : m_(std::move(m)), n_(n) {
        if (n_ < 0) throw std::invalid_argument("dyadic interval with negative scale");
        if (m_ < 0 || m_ >= (Integer(1) << n_))
            throw std::invalid_argument("dyadic interval outside [0,1)");
    }

    const Integer& index() const { return m_; }
    int scale() const { return n_; }

    Rational lo() const { return make_rational(m_, Integer(1) << n_); }
    Rational hi() const { return make_rational(m_ + 1, Integer(1) << n_); }
    Rational length() const { return pow2(-n_); }
    Rational midpoint() const { return make_rational(2 * m_ + 1, Integer(1) << (n_ + 1)); }

    DyadicInterval left() const { return DyadicInterval(m_ * 2, n_ + 1); }
    DyadicInterval right() const { return DyadicInterval(m_ * 2 + 1, n_ + 1); }
    DyadicInterval child(Side s) const { return s == Side::Left ? left() : right(); }

    DyadicInterval parent() const {
        if (n_ == 0) throw std::invalid_argument("parent of [0,1) leaves the grid");
        return DyadicInterval(m_ / 2, n_ - 1);
    }

    // I^{--}, the left child of the left child; |I^{--}| = |I|/4.
    DyadicInterval left_left_grandchild() const { return DyadicInterval(m_ * 4, n_ + 2); }

    // jp(J) = a + alpha/3 for J = [a, a+alpha): the point at relative
    // position exactly 1/3, i.e. (3m+1) / (3 * 2^n).
    Rational jumping_point() const {
        return make_rational(3 * m_ + 1, 3 * (Integer(1) << n_));
    }

    Rational right_end() const { return hi(); }

    // Containment is reflexive. Two dyadic intervals are nested or disjoint.
    bool contains(const DyadicInterval& other) const {
        if (n_ > other.n_) return false;
        return (other.m_ >> (other.n_ - n_)) == m_;
    }

    bool disjoint_from(const DyadicInterval& other) const {
        return !contains(other) && !other.contains(*this);
    }

    bool contains_point(const Rational& x) const { return lo() <= x && x < hi(); }

    bool operator==(const DyadicInterval& other) const {
        return n_ == other.n_ && m_ == other.m_;
    }
    bool operator!=(const DyadicInterval& other) const { return !(*this == other); }

    // Lexicographic on (n, m); a total order usable as a map key.
    bool operator<(const DyadicInterval& other) const {
        if (n_ != other.n_) return n_ < other.n_;
        return m_ < other.m_;
    }

    std::string str() const {
        return "[" + rat_str(lo()) + "," + rat_str(hi()) + ")";
    }

  private:
    Integer m_;
    int n_;
};

inline DyadicInterval unit_interval() { return DyadicInterval(); }

}  // namespace dycert
