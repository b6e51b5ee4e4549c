#pragma once
// Laurent series in up to three variables with an explicit exactness window
// on the first exponent.  All exponents are stored doubled so half-integer
// powers stay integral.  A series knows the window [lo, hi] of first-exponents
// on which its coefficients are exact; arithmetic tracks how operations
// shrink the window, and comparisons are only ever made on the common window.

#include <array>
#include <limits>
#include <map>
#include <vector>

#include "trihom/rational.hpp"
#include "trihom/util.hpp"

namespace trihom {

class WindowedSeries {
 public:
  static constexpr int kInf = std::numeric_limits<int>::max() / 4;

  WindowedSeries() = default;
  WindowedSeries(int lo, int hi) : lo_(lo), hi_(hi) {}

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const std::map<std::array<int, 3>, GaussRat>& terms() const { return terms_; }

  void add_term(std::array<int, 3> e, const GaussRat& c) {
    if (c.is_zero()) return;
    if (e[0] < lo_ || e[0] > hi_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  static WindowedSeries monomial(std::array<int, 3> e, const GaussRat& c) {
    WindowedSeries s(-kInf, kInf);
    s.add_term(e, c);
    return s;
  }

  WindowedSeries& operator+=(const WindowedSeries& o) {
    restrict_window(o.lo_, o.hi_);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend WindowedSeries operator+(WindowedSeries a, const WindowedSeries& b) { return a += b; }

  WindowedSeries operator-() const {
    WindowedSeries s(lo_, hi_);
    for (auto& [e, c] : terms_) s.terms_.emplace(e, -c);
    return s;
  }
  WindowedSeries& operator-=(const WindowedSeries& o) { return *this += -o; }
  friend WindowedSeries operator-(WindowedSeries a, const WindowedSeries& b) { return a -= b; }

  void scale(const GaussRat& f) {
    if (f.is_zero()) {
      terms_.clear();
      return;
    }
    for (auto& [e, c] : terms_) c *= f;
  }

  // Multiply by a single monomial: exponents shift, window shifts with them.
  WindowedSeries shifted(std::array<int, 3> e, const GaussRat& c) const {
    WindowedSeries s(sat_add(lo_, e[0]), sat_add(hi_, e[0]));
    if (c.is_zero()) return s;
    for (auto& [k, v] : terms_)
      s.terms_.emplace(std::array<int, 3>{k[0] + e[0], k[1] + e[1], k[2] + e[2]}, v * c);
    return s;
  }

  // Multiply by a finite sum of monomials with first-exponent support [a, b]:
  // the result is exact on [lo + b, hi + a].
  WindowedSeries times_poly(const std::vector<std::pair<std::array<int, 3>, GaussRat>>& poly) const {
    require(!poly.empty(), errc::shape_mismatch, "empty polynomial multiplier");
    int a = kInf, b = -kInf;
    for (auto& [e, c] : poly) {
      a = std::min(a, e[0]);
      b = std::max(b, e[0]);
    }
    WindowedSeries s(sat_add(lo_, b), sat_add(hi_, a));
    for (auto& [e, c] : poly) {
      if (c.is_zero()) continue;
      for (auto& [k, v] : terms_) {
        std::array<int, 3> key{k[0] + e[0], k[1] + e[1], k[2] + e[2]};
        if (key[0] < s.lo_ || key[0] > s.hi_) continue;
        auto it = s.terms_.find(key);
        if (it == s.terms_.end()) {
          s.terms_.emplace(key, v * c);
        } else {
          it->second += v * c;
          if (it->second.is_zero()) s.terms_.erase(it);
        }
      }
    }
    return s;
  }

  void restrict_window(int lo, int hi) {
    lo_ = std::max(lo_, lo);
    hi_ = std::min(hi_, hi);
    for (auto it = terms_.begin(); it != terms_.end();)
      it = (it->first[0] < lo_ || it->first[0] > hi_) ? terms_.erase(it) : std::next(it);
  }

  bool window_empty() const { return lo_ > hi_; }

  std::string str() const {
    std::string s = "window[" + std::to_string(lo_) + "," +
                    (hi_ >= kInf ? std::string("inf") : std::to_string(hi_)) + "]";
    for (auto& [e, c] : terms_)
      s += " + (" + to_string(c) + ")*[" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
           "," + std::to_string(e[2]) + "]";
    return s;
  }

 private:
  static int sat_add(int a, int b) {
    long long v = (long long)a + b;
    if (v > kInf) return kInf;
    if (v < -kInf) return -kInf;
    return (int)v;
  }

  std::map<std::array<int, 3>, GaussRat> terms_;
  int lo_ = -kInf;
  int hi_ = kInf;
};

// Equality on the common exactness window; errors if that window is empty.
inline bool series_equal(const WindowedSeries& a, const WindowedSeries& b,
                         int* witness_exp = nullptr) {
  int lo = std::max(a.lo(), b.lo());
  int hi = std::min(a.hi(), b.hi());
  require(lo <= hi, errc::window_too_small, "series comparison window is empty");
  WindowedSeries x = a, y = b;
  x.restrict_window(lo, hi);
  y.restrict_window(lo, hi);
  if (x.terms() == y.terms()) return true;
  if (witness_exp) {
    for (auto& [e, c] : x.terms())
      if (y.terms().find(e) == y.terms().end() || !(y.terms().at(e) == c)) {
        *witness_exp = e[0];
        return false;
      }
    for (auto& [e, c] : y.terms())
      if (x.terms().find(e) == x.terms().end()) {
        *witness_exp = e[0];
        return false;
      }
  }
  return false;
}

}  // namespace trihom
