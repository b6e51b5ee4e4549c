#pragma once
// Independent skein-recursion evaluator for braid closures.
//
// Values live in Z[i][x^{±1}, y^{±1}] localised at D = x^{-1} - x and are
// pinned down by
//   x^{-1} y * V(L_-) + x y^{-1} * V(L_+) = i (x^{-1} - x) * V(L_0),
//   V(unknot) = 1,
//   V(L ⊔ unknot) = delta * V(L),   delta = -i (x^{-1} y + x y^{-1}) / D.
// The recursion is purely diagrammatic (descending-diagram induction on braid
// closures) and shares no code with the homological pipeline, so it can serve
// as an oracle for it.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "trihom/coxeter.hpp"
#include "trihom/rational.hpp"
#include "trihom/util.hpp"

namespace trihom {

// Laurent polynomial in x, y over the Gaussian rationals.
struct XYPoly {
  std::map<std::pair<int, int>, GaussRat> terms;

  bool is_zero() const { return terms.empty(); }

  void add(int xe, int ye, const GaussRat& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(xe, ye);
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  static XYPoly mono(int xe, int ye, const GaussRat& c) {
    XYPoly p;
    p.add(xe, ye, c);
    return p;
  }

  XYPoly shifted(int xe, int ye, const GaussRat& c) const {
    XYPoly p;
    for (auto& [e, v] : terms) p.add(e.first + xe, e.second + ye, v * c);
    return p;
  }

  friend XYPoly operator+(const XYPoly& a, const XYPoly& b) {
    XYPoly p = a;
    for (auto& [e, v] : b.terms) p.add(e.first, e.second, v);
    return p;
  }

  friend XYPoly operator*(const XYPoly& a, const XYPoly& b) {
    XYPoly p;
    for (auto& [ea, va] : a.terms)
      for (auto& [eb, vb] : b.terms)
        p.add(ea.first + eb.first, ea.second + eb.second, va * vb);
    return p;
  }

  friend bool operator==(const XYPoly& a, const XYPoly& b) { return a.terms == b.terms; }

  // Exact division by D = x^{-1} - x.  A y-slice-and-x-parity class is
  // divisible iff its coefficient sum vanishes (D vanishes at x = ±1); the
  // quotient then falls out of downward synthetic division.  Returns false
  // (leaving *q untouched) when some class fails the criterion.
  bool divide_d(XYPoly* q) const {
    std::map<std::pair<int, int>, std::map<int, GaussRat>> classes;
    for (auto& [e, v] : terms) classes[{e.second, ((e.first % 2) + 2) % 2}][e.first] = v;
    for (auto& [cls, slice] : classes) {
      GaussRat sum;
      for (auto& [xe, v] : slice) sum += v;
      if (!sum.is_zero()) return false;
    }
    XYPoly out;
    for (auto& [cls, slice] : classes) {
      int ye = cls.first;
      std::map<int, GaussRat> rem = slice;
      while (!rem.empty()) {
        auto top = std::prev(rem.end());
        int xe = top->first;
        GaussRat c = top->second;
        rem.erase(top);
        out.add(xe - 1, ye, -c);
        auto it = rem.find(xe - 2);
        if (it == rem.end()) {
          rem.emplace(xe - 2, c);
        } else {
          it->second += c;
          if (it->second.is_zero()) rem.erase(it);
        }
      }
    }
    *q = out;
    return true;
  }

  std::string str() const {
    std::string s;
    for (auto& [e, v] : terms) {
      if (!s.empty()) s += " + ";
      s += "(" + to_string(v) + ") x^" + std::to_string(e.first) + " y^" + std::to_string(e.second);
    }
    return s.empty() ? "0" : s;
  }
};

inline XYPoly d_poly() {
  XYPoly d;
  d.add(-1, 0, GaussRat(Rat(1)));
  d.add(1, 0, GaussRat(Rat(-1)));
  return d;
}

// num / D^denpow, kept with D divided out of num as far as possible.
struct SkeinRF {
  XYPoly num;
  int denpow = 0;

  void normalize() {
    while (denpow > 0) {
      XYPoly q;
      if (!num.divide_d(&q)) break;
      num = q;
      --denpow;
    }
    if (num.is_zero()) denpow = 0;
  }

  static SkeinRF one() {
    SkeinRF v;
    v.num = XYPoly::mono(0, 0, GaussRat(Rat(1)));
    return v;
  }

  static SkeinRF delta() {
    SkeinRF v;
    v.num.add(-1, 1, -GaussRat::I());
    v.num.add(1, -1, -GaussRat::I());
    v.denpow = 1;
    return v;
  }

  static SkeinRF unlink(int components) {
    SkeinRF v = one();
    SkeinRF d = delta();
    for (int k = 1; k < components; ++k) v = v * d;
    return v;
  }

  void mul_d() {
    if (denpow > 0)
      --denpow;
    else
      num = num * d_poly();
  }

  SkeinRF shifted(int xe, int ye, const GaussRat& c) const {
    SkeinRF v;
    v.num = num.shifted(xe, ye, c);
    v.denpow = denpow;
    return v;
  }

  friend SkeinRF operator+(const SkeinRF& a, const SkeinRF& b) {
    SkeinRF v;
    v.denpow = std::max(a.denpow, b.denpow);
    XYPoly na = a.num, nb = b.num;
    XYPoly d = d_poly();
    for (int k = a.denpow; k < v.denpow; ++k) na = na * d;
    for (int k = b.denpow; k < v.denpow; ++k) nb = nb * d;
    v.num = na + nb;
    v.normalize();
    return v;
  }

  friend SkeinRF operator*(const SkeinRF& a, const SkeinRF& b) {
    SkeinRF v;
    v.num = a.num * b.num;
    v.denpow = a.denpow + b.denpow;
    v.normalize();
    return v;
  }

  friend bool operator==(const SkeinRF& a, const SkeinRF& b) {
    SkeinRF x = a, y = b;
    x.normalize();
    y.normalize();
    return x.denpow == y.denpow && x.num == y.num;
  }

  std::string str() const {
    return "(" + num.str() + ") / D^" + std::to_string(denpow);
  }
};

namespace detail {

struct SkeinCtx {
  std::map<std::pair<int, std::string>, SkeinRF> memo;
  long budget = 0;
};

inline std::string skein_key(const std::vector<int>& w) {
  std::string s;
  for (int v : w) {
    if (!s.empty()) s += " ";
    s += std::to_string(v);
  }
  return s;
}

inline SkeinRF skein_eval(int n, std::vector<int> w, SkeinCtx& ctx) {
  require(ctx.budget-- > 0, errc::recursion_budget, "skein recursion budget exhausted");

  // cyclic cancellation of adjacent inverse letters
  for (bool changed = true; changed && w.size() >= 2;) {
    changed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::size_t j = (i + 1) % w.size();
      if (i != j && w[i] == -w[j]) {
        std::vector<int> v;
        for (std::size_t k = 0; k < w.size(); ++k)
          if (k != i && k != j) v.push_back(w[k]);
        w = std::move(v);
        changed = true;
        break;
      }
    }
  }

  if (w.empty()) return SkeinRF::unlink(n);

  // split off a disjoint union along an unused generator
  std::vector<char> used(n, 0);
  for (int v : w) used[std::abs(v)] = 1;
  for (int g = 1; g < n; ++g) {
    if (used[g]) continue;
    std::vector<int> left, right;
    for (int v : w) {
      if (std::abs(v) < g)
        left.push_back(v);
      else
        right.push_back(v > 0 ? v - g : v + g);
    }
    return SkeinRF::delta() * skein_eval(g, left, ctx) * skein_eval(n - g, right, ctx);
  }

  // destabilise a boundary generator used exactly once
  for (int g : {n - 1, 1}) {
    if (n < 2) break;
    int cnt = 0, pos = -1;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (std::abs(w[k]) == g) {
        ++cnt;
        pos = static_cast<int>(k);
      }
    if (cnt != 1) continue;
    std::vector<int> v;
    for (std::size_t k = pos + 1; k < w.size(); ++k) v.push_back(w[k]);
    for (int k = 0; k < pos; ++k) v.push_back(w[k]);
    if (g == 1)
      for (int& x : v) x = x > 0 ? x - 1 : x + 1;
    return skein_eval(n - 1, v, ctx);
  }

  auto key = std::make_pair(n, skein_key(w));
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

  // closure permutation: strand ids are starting positions
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  for (int v : w) std::swap(cur[std::abs(v) - 1], cur[std::abs(v)]);
  std::vector<int> nxt(n);
  for (int p = 0; p < n; ++p) nxt[cur[p]] = p;

  // traversal ranks: components in order of their smallest strand
  std::vector<int> rank(n, -1);
  int comps = 0, r = 0;
  for (int s = 0; s < n; ++s) {
    if (rank[s] >= 0) continue;
    ++comps;
    for (int t = s; rank[t] < 0; t = nxt[t]) rank[t] = r++;
  }

  // a crossing is descending when the strand met earlier in the traversal
  // goes over; find the first one that is not
  std::iota(cur.begin(), cur.end(), 0);
  int bad = -1;
  for (std::size_t k = 0; k < w.size(); ++k) {
    int g = std::abs(w[k]);
    int over = w[k] > 0 ? cur[g - 1] : cur[g];
    int under = w[k] > 0 ? cur[g] : cur[g - 1];
    if (rank[over] > rank[under]) {
      bad = static_cast<int>(k);
      break;
    }
    std::swap(cur[g - 1], cur[g]);
  }

  SkeinRF out;
  if (bad < 0) {
    // fully descending closures are unlinks
    out = SkeinRF::unlink(comps);
  } else {
    std::vector<int> smoothed = w, switched = w;
    smoothed.erase(smoothed.begin() + bad);
    switched[bad] = -switched[bad];
    SkeinRF s0 = skein_eval(n, smoothed, ctx);
    SkeinRF sw = skein_eval(n, switched, ctx);
    s0.mul_d();
    if (w[bad] > 0)
      out = s0.shifted(-1, 1, GaussRat::I()) + sw.shifted(-2, 2, GaussRat(Rat(-1)));
    else
      out = s0.shifted(1, -1, GaussRat::I()) + sw.shifted(2, -2, GaussRat(Rat(-1)));
    out.normalize();
  }
  ctx.memo.emplace(std::move(key), out);
  return out;
}

}  // namespace detail

inline SkeinRF homfly_value(const BraidWord& b, int strands, long budget = 100000) {
  require(strands >= 1, errc::parse_error, "need at least one strand");
  for (int v : b.letters)
    require(v != 0 && std::abs(v) < strands, errc::generator_out_of_range,
            "braid letter outside the group");
  detail::SkeinCtx ctx;
  ctx.budget = budget;
  return detail::skein_eval(strands, b.letters, ctx);
}

}  // namespace trihom
