#pragma once
// Sparse multivariate polynomials over the exact rationals.
//
// Variables are the simple-root coordinates a1..am, each of internal degree 1.
// Monomials are packed into a uint64 (exponent of variable i in byte 7-i), so
// numeric comparison of keys is lexicographic comparison of exponent vectors
// with a1 > a2 > ... ; at most 8 variables, exponents below 256.

#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "trihom/rational.hpp"
#include "trihom/util.hpp"

namespace trihom {

using Mono = std::uint64_t;

constexpr int kMaxVars = 8;

inline Mono mono_one() { return 0; }

inline int mono_exp(Mono m, int var) { return int((m >> (8 * (7 - var))) & 0xff); }

inline Mono mono_var(int var, int exp = 1) {
  return (Mono)(std::uint64_t)exp << (8 * (7 - var));
}

inline Mono mono_mul(Mono a, Mono b) { return a + b; }

inline bool mono_divisible(Mono a, Mono b) {
  // Does b divide a (componentwise exponents)?
  for (int i = 0; i < kMaxVars; ++i)
    if (mono_exp(a, i) < mono_exp(b, i)) return false;
  return true;
}

inline Mono mono_div(Mono a, Mono b) { return a - b; }

inline int mono_degree(Mono m) {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += mono_exp(m, i);
  return d;
}

class MultiPoly {
 public:
  using Terms = std::map<Mono, Rat, std::greater<Mono>>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {
    require(nvars >= 0 && nvars <= kMaxVars, errc::unsupported_type,
            "variable count out of range");
  }
  static MultiPoly constant(int nvars, const Rat& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[mono_one()] = c;
    return p;
  }
  static MultiPoly variable(int nvars, int var, const Rat& c = Rat(1)) {
    MultiPoly p(nvars);
    require(var >= 0 && var < nvars, errc::variable_mismatch, "variable index");
    if (c != 0) p.terms_[mono_var(var)] = c;
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == mono_one());
  }
  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    require(is_constant(), errc::shape_mismatch, "not a constant polynomial");
    return terms_.begin()->second;
  }

  // Total degree of the top term; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }

  bool is_homogeneous(int d) const {
    for (auto& [m, c] : terms_)
      if (mono_degree(m) != d) return false;
    return true;
  }

  void add_term(Mono m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rat coeff(Mono m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_vars(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_vars(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_vars(b);
    MultiPoly r(a.nvars_);
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly& scale(const Rat& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  friend MultiPoly operator*(MultiPoly a, const Rat& c) { return a.scale(c); }
  friend MultiPoly operator*(const Rat& c, MultiPoly a) { return a.scale(c); }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Substitute images[i] for variable i; images must share a variable count.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    require((int)images.size() == nvars_, errc::variable_mismatch, "substitution arity");
    int out_vars = nvars_ == 0 ? 0 : images[0].nvars();
    for (auto& im : images)
      require(im.nvars() == out_vars, errc::variable_mismatch, "substitution images");
    MultiPoly r(out_vars);
    // Memoized variable powers.
    std::vector<std::vector<MultiPoly>> pow(nvars_);
    auto power = [&](int v, int e) -> const MultiPoly& {
      auto& tab = pow[v];
      if (tab.empty()) tab.push_back(MultiPoly::constant(out_vars, Rat(1)));
      while ((int)tab.size() <= e) tab.push_back(tab.back() * images[v]);
      return tab[e];
    };
    for (auto& [m, c] : terms_) {
      MultiPoly t = MultiPoly::constant(out_vars, c);
      for (int v = 0; v < nvars_; ++v) {
        int e = mono_exp(m, v);
        if (e > 0) t *= power(v, e);
      }
      r += t;
    }
    return r;
  }

  // Reinterpret over a larger variable set (existing variables keep their indices).
  MultiPoly widen(int new_nvars) const {
    require(new_nvars >= nvars_, errc::variable_mismatch, "widen shrinks variables");
    MultiPoly r(new_nvars);
    r.terms_ = terms_;
    return r;
  }

 private:
  void check_vars(const MultiPoly& o) const {
    require(nvars_ == o.nvars_, errc::variable_mismatch, "mixed variable counts");
  }

  int nvars_;
  Terms terms_;
};

// Exact division f / g via lexicographic reduction; raises if not divisible.
inline MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g) {
  require(f.nvars() == g.nvars(), errc::variable_mismatch, "exact_divide variable counts");
  require(!g.is_zero(), errc::inexact_division, "division by zero polynomial");
  MultiPoly q(f.nvars());
  MultiPoly r = f;
  Mono lg = g.terms().begin()->first;
  const Rat& cg = g.terms().begin()->second;
  while (!r.is_zero()) {
    Mono lr = r.terms().begin()->first;
    const Rat cr = r.terms().begin()->second;
    require(mono_divisible(lr, lg), errc::inexact_division, "inexact polynomial division");
    Mono m = mono_div(lr, lg);
    Rat c = cr / cg;
    q.add_term(m, c);
    MultiPoly t(f.nvars());
    t.add_term(m, c);
    r -= t * g;
  }
  return q;
}

// All monomials of total degree d in m variables, lexicographically descending.
inline std::vector<Mono> monomial_basis(int m, int d) {
  require(m >= 0 && m <= kMaxVars, errc::unsupported_type, "variable count");
  std::vector<Mono> out;
  if (d < 0) return out;
  if (m == 0) {
    if (d == 0) out.push_back(mono_one());
    return out;
  }
  std::vector<int> e(m, 0);
  // Recursive enumeration, first variable exponent descending.
  struct Rec {
    int m, d;
    std::vector<int>& e;
    std::vector<Mono>& out;
    void go(int var, int rem) {
      if (var == m - 1) {
        e[var] = rem;
        Mono key = 0;
        for (int i = 0; i < m; ++i) key += mono_var(i, e[i]);
        out.push_back(key);
        return;
      }
      for (int k = rem; k >= 0; --k) {
        e[var] = k;
        go(var + 1, rem - k);
      }
    }
  } rec{m, d, e, out};
  rec.go(0, d);
  return out;
}

inline std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : p.terms()) {
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1) && m != mono_one();
    if (!unit) os << a.get_str();
    bool any = false;
    for (int v = 0; v < p.nvars(); ++v) {
      int e = mono_exp(m, v);
      if (e == 0) continue;
      if (any || !unit) os << "*";
      os << "a" << (v + 1);
      if (e > 1) os << "^" << e;
      any = true;
    }
  }
  return os.str();
}

}  // namespace trihom
