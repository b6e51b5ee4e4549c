#pragma once
// Exact scalars: arbitrary-precision rationals (GMP) and Gaussian rationals.

#include <gmpxx.h>

#include <string>

#include "trihom/util.hpp"

namespace trihom {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) {
  return r.get_str();
}

inline std::string to_string(const Int& z) { return z.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) fail(errc::parse_error, "bad rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

// a + b*i with rational a, b; i^2 = -1.  Used for the sqrt(-1) specialization
// of invariant series and for the skein-recursion oracle.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(const Rat& r) : re(r), im(0) {}
  GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}
  static GaussRat I() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    require(n != 0, errc::internal, "gaussian division by zero");
    return GaussRat((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  // i^k for k mod 4, as a multiplier.
  static GaussRat i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return GaussRat(Rat(1));
      case 1: return GaussRat(Rat(0), Rat(1));
      case 2: return GaussRat(Rat(-1));
      default: return GaussRat(Rat(0), Rat(-1));
    }
  }
};

inline std::string to_string(const GaussRat& g) {
  if (g.im == 0) return to_string(g.re);
  std::string s = to_string(g.re);
  s += (g.im > 0 ? "+" : "-");
  Rat a = abs(g.im);
  if (a != 1) s += to_string(a) + "*";
  s += "i";
  return s;
}

}  // namespace trihom
