#pragma once
// Iwahori-Hecke algebras in the T-basis with the quadratic relation
//   T_s^2 = (1-q) T_s + q ,
// supported for chain (symmetric-group) types and for dihedral rank-2 types.
// Coefficients live in Z[q^{+-1}, t^{+-1}]; the t variable only enters through
// the Markov trace.  The trace follows the staircase recursion: a basis word
// with the top strand moved is rewritten as T_u T_top T_r with u, r below the
// top generator, contributing factor (-t) times the trace of T_r T_u one
// strand down; elements of the parabolic pick up one factor (q+t)/(q-1) per
// removed strand.  Values are kept exactly as numerator / (q-1)^k.

#include <algorithm>
#include <map>
#include <vector>

#include "trihom/coxeter.hpp"
#include "trihom/hochschild.hpp"

namespace trihom {

// Integer Laurent polynomials in q and t.
class QTPoly {
 public:
  QTPoly() = default;
  static QTPoly mono(int qe, int te, Int c = Int(1)) {
    QTPoly p;
    if (c != 0) p.terms_[{qe, te}] = c;
    return p;
  }
  static QTPoly constant(Int c) { return mono(0, 0, c); }

  const std::map<std::pair<int, int>, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  QTPoly& operator+=(const QTPoly& o) {
    for (auto& [k, v] : o.terms_) {
      Int& slot = terms_[k];
      slot += v;
      if (slot == 0) terms_.erase(k);
    }
    return *this;
  }
  friend QTPoly operator+(QTPoly a, const QTPoly& b) { return a += b; }
  QTPoly operator-() const {
    QTPoly p;
    for (auto& [k, v] : terms_) p.terms_[k] = -v;
    return p;
  }
  QTPoly& operator-=(const QTPoly& o) { return *this += -o; }
  friend QTPoly operator-(QTPoly a, const QTPoly& b) { return a -= b; }
  friend QTPoly operator*(const QTPoly& a, const QTPoly& b) {
    QTPoly p;
    for (auto& [ka, va] : a.terms_)
      for (auto& [kb, vb] : b.terms_) {
        auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
        Int& slot = p.terms_[key];
        slot += va * vb;
        if (slot == 0) p.terms_.erase(key);
      }
    return p;
  }
  friend bool operator==(const QTPoly& a, const QTPoly& b) { return a.terms_ == b.terms_; }

  // Exact division by (q - 1); false when not divisible.  Divisibility means
  // vanishing at q = 1, i.e. zero coefficient sum in every t-slice; with that
  // guaranteed the downward synthetic division terminates at the bottom
  // exponent with zero remainder.
  bool divide_q_minus_one() {
    std::map<int, std::map<int, Int>> by_t;
    for (auto& [k, v] : terms_) by_t[k.second][k.first] = v;
    for (auto& [te, slice] : by_t) {
      Int sum(0);
      for (auto& [e, c] : slice) sum += c;
      if (sum != 0) return false;
    }
    QTPoly out;
    for (auto& [te, slice] : by_t) {
      std::map<int, Int> rem = slice;
      while (!rem.empty()) {
        auto top = std::prev(rem.end());
        int e = top->first;
        Int c = top->second;
        out.terms_[{e - 1, te}] = c;
        rem.erase(top);
        Int& low = rem[e - 1];
        low += c;
        if (low == 0) rem.erase(e - 1);
      }
    }
    *this = std::move(out);
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [k, v] : terms_) {
      if (!s.empty()) s += " + ";
      s += v.get_str();
      if (k.first) s += "*q^" + std::to_string(k.first);
      if (k.second) s += "*t^" + std::to_string(k.second);
    }
    return s;
  }

 private:
  std::map<std::pair<int, int>, Int> terms_;
};

inline QTPoly qpow(int e) { return QTPoly::mono(e, 0); }
inline QTPoly tpow(int e) { return QTPoly::mono(0, e); }

// Group-element keys and Hecke elements.
using EltKey = std::vector<std::uint8_t>;
using HeckeElt = std::map<EltKey, QTPoly>;

class HeckeAlgebra {
 public:
  enum class Kind { chain, dihedral };

  static HeckeAlgebra for_system(const CoxeterSystem& cs) {
    HeckeAlgebra h;
    h.rank_ = cs.rank();
    if (cs.is_type_a()) {
      h.kind_ = Kind::chain;
      h.points_ = cs.rank() + 1;
      return h;
    }
    if (cs.rank() == 2) {
      h.kind_ = Kind::dihedral;
      h.bond_ = cs.m_entry(0, 1);
      return h;
    }
    fail(errc::unsupported_type, "Hecke operations support chain and dihedral types only");
  }
  static HeckeAlgebra chain_on_points(int n) {
    HeckeAlgebra h;
    h.kind_ = Kind::chain;
    h.rank_ = n - 1;
    h.points_ = n;
    return h;
  }

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  int points() const { return points_; }

  EltKey unit_key() const {
    if (kind_ == Kind::chain) {
      EltKey k(points_);
      for (int i = 0; i < points_; ++i) k[i] = (std::uint8_t)i;
      return k;
    }
    return {0, 0};
  }

  int length(const EltKey& w) const {
    if (kind_ == Kind::dihedral) return w[0];
    int inv = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j)
        if (w[i] > w[j]) ++inv;
    return inv;
  }

  // Right multiplication by a generator; reports whether the length went up.
  std::pair<EltKey, bool> right_mul(const EltKey& w, int g) const {
    require(g >= 0 && g < rank_, errc::generator_out_of_range, "Hecke generator");
    if (kind_ == Kind::chain) {
      EltKey out = w;
      std::swap(out[g], out[g + 1]);
      return {out, w[g] < w[g + 1]};
    }
    int k = w[0], side = w[1];
    if (k == 0) return {{1, (std::uint8_t)g}, true};
    if (k == bond_) {
      // Longest element: length must drop; pick the expression ending in g.
      int nk = bond_ - 1;
      int nside = (nk % 2 == 1) ? (1 - g) : g;
      if (nk == 0) nside = 0;
      return {{(std::uint8_t)nk, (std::uint8_t)nside}, false};
    }
    int last = (k % 2 == 1) ? side : 1 - side;
    if (g == last) {
      int nk = k - 1;
      int nside = (nk == 0) ? 0 : side;
      return {{(std::uint8_t)nk, (std::uint8_t)nside}, false};
    }
    int nk = k + 1;
    int nside = (nk == bond_) ? 0 : side;
    return {{(std::uint8_t)nk, (std::uint8_t)nside}, true};
  }

  std::vector<int> reduced_word(const EltKey& w) const {
    if (kind_ == Kind::dihedral) {
      std::vector<int> out;
      int side = w[1];
      for (int i = 0; i < w[0]; ++i) out.push_back((i % 2 == 0) ? side : 1 - side);
      return out;
    }
    std::vector<int> rev;
    EltKey cur = w;
    for (;;) {
      int desc = -1;
      for (int i = 0; i + 1 < (int)cur.size(); ++i)
        if (cur[i] > cur[i + 1]) {
          desc = i;
          break;
        }
      if (desc < 0) break;
      rev.push_back(desc);
      std::swap(cur[desc], cur[desc + 1]);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
  }

  HeckeElt one() const { return {{unit_key(), QTPoly::constant(1)}}; }

  HeckeElt mul_gen(const HeckeElt& a, int g, int sign = 1) const {
    HeckeElt out;
    auto addto = [&out](const EltKey& k, const QTPoly& c) {
      auto& slot = out[k];
      slot += c;
      if (slot.is_zero()) out.erase(k);
    };
    if (sign > 0) {
      for (auto& [w, c] : a) {
        auto [w2, up] = right_mul(w, g);
        if (up)
          addto(w2, c);
        else {
          addto(w2, qpow(1) * c);
          addto(w, (QTPoly::constant(1) - qpow(1)) * c);
        }
      }
      return out;
    }
    // T_g^{-1} = q^{-1} T_g + (1 - q^{-1}).
    HeckeElt tg = mul_gen(a, g, 1);
    for (auto& [w, c] : tg) addto(w, qpow(-1) * c);
    for (auto& [w, c] : a) addto(w, (QTPoly::constant(1) - qpow(-1)) * c);
    return out;
  }

  HeckeElt scale(const HeckeElt& a, const QTPoly& f) const {
    HeckeElt out;
    if (f.is_zero()) return out;
    for (auto& [w, c] : a) {
      QTPoly p = c * f;
      if (!p.is_zero()) out[w] = std::move(p);
    }
    return out;
  }

  HeckeElt add(HeckeElt a, const HeckeElt& b) const {
    for (auto& [w, c] : b) {
      auto& slot = a[w];
      slot += c;
      if (slot.is_zero()) a.erase(w);
    }
    return a;
  }

  HeckeElt mul(const HeckeElt& a, const HeckeElt& b) const {
    HeckeElt out;
    for (auto& [w, c] : b) {
      HeckeElt x = a;
      for (int g : reduced_word(w)) x = mul_gen(x, g, 1);
      out = add(std::move(out), scale(x, c));
    }
    return out;
  }

  HeckeElt braid_image(const BraidWord& b) const {
    HeckeElt x = one();
    for (std::size_t i = 0; i < b.letters.size(); ++i) x = mul_gen(x, b.generator(i), b.sign(i));
    return x;
  }

 private:
  Kind kind_ = Kind::chain;
  int rank_ = 0;
  int points_ = 1;
  int bond_ = 2;
};

// Class of a complex in the split Grothendieck group, written in the T-basis:
// each summand contributes (-1)^j q^shift prod_letters (q^{-1} T_s + 1).
inline HeckeElt character(const BimoduleComplex& C) {
  HeckeAlgebra h = HeckeAlgebra::for_system(C.rz().system());
  HeckeElt acc;
  for (auto& [j, term] : C.terms()) {
    int j2 = 2 * j + C.cohom_offset2;
    require(j2 % 2 == 0, errc::grading_violation, "character needs integer cohomological degrees");
    int sign = ((j2 / 2) % 2 == 0) ? 1 : -1;
    for (auto& s : term.summands) {
      HeckeElt x = h.one();
      for (auto g : s.word) x = h.add(h.scale(h.mul_gen(x, g, 1), qpow(-1)), x);
      acc = h.add(std::move(acc), h.scale(x, QTPoly::mono(s.shift, 0, Int(sign))));
    }
  }
  return acc;
}

// Markov trace values: numerator over (q-1)^denpow.
struct TraceRF {
  QTPoly num;
  int denpow = 0;

  void normalize() {
    while (denpow > 0) {
      QTPoly copy = num;
      if (!copy.divide_q_minus_one()) break;
      num = std::move(copy);
      --denpow;
    }
  }
  friend bool operator==(const TraceRF& a, const TraceRF& b) {
    QTPoly qm1 = qpow(1) - QTPoly::constant(1);
    QTPoly lhs = a.num, rhs = b.num;
    for (int i = 0; i < b.denpow; ++i) lhs = lhs * qm1;
    for (int i = 0; i < a.denpow; ++i) rhs = rhs * qm1;
    return lhs == rhs;
  }
  std::string str() const {
    return "(" + num.str() + ") / (q-1)^" + std::to_string(denpow);
  }
};

inline TraceRF trace_add(TraceRF a, TraceRF b) {
  QTPoly qm1 = qpow(1) - QTPoly::constant(1);
  while (a.denpow < b.denpow) {
    a.num = a.num * qm1;
    ++a.denpow;
  }
  while (b.denpow < a.denpow) {
    b.num = b.num * qm1;
    ++b.denpow;
  }
  a.num += b.num;
  return a;
}

// Recursive Markov trace on chain-type elements.
inline TraceRF ocneanu_trace(const HeckeAlgebra& h, const HeckeElt& elt) {
  require(h.kind() == HeckeAlgebra::Kind::chain, errc::unsupported_type,
          "Markov trace needs a chain type");
  int n = h.points();
  if (n <= 1) {
    TraceRF out;
    auto it = elt.find(h.unit_key());
    if (it != elt.end()) out.num = it->second;
    return out;
  }
  HeckeAlgebra sub = HeckeAlgebra::chain_on_points(n - 1);
  HeckeElt fixed_sub, moved_sub;
  for (auto& [w, c] : elt) {
    if (w[n - 1] == n - 1) {
      EltKey r(w.begin(), w.end() - 1);
      auto& slot = fixed_sub[r];
      slot += c;
      if (slot.is_zero()) fixed_sub.erase(r);
      continue;
    }
    // w = u . s_{n-2} ... s_p with u fixing the top point.
    int p = 0;
    while (w[p] != n - 1) ++p;
    EltKey u = w;
    for (int i = p; i <= n - 2; ++i) std::swap(u[i], u[i + 1]);
    EltKey usub(u.begin(), u.end() - 1);
    HeckeElt x = sub.one();
    for (int g = n - 3; g >= p; --g) x = sub.mul_gen(x, g, 1);  // T_r
    HeckeElt uelt{{usub, QTPoly::constant(1)}};
    x = sub.mul(x, uelt);  // T_r T_u
    moved_sub = sub.add(std::move(moved_sub), sub.scale(x, c * (-tpow(1))));
  }
  TraceRF out = ocneanu_trace(sub, moved_sub);
  if (!fixed_sub.empty()) {
    TraceRF f = ocneanu_trace(sub, fixed_sub);
    f.num = f.num * (qpow(1) + tpow(1));
    f.denpow += 1;
    out = trace_add(std::move(out), std::move(f));
  }
  out.normalize();
  return out;
}

}  // namespace trihom
