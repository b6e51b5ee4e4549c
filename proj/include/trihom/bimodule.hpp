#pragma once
// Bott-Samelson bimodules in coordinates.
//
// BS(s_1..s_k)<n> is stored through its left P-module basis indexed by marker
// vectors eps in {0,1}^k (bit j set <=> the alpha marker sits in slot j); the
// generator for eps has internal degree popcount(eps) - n.  The bimodule
// structure is carried by one right-action matrix per polynomial variable.
// Appending a letter s extends the action by the invariant/skew splitting of a
// degree-one form x = a + c*alpha_s:
//     (v ox 1) . x = (v.a) ox 1 + c * (v ox alpha_s)
//     (v ox alpha_s) . x = c * (v.alpha_s^2) ox 1 + (v.a) ox alpha_s .

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "trihom/coxeter.hpp"
#include "trihom/polymatrix.hpp"

namespace trihom {

using Word = std::vector<std::uint8_t>;

inline std::string word_str(const Word& w) {
  std::string s;
  for (auto g : w) {
    if (!s.empty()) s += ".";
    s += std::to_string((int)g + 1);
  }
  return s.empty() ? "-" : s;
}

// Right-action matrices for BS(word) with zero shift (degrees = popcounts).
struct BSData {
  Word word;
  std::vector<PolyMatrix> right;  // per variable; map degree 1
  std::vector<int> gen_degs;      // popcount(eps)

  int rank() const { return 1 << word.size(); }
};

namespace detail {

inline std::string realization_fingerprint(const Realization& rz) {
  std::ostringstream os;
  os << rz.system().type() << "|";
  for (int i = 0; i < rz.nvars(); ++i)
    for (int j = 0; j < rz.nvars(); ++j) os << rz.cartan(i, j).get_str() << ",";
  return os.str();
}

inline std::vector<int> popcount_degs(int k) {
  std::vector<int> d(1 << k);
  for (int e = 0; e < (1 << k); ++e) d[e] = popcount32(e);
  return d;
}

}  // namespace detail

// Memoized construction of right-action data per (realization, word).
inline std::shared_ptr<const BSData> bs_data(const Realization& rz, const Word& word) {
  static std::map<std::string, std::shared_ptr<const BSData>> cache;
  static std::mutex mu;
  std::string key = detail::realization_fingerprint(rz) + "#" + word_str(word);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  int m = rz.nvars();
  std::shared_ptr<const BSData> prev;
  if (!word.empty()) {
    Word pre(word.begin(), word.end() - 1);
    prev = bs_data(rz, pre);
  }
  auto data = std::make_shared<BSData>();
  data->word = word;
  data->gen_degs = detail::popcount_degs((int)word.size());
  if (word.empty()) {
    for (int r = 0; r < m; ++r) {
      PolyMatrix mat(m, {0}, {0}, 1);
      mat.set(0, 0, MultiPoly::variable(m, r));
      data->right.push_back(std::move(mat));
    }
  } else {
    int s = word.back();
    require(s >= 0 && s < m, errc::generator_out_of_range, "word letter");
    int half = prev->rank();
    // alpha_s^2 acting on the prefix.
    PolyMatrix alpha2 = prev->right[s].compose(prev->right[s]);
    for (int r = 0; r < m; ++r) {
      Rat c = rz.half_cartan(s, r);
      // a = x_r - c*alpha_s, s-invariant.
      PolyMatrix a = prev->right[r];
      PolyMatrix ca = prev->right[s];
      ca.scale(c);
      a -= ca;
      PolyMatrix mat(m, data->gen_degs, data->gen_degs, 1);
      for (auto& [rc, p] : a.entries()) {
        mat.set(rc.first, rc.second, p);                    // (0,0) block
        mat.set(rc.first + half, rc.second + half, p);      // (1,1) block
      }
      if (c != 0) {
        for (auto& [rc, p] : alpha2.entries()) mat.set(rc.first, rc.second + half, p * c);
        MultiPoly cpoly = MultiPoly::constant(m, c);
        for (int e = 0; e < half; ++e) mat.set(e + half, e, cpoly);
      }
      data->right.push_back(std::move(mat));
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, _] = cache.emplace(key, data);
  return it->second;
}

// One Bott-Samelson summand: its word and internal shift.
struct Summand {
  Word word;
  int shift = 0;

  int rank() const { return 1 << word.size(); }
  int gen_deg(int eps) const { return popcount32(eps) - shift; }

  friend bool operator==(const Summand& a, const Summand& b) {
    return a.word == b.word && a.shift == b.shift;
  }
  std::string str() const { return "BS(" + word_str(word) + ")<" + std::to_string(shift) + ">"; }
};

struct DirectSum {
  std::vector<Summand> summands;

  int count() const { return (int)summands.size(); }
  int total_rank() const {
    int t = 0;
    for (auto& s : summands) t += s.rank();
    return t;
  }
  std::vector<int> offsets() const {
    std::vector<int> o;
    o.reserve(summands.size());
    int t = 0;
    for (auto& s : summands) {
      o.push_back(t);
      t += s.rank();
    }
    return o;
  }
  std::vector<int> gen_degs() const {
    std::vector<int> d;
    d.reserve(total_rank());
    for (auto& s : summands)
      for (int e = 0; e < s.rank(); ++e) d.push_back(s.gen_deg(e));
    return d;
  }

  GradedDims left_graded_dims(int nvars, int cutoff) const {
    GradedDims g;
    for (int gd : gen_degs())
      for (int d = gd; d <= cutoff; ++d) {
        long long c =
            nvars == 0 ? (d == gd ? 1 : 0) : (long long)binomial(d - gd + nvars - 1, nvars - 1);
        g.add(d, c);
      }
    return g;
  }

  friend bool operator==(const DirectSum& a, const DirectSum& b) {
    return a.summands == b.summands;
  }
  std::string str() const {
    std::string s;
    for (auto& x : summands) {
      if (!s.empty()) s += " + ";
      s += x.str();
    }
    return s.empty() ? "0" : s;
  }
};

inline DirectSum single(const Word& w, int shift) { return DirectSum{{Summand{w, shift}}}; }
inline DirectSum regular_bimodule(int shift = 0) { return single({}, shift); }

// Block-diagonal right action of a variable on a direct sum.
inline PolyMatrix right_action_var(const Realization& rz, const DirectSum& ds, int var) {
  auto degs = ds.gen_degs();
  PolyMatrix out(rz.nvars(), degs, degs, 1);
  int off = 0;
  for (auto& s : ds.summands) {
    auto data = bs_data(rz, s.word);
    for (auto& [rc, p] : data->right[var].entries()) out.set(off + rc.first, off + rc.second, p);
    off += s.rank();
  }
  return out;
}

// Right action of a homogeneous polynomial.
inline PolyMatrix right_action_poly(const Realization& rz, const DirectSum& ds,
                                    const MultiPoly& p) {
  int d = p.is_zero() ? 0 : p.degree();
  require(p.is_zero() || p.is_homogeneous(d), errc::grading_violation,
          "right action of inhomogeneous polynomial");
  auto degs = ds.gen_degs();
  PolyMatrix acc(rz.nvars(), degs, degs, d);
  if (p.is_zero()) return acc;
  std::vector<PolyMatrix> vars;
  for (int r = 0; r < rz.nvars(); ++r) vars.push_back(right_action_var(rz, ds, r));
  for (auto& [mono, c] : p.terms()) {
    PolyMatrix term = PolyMatrix::identity(rz.nvars(), degs);
    for (int v = 0; v < rz.nvars(); ++v)
      for (int e = 0; e < mono_exp(mono, v); ++e) term = vars[v].compose(term);
    term.scale(c);
    acc += term;
  }
  return acc;
}

// A graded map of bimodules between direct sums of BS summands, recorded as a
// matrix over the concatenated left bases.
struct BimoduleMap {
  DirectSum src, tgt;
  PolyMatrix mat;

  static BimoduleMap zero(const Realization& rz, const DirectSum& src, const DirectSum& tgt,
                          int map_deg = 0) {
    return BimoduleMap{src, tgt,
                       PolyMatrix(rz.nvars(), tgt.gen_degs(), src.gen_degs(), map_deg)};
  }
  static BimoduleMap identity(const Realization& rz, const DirectSum& ds) {
    return BimoduleMap{ds, ds, PolyMatrix::identity(rz.nvars(), ds.gen_degs())};
  }

  BimoduleMap compose(const BimoduleMap& inner) const {
    require(inner.tgt == src, errc::shape_mismatch, "bimodule map composition");
    return BimoduleMap{inner.src, tgt, mat.compose(inner.mat)};
  }

  bool is_zero() const { return mat.is_zero(); }
};

// Verify mat . R_src(x_r) == R_tgt(x_r) . mat for every variable.
inline void check_intertwining(const Realization& rz, const BimoduleMap& f) {
  for (int r = 0; r < rz.nvars(); ++r) {
    PolyMatrix lhs = f.mat.compose(right_action_var(rz, f.src, r));
    PolyMatrix rhs = right_action_var(rz, f.tgt, r).compose(f.mat);
    require(lhs == rhs, errc::intertwining_violated,
            "map does not intertwine the right action of a" + std::to_string(r + 1));
  }
}

// Elementary multiplication slot map on a single summand:
//   BS(w)<n> -> BS(w minus slot)<n>,  marker 0 -> 1, marker 1 -> alpha twisted
// through the right action of alpha_s on the prefix before the slot.
inline BimoduleMap mult_at_slot(const Realization& rz, const Summand& s, int slot) {
  int k = (int)s.word.size();
  require(slot >= 0 && slot < k, errc::slot_out_of_range, "multiplication slot");
  int g = s.word[slot];
  Word pre(s.word.begin(), s.word.begin() + slot);
  Word rest = s.word;
  rest.erase(rest.begin() + slot);
  Summand out{rest, s.shift};
  auto pre_data = bs_data(rz, pre);
  const PolyMatrix& ra = pre_data->right[g];  // alpha_g on the prefix

  DirectSum sd{{s}}, od{{out}};
  PolyMatrix m(rz.nvars(), od.gen_degs(), sd.gen_degs(), 0);
  int pre_rank = 1 << slot;
  for (int eps = 0; eps < s.rank(); ++eps) {
    int eps_pre = eps & (pre_rank - 1);
    int bit = (eps >> slot) & 1;
    int eps_rest = (eps_pre) | ((eps >> (slot + 1)) << slot);
    if (bit == 0) {
      m.add(eps_rest, eps, MultiPoly::constant(rz.nvars(), Rat(1)));
    } else {
      // (head ox alpha ox tail) -> (head . alpha) ox tail
      for (int pr = 0; pr < pre_rank; ++pr) {
        const MultiPoly* p = ra.get(pr, eps_pre);
        if (!p) continue;
        int row = pr | (((eps >> (slot + 1))) << slot);
        m.add(row, eps, *p);
      }
    }
  }
  return BimoduleMap{sd, od, std::move(m)};
}

// Elementary coevaluation-style map P<n-1> -> BS(s)<n-shifted>; in the braid
// complexes it is used as P<-1> -> BS(s): 1 |-> alpha ox 1 + 1 ox alpha.
inline BimoduleMap eta_map(const Realization& rz, int gen, int shift = 0) {
  Summand src{{}, shift - 1};
  Summand tgt{Word{(std::uint8_t)gen}, shift};
  DirectSum sd{{src}}, td{{tgt}};
  PolyMatrix m(rz.nvars(), td.gen_degs(), sd.gen_degs(), 0);
  m.set(0, 0, MultiPoly::variable(rz.nvars(), gen));
  m.set(1, 0, MultiPoly::constant(rz.nvars(), Rat(1)));
  return BimoduleMap{sd, td, std::move(m)};
}

inline BimoduleMap mult_map(const Realization& rz, int gen, int shift = 0) {
  Summand src{Word{(std::uint8_t)gen}, shift};
  Summand tgt{{}, shift};
  DirectSum sd{{src}}, td{{tgt}};
  PolyMatrix m(rz.nvars(), td.gen_degs(), sd.gen_degs(), 0);
  m.set(0, 0, MultiPoly::constant(rz.nvars(), Rat(1)));
  m.set(0, 1, MultiPoly::variable(rz.nvars(), gen));
  return BimoduleMap{sd, td, std::move(m)};
}

// --- tensor products -------------------------------------------------------

// Tensor of direct sums: words concatenate, shifts add; summand order is
// row-major (left factor outer), generator bits of the left factor are low.
inline DirectSum tensor_sum(const DirectSum& a, const DirectSum& b) {
  DirectSum out;
  for (auto& x : a.summands)
    for (auto& y : b.summands) {
      Word w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      out.summands.push_back(Summand{std::move(w), x.shift + y.shift});
    }
  return out;
}

namespace detail {

// Flat index of (left generator, right generator) inside tensor_sum(a, b).
struct TensorIndex {
  std::vector<int> aoff, boff, outoff;
  int bcount;
  std::vector<int> arank, brank;

  TensorIndex(const DirectSum& a, const DirectSum& b)
      : aoff(a.offsets()), boff(b.offsets()), bcount(b.count()) {
    for (auto& s : a.summands) arank.push_back(s.rank());
    for (auto& s : b.summands) brank.push_back(s.rank());
    int t = 0;
    for (int i = 0; i < a.count(); ++i)
      for (int j = 0; j < b.count(); ++j) {
        outoff.push_back(t);
        t += arank[i] * brank[j];
      }
  }

  int operator()(int ai, int ae, int bi, int be) const {
    return outoff[ai * bcount + bi] + ae + arank[ai] * be;
  }
};

}  // namespace detail

// f ox g on left bases.  Polynomial coefficients of g pass through the target
// of f via its right action:  (f ox g) = sum over g-entries p of
// R_{tgt(f)}(p) . f  placed in the corresponding right-factor block.
inline BimoduleMap tensor_map(const Realization& rz, const BimoduleMap& f, const BimoduleMap& g) {
  DirectSum src = tensor_sum(f.src, g.src);
  DirectSum tgt = tensor_sum(f.tgt, g.tgt);
  detail::TensorIndex si(f.src, g.src), ti(f.tgt, g.tgt);

  PolyMatrix out(rz.nvars(), tgt.gen_degs(), src.gen_degs(),
                 f.mat.map_deg() + g.mat.map_deg());

  auto goffs = g.src.offsets();
  auto gtoffs = g.tgt.offsets();
  auto foffs = f.src.offsets();
  auto ftoffs = f.tgt.offsets();
  auto summand_of = [](const std::vector<int>& offs, const DirectSum& ds, int flat) {
    int i = (int)offs.size() - 1;
    while (offs[i] > flat) --i;
    (void)ds;
    return std::make_pair(i, flat - offs[i]);
  };

  // Group g entries by polynomial degree zero/nonzero: constants need no twist.
  for (auto& [rc, p] : g.mat.entries()) {
    auto [gr, gc] = rc;
    auto [bt, be_t] = summand_of(gtoffs, g.tgt, gr);
    auto [bs, be_s] = summand_of(goffs, g.src, gc);
    if (p.is_constant()) {
      Rat c = p.constant_value();
      for (auto& [frc, fp] : f.mat.entries()) {
        auto [fr, fc] = frc;
        auto [at, ae_t] = summand_of(ftoffs, f.tgt, fr);
        auto [as, ae_s] = summand_of(foffs, f.src, fc);
        out.add(ti(at, ae_t, bt, be_t), si(as, ae_s, bs, be_s), fp * c);
      }
    } else {
      PolyMatrix twisted = right_action_poly(rz, f.tgt, p).compose(f.mat);
      for (auto& [frc, fp] : twisted.entries()) {
        auto [fr, fc] = frc;
        auto [at, ae_t] = summand_of(ftoffs, f.tgt, fr);
        auto [as, ae_s] = summand_of(foffs, f.src, fc);
        out.add(ti(at, ae_t, bt, be_t), si(as, ae_s, bs, be_s), fp);
      }
    }
  }
  return BimoduleMap{std::move(src), std::move(tgt), std::move(out)};
}

// --- parabolic extension ---------------------------------------------------

// View data over a parabolic prefix realization inside an ambient one:
// identical words and matrices, polynomials widened to the ambient variables.
inline PolyMatrix widen_matrix(const PolyMatrix& m, int new_nvars) {
  PolyMatrix out(new_nvars, m.row_degs(), m.col_degs(), m.map_deg());
  for (auto& [rc, p] : m.entries()) out.set(rc.first, rc.second, p.widen(new_nvars));
  return out;
}

inline BimoduleMap gamma_extend(const Realization& sub, const Realization& ambient,
                                const BimoduleMap& f) {
  require(ambient.prefix(sub.nvars()) == sub, errc::realization_mismatch,
          "ambient realization does not extend the base one");
  for (auto* side : {&f.src, &f.tgt})
    for (auto& s : side->summands)
      for (auto g : s.word)
        require(g < sub.nvars(), errc::generator_out_of_range, "word leaves the parabolic");
  return BimoduleMap{f.src, f.tgt, widen_matrix(f.mat, ambient.nvars())};
}

// --- canonical split of an adjacent repeated letter ------------------------

// BS(u s s v)<n>  ~=  BS(u s v)<n> (+) BS(u s v)<n-1>, splitting on the middle
// marker (the first of the repeated pair); projections/inclusions are 0/1
// coordinate maps.
struct AdjacentSplit {
  Summand piece0, piece1;        // <n> and <n-1>
  BimoduleMap pi0, pi1, iota0, iota1;
};

inline AdjacentSplit split_adjacent(const Realization& rz, const Summand& s, int pos) {
  int k = (int)s.word.size();
  require(pos >= 0 && pos + 1 < k && s.word[pos] == s.word[pos + 1], errc::slot_out_of_range,
          "no adjacent repeat at position");
  Word rest = s.word;
  rest.erase(rest.begin() + pos);
  AdjacentSplit out;
  out.piece0 = Summand{rest, s.shift};
  out.piece1 = Summand{rest, s.shift - 1};
  DirectSum sd{{s}};
  DirectSum d0{{out.piece0}}, d1{{out.piece1}};
  PolyMatrix p0(rz.nvars(), d0.gen_degs(), sd.gen_degs(), 0);
  PolyMatrix p1(rz.nvars(), d1.gen_degs(), sd.gen_degs(), 0);
  PolyMatrix i0(rz.nvars(), sd.gen_degs(), d0.gen_degs(), 0);
  PolyMatrix i1(rz.nvars(), sd.gen_degs(), d1.gen_degs(), 0);
  MultiPoly one = MultiPoly::constant(rz.nvars(), Rat(1));
  for (int eps = 0; eps < s.rank(); ++eps) {
    int bit = (eps >> pos) & 1;
    int low = eps & ((1 << pos) - 1);
    int rest_eps = low | ((eps >> (pos + 1)) << pos);
    if (bit == 0) {
      p0.set(rest_eps, eps, one);
      i0.set(eps, rest_eps, one);
    } else {
      p1.set(rest_eps, eps, one);
      i1.set(eps, rest_eps, one);
    }
  }
  out.pi0 = BimoduleMap{sd, d0, std::move(p0)};
  out.pi1 = BimoduleMap{sd, d1, std::move(p1)};
  out.iota0 = BimoduleMap{d0, sd, std::move(i0)};
  out.iota1 = BimoduleMap{d1, sd, std::move(i1)};
  return out;
}

}  // namespace trihom
