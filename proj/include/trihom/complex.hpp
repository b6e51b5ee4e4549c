#pragma once
// Bounded complexes of direct sums of Bott-Samelson summands, together with
// the operations that make braid-word complexes computable: tensor product,
// totalization of multicomplexes, canonical splitting of adjacent repeated
// letters, and summand-level Gaussian elimination.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "trihom/bimodule.hpp"

namespace trihom {

namespace detail {

// Dense inverse over the rationals; empty result when singular.
inline std::vector<std::vector<Rat>> invert_dense(std::vector<std::vector<Rat>> a) {
  int n = (int)a.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return {};
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = a[col][col];
    for (int c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

// Copy of a matrix with every generator degree shifted by n on both sides
// (entry polynomials are unchanged).
inline PolyMatrix redegreed(const PolyMatrix& m, const std::vector<int>& row_degs,
                            const std::vector<int>& col_degs) {
  PolyMatrix out(m.nvars(), row_degs, col_degs, m.map_deg());
  for (auto& [rc, p] : m.entries()) out.set(rc.first, rc.second, p);
  return out;
}

// Submatrix over [r0, r1) x [c0, c1).
inline PolyMatrix sub_block(const PolyMatrix& m, int r0, int r1, int c0, int c1) {
  std::vector<int> rd(m.row_degs().begin() + r0, m.row_degs().begin() + r1);
  std::vector<int> cd(m.col_degs().begin() + c0, m.col_degs().begin() + c1);
  PolyMatrix out(m.nvars(), rd, cd, m.map_deg());
  auto it = m.entries().lower_bound({r0, 0});
  for (; it != m.entries().end() && it->first.first < r1; ++it) {
    int c = it->first.second;
    if (c >= c0 && c < c1) out.set(it->first.first - r0, c - c0, it->second);
  }
  return out;
}

inline void place_block(PolyMatrix& dst, int r0, int c0, const PolyMatrix& src,
                        const Rat& factor = Rat(1)) {
  for (auto& [rc, p] : src.entries()) {
    if (factor == 1)
      dst.add(rc.first + r0, rc.second + c0, p);
    else {
      MultiPoly q = p;
      q.scale(factor);
      dst.add(rc.first + r0, rc.second + c0, q);
    }
  }
}

}  // namespace detail

// --- complexes of bimodules -------------------------------------------------

class BimoduleComplex {
 public:
  explicit BimoduleComplex(Realization rz) : rz_(std::move(rz)) {}

  const Realization& rz() const { return rz_; }
  const std::map<int, DirectSum>& terms() const { return terms_; }
  const std::map<int, PolyMatrix>& diffs() const { return diffs_; }
  const DirectSum* term(int j) const {
    auto it = terms_.find(j);
    return it == terms_.end() ? nullptr : &it->second;
  }
  const PolyMatrix* diff(int j) const {
    auto it = diffs_.find(j);
    return it == diffs_.end() ? nullptr : &it->second;
  }

  void set_term(int j, DirectSum ds) {
    if (ds.count() == 0)
      terms_.erase(j);
    else
      terms_[j] = std::move(ds);
  }
  void set_diff(int j, PolyMatrix m) {
    if (m.is_zero())
      diffs_.erase(j);
    else
      diffs_[j] = std::move(m);
  }

  // Doubled-grading offsets recorded by normalization; they relabel the table
  // axes without touching the underlying complex.
  int hoch_offset2 = 0;
  int cohom_offset2 = 0;

  int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  int summand_count() const {
    int n = 0;
    for (auto& [j, t] : terms_) n += t.count();
    return n;
  }

  // Structural checks: differential shapes, d o d = 0, and (optionally) that
  // every differential intertwines the right action.
  void validate(bool with_intertwining = false) const {
    for (auto& [j, d] : diffs_) {
      auto s = terms_.find(j);
      auto t = terms_.find(j + 1);
      require(s != terms_.end() && t != terms_.end(), errc::shape_mismatch,
              "differential without endpoints");
      require(d.map_deg() == 0, errc::grading_violation, "differential has nonzero degree");
      require(d.col_degs() == s->second.gen_degs() && d.row_degs() == t->second.gen_degs(),
              errc::shape_mismatch, "differential shape");
      if (auto n = diffs_.find(j + 1); n != diffs_.end())
        require(n->second.compose(d).is_zero(), errc::shape_mismatch, "d o d != 0");
      if (with_intertwining)
        check_intertwining(rz_, BimoduleMap{s->second, t->second, d});
    }
  }

  // Internal grading shift <n>: raises every summand shift by n.
  void internal_shift(int n) {
    if (n == 0) return;
    for (auto& [j, t] : terms_)
      for (auto& s : t.summands) s.shift += n;
    for (auto& [j, d] : diffs_)
      d = detail::redegreed(d, terms_.at(j + 1).gen_degs(), terms_.at(j).gen_degs());
  }

  void drop_empty() {
    for (auto it = diffs_.begin(); it != diffs_.end();)
      it = it->second.is_zero() ? diffs_.erase(it) : std::next(it);
  }

  std::string str() const {
    std::string s;
    for (auto& [j, t] : terms_) {
      s += "[" + std::to_string(j) + "] " + t.str() + "\n";
    }
    return s;
  }

 private:
  Realization rz_;
  std::map<int, DirectSum> terms_;
  std::map<int, PolyMatrix> diffs_;
};

inline BimoduleComplex complex_of(const Realization& rz, DirectSum ds, int degree = 0) {
  BimoduleComplex c(rz);
  c.set_term(degree, std::move(ds));
  return c;
}

// Elementary crossing complexes: positive letter in degrees (0, 1), inverse
// letter in degrees (-1, 0).
inline BimoduleComplex crossing_complex(const Realization& rz, int gen, int sign) {
  require(gen >= 0 && gen < rz.nvars(), errc::generator_out_of_range, "crossing generator");
  BimoduleComplex c(rz);
  if (sign > 0) {
    BimoduleMap m = mult_map(rz, gen, 1);
    c.set_term(0, m.src);
    c.set_term(1, m.tgt);
    c.set_diff(0, m.mat);
  } else {
    BimoduleMap e = eta_map(rz, gen, 0);
    c.set_term(-1, e.src);
    c.set_term(0, e.tgt);
    c.set_diff(-1, e.mat);
  }
  return c;
}

// Tensor product with the usual one-complex sign: d(x ox y) = dx ox y +
// (-1)^i x ox dy on the (i, j) component.
inline BimoduleComplex tensor_complexes(const BimoduleComplex& A, const BimoduleComplex& B) {
  const Realization& rz = A.rz();
  BimoduleComplex out(rz);
  out.hoch_offset2 = A.hoch_offset2 + B.hoch_offset2;
  out.cohom_offset2 = A.cohom_offset2 + B.cohom_offset2;

  // Terms: for fixed total degree n, blocks (i, n-i) with i ascending.
  std::map<int, std::vector<std::pair<int, int>>> layout;  // n -> [(i, j)]
  for (auto& [i, ta] : A.terms())
    for (auto& [j, tb] : B.terms()) layout[i + j].push_back({i, j});
  std::map<int, DirectSum> sums;
  std::map<int, std::map<std::pair<int, int>, int>> offs;  // n -> (i,j) -> gen offset
  for (auto& [n, blocks] : layout) {
    DirectSum ds;
    for (auto& [i, j] : blocks) {
      offs[n][{i, j}] = ds.total_rank();
      DirectSum t = tensor_sum(*A.term(i), *B.term(j));
      for (auto& s : t.summands) ds.summands.push_back(std::move(s));
    }
    sums[n] = std::move(ds);
  }
  for (auto& [n, ds] : sums) out.set_term(n, ds);

  for (auto& [n, blocks] : layout) {
    auto tgt_it = sums.find(n + 1);
    if (tgt_it == sums.end()) continue;
    PolyMatrix d(rz.nvars(), tgt_it->second.gen_degs(), sums.at(n).gen_degs(), 0);
    bool any = false;
    for (auto& [i, j] : blocks) {
      int c0 = offs.at(n).at({i, j});
      if (auto* dA = A.diff(i)) {
        BimoduleMap f{*A.term(i), *A.term(i + 1), *dA};
        BimoduleMap g = BimoduleMap::identity(rz, *B.term(j));
        BimoduleMap fg = tensor_map(rz, f, g);
        detail::place_block(d, offs.at(n + 1).at({i + 1, j}), c0, fg.mat);
        any = true;
      }
      if (auto* dB = B.diff(j)) {
        BimoduleMap f = BimoduleMap::identity(rz, *A.term(i));
        BimoduleMap g{*B.term(j), *B.term(j + 1), *dB};
        BimoduleMap fg = tensor_map(rz, f, g);
        detail::place_block(d, offs.at(n + 1).at({i, j + 1}), c0, fg.mat,
                            (i % 2 == 0) ? Rat(1) : Rat(-1));
        any = true;
      }
    }
    if (any) out.set_diff(n, std::move(d));
  }
  return out;
}

// --- canonical splitting ----------------------------------------------------

// Replace one summand carrying an adjacent repeated letter by its two split
// pieces, rewriting the differentials through the projection/inclusion pair.
inline bool canonicalize_step(BimoduleComplex& C) {
  for (auto& [j, t] : C.terms()) {
    for (int si = 0; si < t.count(); ++si) {
      const Summand& s = t.summands[si];
      for (int pos = 0; pos + 1 < (int)s.word.size(); ++pos) {
        if (s.word[pos] != s.word[pos + 1]) continue;
        const Realization& rz = C.rz();
        AdjacentSplit sp = split_adjacent(rz, s, pos);
        auto offsets = t.offsets();
        int b0 = offsets[si], b1 = b0 + s.rank();
        int total = t.total_rank();

        DirectSum nt;
        for (int k = 0; k < si; ++k) nt.summands.push_back(t.summands[k]);
        nt.summands.push_back(sp.piece0);
        nt.summands.push_back(sp.piece1);
        for (int k = si + 1; k < t.count(); ++k) nt.summands.push_back(t.summands[k]);

        int half = sp.piece0.rank();
        // Row transform U: identity outside the summand, [pi0; pi1] on it.
        PolyMatrix U(rz.nvars(), nt.gen_degs(), t.gen_degs(), 0);
        MultiPoly one = MultiPoly::constant(rz.nvars(), Rat(1));
        for (int e = 0; e < b0; ++e) U.set(e, e, one);
        detail::place_block(U, b0, b0, sp.pi0.mat);
        detail::place_block(U, b0 + half, b0, sp.pi1.mat);
        for (int e = b1; e < total; ++e) U.set(e, e, one);
        // Column transform V: identity outside, [iota0 | iota1] on it.
        PolyMatrix V(rz.nvars(), t.gen_degs(), nt.gen_degs(), 0);
        for (int e = 0; e < b0; ++e) V.set(e, e, one);
        detail::place_block(V, b0, b0, sp.iota0.mat);
        detail::place_block(V, b0, b0 + half, sp.iota1.mat);
        for (int e = b1; e < total; ++e) V.set(e, e, one);

        int deg = j;
        if (auto* din = C.diff(deg - 1)) C.set_diff(deg - 1, U.compose(*din));
        if (auto* dout = C.diff(deg)) C.set_diff(deg, dout->compose(V));
        C.set_term(deg, std::move(nt));
        return true;
      }
    }
  }
  return false;
}

inline void canonicalize(BimoduleComplex& C) {
  while (canonicalize_step(C)) {
  }
}

// --- Gaussian elimination ----------------------------------------------------

// A block between equal summands is invertible iff its scalar part is: all
// entry degrees are >= 0 and the positive part is nilpotent, so the inverse is
// the finite Neumann series around the scalar inverse.
inline std::optional<PolyMatrix> invert_unit_block(const PolyMatrix& B) {
  int n = (int)B.row_degs().size();
  std::vector<std::vector<Rat>> b0(n, std::vector<Rat>(n, Rat(0)));
  PolyMatrix bplus(B.nvars(), B.row_degs(), B.col_degs(), 0);
  for (auto& [rc, p] : B.entries()) {
    if (p.is_constant())
      b0[rc.first][rc.second] = p.constant_value();
    else
      bplus.set(rc.first, rc.second, p);
  }
  auto inv0 = detail::invert_dense(b0);
  if (inv0.empty()) return std::nullopt;
  PolyMatrix I0(B.nvars(), B.col_degs(), B.row_degs(), 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (inv0[r][c] != 0) I0.set(r, c, MultiPoly::constant(B.nvars(), inv0[r][c]));
  // B^{-1} = sum_t (-I0 Bplus)^t I0
  PolyMatrix acc = I0;
  PolyMatrix pow = I0;
  while (true) {
    PolyMatrix step = I0.compose(bplus.compose(pow));
    step.scale(Rat(-1));
    if (step.is_zero()) break;
    acc += step;
    pow = std::move(step);
  }
  return acc;
}

// One strike: find a differential block between equal summands with invertible
// scalar part, contract it, and apply the correction to the complement.
inline bool eliminate_step(BimoduleComplex& C) {
  const Realization& rz = C.rz();
  for (auto& [j, d] : C.diffs()) {
    const DirectSum& src = *C.term(j);
    const DirectSum& tgt = *C.term(j + 1);
    auto soff = src.offsets();
    auto toff = tgt.offsets();
    for (int q = 0; q < src.count(); ++q) {
      for (int p = 0; p < tgt.count(); ++p) {
        if (!(src.summands[q] == tgt.summands[p])) continue;
        int r0 = toff[p], r1 = r0 + tgt.summands[p].rank();
        int c0 = soff[q], c1 = c0 + src.summands[q].rank();
        PolyMatrix B = detail::sub_block(d, r0, r1, c0, c1);
        if (B.is_zero()) continue;
        auto Binv = invert_unit_block(B);
        if (!Binv) continue;

        DirectSum nsrc, ntgt;
        for (int k = 0; k < src.count(); ++k)
          if (k != q) nsrc.summands.push_back(src.summands[k]);
        for (int k = 0; k < tgt.count(); ++k)
          if (k != p) ntgt.summands.push_back(tgt.summands[k]);

        int srcn = src.total_rank(), tgtn = tgt.total_rank();
        auto keep_rows = [&](int r) { return r < r0 || r >= r1; };
        auto keep_cols = [&](int c) { return c < c0 || c >= c1; };
        auto new_row = [&](int r) { return r < r0 ? r : r - (r1 - r0); };
        auto new_col = [&](int c) { return c < c0 ? c : c - (c1 - c0); };

        // epsilon - delta B^{-1} gamma on the complement.
        PolyMatrix nd(rz.nvars(), ntgt.gen_degs(), nsrc.gen_degs(), 0);
        for (auto& [rc, pe] : d.entries())
          if (keep_rows(rc.first) && keep_cols(rc.second))
            nd.add(new_row(rc.first), new_col(rc.second), pe);
        PolyMatrix delta = detail::sub_block(d, 0, tgtn, c0, c1);   // all rows, col q
        PolyMatrix gamma = detail::sub_block(d, r0, r1, 0, srcn);   // row p, all cols
        PolyMatrix corr = delta.compose(Binv->compose(gamma));
        for (auto& [rc, pe] : corr.entries()) {
          if (!keep_rows(rc.first) || !keep_cols(rc.second)) continue;
          MultiPoly m = pe;
          m.scale(Rat(-1));
          nd.add(new_row(rc.first), new_col(rc.second), m);
        }

        // Neighbours lose the contracted rows/columns.
        int deg = j;
        if (auto* din = C.diff(deg - 1)) {
          PolyMatrix nin(rz.nvars(), nsrc.gen_degs(), din->col_degs(), 0);
          for (auto& [rc, pe] : din->entries())
            if (keep_cols(rc.first)) nin.add(new_col(rc.first), rc.second, pe);
          C.set_diff(deg - 1, std::move(nin));
        }
        if (auto* dout = C.diff(deg + 1)) {
          PolyMatrix nout(rz.nvars(), dout->row_degs(), ntgt.gen_degs(), 0);
          for (auto& [rc, pe] : dout->entries())
            if (keep_rows(rc.second)) nout.add(rc.first, new_row(rc.second), pe);
          C.set_diff(deg + 1, std::move(nout));
        }
        C.set_diff(deg, std::move(nd));
        C.set_term(deg, std::move(nsrc));
        C.set_term(deg + 1, std::move(ntgt));
        C.drop_empty();
        return true;
      }
    }
  }
  return false;
}

inline void minimize(BimoduleComplex& C) {
  for (;;) {
    canonicalize(C);
    if (!eliminate_step(C)) break;
    while (eliminate_step(C)) {
    }
  }
}

// --- braid complexes ---------------------------------------------------------

struct ReductionStats {
  int peak_summands = 0;
  int final_summands = 0;
};

inline BimoduleComplex braid_complex(const Realization& rz, const BraidWord& b,
                                        bool reduce = true, ReductionStats* stats = nullptr) {
  BimoduleComplex C = complex_of(rz, regular_bimodule());
  for (std::size_t k = 0; k < b.letters.size(); ++k) {
    BimoduleComplex F = crossing_complex(rz, b.generator(k), b.sign(k));
    C = tensor_complexes(C, F);
    if (stats) stats->peak_summands = std::max(stats->peak_summands, C.summand_count());
    if (reduce) minimize(C);
  }
  if (stats) {
    stats->peak_summands = std::max(stats->peak_summands, C.summand_count());
    stats->final_summands = C.summand_count();
  }
  return C;
}

// Multiset of summands per cohomological degree, in a canonical order.
inline std::map<int, std::vector<std::pair<Word, int>>> summand_profile(
    const BimoduleComplex& C) {
  std::map<int, std::vector<std::pair<Word, int>>> out;
  for (auto& [j, t] : C.terms()) {
    auto& v = out[j];
    for (auto& s : t.summands) v.push_back({s.word, s.shift});
    std::sort(v.begin(), v.end());
  }
  return out;
}

// --- multicomplexes and totalization -----------------------------------------

struct MultiComplex {
  Realization rz;
  int arity = 1;
  std::map<std::vector<int>, DirectSum> terms;
  // diffs[(pos, dir)] : pos -> pos + e_dir
  std::map<std::pair<std::vector<int>, int>, PolyMatrix> diffs;

  const DirectSum* term(const std::vector<int>& pos) const {
    auto it = terms.find(pos);
    return it == terms.end() ? nullptr : &it->second;
  }
  const PolyMatrix* diff(const std::vector<int>& pos, int dir) const {
    auto it = diffs.find({pos, dir});
    return it == diffs.end() ? nullptr : &it->second;
  }

  // Differentials must square to zero in each direction and commute with each
  // other on the nose; totalization introduces the signs.
  void validate() const {
    for (auto& [key, d] : diffs) {
      auto& [pos, dir] = key;
      require(dir >= 0 && dir < arity, errc::arity_mismatch, "direction out of range");
      std::vector<int> next = pos;
      next[dir] += 1;
      if (auto* d2 = diff(next, dir))
        require(d2->compose(d).is_zero(), errc::shape_mismatch, "multicomplex d_i^2 != 0");
      for (int other = 0; other < arity; ++other) {
        if (other == dir) continue;
        std::vector<int> over = pos;
        over[other] += 1;
        const PolyMatrix* dba = diff(next, other);  // d_other after d_dir
        const PolyMatrix* dab = diff(pos, other);   // d_other first...
        const PolyMatrix* dcl = diff(over, dir);    // ...then d_dir
        bool has_l = dba != nullptr;
        bool has_r = dab != nullptr && dcl != nullptr;
        if (has_l && has_r)
          require(dba->compose(d) == dcl->compose(*dab), errc::shape_mismatch,
                  "multicomplex differentials do not commute");
        else if (has_l)
          require(dba->compose(d).is_zero(), errc::shape_mismatch,
                  "multicomplex differentials do not commute");
        else if (has_r)
          require(dcl->compose(*dab).is_zero(), errc::shape_mismatch,
                  "multicomplex differentials do not commute");
      }
    }
  }
};

inline MultiComplex as_multicomplex(const BimoduleComplex& C) {
  MultiComplex mc{C.rz(), 1, {}, {}};
  for (auto& [j, t] : C.terms()) mc.terms[{j}] = t;
  for (auto& [j, d] : C.diffs()) mc.diffs[{{j}, 0}] = d;
  return mc;
}

inline BimoduleComplex as_complex(const MultiComplex& mc) {
  require(mc.arity == 1, errc::arity_mismatch, "arity-1 expected");
  BimoduleComplex C(mc.rz);
  for (auto& [pos, t] : mc.terms) C.set_term(pos[0], t);
  for (auto& [key, d] : mc.diffs) C.set_diff(key.first[0], d);
  return C;
}

// Tensor of multicomplexes: directions concatenate, no signs introduced.
inline MultiComplex tensor_multicomplexes(const MultiComplex& A, const MultiComplex& B) {
  MultiComplex out{A.rz, A.arity + B.arity, {}, {}};
  for (auto& [pa, ta] : A.terms)
    for (auto& [pb, tb] : B.terms) {
      std::vector<int> pos = pa;
      pos.insert(pos.end(), pb.begin(), pb.end());
      out.terms[pos] = tensor_sum(ta, tb);
      for (int dir = 0; dir < A.arity; ++dir) {
        if (auto* d = A.diff(pa, dir)) {
          std::vector<int> na = pa;
          na[dir] += 1;
          if (A.term(na)) {
            BimoduleMap f{ta, *A.term(na), *d};
            out.diffs[{pos, dir}] = tensor_map(A.rz, f, BimoduleMap::identity(A.rz, tb)).mat;
          }
        }
      }
      for (int dir = 0; dir < B.arity; ++dir) {
        if (auto* d = B.diff(pb, dir)) {
          std::vector<int> nb = pb;
          nb[dir] += 1;
          if (B.term(nb)) {
            BimoduleMap g{tb, *B.term(nb), *d};
            out.diffs[{pos, A.arity + dir}] =
                tensor_map(A.rz, BimoduleMap::identity(A.rz, ta), g).mat;
          }
        }
      }
    }
  return out;
}

// Totalization along a map f: directions -> output directions.  Output entry
// at a collects all positions c with sum over f^{-1}(i) of c = a_i, ordered
// lexicographically; the block of d_dir out of c carries the sign
// (-1)^{sum of c_k over k < dir with f(k) = f(dir)}.
struct TotResult {
  MultiComplex cx;
  std::map<std::vector<int>, std::vector<std::vector<int>>> fibers;
};

inline TotResult tot(const MultiComplex& mc, const std::vector<int>& f, int out_arity) {
  require((int)f.size() == mc.arity, errc::arity_mismatch, "tot map arity");
  for (int v : f) require(v >= 0 && v < out_arity, errc::arity_mismatch, "tot map range");
  auto image = [&](const std::vector<int>& c) {
    std::vector<int> a(out_arity, 0);
    for (int k = 0; k < mc.arity; ++k) a[f[k]] += c[k];
    return a;
  };

  TotResult res;
  res.cx.rz = mc.rz;
  res.cx.arity = out_arity;
  for (auto& [c, t] : mc.terms) res.fibers[image(c)].push_back(c);
  for (auto& [a, fiber] : res.fibers) std::sort(fiber.begin(), fiber.end());

  std::map<std::vector<int>, std::map<std::vector<int>, int>> offs;
  for (auto& [a, fiber] : res.fibers) {
    DirectSum ds;
    for (auto& c : fiber) {
      offs[a][c] = ds.total_rank();
      for (auto& s : mc.terms.at(c).summands) ds.summands.push_back(s);
    }
    res.cx.terms[a] = std::move(ds);
  }

  std::map<std::pair<std::vector<int>, int>, PolyMatrix> built;
  for (auto& [key, d] : mc.diffs) {
    auto& [c, dir] = key;
    std::vector<int> c2 = c;
    c2[dir] += 1;
    if (!mc.term(c2)) continue;
    std::vector<int> a = image(c), a2 = image(c2);
    int odir = f[dir];
    long sign_exp = 0;
    for (int k = 0; k < dir; ++k)
      if (f[k] == odir) sign_exp += c[k];
    auto bkey = std::make_pair(a, odir);
    auto it = built.find(bkey);
    if (it == built.end()) {
      PolyMatrix m(mc.rz.nvars(), res.cx.terms.at(a2).gen_degs(),
                   res.cx.terms.at(a).gen_degs(), 0);
      it = built.emplace(bkey, std::move(m)).first;
    }
    detail::place_block(it->second, offs.at(a2).at(c2), offs.at(a).at(c), d,
                        (sign_exp % 2 == 0) ? Rat(1) : Rat(-1));
  }
  for (auto& [key, m] : built)
    if (!m.is_zero()) res.cx.diffs[key] = std::move(m);
  return res;
}

}  // namespace trihom
