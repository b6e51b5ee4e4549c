#pragma once
// Hochschild homology of a complex of bimodules through the Koszul resolution
// of the regular bimodule: row i of the bicomplex holds one copy of each term
// per size-i subset of the variables, shifted down by <-i>; the contraction
// differential acts by left-minus-right multiplication by the removed
// variable, with the usual alternating subset signs.
//
// Homology is taken contraction-first, then in the complex direction; the
// dimensions of the double subquotient in each internal degree d come from
// ranks of exact sparse slices.

#include <array>
#include <future>
#include <map>
#include <vector>

#include "trihom/complex.hpp"

namespace trihom {

// Dimension table keyed by (i2, j2, d): doubled Hochschild degree, doubled
// cohomological degree, internal degree.  Entries are exact for d <= cutoff.
struct TriGradedTable {
  std::map<std::array<int, 3>, long long> dims;
  int cutoff = 0;
  int nvars = 0;
  int hoch_top2 = 0;  // largest doubled Hochschild index the computation can reach

  long long at(int i2, int j2, int d) const {
    auto it = dims.find({i2, j2, d});
    return it == dims.end() ? 0 : it->second;
  }
  void add(int i2, int j2, int d, long long v) {
    if (v == 0) return;
    dims[{i2, j2, d}] += v;
    if (dims[{i2, j2, d}] == 0) dims.erase({i2, j2, d});
  }

  TriGradedTable truncated(int new_cutoff) const {
    TriGradedTable t;
    t.cutoff = std::min(cutoff, new_cutoff);
    t.nvars = nvars;
    t.hoch_top2 = hoch_top2;
    for (auto& [k, v] : dims)
      if (k[2] <= t.cutoff) t.dims.emplace(k, v);
    return t;
  }

  friend bool operator==(const TriGradedTable& a, const TriGradedTable& b) {
    return a.dims == b.dims && a.cutoff == b.cutoff;
  }

  std::string str() const {
    std::string s;
    for (auto& [k, v] : dims)
      s += "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) +
           ") " + std::to_string(v) + "\n";
    return s;
  }
};

namespace detail {

inline std::vector<std::vector<int>> subsets_by_size(int m) {
  std::vector<std::vector<int>> out(m + 1);
  for (int mask = 0; mask < (1 << m); ++mask) out[popcount32(mask)].push_back(mask);
  return out;
}

}  // namespace detail

// The Koszul bicomplex of a bimodule complex, materialized cell by cell.
class KoszulBicomplex {
 public:
  explicit KoszulBicomplex(const BimoduleComplex& C)
      : rz_(C.rz()), m_(C.rz().nvars()), subsets_(detail::subsets_by_size(m_)) {
    for (auto& [j, t] : C.terms()) xterms_[j] = t;
    for (auto& [j, d] : C.diffs()) xdiffs_[j] = d;
  }

  int nvars() const { return m_; }
  const std::map<int, DirectSum>& base_terms() const { return xterms_; }

  // Module at cell (i, j): one copy of X_j<-i> per size-i subset.
  DirectSum cell(int i, int j) const {
    DirectSum out;
    auto it = xterms_.find(j);
    if (it == xterms_.end() || i < 0 || i > m_) return out;
    for (std::size_t t = 0; t < subsets_[i].size(); ++t)
      for (auto& s : it->second.summands) out.summands.push_back(Summand{s.word, s.shift - i});
    return out;
  }

  // Left-minus-right multiplication by variable r on X_j.
  const PolyMatrix& left_minus_right(int j, int r) const {
    auto key = std::make_pair(j, r);
    auto it = lr_cache_.find(key);
    if (it != lr_cache_.end()) return it->second;
    const DirectSum& X = xterms_.at(j);
    auto degs = X.gen_degs();
    PolyMatrix M(m_, degs, degs, 1);
    MultiPoly xr = MultiPoly::variable(m_, r);
    for (int e = 0; e < X.total_rank(); ++e) M.set(e, e, xr);
    M -= right_action_var(rz_, X, r);
    return lr_cache_.emplace(key, std::move(M)).first->second;
  }

  // Contraction differential (i, j) -> (i-1, j).
  PolyMatrix contraction(int i, int j) const {
    const DirectSum src = cell(i, j), tgt = cell(i - 1, j);
    PolyMatrix out(m_, tgt.gen_degs(), src.gen_degs(), 0);
    if (src.count() == 0 || tgt.count() == 0) return out;
    int block = xterms_.at(j).total_rank();
    std::map<int, int> tgt_pos;
    for (std::size_t t = 0; t < subsets_[i - 1].size(); ++t) tgt_pos[subsets_[i - 1][t]] = (int)t;
    for (std::size_t t = 0; t < subsets_[i].size(); ++t) {
      int mask = subsets_[i][t];
      int below = 0;
      for (int r = 0; r < m_; ++r) {
        if (!(mask >> r & 1)) continue;
        int rest = mask & ~(1 << r);
        Rat sign = (below % 2 == 0) ? Rat(1) : Rat(-1);
        detail::place_block(out, tgt_pos.at(rest) * block, (int)t * block,
                            left_minus_right(j, r), sign);
        ++below;
      }
    }
    return out;
  }

  // Horizontal differential (i, j) -> (i, j+1): block diagonal copy of d_j.
  PolyMatrix horizontal(int i, int j) const {
    const DirectSum src = cell(i, j), tgt = cell(i, j + 1);
    PolyMatrix out(m_, tgt.gen_degs(), src.gen_degs(), 0);
    auto it = xdiffs_.find(j);
    if (it == xdiffs_.end() || src.count() == 0 || tgt.count() == 0) return out;
    int sb = xterms_.at(j).total_rank();
    int tb = xterms_.at(j + 1).total_rank();
    for (std::size_t t = 0; t < subsets_[i].size(); ++t)
      detail::place_block(out, (int)t * tb, (int)t * sb, it->second);
    return out;
  }

  // The two differentials commute and each squares to zero.
  void validate() const {
    for (auto& [j, X] : xterms_) {
      for (int i = 1; i <= m_; ++i) {
        PolyMatrix dd = contraction(i - 1, j).compose(contraction(i, j));
        require(dd.is_zero(), errc::shape_mismatch, "contraction does not square to zero");
        if (xdiffs_.count(j)) {
          PolyMatrix a = contraction(i, j + 1).compose(horizontal(i, j));
          PolyMatrix b = horizontal(i - 1, j).compose(contraction(i, j));
          require(a == b, errc::shape_mismatch, "Koszul differentials do not commute");
        }
      }
    }
  }

 private:
  Realization rz_;
  int m_;
  std::vector<std::vector<int>> subsets_;
  std::map<int, DirectSum> xterms_;
  std::map<int, PolyMatrix> xdiffs_;
  mutable std::map<std::pair<int, int>, PolyMatrix> lr_cache_;
};

namespace detail {

struct DegreeSlice {
  // Per (i, j): rank of the contraction slice out of (i, j) and kernel basis.
  std::map<std::pair<int, int>, int> arank;
  std::map<std::pair<int, int>, SparseMat> amat;   // contraction slice (i,j)->(i-1,j)
  std::map<std::pair<int, int>, SparseMat> kernel; // kernel basis of amat at (i,j)
  std::map<std::pair<int, int>, long long> vdim;
};

}  // namespace detail

// Exact dimensions of the double subquotient for all internal degrees up to
// the cutoff.  Axis offsets relabel the doubled (i2, j2) keys.
inline TriGradedTable trigraded_dims(const BimoduleComplex& C, int cutoff, int jobs = 1) {
  KoszulBicomplex kz(C);
  int m = kz.nvars();
  TriGradedTable table;
  table.cutoff = cutoff;
  table.nvars = m;
  table.hoch_top2 = 2 * m + C.hoch_offset2;
  if (kz.base_terms().empty()) return table;

  std::vector<int> jkeys;
  for (auto& [j, t] : kz.base_terms()) jkeys.push_back(j);
  int jlo = jkeys.front(), jhi = jkeys.back();

  // Materialize cell modules and differentials once; slices are per degree.
  std::map<std::pair<int, int>, DirectSum> cells;
  std::map<std::pair<int, int>, PolyMatrix> amaps, bmaps;
  for (int j = jlo; j <= jhi; ++j) {
    for (int i = 0; i <= m; ++i) {
      cells[{i, j}] = kz.cell(i, j);
      if (i >= 1) amaps.emplace(std::make_pair(i, j), kz.contraction(i, j));
      if (j < jhi) bmaps.emplace(std::make_pair(i, j), kz.horizontal(i, j));
    }
  }

  int dmin = cutoff + 1;
  for (auto& [key, ds] : cells)
    for (int g : ds.gen_degs()) dmin = std::min(dmin, g);

  auto do_degree = [&](int d) {
    std::vector<std::tuple<int, int, int, long long>> found;  // i, j, d, dim
    detail::DegreeSlice sl;
    std::map<std::pair<int, int>, SliceBasis> bases;
    for (int j = jlo; j <= jhi; ++j)
      for (int i = 0; i <= m; ++i)
        bases.emplace(std::make_pair(i, j), SliceBasis(m, cells.at({i, j}).gen_degs(), d));
    for (int j = jlo; j <= jhi; ++j) {
      for (int i = 0; i <= m; ++i) {
        const SliceBasis& basis = bases.at({i, j});
        sl.vdim[{i, j}] = basis.total;
        if (i >= 1) {
          SparseMat A = slice_matrix(amaps.at({i, j}), d, basis, bases.at({i - 1, j}));
          auto rk = rank_kernel(A, true);
          sl.arank[{i, j}] = rk.rank;
          sl.kernel.emplace(std::make_pair(i, j), rk.kernel_matrix());
          sl.amat.emplace(std::make_pair(i, j), std::move(A));
        } else {
          sl.arank[{i, j}] = 0;
          SparseMat id((int)basis.total, (int)basis.total);
          for (int e = 0; e < (int)basis.total; ++e) id.add(e, e, Rat(1));
          sl.kernel.emplace(std::make_pair(i, j), std::move(id));
        }
      }
    }
    // Ranks of the induced maps between contraction-homology layers.
    std::map<std::pair<int, int>, long long> brank;
    for (int j = jlo; j < jhi; ++j) {
      for (int i = 0; i <= m; ++i) {
        long long hdim = sl.vdim[{i, j}] - sl.arank[{i, j}] -
                         (i + 1 <= m ? sl.arank[{i + 1, j}] : 0);
        if (hdim == 0) {
          brank[{i, j}] = 0;
          continue;
        }
        SparseMat B = slice_matrix(bmaps.at({i, j}), d, bases.at({i, j}), bases.at({i, j + 1}));
        SparseMat BK = B.multiply(sl.kernel.at({i, j}));
        if (i + 1 <= m) {
          long long r = rank_of(BK.hstack(sl.amat.at({i + 1, j + 1})));
          brank[{i, j}] = r - sl.arank[{i + 1, j + 1}];
        } else {
          brank[{i, j}] = rank_of(BK);
        }
      }
    }
    for (int j = jlo; j <= jhi; ++j) {
      for (int i = 0; i <= m; ++i) {
        long long hdim = sl.vdim[{i, j}] - sl.arank[{i, j}] -
                         (i + 1 <= m ? sl.arank[{i + 1, j}] : 0);
        long long out = hdim;
        if (j < jhi) out -= brank[{i, j}];
        if (j > jlo) out -= brank[{i, j - 1}];
        require(out >= 0, errc::internal, "negative homology dimension");
        if (out != 0) found.push_back({i, j, d, out});
      }
    }
    return found;
  };

  if (jobs <= 1) {
    for (int d = dmin; d <= cutoff; ++d)
      for (auto& [i, j, dd, v] : do_degree(d))
        table.add(2 * i + C.hoch_offset2, 2 * j + C.cohom_offset2, dd, v);
  } else {
    std::vector<std::future<std::vector<std::tuple<int, int, int, long long>>>> futs;
    for (int d = dmin; d <= cutoff; ++d)
      futs.push_back(std::async(std::launch::async, do_degree, d));
    for (auto& f : futs)
      for (auto& [i, j, dd, v] : f.get())
        table.add(2 * i + C.hoch_offset2, 2 * j + C.cohom_offset2, dd, v);
  }
  return table;
}

// Rational-function fit of the d-series of one (i2, j2) row of a table.
inline std::map<std::pair<int, int>, HilbertNumerator> hh_hilbert(const TriGradedTable& t,
                                                                  int margin = 3) {
  std::map<std::pair<int, int>, GradedDims> rows;
  for (auto& [k, v] : t.dims) rows[{k[0], k[1]}].add(k[2], v);
  std::map<std::pair<int, int>, HilbertNumerator> out;
  for (auto& [ij, g] : rows) out[ij] = hilbert_fit(g, t.nvars, t.cutoff, margin);
  return out;
}

}  // namespace trihom
