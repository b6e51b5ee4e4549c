#pragma once
// Graded matrices over the polynomial ring: maps between free graded left
// modules with chosen homogeneous generators.
//
// A PolyMatrix carries the generator degrees of target (rows) and source
// (columns) plus the degree of the map itself; entry (r,c) is zero or
// homogeneous of degree  col_deg[c] - row_deg[r] + map_deg  (the orientation
// the multiplication/coevaluation matrices force).

#include <map>
#include <utility>
#include <vector>

#include "trihom/linalg.hpp"
#include "trihom/poly.hpp"
#include "trihom/util.hpp"

namespace trihom {

class PolyMatrix {
 public:
  PolyMatrix() : nvars_(0), map_deg_(0) {}
  PolyMatrix(int nvars, std::vector<int> row_degs, std::vector<int> col_degs, int map_deg)
      : nvars_(nvars),
        map_deg_(map_deg),
        row_degs_(std::move(row_degs)),
        col_degs_(std::move(col_degs)) {}

  static PolyMatrix identity(int nvars, const std::vector<int>& degs) {
    PolyMatrix m(nvars, degs, degs, 0);
    for (int i = 0; i < (int)degs.size(); ++i)
      m.set(i, i, MultiPoly::constant(nvars, Rat(1)));
    return m;
  }

  static PolyMatrix zero(int nvars, std::vector<int> row_degs, std::vector<int> col_degs,
                         int map_deg) {
    return PolyMatrix(nvars, std::move(row_degs), std::move(col_degs), map_deg);
  }

  int rows() const { return (int)row_degs_.size(); }
  int cols() const { return (int)col_degs_.size(); }
  int nvars() const { return nvars_; }
  int map_deg() const { return map_deg_; }
  const std::vector<int>& row_degs() const { return row_degs_; }
  const std::vector<int>& col_degs() const { return col_degs_; }
  const std::map<std::pair<int, int>, MultiPoly>& entries() const { return entries_; }

  void set(int r, int c, const MultiPoly& p) {
    require(r >= 0 && r < rows() && c >= 0 && c < cols(), errc::shape_mismatch,
            "matrix index out of range");
    if (p.is_zero()) {
      entries_.erase({r, c});
      return;
    }
    require(p.nvars() == nvars_, errc::variable_mismatch, "entry variable count");
    int want = col_degs_[c] - row_degs_[r] + map_deg_;
    require(p.is_homogeneous(want), errc::grading_violation,
            "entry (" + std::to_string(r) + "," + std::to_string(c) +
                ") not homogeneous of degree " + std::to_string(want));
    entries_[{r, c}] = p;
  }

  void add(int r, int c, const MultiPoly& p) {
    if (p.is_zero()) return;
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
      set(r, c, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) entries_.erase(it);
  }

  const MultiPoly* get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool is_zero() const { return entries_.empty(); }

  PolyMatrix operator-() const {
    PolyMatrix m = *this;
    for (auto& [rc, p] : m.entries_) p = -p;
    return m;
  }

  PolyMatrix& operator+=(const PolyMatrix& o) {
    require(row_degs_ == o.row_degs_ && col_degs_ == o.col_degs_ && map_deg_ == o.map_deg_,
            errc::shape_mismatch, "matrix sum gradings differ");
    for (auto& [rc, p] : o.entries_) add(rc.first, rc.second, p);
    return *this;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  PolyMatrix& operator-=(const PolyMatrix& o) { return *this += -o; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }

  PolyMatrix& scale(const Rat& c) {
    if (c == 0) {
      entries_.clear();
      return *this;
    }
    for (auto& [rc, p] : entries_) p.scale(c);
    return *this;
  }

  // this o other (matrix product; degrees of the inner generators must agree).
  PolyMatrix compose(const PolyMatrix& other) const {
    require(col_degs_ == other.row_degs_, errc::shape_mismatch,
            "composition: inner generator degrees differ");
    require(nvars_ == other.nvars_, errc::variable_mismatch, "composition variable counts");
    PolyMatrix out(nvars_, row_degs_, other.col_degs_, map_deg_ + other.map_deg_);
    for (auto& [rc, a] : entries_) {
      for (int c = 0; c < other.cols(); ++c) {
        const MultiPoly* b = other.get(rc.second, c);
        if (b) out.add(rc.first, c, a * *b);
      }
    }
    return out;
  }

  // Multiply every entry by a homogeneous polynomial (degree folded into map_deg).
  PolyMatrix scaled_by(const MultiPoly& p) const {
    int d = p.is_zero() ? 0 : p.degree();
    require(p.is_zero() || p.is_homogeneous(d), errc::grading_violation,
            "scaling polynomial must be homogeneous");
    PolyMatrix out(nvars_, row_degs_, col_degs_, map_deg_ + d);
    for (auto& [rc, q] : entries_) out.set(rc.first, rc.second, q * p);
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.nvars_ == b.nvars_ && a.map_deg_ == b.map_deg_ && a.row_degs_ == b.row_degs_ &&
           a.col_degs_ == b.col_degs_ && a.entries_ == b.entries_;
  }

 private:
  int nvars_;
  int map_deg_;
  std::vector<int> row_degs_, col_degs_;
  std::map<std::pair<int, int>, MultiPoly> entries_;
};

// Monomial coordinates of the degree-d slice of a free graded module with the
// given generator degrees.
struct SliceBasis {
  std::vector<std::vector<Mono>> monos;  // per generator
  std::vector<int> offsets;
  int total = 0;

  SliceBasis() = default;
  SliceBasis(int nvars, const std::vector<int>& gen_degs, int d) {
    monos.reserve(gen_degs.size());
    offsets.reserve(gen_degs.size());
    for (int g : gen_degs) {
      offsets.push_back(total);
      monos.push_back(monomial_basis(nvars, d - g));
      total += (int)monos.back().size();
    }
  }

  int index(int gen, Mono m) const {
    const auto& v = monos[gen];
    // Keys are sorted descending.
    auto it = std::lower_bound(v.begin(), v.end(), m, std::greater<Mono>());
    require(it != v.end() && *it == m, errc::internal, "monomial not in slice basis");
    return offsets[gen] + (int)(it - v.begin());
  }
};

// Q-matrix of the map in internal degree d: source slice at degree d, target
// slice at degree d + map_deg.
inline SparseMat slice_matrix(const PolyMatrix& M, int d, const SliceBasis& src,
                              const SliceBasis& tgt) {
  SparseMat out(tgt.total, src.total);
  for (auto& [rc, p] : M.entries()) {
    auto [r, c] = rc;
    const auto& cols = src.monos[c];
    for (int j = 0; j < (int)cols.size(); ++j) {
      Mono mu = cols[j];
      int col = src.offsets[c] + j;
      for (auto& [nu, a] : p.terms()) out.add(tgt.index(r, mono_mul(nu, mu)), col, a);
    }
  }
  (void)d;
  return out;
}

inline SparseMat slice_matrix(const PolyMatrix& M, int d) {
  SliceBasis src(M.nvars(), M.col_degs(), d);
  SliceBasis tgt(M.nvars(), M.row_degs(), d + M.map_deg());
  return slice_matrix(M, d, src, tgt);
}

}  // namespace trihom
