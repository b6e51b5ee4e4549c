#pragma once
// Exact sparse linear algebra over Q: rank, kernel bases, graded dimension
// vectors, and Hilbert-series numerator fitting.

#include <map>
#include <utility>
#include <vector>

#include "trihom/rational.hpp"
#include "trihom/util.hpp"

namespace trihom {

// Row-major sparse rational matrix.
class SparseMat {
 public:
  SparseMat() : rows_(0), cols_(0) {}
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::map<int, Rat>& row(int r) const { return data_[r]; }

  void add(int r, int c, const Rat& v) {
    if (v == 0) return;
    auto& row = data_[r];
    auto it = row.find(c);
    if (it == row.end()) {
      row.emplace(c, v);
    } else {
      it->second += v;
      if (it->second == 0) row.erase(it);
    }
  }

  void set(int r, int c, const Rat& v) {
    if (v == 0)
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }

  Rat get(int r, int c) const {
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rat(0) : it->second;
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (auto& r : data_) n += r.size();
    return n;
  }

  // this * other.
  SparseMat multiply(const SparseMat& other) const {
    require(cols_ == other.rows_, errc::shape_mismatch, "sparse matrix product shape");
    SparseMat out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
      std::map<int, Rat> acc;
      for (auto& [k, a] : data_[i]) {
        for (auto& [j, b] : other.data_[k]) {
          Rat& slot = acc[j];
          slot += a * b;
        }
      }
      for (auto& [j, v] : acc)
        if (v != 0) out.data_[i].emplace(j, v);
    }
    return out;
  }

  // [this | other] side by side.
  SparseMat hstack(const SparseMat& other) const {
    require(rows_ == other.rows_, errc::shape_mismatch, "hstack row counts");
    SparseMat out(rows_, cols_ + other.cols_);
    for (int i = 0; i < rows_; ++i) {
      out.data_[i] = data_[i];
      for (auto& [j, v] : other.data_[i]) out.data_[i].emplace(j + cols_, v);
    }
    return out;
  }

  const std::vector<std::map<int, Rat>>& row_data() const { return data_; }

 private:
  int rows_, cols_;
  std::vector<std::map<int, Rat>> data_;
};

// Result of exact elimination: the rank, and (optionally) a kernel basis
// whose columns are stored sparsely.
struct RankKernel {
  int rank = 0;
  int cols = 0;
  std::vector<std::map<int, Rat>> kernel;  // each entry: column index -> value

  // Kernel basis as a (cols x nullity) sparse matrix.
  SparseMat kernel_matrix() const {
    SparseMat k(cols, (int)kernel.size());
    for (int j = 0; j < (int)kernel.size(); ++j)
      for (auto& [i, v] : kernel[j]) k.add(i, j, v);
    return k;
  }
};

// Gaussian elimination with sparsity-guided pivoting; deterministic.
inline RankKernel rank_kernel(const SparseMat& m, bool want_kernel = true) {
  int rows = m.rows(), cols = m.cols();
  std::vector<std::map<int, Rat>> work = m.row_data();
  std::vector<bool> used(rows, false);
  // pivot column -> eliminated row (pivot normalized to 1).
  std::map<int, std::map<int, Rat>> pivots;

  for (int col = 0; col < cols; ++col) {
    int best = -1;
    std::size_t best_size = 0;
    for (int r = 0; r < rows; ++r) {
      if (used[r]) continue;
      auto it = work[r].find(col);
      if (it == work[r].end()) continue;
      if (best < 0 || work[r].size() < best_size) {
        best = r;
        best_size = work[r].size();
      }
    }
    if (best < 0) continue;
    used[best] = true;
    // Normalize the pivot row.
    {
      Rat p = work[best][col];
      if (p != 1)
        for (auto& [c, v] : work[best]) v /= p;
    }
    const std::map<int, Rat> prow = work[best];
    for (int r = 0; r < rows; ++r) {
      if (used[r] || work[r].empty()) continue;
      auto it = work[r].find(col);
      if (it == work[r].end()) continue;
      Rat f = it->second;
      for (auto& [c, v] : prow) {
        if (c == col) {
          work[r].erase(c);
          continue;
        }
        auto jt = work[r].find(c);
        if (jt == work[r].end()) {
          Rat nv = -f * v;
          if (nv != 0) work[r].emplace(c, nv);
        } else {
          jt->second -= f * v;
          if (jt->second == 0) work[r].erase(jt);
        }
      }
    }
    pivots.emplace(col, std::move(work[best]));
    work[best].clear();
  }

  RankKernel out;
  out.rank = (int)pivots.size();
  out.cols = cols;
  if (!want_kernel) return out;

  std::vector<bool> is_pivot(cols, false);
  for (auto& [c, row] : pivots) is_pivot[c] = true;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::map<int, Rat> vec;
    vec[f] = 1;
    // Solve pivot coordinates in decreasing pivot-column order.
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      int pc = it->first;
      Rat s(0);
      for (auto& [c, v] : it->second) {
        if (c == pc) continue;
        auto vt = vec.find(c);
        if (vt != vec.end()) s += v * vt->second;
      }
      if (s != 0) vec[pc] = -s;
    }
    out.kernel.push_back(std::move(vec));
  }
  return out;
}

inline int rank_of(const SparseMat& m) { return rank_kernel(m, false).rank; }

// Dimension vector of a graded space: internal degree -> dimension.
struct GradedDims {
  std::map<int, long long> dims;

  long long at(int d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
  void add(int d, long long v) {
    if (v == 0) return;
    dims[d] += v;
    if (dims[d] == 0) dims.erase(d);
  }
  bool empty() const { return dims.empty(); }
  friend bool operator==(const GradedDims& a, const GradedDims& b) { return a.dims == b.dims; }
};

// Numerator of dims ~ N(q)/(1-q)^m, fitted from exact dimensions at degrees
// <= cutoff.  The fit must be flat (zero numerator coefficients) on the last
// `margin` degrees, otherwise the data is still growing and we refuse.
struct HilbertNumerator {
  std::map<int, long long> coeffs;  // q-exponent -> coefficient

  friend bool operator==(const HilbertNumerator& a, const HilbertNumerator& b) {
    return a.coeffs == b.coeffs;
  }

  // Expand N(q)/(1-q)^m up to degree cutoff (for round-trip checks).
  GradedDims expand(int m, int cutoff) const {
    GradedDims g;
    for (auto& [e, c] : coeffs)
      for (int d = e; d <= cutoff; ++d) {
        long long h = m == 0 ? (d == e ? 1 : 0) : (long long)binomial(d - e + m - 1, m - 1);
        g.add(d, c * h);
      }
    return g;
  }
};

inline HilbertNumerator hilbert_fit(const GradedDims& g, int m, int cutoff, int margin = 3) {
  require(margin >= 1, errc::fit_unstable, "margin must be positive");
  HilbertNumerator out;
  if (g.dims.empty()) return out;
  int dmin = g.dims.begin()->first;
  std::map<int, long long> n;
  for (int d = dmin; d <= cutoff; ++d) {
    long long target = g.at(d);
    for (auto& [e, c] : n) {
      if (e > d) break;
      long long h = m == 0 ? (d == e ? 1 : 0) : (long long)binomial(d - e + m - 1, m - 1);
      target -= c * h;
    }
    if (target != 0) n[d] = target;
  }
  for (int d = cutoff - margin + 1; d <= cutoff; ++d)
    require(n.find(d) == n.end(), errc::fit_unstable,
            "numerator still moving at degree " + std::to_string(d) +
                " (cutoff " + std::to_string(cutoff) + ", margin " + std::to_string(margin) + ")");
  out.coeffs = std::move(n);
  return out;
}

}  // namespace trihom
