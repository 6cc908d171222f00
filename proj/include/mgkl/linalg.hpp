#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "mgkl/field.hpp"
#include "mgkl/ring.hpp"

namespace mgkl {

// Sparse vector over a field: (index, value) pairs, strictly increasing
// indices, no zero values. All elimination in the project runs through the
// two classes below; pivoting is deterministic (first nonzero index wins), so
// every derived object -- section bases, BMP generator lifts -- is reproducible.

template <class F>
using SparseVec = std::vector<std::pair<int, typename F::Elem>>;

template <class F>
SparseVec<F> sv_axpy(const F& f, const SparseVec<F>& a, const typename F::Elem& c,
                     const SparseVec<F>& b) {
  // a + c*b
  SparseVec<F> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      r.push_back(a[i++]);
    } else if (a[i].first > b[j].first) {
      auto v = f.mul(c, b[j].second);
      if (!f.is_zero(v)) r.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      auto v = f.add(a[i].second, f.mul(c, b[j].second));
      if (!f.is_zero(v)) r.emplace_back(a[i].first, std::move(v));
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) {
    auto v = f.mul(c, b[j].second);
    if (!f.is_zero(v)) r.emplace_back(b[j].first, std::move(v));
  }
  return r;
}

template <class F>
SparseVec<F> sv_scale(const F& f, const typename F::Elem& c, const SparseVec<F>& a) {
  SparseVec<F> r;
  r.reserve(a.size());
  for (const auto& [i, v] : a) {
    auto w = f.mul(c, v);
    if (!f.is_zero(w)) r.emplace_back(i, std::move(w));
  }
  return r;
}

// Incremental row space in echelon form; rows normalized to leading
// coefficient 1 and indexed by pivot column.
template <class F>
class RowSpan {
 public:
  RowSpan(const F& f, int ncols) : f_(f), row_of_pivot_(ncols, -1) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return static_cast<int>(row_of_pivot_.size()); }

  // Reduces v against the current span; the returned residual is zero iff v
  // lies in the span.
  SparseVec<F> reduce(SparseVec<F> v) const {
    SparseVec<F> rest;
    while (!v.empty()) {
      int p = v.front().first;
      int r = row_of_pivot_[p];
      if (r < 0) break;
      v = sv_axpy(f_, v, f_.neg(v.front().second), rows_[r]);
    }
    return v;
  }

  bool contains(const SparseVec<F>& v) const {
    // Full reduction: any leading index that is not a pivot disqualifies.
    SparseVec<F> w = reduce(v);
    return w.empty();
  }

  // Inserts v; returns true if the dimension grew.
  bool add(SparseVec<F> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    auto lead = v.front().second;
    v = sv_scale(f_, f_.inv(lead), v);
    row_of_pivot_[v.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  const std::vector<SparseVec<F>>& rows() const { return rows_; }
  const std::vector<int>& row_of_pivot() const { return row_of_pivot_; }

  // Pivot columns in increasing order.
  std::vector<int> pivots() const {
    std::vector<int> p;
    p.reserve(rows_.size());
    for (int c = 0; c < ncols(); ++c)
      if (row_of_pivot_[c] >= 0) p.push_back(c);
    return p;
  }

  bool equals(const RowSpan& other) const {
    if (dim() != other.dim()) return false;
    for (const auto& r : rows_)
      if (!other.contains(r)) return false;
    return true;
  }

 private:
  F f_;
  std::vector<SparseVec<F>> rows_;
  std::vector<int> row_of_pivot_;
};

// Kernel basis of the linear system given by constraint rows, in reduced
// row-echelon convention: one basis vector per free column (ascending), with
// entry 1 at its free column.
template <class F>
std::vector<SparseVec<F>> kernel_basis(const F& f, const std::vector<SparseVec<F>>& rows,
                                       int ncols) {
  RowSpan<F> span(f, ncols);
  for (const auto& r : rows) span.add(r);

  // Back-substitute to RREF.
  std::vector<int> pivots = span.pivots();
  std::vector<SparseVec<F>> rref;
  rref.reserve(pivots.size());
  for (int p : pivots) rref.push_back(span.rows()[span.row_of_pivot()[p]]);
  for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
    for (int j = 0; j < i; ++j) {
      const auto& row_i = rref[i];
      auto it = std::lower_bound(rref[j].begin(), rref[j].end(), pivots[i],
                                 [](const auto& a, int c) { return a.first < c; });
      if (it != rref[j].end() && it->first == pivots[i])
        rref[j] = sv_axpy(f, rref[j], f.neg(it->second), row_i);
    }
  }

  std::vector<char> is_pivot(ncols, 0);
  for (int p : pivots) is_pivot[p] = 1;

  std::vector<SparseVec<F>> kernel;
  for (int fc = 0; fc < ncols; ++fc) {
    if (is_pivot[fc]) continue;
    SparseVec<F> v;
    v.emplace_back(fc, f.one());
    for (std::size_t r = 0; r < rref.size(); ++r) {
      auto it = std::lower_bound(rref[r].begin(), rref[r].end(), fc,
                                 [](const auto& a, int c) { return a.first < c; });
      if (it != rref[r].end() && it->first == fc) v.emplace_back(pivots[r], f.neg(it->second));
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    kernel.push_back(std::move(v));
  }
  return kernel;
}

// Dense inverse of a small matrix over the field; throws if singular over F.
template <class F>
FieldMat<F> field_mat_inverse(const F& f, const FieldMat<F>& m) {
  int n = m.n;
  FieldMat<F> a = m;
  FieldMat<F> inv(f, n);
  for (int i = 0; i < n; ++i) inv(i, i) = f.one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!f.is_zero(a(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("field_mat_inverse: singular matrix over " + f.name());
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    auto d = f.inv(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = f.mul(d, a(col, j));
      inv(col, j) = f.mul(d, inv(col, j));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || f.is_zero(a(r, col))) continue;
      auto c = f.neg(a(r, col));
      for (int j = 0; j < n; ++j) {
        a(r, j) = f.add(a(r, j), f.mul(c, a(col, j)));
        inv(r, j) = f.add(inv(r, j), f.mul(c, inv(col, j)));
      }
    }
  }
  return inv;
}

template <class F>
bool field_mat_invertible(const F& f, const FieldMat<F>& m) {
  int n = m.n;
  FieldMat<F> a = m;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!f.is_zero(a(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    if (piv != col)
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
    auto d = f.inv(a(col, col));
    for (int j = 0; j < n; ++j) a(col, j) = f.mul(d, a(col, j));
    for (int r = col + 1; r < n; ++r) {
      if (f.is_zero(a(r, col))) continue;
      auto c = f.neg(a(r, col));
      for (int j = 0; j < n; ++j) a(r, j) = f.add(a(r, j), f.mul(c, a(col, j)));
    }
  }
  return true;
}

}  // namespace mgkl
