#pragma once

// Test-only oracles, kept independent of the library's production paths:
//  - Bruhat order via the subword property (brute force over one reduced word);
//  - Kazhdan-Lusztig polynomials via R-polynomial inversion from the defining
//    self-duality, no descent recursion shared with KLTable;
//  - a dense Gauss-Jordan kernel solver to cross-check the sparse elimination.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "mgkl/coxeter.hpp"
#include "mgkl/kl.hpp"
#include "mgkl/linalg.hpp"

namespace mgkl_test {

using mgkl::QPoly;
using mgkl::WeylElt;
using mgkl::WeylGroup;

// x <= w iff x is a product of some subsequence of one fixed reduced word of w.
class SubwordBruhatOracle {
 public:
  explicit SubwordBruhatOracle(const WeylGroup& W) : W_(W) {}

  bool leq(WeylElt x, WeylElt w) {
    auto it = cache_.find(w.id);
    if (it == cache_.end()) {
      std::set<int> reach;
      const std::string& word = W_.word(w);
      std::uint32_t m = static_cast<std::uint32_t>(word.size());
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        WeylElt p = W_.identity();
        for (std::uint32_t i = 0; i < m; ++i)
          if (mask & (1u << i)) p = W_.rmult(p, word[i] - '1');
        reach.insert(p.id);
      }
      it = cache_.emplace(w.id, std::move(reach)).first;
    }
    return it->second.count(x.id) > 0;
  }

 private:
  const WeylGroup& W_;
  std::map<int, std::set<int>> cache_;
};

// R-polynomials: R_{x,x} = 1, R_{x,w} = 0 unless x <= w, and for ws < w
//   R_{x,w} = R_{xs,ws}                   if xs < x,
//   R_{x,w} = (q-1) R_{x,ws} + q R_{xs,ws} otherwise.
class RPolyOracle {
 public:
  explicit RPolyOracle(const WeylGroup& W) : W_(W) {}

  const QPoly& r(WeylElt x, WeylElt w) {
    std::uint64_t key = (static_cast<std::uint64_t>(x.id) << 32) | static_cast<std::uint32_t>(w.id);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    QPoly val;
    if (!W_.leq(x, w)) {
      val = {};
    } else if (x == w) {
      val = {1};
    } else {
      int s = -1;
      for (int i = 0; i < W_.rank(); ++i)
        if (W_.right_descent(w, i)) {
          s = i;
          break;
        }
      WeylElt ws = W_.rmult(w, s), xs = W_.rmult(x, s);
      if (W_.length(xs) < W_.length(x)) {
        val = r(xs, ws);
      } else {
        QPoly a = r(x, ws), b = r(xs, ws);
        val = mgkl::qp_add(mgkl::qp_sub(mgkl::qp_shift(a, 1), a), mgkl::qp_shift(b, 1));
      }
    }
    return memo_.emplace(key, std::move(val)).first->second;
  }

  // KL polynomials from the inversion identity
  //   q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum_{x<z<=w} R_{x,z} P_{z,w};
  // P_{x,w} is the low-degree part, the reversed high part is a consistency
  // check.
  const QPoly& kl(WeylElt x, WeylElt w) {
    std::uint64_t key = (static_cast<std::uint64_t>(x.id) << 32) | static_cast<std::uint32_t>(w.id);
    auto it = klmemo_.find(key);
    if (it != klmemo_.end()) return it->second;
    QPoly val;
    if (!W_.leq(x, w)) {
      val = {};
    } else if (x == w) {
      val = {1};
    } else {
      int N = W_.length(w) - W_.length(x);
      QPoly S;
      for (WeylElt z : W_.all_sorted()) {
        if (!W_.lt(x, z) || !W_.leq(z, w)) continue;
        S = mgkl::qp_add(S, mgkl::qp_mul(r(x, z), kl(z, w)));
      }
      int bound = (N - 1) / 2;
      for (int m = 0; m <= bound; ++m) val.push_back(-mgkl::qp_coeff(S, m));
      mgkl::qp_trim(val);
      // consistency: S + P must equal the degree-reversed P shifted by N
      QPoly lhs = mgkl::qp_add(S, val);
      QPoly rev(N + 1, 0);
      for (int m = 0; m < static_cast<int>(val.size()); ++m) rev[N - m] = val[m];
      mgkl::qp_trim(rev);
      if (lhs != rev) throw std::logic_error("R-polynomial inversion inconsistency");
    }
    return klmemo_.emplace(key, std::move(val)).first->second;
  }

 private:
  const WeylGroup& W_;
  std::map<std::uint64_t, QPoly> memo_, klmemo_;
};

// Dense kernel computation by plain Gauss-Jordan, structurally unrelated to
// the sparse RowSpan path.
template <class F>
std::vector<std::vector<typename F::Elem>> dense_kernel(const F& f,
                                                        const std::vector<mgkl::SparseVec<F>>& rows,
                                                        int ncols) {
  using K = typename F::Elem;
  std::vector<std::vector<K>> a;
  for (const auto& r : rows) {
    std::vector<K> row(ncols, f.zero());
    for (const auto& [i, v] : r) row[i] = v;
    a.push_back(std::move(row));
  }
  int nrows = static_cast<int>(a.size());
  std::vector<int> pivot_col;
  int prow = 0;
  for (int c = 0; c < ncols && prow < nrows; ++c) {
    int sel = -1;
    for (int r = prow; r < nrows; ++r)
      if (!f.is_zero(a[r][c])) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[prow]);
    K inv = f.inv(a[prow][c]);
    for (int j = 0; j < ncols; ++j) a[prow][j] = f.mul(inv, a[prow][j]);
    for (int r = 0; r < nrows; ++r) {
      if (r == prow || f.is_zero(a[r][c])) continue;
      K coef = a[r][c];
      for (int j = 0; j < ncols; ++j) a[r][j] = f.sub(a[r][j], f.mul(coef, a[prow][j]));
    }
    pivot_col.push_back(c);
    ++prow;
  }
  std::vector<char> is_pivot(ncols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<K>> kernel;
  for (int fc = 0; fc < ncols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<K> v(ncols, f.zero());
    v[fc] = f.one();
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = f.neg(a[r][fc]);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace mgkl_test
