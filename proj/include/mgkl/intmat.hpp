#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgkl {

// Lattice vectors in the simple-(co)root basis.
using IntVec = std::vector<long long>;

inline bool is_zero(const IntVec& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

inline IntVec operator+(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec operator*(long long c, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// Small dense integer matrix (row-major), used for Weyl group actions and
// lattice automorphisms. Ranks in this project never exceed 4.
struct IntMat {
  int n = 0;
  std::vector<long long> a;  // n*n, row-major

  IntMat() = default;
  explicit IntMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}

  static IntMat identity(int n) {
    IntMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  long long& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  long long operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  bool operator==(const IntMat& o) const { return n == o.n && a == o.a; }

  IntMat operator*(const IntMat& o) const {
    if (n != o.n) throw std::invalid_argument("IntMat: rank mismatch");
    IntMat r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        long long v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < n; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  IntVec apply(const IntVec& v) const {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("IntMat: vector size mismatch");
    IntVec r(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }
};

struct IntMatHash {
  std::size_t operator()(const IntMat& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : m.a) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h ^ static_cast<std::size_t>(m.n);
  }
};

}  // namespace mgkl
