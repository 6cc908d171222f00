#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgkl/coxeter.hpp"

namespace mgkl {

// Polynomials in q with integer coefficients, ascending powers, no trailing
// zeros; the empty vector is the zero polynomial. Shared by KL polynomials
// and graded ranks.
using QPoly = std::vector<long long>;

inline void qp_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_const(long long c) { return c == 0 ? QPoly{} : QPoly{c}; }

inline bool qp_is_zero(const QPoly& p) { return p.empty(); }

inline int qp_degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qp_trim(r);
  return r;
}

inline QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qp_trim(r);
  return r;
}

// c * q^k * p
inline QPoly qp_shift(const QPoly& p, int k, long long c = 1) {
  if (c == 0 || p.empty()) return {};
  QPoly r(p.size() + k, 0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i + k] = c * p[i];
  qp_trim(r);
  return r;
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qp_trim(r);
  return r;
}

inline long long qp_coeff(const QPoly& p, int k) {
  return (k >= 0 && k < static_cast<int>(p.size())) ? p[k] : 0;
}

inline std::string qp_to_string(const QPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    long long c = p[i];
    if (c == 0) continue;
    if (!first) out += c > 0 ? "+" : "-";
    else if (c < 0) out += "-";
    long long a = c > 0 ? c : -c;
    std::string mono = i == 0 ? "" : (i == 1 ? "q" : "q^" + std::to_string(i));
    if (mono.empty()) out += std::to_string(a);
    else out += (a == 1 ? mono : std::to_string(a) + mono);
    first = false;
  }
  return out.empty() ? "0" : out;
}

// Kazhdan-Lusztig polynomial engine; memoized, single-threaded use (share one
// table per task or guard externally).
class KLTable {
 public:
  explicit KLTable(const WeylGroup& W) : W_(W) {}

  const WeylGroup& group() const { return W_; }

  // P_{y,w}; zero polynomial when y is not <= w.
  const QPoly& kl(WeylElt y, WeylElt w) {
    std::uint64_t key = (static_cast<std::uint64_t>(y.id) << 32) | static_cast<std::uint32_t>(w.id);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    QPoly p = compute(y, w);
    if (!qp_is_zero(p)) {
      // constant term 1, degree at most (l(w)-l(y)-1)/2 for y < w
      if (p[0] != 1) throw std::logic_error("KL recursion produced constant term != 1");
      if (y != w && 2 * qp_degree(p) > W_.length(w) - W_.length(y) - 1)
        throw std::logic_error("KL recursion violated the degree bound");
    }
    return memo_.emplace(key, std::move(p)).first->second;
  }

  // Coefficient of q^{(l(v)-l(z)-1)/2} in P_{z,v}; zero when that exponent is
  // not a nonnegative integer.
  long long mu(WeylElt z, WeylElt v) {
    int d = W_.length(v) - W_.length(z) - 1;
    if (d < 0 || d % 2 != 0) return 0;
    return qp_coeff(kl(z, v), d / 2);
  }

  // Parabolic polynomial P^{J,-1}_{y,w} via P_{y w_J, w w_J}; y, w must be
  // minimal coset representatives.
  QPoly parabolic_kl(const std::vector<int>& J, WeylElt y, WeylElt w) {
    ParabolicQuotient q = W_.min_coset_reps(J);
    auto is_rep = [&](WeylElt x) {
      for (int j : q.J)
        if (W_.right_descent(x, j)) return false;
      return true;
    };
    if (!is_rep(y) || !is_rep(w))
      throw std::invalid_argument("parabolic_kl: arguments must be minimal coset representatives");
    return kl(W_.mult(y, q.w_J), W_.mult(w, q.w_J));
  }

  struct IdentityReport {
    long checked_inverse = 0, checked_ys_ws = 0, checked_ys_w = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
  };

  // Exhaustive check of the three polynomial identities:
  //   P_{y,w} = P_{y^{-1},w^{-1}};
  //   P_{y,w} = P_{ys,ws} when ws<w and y not<= ws;
  //   P_{y,w} = P_{ys,w}  when ws<w.
  IdentityReport verify_identities() {
    IdentityReport rep;
    for (WeylElt w : W_.all_sorted())
      for (WeylElt y : W_.all_sorted()) {
        if (!W_.leq(y, w)) continue;
        ++rep.checked_inverse;
        if (kl(y, w) != kl(W_.inverse(y), W_.inverse(w)))
          rep.violations.push_back("P(y,w) != P(y^-1,w^-1) at y=" + W_.display(y) +
                                   " w=" + W_.display(w));
        for (int s = 0; s < W_.rank(); ++s) {
          if (!W_.right_descent(w, s)) continue;
          WeylElt ws = W_.rmult(w, s), ys = W_.rmult(y, s);
          if (!W_.leq(y, ws)) {
            ++rep.checked_ys_ws;
            if (kl(y, w) != kl(ys, ws))
              rep.violations.push_back("P(y,w) != P(ys,ws) at y=" + W_.display(y) +
                                       " w=" + W_.display(w) + " s=" + std::to_string(s + 1));
          }
          ++rep.checked_ys_w;
          if (kl(y, w) != kl(ys, w))
            rep.violations.push_back("P(y,w) != P(ys,w) at y=" + W_.display(y) +
                                     " w=" + W_.display(w) + " s=" + std::to_string(s + 1));
        }
      }
    return rep;
  }

 private:
  QPoly compute(WeylElt y, WeylElt w) {
    if (!W_.leq(y, w)) return {};
    if (y == w) return {1};
    // Left-descent recursion: s least with sw < w, v = sw,
    //   P_{y,w} = q^{1-c} P_{sy,v} + q^c P_{y,v}
    //             - sum_{y <= z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{y,z},
    // c = 1 if sy < y else 0.
    int s = -1;
    for (int i = 0; i < W_.rank(); ++i)
      if (W_.left_descent(w, i)) {
        s = i;
        break;
      }
    WeylElt v = W_.lmult(s, w);
    WeylElt sy = W_.lmult(s, y);
    int c = W_.length(sy) < W_.length(y) ? 1 : 0;
    QPoly p = qp_add(qp_shift(kl(sy, v), 1 - c), qp_shift(kl(y, v), c));
    for (WeylElt z : W_.all_sorted()) {
      if (!W_.lt(z, v) || !W_.leq(y, z) || !W_.left_descent(z, s)) continue;
      long long m = mu(z, v);
      if (m == 0) continue;
      int e = (W_.length(w) - W_.length(z)) / 2;
      p = qp_sub(p, qp_shift(kl(y, z), e, m));
    }
    return p;
  }

  const WeylGroup& W_;
  std::unordered_map<std::uint64_t, QPoly> memo_;
};

}  // namespace mgkl
