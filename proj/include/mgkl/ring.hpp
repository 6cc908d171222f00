#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgkl/field.hpp"
#include "mgkl/intmat.hpp"

namespace mgkl {

// S_k = Sym(Y_k) with Y_k sitting in degree 2: a monomial with exponent sum e
// has graded degree 2e. Monomials are packed into a uint64: the top byte holds
// the exponent sum, bytes below it the exponents of x1..x6 (x1 most
// significant). Plain integer comparison is then graded-lex order and
// monomial multiplication is integer addition. Rank is capped at 6.

using Mono = std::uint64_t;

inline constexpr int kMaxRank = 6;

inline Mono mono_one() { return 0; }

inline int mono_sum(Mono m) { return static_cast<int>(m >> 56); }

// Graded degree (variables in degree 2).
inline int mono_degree(Mono m) { return 2 * mono_sum(m); }

inline int mono_exp(Mono m, int i) { return static_cast<int>((m >> (48 - 8 * i)) & 0xff); }

inline Mono mono_var(int i) { return (1ull << 56) | (1ull << (48 - 8 * i)); }

inline Mono mono_mul(Mono a, Mono b) {
  assert(mono_sum(a) + mono_sum(b) < 0x80);
  return a + b;
}

inline Mono mono_from_exponents(const std::vector<int>& e) {
  Mono m = 0;
  int sum = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    sum += e[i];
    m |= static_cast<Mono>(e[i]) << (48 - 8 * static_cast<int>(i));
  }
  m |= static_cast<Mono>(sum) << 56;
  return m;
}

inline std::vector<int> mono_exponents(Mono m, int rank) {
  std::vector<int> e(rank);
  for (int i = 0; i < rank; ++i) e[i] = mono_exp(m, i);
  return e;
}

// All monomials of a given graded degree, descending graded-lex (x1^k first).
// Count is C(d/2 + rank - 1, rank - 1).
inline std::vector<Mono> monomial_basis(int graded_degree, int rank) {
  if (graded_degree < 0) return {};
  if (graded_degree % 2 != 0)
    throw std::invalid_argument("monomial_basis: degree must be even");
  int total = graded_degree / 2;
  std::vector<Mono> out;
  std::vector<int> e(rank, 0);
  // Recursive enumeration, largest x1 exponent first.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == rank - 1) {
      e[pos] = remaining;
      out.push_back(mono_from_exponents(e));
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  if (rank == 0) {
    if (total == 0) out.push_back(mono_one());
    return out;
  }
  rec(rec, 0, total);
  return out;
}

// Monomials of the given degree avoiding one variable (canonical basis of a
// degree slice of S_k/(l) when `avoid` is the pivot variable of l).
inline std::vector<Mono> monomial_basis_avoiding(int graded_degree, int rank, int avoid) {
  if (graded_degree < 0) return {};
  std::vector<Mono> sub = monomial_basis(graded_degree, rank - 1);
  std::vector<Mono> out;
  out.reserve(sub.size());
  for (Mono m : sub) {
    std::vector<int> e(rank, 0);
    int j = 0;
    for (int i = 0; i < rank; ++i) {
      if (i == avoid) continue;
      e[i] = mono_exp(m, j++);
    }
    out.push_back(mono_from_exponents(e));
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Sparse polynomial over the field F; terms kept sorted descending (leading
// term first), zero coefficients dropped.
template <class F>
struct Poly {
  using K = typename F::Elem;
  struct Term {
    Mono m;
    K c;
  };
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }

  // Graded degree of the leading term, -1 for the zero polynomial.
  int degree() const { return terms.empty() ? -1 : mono_degree(terms.front().m); }

  bool is_homogeneous() const {
    for (const auto& t : terms)
      if (mono_degree(t.m) != degree()) return false;
    return true;
  }
};

template <class F>
Poly<F> poly_zero(const F&) {
  return {};
}

template <class F>
Poly<F> poly_const(const F& f, typename F::Elem c) {
  Poly<F> p;
  if (!f.is_zero(c)) p.terms.push_back({mono_one(), std::move(c)});
  return p;
}

template <class F>
Poly<F> poly_one(const F& f) {
  return poly_const(f, f.one());
}

template <class F>
Poly<F> poly_var(const F& f, int i) {
  Poly<F> p;
  p.terms.push_back({mono_var(i), f.one()});
  return p;
}

// The degree-2 element of S_k attached to a lattice vector.
template <class F>
Poly<F> poly_from_lattice(const F& f, const IntVec& v) {
  Poly<F> p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto c = f.from_int(static_cast<long>(v[i]));
    if (!f.is_zero(c)) p.terms.push_back({mono_var(static_cast<int>(i)), std::move(c)});
  }
  return p;
}

template <class F>
Poly<F> poly_add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    if (a.terms[i].m > b.terms[j].m) {
      r.terms.push_back(a.terms[i++]);
    } else if (a.terms[i].m < b.terms[j].m) {
      r.terms.push_back(b.terms[j++]);
    } else {
      auto c = f.add(a.terms[i].c, b.terms[j].c);
      if (!f.is_zero(c)) r.terms.push_back({a.terms[i].m, std::move(c)});
      ++i, ++j;
    }
  }
  for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
  return r;
}

template <class F>
Poly<F> poly_neg(const F& f, const Poly<F>& a) {
  Poly<F> r = a;
  for (auto& t : r.terms) t.c = f.neg(t.c);
  return r;
}

template <class F>
Poly<F> poly_sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return poly_add(f, a, poly_neg(f, b));
}

template <class F>
Poly<F> poly_scal(const F& f, const typename F::Elem& c, const Poly<F>& a) {
  Poly<F> r;
  if (f.is_zero(c)) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    auto v = f.mul(c, t.c);
    if (!f.is_zero(v)) r.terms.push_back({t.m, std::move(v)});
  }
  return r;
}

template <class F>
Poly<F> poly_mul_mono(const F&, const Poly<F>& a, Mono m) {
  Poly<F> r = a;
  for (auto& t : r.terms) t.m = mono_mul(t.m, m);
  return r;
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  // Accumulate into a flat vector and combine; operand sizes here are small.
  std::vector<typename Poly<F>::Term> acc;
  acc.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) acc.push_back({mono_mul(ta.m, tb.m), f.mul(ta.c, tb.c)});
  std::sort(acc.begin(), acc.end(),
            [](const auto& x, const auto& y) { return x.m > y.m; });
  Poly<F> r;
  for (auto& t : acc) {
    if (!r.terms.empty() && r.terms.back().m == t.m) {
      r.terms.back().c = f.add(r.terms.back().c, t.c);
      if (f.is_zero(r.terms.back().c)) r.terms.pop_back();
    } else if (!f.is_zero(t.c)) {
      r.terms.push_back(std::move(t));
    }
  }
  return r;
}

template <class F>
bool poly_eq(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (a.terms[i].m != b.terms[i].m || !f.eq(a.terms[i].c, b.terms[i].c)) return false;
  return true;
}

// Least variable index whose coefficient in l is invertible over the field;
// -1 if l vanishes in Y_k.
template <class F>
int pivot_index(const F& f, const IntVec& l) {
  for (std::size_t i = 0; i < l.size(); ++i)
    if (!f.is_zero(f.from_int(static_cast<long>(l[i])))) return static_cast<int>(i);
  return -1;
}

// Canonical representative of p in S_k/(l): substitute the pivot variable of
// the degree-2 linear form l by the solved expression. The result contains no
// pivot variable, and p - result lies in (l).
template <class F>
Poly<F> reduce_mod_linear(const F& f, const Poly<F>& p, const IntVec& l) {
  int piv = pivot_index(f, l);
  if (piv < 0) throw std::invalid_argument("reduce_mod_linear: form vanishes over the field");
  // substitution x_piv -> sum_{j != piv} (-l_j / l_piv) x_j
  auto cinv = f.inv(f.from_int(static_cast<long>(l[piv])));
  Poly<F> subst;
  for (std::size_t j = 0; j < l.size(); ++j) {
    if (static_cast<int>(j) == piv) continue;
    auto c = f.neg(f.mul(cinv, f.from_int(static_cast<long>(l[j]))));
    if (!f.is_zero(c)) subst.terms.push_back({mono_var(static_cast<int>(j)), std::move(c)});
  }
  std::vector<Poly<F>> pow = {poly_one(f)};
  auto subst_pow = [&](int k) -> const Poly<F>& {
    while (static_cast<int>(pow.size()) <= k) pow.push_back(poly_mul(f, pow.back(), subst));
    return pow[k];
  };
  Poly<F> out;
  for (const auto& t : p.terms) {
    int e = mono_exp(t.m, piv);
    if (e == 0) {
      out = poly_add(f, out, Poly<F>{{{t.m, t.c}}});
      continue;
    }
    // strip the pivot variable from the monomial
    std::vector<int> exps = mono_exponents(t.m, static_cast<int>(l.size()));
    exps[piv] = 0;
    Poly<F> rest{{{mono_from_exponents(exps), t.c}}};
    out = poly_add(f, out, poly_mul(f, rest, subst_pow(e)));
  }
  return out;
}

// Ring endomorphism of S_k extending the linear map on Y_k whose matrix (over
// the field) is g, acting on coordinate columns: x_j -> sum_i g[i][j] x_i.
// For g, h invertible: twist(p, g*h) == twist(twist(p, h), g).
template <class F>
struct FieldMat {
  int n = 0;
  std::vector<typename F::Elem> a;  // row-major n*n

  FieldMat() = default;
  FieldMat(const F& f, int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, f.zero()) {}

  typename F::Elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const typename F::Elem& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }

  static FieldMat from_int_mat(const F& f, const IntMat& m) {
    FieldMat r(f, m.n);
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) r(i, j) = f.from_int(static_cast<long>(m(i, j)));
    return r;
  }
};

template <class F>
Poly<F> twist_by_automorphism(const F& f, const Poly<F>& p, const FieldMat<F>& g) {
  int n = g.n;
  // image of each variable
  std::vector<Poly<F>> img(n);
  for (int j = 0; j < n; ++j) {
    Poly<F> col;
    for (int i = 0; i < n; ++i)
      if (!f.is_zero(g(i, j))) col.terms.push_back({mono_var(i), g(i, j)});
    img[j] = std::move(col);
  }
  // cached powers per variable
  std::vector<std::vector<Poly<F>>> pow(n);
  for (int j = 0; j < n; ++j) pow[j] = {poly_one(f)};
  auto img_pow = [&](int j, int k) -> const Poly<F>& {
    while (static_cast<int>(pow[j].size()) <= k) pow[j].push_back(poly_mul(f, pow[j].back(), img[j]));
    return pow[j][k];
  };
  Poly<F> out;
  for (const auto& t : p.terms) {
    Poly<F> prod = poly_const(f, t.c);
    for (int j = 0; j < n; ++j) {
      int e = mono_exp(t.m, j);
      if (e > 0) prod = poly_mul(f, prod, img_pow(j, e));
    }
    out = poly_add(f, out, prod);
  }
  return out;
}

template <class F>
Poly<F> twist_by_automorphism(const F& f, const Poly<F>& p, const IntMat& g) {
  return twist_by_automorphism(f, p, FieldMat<F>::from_int_mat(f, g));
}

// "c*x1^a1*...*xn^an" terms joined by " + ", descending graded-lex.
template <class F>
std::string poly_to_string(const F& f, const Poly<F>& p, int rank) {
  if (p.terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.terms.size(); ++k) {
    const auto& t = p.terms[k];
    if (k) out += " + ";
    std::string mono;
    for (int i = 0; i < rank; ++i) {
      int e = mono_exp(t.m, i);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += f.to_string(t.c);
    } else if (f.is_one(t.c)) {
      out += mono;
    } else {
      out += f.to_string(t.c) + "*" + mono;
    }
  }
  return out;
}

}  // namespace mgkl
