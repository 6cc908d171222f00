#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kl_oracle.hpp"
#include "mgkl/kl.hpp"

using namespace mgkl;

namespace {

// Recursion with a caller-chosen left descent at every step; used to verify
// independence of the descent choice.
QPoly kl_with_descent(const WeylGroup& W, WeylElt y, WeylElt w, int pick_rule) {
  if (!W.leq(y, w)) return {};
  if (y == w) return {1};
  std::vector<int> descents;
  for (int i = 0; i < W.rank(); ++i)
    if (W.left_descent(w, i)) descents.push_back(i);
  int s = pick_rule == 0 ? descents.front() : descents.back();
  WeylElt v = W.lmult(s, w), sy = W.lmult(s, y);
  int c = W.length(sy) < W.length(y) ? 1 : 0;
  QPoly p = qp_add(qp_shift(kl_with_descent(W, sy, v, pick_rule), 1 - c),
                   qp_shift(kl_with_descent(W, y, v, pick_rule), c));
  for (WeylElt z : W.all_sorted()) {
    if (!W.lt(z, v) || !W.leq(y, z) || !W.left_descent(z, s)) continue;
    QPoly pzv = kl_with_descent(W, z, v, pick_rule);
    int d = W.length(v) - W.length(z) - 1;
    long long mu = (d >= 0 && d % 2 == 0) ? qp_coeff(pzv, d / 2) : 0;
    if (mu == 0) continue;
    p = qp_sub(p, qp_shift(kl_with_descent(W, y, z, pick_rule), (W.length(w) - W.length(z)) / 2, mu));
  }
  return p;
}

}  // namespace

TEST_CASE("q-polynomial helpers") {
  QPoly a{1, 1}, b{0, 2, 1};
  CHECK(qp_to_string(a) == "1+q");
  CHECK(qp_to_string(QPoly{1, 2, 1}) == "1+2q+q^2");
  CHECK(qp_to_string(QPoly{}) == "0");
  CHECK(qp_add(a, b) == QPoly{1, 3, 1});
  CHECK(qp_mul(a, a) == QPoly{1, 2, 1});
  CHECK(qp_shift(a, 2, 3) == QPoly{0, 0, 3, 3});
  CHECK(qp_sub(a, a).empty());
}

TEST_CASE("base cases and dihedral groups") {
  for (const char* type : {"A2", "B2", "G2"}) {
    WeylGroup W = WeylGroup::make(type);
    KLTable kl(W);
    for (WeylElt w : W.all_sorted()) {
      CHECK(kl.kl(w, w) == QPoly{1});
      for (WeylElt y : W.all_sorted()) {
        if (W.leq(y, w))
          CHECK(kl.kl(y, w) == QPoly{1});  // dihedral: all polynomials are 1
        else
          CHECK(kl.kl(y, w).empty());
      }
    }
  }
}

TEST_CASE("first nontrivial polynomials in A3") {
  WeylGroup W = WeylGroup::make("A3");
  KLTable kl(W);
  WeylElt w = W.parse_word("2132");
  CHECK(kl.kl(W.parse_word("2"), w) == QPoly{1, 1});
  CHECK(kl.kl(W.identity(), w) == QPoly{1, 1});
  CHECK(kl.kl(W.parse_word("1"), w) == QPoly{1});
  WeylElt v = W.parse_word("12321");
  CHECK(kl.kl(W.parse_word("13"), v) == QPoly{1, 1});
  CHECK(kl.kl(W.parse_word("2"), v) == QPoly{1});
}

TEST_CASE("mu coefficients") {
  WeylGroup W = WeylGroup::make("A2");
  KLTable kl(W);
  // l difference 1: P = 1, exponent 0
  CHECK(kl.mu(W.parse_word("1"), W.parse_word("12")) == 1);
  // P(e, w0) = 1, exponent 1, coefficient 0
  CHECK(kl.mu(W.identity(), W.longest()) == 0);

  WeylGroup A3 = WeylGroup::make("A3");
  KLTable kl3(A3);
  CHECK(kl3.mu(A3.parse_word("2"), A3.parse_word("2132")) == 1);
}

TEST_CASE("degree bound and constant term") {
  WeylGroup W = WeylGroup::make("A3");
  KLTable kl(W);
  for (WeylElt w : W.all_sorted())
    for (WeylElt y : W.all_sorted()) {
      const QPoly& p = kl.kl(y, w);
      if (!W.leq(y, w)) {
        CHECK(p.empty());
        continue;
      }
      REQUIRE(!p.empty());
      CHECK(p[0] == 1);
      if (y != w) CHECK(2 * qp_degree(p) <= W.length(w) - W.length(y) - 1);
    }
}

TEST_CASE("recursion is independent of the descent choice") {
  for (const char* type : {"B2", "A3"}) {
    WeylGroup W = WeylGroup::make(type);
    KLTable kl(W);
    for (WeylElt w : W.all_sorted())
      for (WeylElt y : W.all_sorted()) {
        if (!W.leq(y, w)) continue;
        CHECK(kl.kl(y, w) == kl_with_descent(W, y, w, 0));
        CHECK(kl.kl(y, w) == kl_with_descent(W, y, w, 1));
      }
  }
}

TEST_CASE("identities (inverse, ys-ws, ys-w) hold exhaustively") {
  for (const char* type : {"A2", "B2", "A3"}) {
    WeylGroup W = WeylGroup::make(type);
    KLTable kl(W);
    auto rep = kl.verify_identities();
    INFO(type);
    CHECK(rep.ok());
    CHECK(rep.checked_inverse > 0);
    CHECK(rep.checked_ys_w > 0);
  }
}

TEST_CASE("parabolic polynomials") {
  WeylGroup W = WeylGroup::make("A3");
  KLTable kl(W);
  // J = {} reduces to the regular polynomials
  for (WeylElt w : W.all_sorted())
    CHECK(kl.parabolic_kl({}, W.identity(), w) == kl.kl(W.identity(), w));

  ParabolicQuotient q = W.min_coset_reps({0, 2});
  for (WeylElt w : q.min_reps) {
    CHECK(kl.parabolic_kl({0, 2}, w, w) == QPoly{1});
    for (WeylElt y : q.min_reps)
      CHECK(kl.parabolic_kl({0, 2}, y, w) == kl.kl(W.mult(y, q.w_J), W.mult(w, q.w_J)));
  }
  // non-minimal representative rejected
  CHECK_THROWS_AS(kl.parabolic_kl({0, 2}, W.parse_word("1"), q.min_reps[1]),
                  std::invalid_argument);
}

TEST_CASE("oracle agreement: R-polynomial inversion") {
  for (const char* type : {"A2", "B2"}) {
    WeylGroup W = WeylGroup::make(type);
    KLTable kl(W);
    mgkl_test::RPolyOracle oracle(W);
    for (WeylElt w : W.all_sorted())
      for (WeylElt y : W.all_sorted()) CHECK(kl.kl(y, w) == oracle.kl(y, w));
  }
  // random sample in A3
  WeylGroup W = WeylGroup::make("A3");
  KLTable kl(W);
  mgkl_test::RPolyOracle oracle(W);
  std::mt19937 rng(20240101);
  for (int i = 0; i < 200; ++i) {
    WeylElt y = W.all_sorted()[rng() % W.size()];
    WeylElt w = W.all_sorted()[rng() % W.size()];
    CHECK(kl.kl(y, w) == oracle.kl(y, w));
  }
}
