// Acceptance suite: one line per criterion, every check exact (tolerance
// zero). Exit code 0 iff all criteria pass.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "kl_oracle.hpp"
#include "mgkl/verify.hpp"

using namespace mgkl;

namespace {

int g_failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

struct Agg {
  bool pass = true;
  long checked = 0, skipped = 0;
  std::string first_failure;

  void add(const SuiteResult& r) {
    pass = pass && r.pass;
    checked += r.checked;
    skipped += r.skipped;
    if (first_failure.empty() && !r.failures.empty()) first_failure = r.failures.front();
  }
  std::string detail() const {
    std::string s = "checked " + std::to_string(checked);
    if (skipped) s += ", skipped " + std::to_string(skipped);
    if (!first_failure.empty()) s += "; first: " + first_failure;
    return s;
  }
};

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  RationalField Q;
  PrimeField F3(3), F5(5);

  WeylGroup A2 = WeylGroup::make("A2");
  WeylGroup B2 = WeylGroup::make("B2");
  WeylGroup A3 = WeylGroup::make("A3");

  {  // 1. char-0 agreement of stalk ranks with KL polynomials
    Agg a;
    for (const WeylGroup* W : {&A2, &B2, &A3}) a.add(suite_ranks_vs_kl(*W, Q));
    report(1, "graded ranks equal KL polynomials over Q (A2, B2, A3)", a.pass, a.detail());
  }

  {  // 2. parabolic agreement in A3
    Agg a;
    for (const std::vector<int>& J : std::vector<std::vector<int>>{{0}, {2}, {0, 2}})
      a.add(suite_parabolic(A3, Q, J));
    report(2, "parabolic ranks equal P_{yw_J, ww_J} over Q (A3; J={s1},{s3},{s1,s3})", a.pass,
           a.detail());
  }

  {  // 3. rank identities under inversion and right multiplication
    Agg a;
    a.add(suite_thm58(A3, Q));
    a.add(suite_thm58(A3, F3));
    report(3, "rk B_w^y = rk B_{w^-1}^{y^-1} and rk B_w^y = rk B_{ws}^{ys} (A3; Q, F3)", a.pass,
           a.detail());
  }

  {  // 4. rank invariance under right descent of y
    Agg a;
    for (const WeylGroup* W : {&A3, &B2}) {
      a.add(suite_thm62(*W, Q));
      a.add(suite_thm62(*W, F3));
      a.add(suite_thm62(*W, F5));
    }
    report(4, "rk B_w^y = rk B_w^{ys} for ws<w (A3, B2; Q, F3, F5, GKM-gated)", a.pass,
           a.detail());
  }

  {  // 5. smoothness: longest element has rank-one stalks everywhere
    Agg a;
    for (const WeylGroup* W : {&A2, &B2, &A3}) {
      a.add(suite_smoothness(*W, Q));
      a.add(suite_smoothness(*W, F3));
      a.add(suite_smoothness(*W, F5));
    }
    report(5, "rk B_{w0}^y = 1 everywhere (A2, B2, A3; Q, F3, F5)", a.pass, a.detail());
  }

  {  // 6. pullback certificates along the inverse and right-multiplication isos
    Agg a;
    a.add(suite_pullback_inverse(A2, Q));
    a.add(suite_pullback_inverse(A3, Q));
    a.add(suite_pullback_rightmult(A3, Q));
    report(6, "pullbacks of canonical sheaves pass axiom certificates (A2, A3 inverse; A3 xs)",
           a.pass, a.detail());
  }

  {  // 7. Hilbert-series divisibility on s-stable intervals
    Agg a;
    a.add(suite_gamma_div(A3, Q));
    report(7, "Gamma([ys,w] minus {ys,y}, B_w) series factor as (1+q)G(q), G >= 0 (A3, Q)", a.pass,
           a.detail());
  }

  {  // 8. combinatorial lemmata and polynomial identities
    Agg a;
    a.add(suite_lemmas(A3));
    a.add(suite_lemmas(B2));
    a.add(suite_kl_identities(A2));
    a.add(suite_kl_identities(B2));
    a.add(suite_kl_identities(A3));
    report(8, "G_L identity, s-stable intervals, lifting, KL identities (A2, B2, A3)", a.pass,
           a.detail());
  }

  {  // 9. GKM audits
    FieldSpec f3 = FieldSpec::prime(3);
    bool a2_gkm = is_gkm_pair(bruhat_graph(A2), f3).gkm;
    bool a3_gkm = is_gkm_pair(bruhat_graph(A3), f3).gkm;
    WeylGroup G2 = WeylGroup::make("G2");
    auto g2rep = is_gkm_pair(bruhat_graph(G2), f3);
    bool pass = a2_gkm && a3_gkm && !g2rep.gkm && !g2rep.violations.empty();
    report(9, "type A graphs GKM over F3; G2 graph fails GKM over F3", pass,
           std::string("A2:") + (a2_gkm ? "gkm" : "no") + " A3:" + (a3_gkm ? "gkm" : "no") +
               " G2:" + (g2rep.gkm ? "gkm" : "no") + " with " +
               std::to_string(g2rep.violations.size()) + " violation(s)");
  }

  {  // 10. recursion against the R-polynomial inversion oracle
    long checked = 0;
    bool pass = true;
    std::string first;
    for (const WeylGroup* W : {&A2, &B2}) {
      KLTable kl(*W);
      mgkl_test::RPolyOracle oracle(*W);
      for (WeylElt w : W->all_sorted())
        for (WeylElt y : W->all_sorted()) {
          ++checked;
          if (kl.kl(y, w) != oracle.kl(y, w)) {
            pass = false;
            if (first.empty())
              first = "mismatch at y=" + W->display(y) + " w=" + W->display(w);
          }
        }
    }
    KLTable kl(A3);
    mgkl_test::RPolyOracle oracle(A3);
    std::mt19937 rng(20240101);
    for (int i = 0; i < 200; ++i) {
      WeylElt y = A3.all_sorted()[rng() % A3.size()];
      WeylElt w = A3.all_sorted()[rng() % A3.size()];
      ++checked;
      if (kl.kl(y, w) != oracle.kl(y, w)) {
        pass = false;
        if (first.empty()) first = "mismatch at y=" + A3.display(y) + " w=" + A3.display(w);
      }
    }
    report(10, "KL recursion matches R-polynomial inversion (A2, B2 full; 200 random A3 pairs)",
           pass, "checked " + std::to_string(checked) + (first.empty() ? "" : "; " + first));
  }

  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/10 criteria passed in %.1fs\n", 10 - g_failures, dt);
  return g_failures == 0 ? 0 : 1;
}
