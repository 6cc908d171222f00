#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "kl_oracle.hpp"
#include "mgkl/coxeter.hpp"

using namespace mgkl;

TEST_CASE("group enumeration matches the classical counts") {
  struct Row {
    const char* type;
    int order, nrefl;
  };
  for (Row r : std::vector<Row>{{"A1", 2, 1},
                                {"A2", 6, 3},
                                {"A3", 24, 6},
                                {"A4", 120, 10},
                                {"B2", 8, 4},
                                {"B3", 48, 9},
                                {"C2", 8, 4},
                                {"C3", 48, 9},
                                {"D4", 192, 12},
                                {"G2", 12, 6}}) {
    WeylGroup W = WeylGroup::make(r.type);
    INFO(r.type);
    CHECK(W.size() == r.order);
    CHECK(static_cast<int>(W.reflections().size()) == r.nrefl);
    CHECK(static_cast<int>(W.positive_roots().size()) == r.nrefl);
    for (const auto& beta : W.positive_roots())
      for (auto c : beta) CHECK(c >= 0);
  }
}

TEST_CASE("unsupported or non-finite input is rejected") {
  CHECK_THROWS_AS(WeylGroup::make("E8"), std::invalid_argument);
  CHECK_THROWS_AS(WeylGroup::make("Z9"), std::invalid_argument);
  // affine A1 matrix is not of finite type
  CartanDatum affine{"affine", 2, {2, -2, -2, 2}};
  CHECK_THROWS_AS(WeylGroup(affine), std::invalid_argument);
  CartanDatum bad{"bad", 2, {2, -1, 0, 2}};  // A_ij = 0 iff A_ji = 0 violated
  CHECK_THROWS_AS(WeylGroup(bad), std::invalid_argument);
}

TEST_CASE("length equals the number of inverted positive roots") {
  for (const char* type : {"A2", "B2", "A3", "G2"}) {
    WeylGroup W = WeylGroup::make(type);
    for (WeylElt w : W.all_sorted()) {
      const IntMat& rm = W.root_matrix(w);
      int inverted = 0;
      for (const auto& beta : W.positive_roots()) {
        IntVec img = rm.apply(beta);
        bool neg = true;
        for (auto c : img) neg = neg && c <= 0;
        if (neg) ++inverted;
      }
      CHECK(W.length(w) == inverted);
    }
  }
}

TEST_CASE("length examples") {
  WeylGroup W = WeylGroup::make("A2");
  CHECK(W.length(W.identity()) == 0);
  CHECK(W.length(W.parse_word("1")) == 1);
  CHECK(W.length(W.parse_word("121")) == 3);
  CHECK(W.parse_word("121") == W.parse_word("212"));
}

TEST_CASE("word round trip and canonical form") {
  for (const char* type : {"A2", "B2", "A3"}) {
    WeylGroup W = WeylGroup::make(type);
    for (WeylElt w : W.all_sorted()) {
      CHECK(W.parse_word(W.word(w)) == w);
      CHECK(static_cast<int>(W.word(w).size()) == W.length(w));
    }
  }
  // lexicographically least reduced word, brute-forced in B2
  WeylGroup W = WeylGroup::make("B2");
  for (WeylElt w : W.all_sorted()) {
    // enumerate all reduced words by descent recursion
    std::vector<std::string> words;
    auto rec = [&](auto&& self, WeylElt x, std::string acc) -> void {
      if (x == W.identity()) {
        words.push_back(acc);
        return;
      }
      for (int i = 0; i < W.rank(); ++i)
        if (W.left_descent(x, i)) self(self, W.lmult(i, x), acc + static_cast<char>('1' + i));
    };
    rec(rec, w, "");
    CHECK(W.word(w) == *std::min_element(words.begin(), words.end()));
  }
}

TEST_CASE("bruhat order agrees with the subword oracle") {
  for (const char* type : {"A2", "B2", "A3"}) {
    WeylGroup W = WeylGroup::make(type);
    mgkl_test::SubwordBruhatOracle oracle(W);
    for (WeylElt x : W.all_sorted())
      for (WeylElt w : W.all_sorted()) CHECK(W.leq(x, w) == oracle.leq(x, w));
  }
}

TEST_CASE("bruhat order basics") {
  WeylGroup W = WeylGroup::make("A2");
  for (WeylElt w : W.all_sorted()) CHECK(W.leq(W.identity(), w));
  CHECK_FALSE(W.leq(W.parse_word("1"), W.parse_word("2")));
  WeylGroup A3 = WeylGroup::make("A3");
  CHECK(A3.leq(A3.parse_word("2"), A3.parse_word("2132")));
  // x <= w implies l(x) <= l(w)
  for (WeylElt x : A3.all_sorted())
    for (WeylElt w : A3.all_sorted())
      if (A3.leq(x, w)) CHECK(A3.length(x) <= A3.length(w));
}

TEST_CASE("inverse compatibility of length and order") {
  WeylGroup W = WeylGroup::make("A3");
  for (WeylElt w : W.all_sorted()) {
    CHECK(W.length(w) == W.length(W.inverse(w)));
    CHECK(W.mult(w, W.inverse(w)) == W.identity());
    for (WeylElt x : W.all_sorted())
      CHECK(W.leq(x, w) == W.leq(W.inverse(x), W.inverse(w)));
  }
}

TEST_CASE("intervals") {
  WeylGroup W = WeylGroup::make("A2");
  CHECK(W.lower_interval(W.identity()).size() == 1);
  CHECK(W.lower_interval(W.longest()).size() == 6);
  auto iv = W.interval(W.parse_word("1"), W.parse_word("12"));
  REQUIRE(iv.size() == 2);
  CHECK(iv[0] == W.parse_word("1"));
  CHECK(iv[1] == W.parse_word("12"));
  CHECK_THROWS_AS(W.interval(W.parse_word("1"), W.parse_word("2")), std::invalid_argument);
}

TEST_CASE("parabolic quotients") {
  WeylGroup W = WeylGroup::make("A2");
  auto all = W.min_coset_reps({});
  CHECK(all.min_reps.size() == 6);
  CHECK(all.w_J == W.identity());

  auto q = W.min_coset_reps({0});
  REQUIRE(q.min_reps.size() == 3);
  CHECK(q.min_reps[0] == W.identity());
  CHECK(q.min_reps[1] == W.parse_word("2"));
  CHECK(q.min_reps[2] == W.parse_word("12"));

  WeylGroup A3 = WeylGroup::make("A3");
  auto q13 = A3.min_coset_reps({0, 2});
  CHECK(q13.min_reps.size() == 6);
  CHECK(q13.w_J == A3.parse_word("13"));

  // every coset has exactly one listed representative, of minimal length,
  // and l(x w_J) = l(x) + l(w_J)
  for (const std::vector<int>& J : std::vector<std::vector<int>>{{0}, {2}, {0, 2}, {1}}) {
    auto qq = A3.min_coset_reps(J);
    std::set<int> seen;
    for (WeylElt x : qq.min_reps) {
      CHECK(A3.project_to_min_rep(x, J) == x);
      CHECK(A3.length(A3.mult(x, qq.w_J)) == A3.length(x) + A3.length(qq.w_J));
      seen.insert(x.id);
    }
    for (WeylElt w : A3.all_sorted()) {
      WeylElt p = A3.project_to_min_rep(w, J);
      CHECK(seen.count(p.id) == 1);
      CHECK(A3.length(p) <= A3.length(w));
    }
    CHECK(qq.min_reps.size() * (A3.size() / qq.min_reps.size()) == static_cast<std::size_t>(A3.size()));
  }
}

TEST_CASE("reflection data") {
  for (const char* type : {"A2", "B2", "G2", "A3"}) {
    WeylGroup W = WeylGroup::make(type);
    for (const auto& t : W.reflections()) {
      CHECK(W.mult(t.elt, t.elt) == W.identity());
      CHECK(W.length(t.elt) % 2 == 1);
      // <beta, coroot(beta)> = 2
      long long pairing = 0;
      for (int i = 0; i < W.rank(); ++i)
        for (int j = 0; j < W.rank(); ++j)
          pairing += t.root[i] * W.datum().entry(j, i) * t.coroot[j];
      CHECK(pairing == 2);
    }
    // conjugates of simple reflections hit every reflection
    std::set<int> conj;
    for (WeylElt w : W.all_sorted())
      for (int i = 0; i < W.rank(); ++i)
        conj.insert(W.mult(W.mult(w, W.simple(i)), W.inverse(w)).id);
    std::set<int> refl;
    for (const auto& t : W.reflections()) refl.insert(t.elt.id);
    CHECK(conj == refl);
  }
}

TEST_CASE("g_l_set") {
  WeylGroup W = WeylGroup::make("A2");
  WeylElt w0 = W.longest();
  CHECK(W.g_l_set(w0, w0).empty());
  auto set1 = W.g_l_set(W.parse_word("1"), w0);
  REQUIRE(set1.size() == 2);
  std::set<int> elems;
  for (int r : set1) elems.insert(W.reflections()[r].elt.id);
  CHECK(elems.count(W.parse_word("2").id) == 1);
  CHECK(elems.count(W.parse_word("121").id) == 1);
  CHECK(W.g_l_set(W.identity(), w0).size() == 3);
}

TEST_CASE("lifting property report") {
  WeylGroup W = WeylGroup::make("A2");
  WeylElt w0 = W.longest();
  auto r1 = W.check_lifting(W.parse_word("1"), w0, 1);  // us = s1s2 > u
  CHECK_FALSE(r1.us_below_u);
  CHECK(r1.all());
  auto r2 = W.check_lifting(W.parse_word("2"), w0, 1);  // us = e < u
  CHECK(r2.us_below_u);
  CHECK(r2.all());
  CHECK_THROWS_AS(W.check_lifting(W.parse_word("1"), W.parse_word("2"), 0),
                  std::invalid_argument);
  // identity is the minimum: e <= vs whenever es > e
  for (WeylElt v : W.all_sorted())
    for (int s = 0; s < W.rank(); ++s)
      if (W.right_descent(v, s) && W.lt(W.identity(), v))
        CHECK(W.check_lifting(W.identity(), v, s).all());
}

TEST_CASE("element serialization uses digit words") {
  WeylGroup W = WeylGroup::make("A3");
  CHECK(W.parse_word("") == W.identity());
  CHECK(W.parse_word("e") == W.identity());
  CHECK(W.word(W.parse_word("121")) == "121");
  CHECK(W.display(W.identity()) == "e");
  CHECK_THROWS_AS(W.parse_word("4"), std::invalid_argument);
}
