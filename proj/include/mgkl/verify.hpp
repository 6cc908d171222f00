#pragma once

#include <map>
#include <string>
#include <vector>

#include "mgkl/bmp.hpp"
#include "mgkl/kl.hpp"
#include "mgkl/morphism.hpp"

namespace mgkl {

// Named verification suites behind the CLI `verify` subcommand and the
// acceptance runner. Each suite checks one rank-level or combinatorial
// statement exhaustively at the configured type/field and reports every
// violation it finds.

struct SuiteResult {
  std::string name;
  std::string claim;
  bool pass = true;
  long checked = 0;
  long skipped = 0;
  bool probe = false;  // informational run (no theorem asserted)
  std::vector<std::string> failures;
  std::string note;

  SuiteResult() = default;
  SuiteResult(std::string n, std::string c) : name(std::move(n)), claim(std::move(c)) {}

  void fail(std::string msg) {
    pass = false;
    if (failures.size() < 50) failures.push_back(std::move(msg));
  }
};

// Builds canonical sheaves on lower restrictions of one ambient Bruhat graph,
// memoized per maximal vertex.
template <class F>
class BmpBank {
 public:
  BmpBank(const MomentGraph& full, const F& f, DegreePolicy policy = {})
      : full_(full), field_(f), policy_(policy) {}

  const BmpResult<F>& at(int w_vertex) {
    auto it = cache_.find(w_vertex);
    if (it != cache_.end()) return it->second;
    MomentGraph gw = lower_restriction(full_, w_vertex);
    return cache_.emplace(w_vertex, build_bmp(gw, field_, policy_)).first->second;
  }

  const MomentGraph& full() const { return full_; }

 private:
  const MomentGraph& full_;
  F field_;
  DegreePolicy policy_;
  std::map<int, BmpResult<F>> cache_;
};

inline FieldSpec field_spec_of(long characteristic) {
  return characteristic == 0 ? FieldSpec::rational()
                             : FieldSpec::prime(static_cast<std::uint64_t>(characteristic));
}

// --- kl-identities: P_{y,w} = P_{y^{-1},w^{-1}},  P_{y,w} = P_{ys,ws} under
// ws<w and y not<= ws,  P_{y,w} = P_{ys,w} under ws<w; exhaustive.
inline SuiteResult suite_kl_identities(const WeylGroup& W) {
  SuiteResult res{"kl-identities", "P(y,w) = P(y^-1,w^-1); P(y,w) = P(ys,ws) when ws<w, y not<= ws; P(y,w) = P(ys,w) when ws<w"};
  KLTable kl(W);
  auto rep = kl.verify_identities();
  res.checked = rep.checked_inverse + rep.checked_ys_ws + rep.checked_ys_w;
  for (const auto& v : rep.violations) res.fail(v);
  return res;
}

// --- ranks-vs-kl: graded ranks of canonical-sheaf stalks against (parabolic)
// KL polynomials. A theorem over Q; a probe over F_p (mismatches reported,
// suite not failed).
template <class F>
SuiteResult suite_ranks_vs_kl(const WeylGroup& W, const F& f, const std::vector<int>& J = {}) {
  SuiteResult res{"ranks-vs-kl", "rk (B^J_w)^y = P^{J,-1}(y,w) for all y <= w"};
  res.probe = f.characteristic() != 0;
  MomentGraph full = bruhat_graph(W, J);
  BmpBank<F> bank(full, f);
  KLTable kl(W);
  ParabolicQuotient q = W.min_coset_reps(J);
  long probes = 0;
  for (int wv = 0; wv < full.vertex_count(); ++wv) {
    const auto& built = bank.at(wv);
    WeylElt w{full.vertices[wv].elt};
    if (!built.converged) {
      res.fail("unconverged build at w=" + W.display(w));
      continue;
    }
    const Sheaf<F>& B = built.sheaf;
    for (int v = 0; v < B.graph.vertex_count(); ++v) {
      WeylElt y{B.graph.vertices[v].elt};
      QPoly rank = graded_rank(B, v);
      QPoly expect = J.empty() ? kl.kl(y, w) : kl.parabolic_kl(J, y, w);
      ++res.checked;
      if (rank != expect) {
        if (res.probe) {
          ++probes;
          if (res.note.size() < 400)
            res.note += " rk(" + W.display(y) + "," + W.display(w) + ")=" + qp_to_string(rank) +
                        " vs " + qp_to_string(expect) + ";";
        } else {
          res.fail("rank mismatch at y=" + W.display(y) + " w=" + W.display(w) + ": " +
                   qp_to_string(rank) + " != " + qp_to_string(expect));
        }
      }
    }
  }
  if (res.probe)
    res.note = "probe over " + f.name() + ", " + std::to_string(probes) + " deviation(s);" + res.note;
  return res;
}

// --- thm58: (i) rk B_w^y = rk B_{w^{-1}}^{y^{-1}} for all pairs;
//            (ii) rk B_w^y = rk B_{ws}^{ys} whenever ws<w and y not<= ws.
template <class F>
SuiteResult suite_thm58(const WeylGroup& W, const F& f) {
  SuiteResult res{"thm58", "rk B_w^y = rk B_{w^-1}^{y^-1}; rk B_w^y = rk B_{ws}^{ys} when ws<w, y not<= ws"};
  MomentGraph full = bruhat_graph(W);
  BmpBank<F> bank(full, f);
  for (int wv = 0; wv < full.vertex_count(); ++wv) {
    WeylElt w{full.vertices[wv].elt};
    WeylElt wi = W.inverse(w);
    const Sheaf<F>& Bw = bank.at(wv).sheaf;
    const Sheaf<F>& Bwi = bank.at(full.find_vertex(W.display(wi))).sheaf;
    for (int v = 0; v < Bw.graph.vertex_count(); ++v) {
      WeylElt y{Bw.graph.vertices[v].elt};
      ++res.checked;
      if (graded_rank(Bw, v) != graded_rank_at(Bwi, W.display(W.inverse(y))))
        res.fail("(i) fails at y=" + W.display(y) + " w=" + W.display(w));
    }
    for (int s = 0; s < W.rank(); ++s) {
      if (!W.right_descent(w, s)) continue;
      WeylElt ws = W.rmult(w, s);
      const Sheaf<F>& Bws = bank.at(full.find_vertex(W.display(ws))).sheaf;
      for (int v = 0; v < Bw.graph.vertex_count(); ++v) {
        WeylElt y{Bw.graph.vertices[v].elt};
        if (W.leq(y, ws)) continue;
        ++res.checked;
        if (graded_rank(Bw, v) != graded_rank_at(Bws, W.display(W.rmult(y, s))))
          res.fail("(ii) fails at y=" + W.display(y) + " w=" + W.display(w) + " s=" +
                   std::to_string(s + 1));
      }
    }
  }
  return res;
}

// --- thm62: rk B_w^y = rk B_w^{ys} for ws<w and y, ys <= w. Over F_p the
// check is gated on the GKM property of the ambient restricted graph (which
// every interval in the underlying induction inherits).
template <class F>
SuiteResult suite_thm62(const WeylGroup& W, const F& f) {
  SuiteResult res{"thm62", "rk B_w^y = rk B_w^{ys} when ws<w and y, ys <= w"};
  MomentGraph full = bruhat_graph(W);
  BmpBank<F> bank(full, f);
  FieldSpec ks = field_spec_of(f.characteristic());
  for (int wv = 0; wv < full.vertex_count(); ++wv) {
    WeylElt w{full.vertices[wv].elt};
    MomentGraph gw = lower_restriction(full, wv);
    if (f.characteristic() != 0 && !is_gkm_pair(gw, ks).gkm) {
      ++res.skipped;
      continue;
    }
    const Sheaf<F>& Bw = bank.at(wv).sheaf;
    for (int s = 0; s < W.rank(); ++s) {
      if (!W.right_descent(w, s)) continue;
      for (int v = 0; v < Bw.graph.vertex_count(); ++v) {
        WeylElt y{Bw.graph.vertices[v].elt};
        WeylElt ys = W.rmult(y, s);
        if (!W.leq(ys, w)) continue;
        ++res.checked;
        if (graded_rank(Bw, v) != graded_rank_at(Bw, W.display(ys)))
          res.fail("fails at y=" + W.display(y) + " w=" + W.display(w) + " s=" +
                   std::to_string(s + 1) + " over " + f.name());
      }
    }
  }
  return res;
}

// --- parabolic: rk (B^J_w)^y = rk B_{w w_J}^{y w_J} = P_{y w_J, w w_J};
// over F_p gated on GKM of the ambient graph restricted to <= w w_J.
template <class F>
SuiteResult suite_parabolic(const WeylGroup& W, const F& f, const std::vector<int>& J) {
  SuiteResult res{"parabolic", "rk (B^J_w)^y = rk B_{ww_J}^{yw_J} (= P_{yw_J,ww_J} over Q)"};
  {
    std::string js;
    for (int j : J) js += (js.empty() ? "" : ",") + std::to_string(j + 1);
    res.note = "J={" + js + "}";
  }
  MomentGraph full = bruhat_graph(W);
  MomentGraph fullJ = bruhat_graph(W, J);
  BmpBank<F> bank(full, f);
  BmpBank<F> bankJ(fullJ, f);
  KLTable kl(W);
  ParabolicQuotient q = W.min_coset_reps(J);
  FieldSpec ks = field_spec_of(f.characteristic());
  bool krational = f.characteristic() == 0;
  for (int wv = 0; wv < fullJ.vertex_count(); ++wv) {
    WeylElt w{fullJ.vertices[wv].elt};
    WeylElt wwj = W.mult(w, q.w_J);
    int wwjv = full.find_vertex(W.display(wwj));
    if (!krational && !is_gkm_pair(lower_restriction(full, wwjv), ks).gkm) {
      ++res.skipped;
      continue;
    }
    const Sheaf<F>& BJ = bankJ.at(wv).sheaf;
    const Sheaf<F>& Bfull = bank.at(wwjv).sheaf;
    for (int v = 0; v < BJ.graph.vertex_count(); ++v) {
      WeylElt y{BJ.graph.vertices[v].elt};
      WeylElt ywj = W.mult(y, q.w_J);
      QPoly rank_par = graded_rank(BJ, v);
      QPoly rank_full = graded_rank_at(Bfull, W.display(ywj));
      ++res.checked;
      if (rank_par != rank_full)
        res.fail("(B^J_w)^y != B_{ww_J}^{yw_J} at y=" + W.display(y) + " w=" + W.display(w));
      if (krational && rank_par != kl.parabolic_kl(J, y, w))
        res.fail("(B^J_w)^y != P^{J,-1} at y=" + W.display(y) + " w=" + W.display(w));
    }
  }
  return res;
}

// --- smoothness: rk B_{w0}^y = 1 for every y.
template <class F>
SuiteResult suite_smoothness(const WeylGroup& W, const F& f) {
  SuiteResult res{"smoothness", "rk B_{w0}^y = 1 for every y"};
  MomentGraph full = bruhat_graph(W);
  auto built = build_bmp(full, f);
  if (!built.converged) res.fail("unconverged build at w0");
  for (int v = 0; v < full.vertex_count(); ++v) {
    ++res.checked;
    if (graded_rank(built.sheaf, v) != QPoly{1})
      res.fail("rk B_{w0}^" + full.vertices[v].id + " != 1 over " + f.name());
  }
  return res;
}

// --- gamma-div: Hilbert series of Gamma([ys,w] minus {ys,y}, B_w) divisible
// by (1+q) with nonnegative quotient, for every admissible triple.
template <class F>
SuiteResult suite_gamma_div(const WeylGroup& W, const F& f) {
  SuiteResult res{"gamma-div", "Hilbert series of Gamma([ys,w] minus {ys,y}, B_w) = (1+q) G(q), G >= 0"};
  MomentGraph full = bruhat_graph(W);
  BmpBank<F> bank(full, f);
  for (int wv = 0; wv < full.vertex_count(); ++wv) {
    WeylElt w{full.vertices[wv].elt};
    std::vector<int> descents;
    for (int s = 0; s < W.rank(); ++s)
      if (W.right_descent(w, s)) descents.push_back(s);
    if (descents.empty()) continue;
    const Sheaf<F>& Bw = bank.at(wv).sheaf;
    for (int s : descents)
      for (int v = 0; v < Bw.graph.vertex_count(); ++v) {
        WeylElt y{Bw.graph.vertices[v].elt};
        if (!W.right_descent(y, s)) continue;  // need ys < y
        try {
          GammaDivResult r = gamma_divisibility_check(Bw, W, y, s);
          ++res.checked;
          if (r.vacuous) ++res.skipped;
          if (!r.ok)
            res.fail("series not (1+q)-divisible at y=" + W.display(y) + " w=" + W.display(w) +
                     " s=" + std::to_string(s + 1));
        } catch (const std::domain_error&) {
          ++res.skipped;  // GKM hypothesis absent over this field
        }
      }
  }
  return res;
}

// --- flabby: every canonical sheaf passes the flabbiness criterion.
template <class F>
SuiteResult suite_flabby(const WeylGroup& W, const F& f) {
  SuiteResult res{"flabby", "canonical sheaves satisfy the flabbiness criterion"};
  MomentGraph full = bruhat_graph(W);
  BmpBank<F> bank(full, f);
  for (int wv = 0; wv < full.vertex_count(); ++wv) {
    const Sheaf<F>& B = bank.at(wv).sheaf;
    FlabbyReport rep = is_flabby(B, full.vertices[wv].length + 2);
    ++res.checked;
    if (!rep.flabby)
      res.fail("B_" + full.vertices[wv].id + " not flabby (witness " +
               B.graph.vertices[rep.witness_vertex].id + " deg " +
               std::to_string(rep.witness_degree) + ")");
  }
  return res;
}

// --- lemmas: the combinatorial statements. G_L(ys,w) = G_L(y,w) u {ysy^-1};
// [ys,w] minus {ys,y} stable under x -> xs; the lifting property; and the
// interval bijection [y,w] -> [ys,ws] under y not<= ws.
inline SuiteResult suite_lemmas(const WeylGroup& W) {
  SuiteResult res{"lemmas", "G_L(ys,w) = G_L(y,w) u {ysy^-1}; s-stable intervals; lifting; interval bijection"};
  for (WeylElt w : W.all_sorted())
    for (int s = 0; s < W.rank(); ++s) {
      if (!W.right_descent(w, s)) continue;
      WeylElt ws = W.rmult(w, s);
      for (WeylElt y : W.all_sorted()) {
        if (!W.leq(y, w)) continue;
        WeylElt ys = W.rmult(y, s);
        if (W.right_descent(y, s)) {
          // G_L identity
          ++res.checked;
          std::vector<int> lhs = W.g_l_set(ys, w);
          std::vector<int> rhs = W.g_l_set(y, w);
          int extra = W.reflection_index(W.mult(W.mult(y, WeylElt{W.simple(s).id}), W.inverse(y)));
          rhs.push_back(extra);
          std::sort(rhs.begin(), rhs.end());
          rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
          if (lhs != rhs)
            res.fail("G_L identity fails at y=" + W.display(y) + " w=" + W.display(w) + " s=" +
                     std::to_string(s + 1));
          // s-stable interval
          ++res.checked;
          for (WeylElt x : W.interval(ys, w)) {
            if (x == ys || x == y) continue;
            WeylElt xs = W.rmult(x, s);
            if (!(W.leq(ys, xs) && W.leq(xs, w)) || xs == ys || xs == y) {
              res.fail("s-stable interval fails at x=" + W.display(x) + " y=" + W.display(y) +
                       " w=" + W.display(w) + " s=" + std::to_string(s + 1));
              break;
            }
          }
        } else if (!W.leq(y, ws)) {
          // interval bijection x -> xs : [y,w] -> [ys,ws]
          ++res.checked;
          auto dom = W.interval(y, w);
          auto cod = W.interval(ys, W.rmult(w, s));
          if (dom.size() != cod.size()) {
            res.fail("interval bijection size mismatch at y=" + W.display(y) +
                     " w=" + W.display(w));
            continue;
          }
          for (WeylElt x : dom) {
            WeylElt xs = W.rmult(x, s);
            if (!(W.leq(ys, xs) && W.leq(xs, ws)))
              res.fail("interval bijection leaves codomain at x=" + W.display(x));
          }
        }
        (void)ws;
      }
      // lifting property over all u < w (v = w)
      for (WeylElt u : W.all_sorted()) {
        if (!W.lt(u, w)) continue;
        ++res.checked;
        auto rep = W.check_lifting(u, w, s);
        if (!rep.all())
          res.fail("lifting property fails at u=" + W.display(u) + " v=" + W.display(w) + " s=" +
                   std::to_string(s + 1));
      }
    }
  return res;
}

// --- pullback certificates -------------------------------------------------

// Compares per-vertex generator degree lists by vertex id.
template <class F>
bool same_graded_data(const Sheaf<F>& a, const Sheaf<F>& b, std::string* where = nullptr) {
  if (a.graph.vertex_count() != b.graph.vertex_count()) {
    if (where) *where = "vertex counts differ";
    return false;
  }
  for (int v = 0; v < a.graph.vertex_count(); ++v) {
    int u = b.graph.find_vertex(a.graph.vertices[v].id);
    if (u < 0 || a.stalk[v] != b.stalk[u]) {
      if (where) *where = "stalk at " + a.graph.vertices[v].id;
      return false;
    }
  }
  return true;
}

// Inverse anti-involution: for every w, pull B_{w^{-1}} back along x -> x^{-1}
// and certify the canonical-sheaf axioms plus graded agreement with B_w.
template <class F>
SuiteResult suite_pullback_inverse(const WeylGroup& W, const F& f) {
  SuiteResult res{"pullback-inverse", "B_w = pullback of B_{w^-1} along x -> x^-1 (axioms + graded data)"};
  MomentGraph full = bruhat_graph(W);
  BmpBank<F> bank(full, f);
  for (int wv = 0; wv < full.vertex_count(); ++wv) {
    WeylElt w{full.vertices[wv].elt};
    int wiv = full.find_vertex(W.display(W.inverse(w)));
    MomentGraph dom = lower_restriction(full, wv);
    const Sheaf<F>& src = bank.at(wiv).sheaf;
    MGMorphism m = inverse_automorphism(W, dom, src.graph);
    auto mrep = validate_morphism(f, m, dom, src.graph, true);
    ++res.checked;
    if (!mrep.ok) {
      res.fail("inverse morphism invalid at w=" + W.display(w) + ": " + mrep.violations.front());
      continue;
    }
    Sheaf<F> pulled = pullback(f, m, src, dom);
    AxiomReport arep = verify_axioms(pulled);
    if (!arep.ok)
      res.fail("pullback of B_{w^-1} fails axioms at w=" + W.display(w) + ": " +
               arep.failures.front());
    std::string where;
    if (!same_graded_data(pulled, bank.at(wv).sheaf, &where))
      res.fail("graded data mismatch at w=" + W.display(w) + " (" + where + ")");
  }
  return res;
}

// Right multiplication: for every admissible (y, w, s) with y not<= ws, pull
// the interval sheaf on [ys,ws] back along x -> xs and certify axioms and
// graded agreement on [y,w]. Interval sheaves are restrictions of the ambient
// canonical sheaves (intervals are Alexandrov-open in the lower set).
template <class F>
SuiteResult suite_pullback_rightmult(const WeylGroup& W, const F& f) {
  SuiteResult res{"pullback-rightmult", "B on [y,w] = pullback of B on [ys,ws] along x -> xs (axioms + graded data)"};
  MomentGraph full = bruhat_graph(W);
  BmpBank<F> bank(full, f);
  for (int wv = 0; wv < full.vertex_count(); ++wv) {
    WeylElt w{full.vertices[wv].elt};
    for (int s = 0; s < W.rank(); ++s) {
      if (!W.right_descent(w, s)) continue;
      WeylElt ws = W.rmult(w, s);
      int wsv = full.find_vertex(W.display(ws));
      const Sheaf<F>& Bw = bank.at(wv).sheaf;
      const Sheaf<F>& Bws = bank.at(wsv).sheaf;
      for (int v = 0; v < Bw.graph.vertex_count(); ++v) {
        WeylElt y{Bw.graph.vertices[v].elt};
        if (W.leq(y, ws)) continue;
        WeylElt ys = W.rmult(y, s);
        ++res.checked;

        std::vector<int> domIdx, codIdx;
        for (int u = 0; u < Bw.graph.vertex_count(); ++u)
          if (Bw.graph.leq(v, u)) domIdx.push_back(u);
        int ysv = Bws.graph.find_vertex(W.display(ys));
        for (int u = 0; u < Bws.graph.vertex_count(); ++u)
          if (Bws.graph.leq(ysv, u)) codIdx.push_back(u);

        Sheaf<F> domSheaf = restrict_sheaf(Bw, domIdx);
        Sheaf<F> codSheaf = restrict_sheaf(Bws, codIdx);
        MGMorphism m = right_mult_isomorphism(W, domSheaf.graph, codSheaf.graph, s);
        auto mrep = validate_morphism(f, m, domSheaf.graph, codSheaf.graph, true);
        if (!mrep.ok) {
          res.fail("right-mult morphism invalid at y=" + W.display(y) + " w=" + W.display(w) +
                   " s=" + std::to_string(s + 1) + ": " + mrep.violations.front());
          continue;
        }
        // labels must be preserved exactly (unit h = 1)
        for (const auto& e : domSheaf.graph.edges) {
          int ep = find_edge(codSheaf.graph, m.vertex_map[e.tail], m.vertex_map[e.head]);
          if (ep < 0 || codSheaf.graph.edges[ep].label != e.label) {
            res.fail("label not preserved exactly at y=" + W.display(y) + " w=" + W.display(w));
            break;
          }
        }
        Sheaf<F> pulled = pullback(f, m, codSheaf, domSheaf.graph);
        AxiomReport arep = verify_axioms(pulled);
        if (!arep.ok)
          res.fail("pullback fails axioms at y=" + W.display(y) + " w=" + W.display(w) + " s=" +
                   std::to_string(s + 1) + ": " + arep.failures.front());
        std::string where;
        if (!same_graded_data(pulled, domSheaf, &where))
          res.fail("graded data mismatch at y=" + W.display(y) + " w=" + W.display(w) + " (" +
                   where + ")");
      }
    }
  }
  return res;
}

}  // namespace mgkl
