#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mgkl/kl.hpp"
#include "mgkl/sheaf.hpp"

namespace mgkl {

// Generator search policy for the Braden-MacPherson construction: scan even
// degrees up to D(x) = l(top) - l(x) + 2, then insist on two consecutive
// empty degrees, giving up (and reporting) after D(x) + 2*slack.
struct DegreePolicy {
  int slack = 2;
};

template <class F>
struct BmpResult {
  Sheaf<F> sheaf;
  bool converged = true;
  std::vector<std::string> notes;
};

// Vertices ordered top-down: decreasing length, ties by canonical word.
inline std::vector<int> top_down_order(const MomentGraph& g) {
  std::vector<int> order(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.vertices[a].length != g.vertices[b].length)
      return g.vertices[a].length > g.vertices[b].length;
    return g.vertices[a].word < g.vertices[b].word;
  });
  return order;
}

// The canonical (Braden-MacPherson) sheaf on a finite k-moment graph with a
// unique maximal vertex: top stalk S_k, lower stalks projective covers of the
// image of local sections in the upward edge modules, computed degree by
// degree.
template <class F>
BmpResult<F> build_bmp(const MomentGraph& g, const F& f, DegreePolicy policy = {}) {
  int top = g.unique_max();
  if (top < 0) throw std::invalid_argument("build_bmp: graph has no unique maximal vertex");
  FieldSpec ks = f.characteristic() == 0 ? FieldSpec::rational()
                                         : FieldSpec::prime(static_cast<std::uint64_t>(f.characteristic()));
  if (!is_k_moment_graph(g, ks))
    throw std::invalid_argument("build_bmp: an edge label vanishes over " + f.name());

  BmpResult<F> res{Sheaf<F>{g, f, {}, {}}, true, {}};
  Sheaf<F>& s = res.sheaf;
  s.stalk.assign(g.vertex_count(), {});
  s.rho.assign(g.edge_count(), {});

  std::vector<char> processed(g.vertex_count(), 0);
  int top_len = g.vertices[top].length;

  for (int x : top_down_order(g)) {
    if (x == top) {
      s.stalk[top] = {0};
      processed[top] = 1;
      continue;
    }
    std::vector<int> above = g.strictly_above(x);
    for (int z : above)
      if (!processed[z])
        throw std::logic_error("build_bmp: processing order is not a reverse linear extension");

    int cap = top_len - g.vertices[x].length + 2;
    int hard_cap = cap + 2 * policy.slack;

    std::vector<int> gen_degrees;
    // per generator: polynomial per edge-layout block (block <-> (edge, head gen))
    std::vector<std::vector<Poly<F>>> gen_columns;

    std::vector<SparseVec<F>> prev_rows;  // basis of B_{d-2}
    EdgeLayout<F> prev_layout;
    int prev_count = 0;

    for (int d = 0;; d += 2) {
      EdgeLayout<F> EL = build_edge_layout(s, x, d);
      SectionSlice<F> slice = sections_slice(s, above, d);

      // V_d = Y_k * B_{d-2}: multiply the previous basis by each variable
      // inside the edge modules.
      RowSpan<F> span(f, EL.ncols);
      for (const auto& row : prev_rows) {
        for (int var = 0; var < s.rank(); ++var) {
          std::vector<std::pair<int, typename F::Elem>> acc;
          for (std::size_t bi = 0; bi < prev_layout.blocks.size(); ++bi) {
            Poly<F> p = edge_block_poly(f, prev_layout, bi, row);
            if (p.is_zero()) continue;
            const auto& edge = g.edges[prev_layout.blocks[bi].edge];
            Poly<F> q =
                reduce_mod_linear(f, poly_mul_mono(f, p, mono_var(var)), edge.label);
            for (const auto& [idx, val] : scatter_edge_poly(f, EL, bi, q))
              acc.emplace_back(idx, val);
          }
          span.add(detail::combine_row(f, acc));
        }
      }

      // Extend by section images; every insertion that grows the span is a
      // minimal generator, its image the new restriction column.
      int count = 0;
      std::vector<SparseVec<F>> b_rows_snapshot;
      for (const auto& sec : slice.basis) {
        SparseVec<F> u = u_image(s, slice.layout, sec, EL);
        if (span.add(u)) {
          ++count;
          gen_degrees.push_back(d);
          std::vector<Poly<F>> cols;
          cols.reserve(EL.blocks.size());
          for (std::size_t bi = 0; bi < EL.blocks.size(); ++bi)
            cols.push_back(edge_block_poly(f, EL, bi, u));
          gen_columns.push_back(std::move(cols));
        }
      }
      // span now equals B_d
      prev_rows = span.rows();
      prev_layout = EL;

      if (d >= cap && count == 0 && prev_count == 0) break;
      if (d >= hard_cap) {
        if (count != 0 || prev_count != 0) {
          res.converged = false;
          res.notes.push_back("unconverged at vertex " + g.vertices[x].id + " (degree cap " +
                              std::to_string(hard_cap) + ")");
        }
        break;
      }
      prev_count = count;
    }

    s.stalk[x] = gen_degrees;
    // assemble tail restriction matrices per upward edge
    EdgeLayout<F> ref = build_edge_layout(s, x, 0);  // block enumeration only
    for (std::size_t bi = 0; bi < ref.blocks.size(); ++bi) {
      int e = ref.blocks[bi].edge;
      if (s.rho[e].empty())
        s.rho[e].assign(s.stalk[g.edges[e].head].size(),
                        std::vector<Poly<F>>(gen_degrees.size()));
      s.rho[e][ref.blocks[bi].gen].assign(gen_degrees.size(), Poly<F>{});
    }
    for (std::size_t gi = 0; gi < gen_columns.size(); ++gi)
      for (std::size_t bi = 0; bi < ref.blocks.size(); ++bi)
        s.rho[ref.blocks[bi].edge][ref.blocks[bi].gen][gi] = gen_columns[gi][bi];
    processed[x] = 1;
  }
  return res;
}

// Graded rank of a stalk: a generator in degree d contributes q^{d/2}.
template <class F>
QPoly graded_rank(const Sheaf<F>& s, int vertex) {
  QPoly r;
  for (int d : s.stalk[vertex]) {
    int k = d / 2;
    if (static_cast<int>(r.size()) <= k) r.resize(k + 1, 0);
    r[k] += 1;
  }
  qp_trim(r);
  return r;
}

template <class F>
QPoly graded_rank_at(const Sheaf<F>& s, const std::string& vertex_id) {
  int v = s.graph.find_vertex(vertex_id);
  if (v < 0) throw std::invalid_argument("graded_rank: unknown vertex " + vertex_id);
  return graded_rank(s, v);
}

struct AxiomReport {
  bool ok = true;
  long checks = 0;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

// Certifies the three characterizing properties on the sheaf as presented:
// (i) top stalk S_k; (ii) edge modules are head stalks modulo the label with
// canonical quotients (normal form: degree lists match, entries canonical and
// homogeneous); (iii) stalks are minimal degree-wise and d_x hits exactly the
// image of upper sections, up to the policy bound.
template <class F>
AxiomReport verify_axioms(const Sheaf<F>& s, DegreePolicy policy = {}) {
  (void)policy;
  const F& f = s.field;
  const MomentGraph& g = s.graph;
  AxiomReport rep;

  int top = g.unique_max();
  if (top < 0) {
    rep.fail("graph has no unique maximal vertex");
    return rep;
  }
  ++rep.checks;
  if (s.stalk[top] != std::vector<int>{0}) rep.fail("axiom (i): top stalk is not S_k");

  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges[e];
    ++rep.checks;
    if (s.rho[e].size() != s.stalk[edge.head].size()) {
      rep.fail("axiom (ii): edge module of " + g.vertices[edge.tail].id + "->" +
               g.vertices[edge.head].id + " does not match the head stalk");
      continue;
    }
    int piv = pivot_index(f, edge.label);
    for (std::size_t i = 0; i < s.rho[e].size(); ++i) {
      if (s.rho[e][i].size() != s.stalk[edge.tail].size()) {
        rep.fail("axiom (ii): restriction matrix shape mismatch on edge " +
                 g.vertices[edge.tail].id + "->" + g.vertices[edge.head].id);
        continue;
      }
      for (std::size_t j = 0; j < s.rho[e][i].size(); ++j) {
        const Poly<F>& p = s.rho[e][i][j];
        if (p.is_zero()) continue;
        int want = s.stalk[edge.tail][j] - s.stalk[edge.head][i];
        bool canonical = true;
        for (const auto& t : p.terms)
          if (mono_exp(t.m, piv) != 0) canonical = false;
        if (!p.is_homogeneous() || p.degree() != want || !canonical)
          rep.fail("axiom (ii): entry (" + std::to_string(i) + "," + std::to_string(j) +
                   ") of edge " + g.vertices[edge.tail].id + "->" + g.vertices[edge.head].id +
                   " not homogeneous canonical of the right degree");
      }
    }
  }

  int top_len = g.vertices[top].length;
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (x == top) continue;
    std::vector<int> above = g.strictly_above(x);
    int cap = top_len - g.vertices[x].length + 2;

    std::vector<SparseVec<F>> prev_rows;
    EdgeLayout<F> prev_layout;
    for (int d = 0; d <= cap; d += 2) {
      EdgeLayout<F> EL = build_edge_layout(s, x, d);
      SectionSlice<F> slice = sections_slice(s, above, d);

      RowSpan<F> B(f, EL.ncols);
      for (const auto& sec : slice.basis) B.add(u_image(s, slice.layout, sec, EL));

      RowSpan<F> V(f, EL.ncols);
      for (const auto& row : prev_rows)
        for (int var = 0; var < s.rank(); ++var) {
          std::vector<std::pair<int, typename F::Elem>> acc;
          for (std::size_t bi = 0; bi < prev_layout.blocks.size(); ++bi) {
            Poly<F> p = edge_block_poly(f, prev_layout, bi, row);
            if (p.is_zero()) continue;
            Poly<F> q = reduce_mod_linear(
                f, poly_mul_mono(f, p, mono_var(var)), g.edges[prev_layout.blocks[bi].edge].label);
            for (const auto& [idx, val] : scatter_edge_poly(f, EL, bi, q))
              acc.emplace_back(idx, val);
          }
          V.add(detail::combine_row(f, acc));
        }

      ++rep.checks;
      for (const auto& row : V.rows())
        if (!B.contains(row))
          rep.fail("axiom (iii): Y_k multiples leave the section image at " + g.vertices[x].id +
                   " degree " + std::to_string(d));

      int gens_here = 0;
      for (int deg : s.stalk[x])
        if (deg == d) ++gens_here;
      if (gens_here != B.dim() - V.dim())
        rep.fail("axiom (iii): stalk at " + g.vertices[x].id + " has " + std::to_string(gens_here) +
                 " generators in degree " + std::to_string(d) + ", expected " +
                 std::to_string(B.dim() - V.dim()));

      // d_x image slice must equal B_d
      RowSpan<F> D(f, EL.ncols);
      for (auto& v : dx_image_vectors(s, x, EL)) D.add(std::move(v));
      if (!D.equals(B))
        rep.fail("axiom (iii): image of d_x differs from the section image at " +
                 g.vertices[x].id + " degree " + std::to_string(d));

      prev_rows = B.rows();
      prev_layout = EL;
    }
  }
  return rep;
}

struct GammaDivResult {
  bool ok = false;
  bool vacuous = false;
  std::vector<long long> series;
  QPoly quotient;
};

// Hilbert-series divisibility on I = [ys, w] minus {ys, y}: the series of
// Gamma(I, B_w) up to the degree cap must factor as (1+q) G(q) with G >= 0.
// Requires ws < w, ys < y <= w and the GKM property of the restricted graph.
template <class F>
GammaDivResult gamma_divisibility_check(const Sheaf<F>& B, const WeylGroup& W, WeylElt y, int sidx) {
  const MomentGraph& g = B.graph;
  int top = g.unique_max();
  if (top < 0) throw std::invalid_argument("gamma_divisibility_check: no maximal vertex");
  WeylElt w{g.vertices[top].elt};
  WeylElt ys = W.rmult(y, sidx), ws = W.rmult(w, sidx);
  if (!(W.length(ws) < W.length(w)) || !(W.length(ys) < W.length(y)) || !W.leq(y, w))
    throw std::invalid_argument("gamma_divisibility_check: requires ws < w, ys < y <= w");

  int vy = -1, vys = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.vertices[v].elt == y.id) vy = v;
    if (g.vertices[v].elt == ys.id) vys = v;
  }
  if (vy < 0 || vys < 0)
    throw std::invalid_argument("gamma_divisibility_check: y or ys missing from graph");

  std::vector<int> I;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.leq(vys, v) && v != vys && v != vy) I.push_back(v);

  GammaDivResult res;
  if (I.empty()) {
    res.ok = res.vacuous = true;
    return res;
  }
  FieldSpec ks = B.field.characteristic() == 0
                     ? FieldSpec::rational()
                     : FieldSpec::prime(static_cast<std::uint64_t>(B.field.characteristic()));
  if (!is_gkm_pair(restrict_graph(g, I), ks).gkm)
    throw std::domain_error("gamma_divisibility_check: GKM precondition fails over " + ks.name());

  int dmax = g.vertices[top].length - W.length(ys) + 2;
  res.series = hilbert_series(B, I, dmax);
  res.ok = true;
  long long carry = 0;
  for (std::size_t m = 0; m < res.series.size(); ++m) {
    long long q = res.series[m] - carry;
    if (q < 0) {
      res.ok = false;
      break;
    }
    res.quotient.push_back(q);
    carry = q;
  }
  qp_trim(res.quotient);
  return res;
}

}  // namespace mgkl
