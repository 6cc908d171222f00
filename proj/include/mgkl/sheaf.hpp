#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mgkl/linalg.hpp"
#include "mgkl/moment_graph.hpp"
#include "mgkl/morphism.hpp"
#include "mgkl/ring.hpp"

namespace mgkl {

// Sheaf on a moment graph in normal form: stalks are graded free modules
// (ascending even generator degrees); the module on an edge is the head stalk
// modulo the edge label, so edge generators coincide with head generators and
// the head restriction is the canonical quotient (stored implicitly). Only
// tail restrictions carry polynomial matrices, entries canonical mod the
// label. All section computations are degree-sliced exact linear algebra.
template <class F>
struct Sheaf {
  using K = typename F::Elem;

  MomentGraph graph;
  F field;
  std::vector<std::vector<int>> stalk;                 // per vertex
  std::vector<std::vector<std::vector<Poly<F>>>> rho;  // per edge: [head_gen][tail_gen]

  int rank() const { return graph.rank; }
};

// Unknown layout of a degree slice of sections over a vertex subset: one
// coefficient per (vertex, stalk generator, monomial of complementary degree).
template <class F>
struct SectionLayout {
  int degree = 0;
  std::vector<int> verts;  // ascending vertex indices
  struct Block {
    int vertex = -1, gen = -1, offset = 0;
    std::vector<Mono> monos;  // descending graded-lex
  };
  std::vector<Block> blocks;
  std::vector<int> vert_pos;        // graph vertex -> index into verts, or -1
  std::vector<int> first_block;     // per position in verts, index into blocks (plus sentinel)
  int ncols = 0;
};

template <class F>
SectionLayout<F> build_section_layout(const Sheaf<F>& s, std::vector<int> I, int degree) {
  if (degree % 2 != 0) throw std::invalid_argument("section layout: degree must be even");
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  SectionLayout<F> L;
  L.degree = degree;
  L.verts = std::move(I);
  L.vert_pos.assign(s.graph.vertex_count(), -1);
  for (std::size_t p = 0; p < L.verts.size(); ++p) {
    L.vert_pos[L.verts[p]] = static_cast<int>(p);
    L.first_block.push_back(static_cast<int>(L.blocks.size()));
    int v = L.verts[p];
    for (std::size_t j = 0; j < s.stalk[v].size(); ++j) {
      typename SectionLayout<F>::Block b;
      b.vertex = v;
      b.gen = static_cast<int>(j);
      b.offset = L.ncols;
      int mdeg = degree - s.stalk[v][j];
      if (mdeg >= 0 && mdeg % 2 == 0) b.monos = monomial_basis(mdeg, s.rank());
      L.ncols += static_cast<int>(b.monos.size());
      L.blocks.push_back(std::move(b));
    }
  }
  L.first_block.push_back(static_cast<int>(L.blocks.size()));
  return L;
}

// Extracts the polynomial coefficient of one stalk generator from a section
// coordinate vector.
template <class F>
Poly<F> section_component(const F&, const SectionLayout<F>& L, const SparseVec<F>& vec,
                          int vertex, int gen) {
  int p = L.vert_pos[vertex];
  if (p < 0) return {};
  const auto& b = L.blocks[L.first_block[p] + gen];
  Poly<F> out;
  auto lo = std::lower_bound(vec.begin(), vec.end(), b.offset,
                             [](const auto& a, int c) { return a.first < c; });
  std::vector<typename Poly<F>::Term> terms;
  for (auto it = lo; it != vec.end() && it->first < b.offset + static_cast<int>(b.monos.size());
       ++it)
    terms.push_back({b.monos[it->first - b.offset], it->second});
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& c) { return a.m > c.m; });
  out.terms = std::move(terms);
  return out;
}

namespace detail {
inline int mono_position(const std::vector<Mono>& desc, Mono m) {
  auto it = std::lower_bound(desc.begin(), desc.end(), m, std::greater<Mono>());
  if (it == desc.end() || *it != m) return -1;
  return static_cast<int>(it - desc.begin());
}

template <class F>
SparseVec<F> combine_row(const F& f, std::vector<std::pair<int, typename F::Elem>>& acc) {
  std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<F> row;
  for (auto& [idx, val] : acc) {
    if (!row.empty() && row.back().first == idx)
      row.back().second = f.add(row.back().second, val);
    else
      row.emplace_back(idx, std::move(val));
  }
  SparseVec<F> out;
  for (auto& [idx, val] : row)
    if (!f.is_zero(val)) out.emplace_back(idx, std::move(val));
  return out;
}
}  // namespace detail

// Constraint rows of the section system: one row per (edge inside I, edge
// generator, canonical monomial of the edge-module slice).
template <class F>
std::vector<SparseVec<F>> section_constraints(const Sheaf<F>& s, const SectionLayout<F>& L) {
  const F& f = s.field;
  std::vector<SparseVec<F>> rows;
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    const auto& edge = s.graph.edges[e];
    int tp = L.vert_pos[edge.tail], hp = L.vert_pos[edge.head];
    if (tp < 0 || hp < 0) continue;
    int piv = pivot_index(f, edge.label);
    if (piv < 0)
      throw std::domain_error("section constraints: edge label vanishes over " + f.name());
    const auto& head_degs = s.stalk[edge.head];
    for (std::size_t i = 0; i < head_degs.size(); ++i) {
      int cdeg = L.degree - head_degs[i];
      std::vector<Mono> cb;
      if (cdeg >= 0 && cdeg % 2 == 0) cb = monomial_basis_avoiding(cdeg, s.rank(), piv);
      std::vector<std::vector<std::pair<int, typename F::Elem>>> acc(cb.size());
      // tail side: rho entries
      const auto& tail_degs = s.stalk[edge.tail];
      for (std::size_t j = 0; j < tail_degs.size(); ++j) {
        const Poly<F>& entry = s.rho[e][i][j];
        if (entry.is_zero()) continue;
        const auto& b = L.blocks[L.first_block[tp] + j];
        for (std::size_t mpos = 0; mpos < b.monos.size(); ++mpos) {
          Poly<F> prod = reduce_mod_linear(f, poly_mul_mono(f, entry, b.monos[mpos]), edge.label);
          for (const auto& t : prod.terms) {
            int cpos = detail::mono_position(cb, t.m);
            if (cpos < 0) throw std::logic_error("section constraints: monomial outside slice");
            acc[cpos].emplace_back(b.offset + static_cast<int>(mpos), t.c);
          }
        }
      }
      // head side: canonical quotient of generator i
      {
        const auto& b = L.blocks[L.first_block[hp] + static_cast<int>(i)];
        for (std::size_t mpos = 0; mpos < b.monos.size(); ++mpos) {
          Poly<F> red = reduce_mod_linear(
              f, Poly<F>{{{b.monos[mpos], f.one()}}}, edge.label);
          for (const auto& t : red.terms) {
            int cpos = detail::mono_position(cb, t.m);
            if (cpos < 0) throw std::logic_error("section constraints: monomial outside slice");
            acc[cpos].emplace_back(b.offset + static_cast<int>(mpos), f.neg(t.c));
          }
        }
      }
      for (auto& a : acc) {
        SparseVec<F> row = detail::combine_row(f, a);
        if (!row.empty()) rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

template <class F>
struct SectionSlice {
  SectionLayout<F> layout;
  std::vector<SparseVec<F>> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

// Basis of Gamma(I, F)_degree as the exact kernel of the edge-compatibility
// system.
template <class F>
SectionSlice<F> sections_slice(const Sheaf<F>& s, const std::vector<int>& I, int degree) {
  SectionSlice<F> out;
  out.layout = build_section_layout(s, I, degree);
  auto rows = section_constraints(s, out.layout);
  out.basis = kernel_basis(s.field, rows, out.layout.ncols);
  return out;
}

// dim Gamma(I, F)_d for d = 0, 2, ..., d_max.
template <class F>
std::vector<long long> hilbert_series(const Sheaf<F>& s, const std::vector<int>& I, int d_max) {
  std::vector<long long> dims;
  for (int d = 0; d <= d_max; d += 2) dims.push_back(sections_slice(s, I, d).dim());
  return dims;
}

// Re-derives every edge equation of a section directly with polynomial
// arithmetic; used as a post-hoc soundness check on solver output.
template <class F>
bool check_section(const Sheaf<F>& s, const SectionLayout<F>& L, const SparseVec<F>& vec) {
  const F& f = s.field;
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    const auto& edge = s.graph.edges[e];
    if (L.vert_pos[edge.tail] < 0 || L.vert_pos[edge.head] < 0) continue;
    for (std::size_t i = 0; i < s.stalk[edge.head].size(); ++i) {
      Poly<F> lhs;
      for (std::size_t j = 0; j < s.stalk[edge.tail].size(); ++j) {
        Poly<F> pj = section_component(f, L, vec, edge.tail, static_cast<int>(j));
        lhs = poly_add(f, lhs, poly_mul(f, s.rho[e][i][j], pj));
      }
      Poly<F> rhs = section_component(f, L, vec, edge.head, static_cast<int>(i));
      Poly<F> diff = reduce_mod_linear(f, poly_sub(f, lhs, rhs), edge.label);
      if (!diff.is_zero()) return false;
    }
  }
  return true;
}

// Coordinates of a degree slice of the sum of edge modules over the edges
// pointing up from one vertex.
template <class F>
struct EdgeLayout {
  int degree = 0;
  int vertex = -1;
  struct Block {
    int edge = -1, gen = -1, offset = 0, pivot = -1;
    std::vector<Mono> cmonos;
  };
  std::vector<Block> blocks;
  int ncols = 0;
};

template <class F>
EdgeLayout<F> build_edge_layout(const Sheaf<F>& s, int x, int degree) {
  EdgeLayout<F> L;
  L.degree = degree;
  L.vertex = x;
  for (int e : s.graph.up_edges(x)) {
    const auto& edge = s.graph.edges[e];
    int piv = pivot_index(s.field, edge.label);
    if (piv < 0) throw std::domain_error("edge layout: label vanishes over " + s.field.name());
    for (std::size_t i = 0; i < s.stalk[edge.head].size(); ++i) {
      typename EdgeLayout<F>::Block b;
      b.edge = e;
      b.gen = static_cast<int>(i);
      b.offset = L.ncols;
      b.pivot = piv;
      int cdeg = degree - s.stalk[edge.head][i];
      if (cdeg >= 0 && cdeg % 2 == 0) b.cmonos = monomial_basis_avoiding(cdeg, s.rank(), piv);
      L.ncols += static_cast<int>(b.cmonos.size());
      L.blocks.push_back(std::move(b));
    }
  }
  return L;
}

template <class F>
SparseVec<F> scatter_edge_poly(const F&, const EdgeLayout<F>& L, std::size_t block_idx,
                               const Poly<F>& p) {
  const auto& b = L.blocks[block_idx];
  SparseVec<F> out;
  for (const auto& t : p.terms) {
    int pos = detail::mono_position(b.cmonos, t.m);
    if (pos < 0) throw std::logic_error("scatter_edge_poly: monomial outside canonical slice");
    out.emplace_back(b.offset + pos, t.c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  return out;
}

template <class F>
Poly<F> edge_block_poly(const F&, const EdgeLayout<F>& L, std::size_t block_idx,
                        const SparseVec<F>& vec) {
  const auto& b = L.blocks[block_idx];
  std::vector<typename Poly<F>::Term> terms;
  auto lo = std::lower_bound(vec.begin(), vec.end(), b.offset,
                             [](const auto& a, int c) { return a.first < c; });
  for (auto it = lo; it != vec.end() && it->first < b.offset + static_cast<int>(b.cmonos.size());
       ++it)
    terms.push_back({b.cmonos[it->first - b.offset], it->second});
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& c) { return a.m > c.m; });
  Poly<F> p;
  p.terms = std::move(terms);
  return p;
}

// u_x: image of a section over {> x} in the sum of upward edge modules; the
// component at edge x -> y is the canonical quotient of the section value at y.
template <class F>
SparseVec<F> u_image(const Sheaf<F>& s, const SectionLayout<F>& SL, const SparseVec<F>& sec,
                     const EdgeLayout<F>& EL) {
  const F& f = s.field;
  std::vector<std::pair<int, typename F::Elem>> acc;
  for (std::size_t bi = 0; bi < EL.blocks.size(); ++bi) {
    const auto& b = EL.blocks[bi];
    const auto& edge = s.graph.edges[b.edge];
    Poly<F> p = section_component(f, SL, sec, edge.head, b.gen);
    if (p.is_zero()) continue;
    Poly<F> red = reduce_mod_linear(f, p, edge.label);
    for (const auto& [idx, val] : scatter_edge_poly(f, EL, bi, red)) acc.emplace_back(idx, val);
  }
  return detail::combine_row(f, acc);
}

// d_x applied to (monomial * generator) for every stalk generator of x and
// every monomial of complementary degree; spans the degree slice of im(d_x).
template <class F>
std::vector<SparseVec<F>> dx_image_vectors(const Sheaf<F>& s, int x, const EdgeLayout<F>& EL) {
  const F& f = s.field;
  std::vector<SparseVec<F>> out;
  for (std::size_t j = 0; j < s.stalk[x].size(); ++j) {
    int mdeg = EL.degree - s.stalk[x][j];
    if (mdeg < 0 || mdeg % 2 != 0) continue;
    for (Mono m : monomial_basis(mdeg, s.rank())) {
      std::vector<std::pair<int, typename F::Elem>> acc;
      for (std::size_t bi = 0; bi < EL.blocks.size(); ++bi) {
        const auto& b = EL.blocks[bi];
        const auto& edge = s.graph.edges[b.edge];
        const Poly<F>& entry = s.rho[b.edge][b.gen][j];
        if (entry.is_zero()) continue;
        Poly<F> red = reduce_mod_linear(f, poly_mul_mono(f, entry, m), edge.label);
        for (const auto& [idx, val] : scatter_edge_poly(f, EL, bi, red)) acc.emplace_back(idx, val);
      }
      out.push_back(detail::combine_row(f, acc));
    }
  }
  return out;
}

struct FlabbyReport {
  bool flabby = true;
  int witness_vertex = -1;
  int witness_degree = -1;
};

// Flabbiness criterion: for every vertex x and degree slice, the image of
// sections over {> x} in the upward edge modules must lie in the image of d_x.
template <class F>
FlabbyReport is_flabby(const Sheaf<F>& s, int d_max) {
  FlabbyReport rep;
  for (int x = 0; x < s.graph.vertex_count(); ++x) {
    std::vector<int> above = s.graph.strictly_above(x);
    if (above.empty()) continue;
    for (int d = 0; d <= d_max; d += 2) {
      EdgeLayout<F> EL = build_edge_layout(s, x, d);
      SectionSlice<F> sl = sections_slice(s, above, d);
      if (sl.dim() == 0) continue;
      RowSpan<F> dx_span(s.field, EL.ncols);
      for (auto& v : dx_image_vectors(s, x, EL)) dx_span.add(std::move(v));
      for (const auto& sec : sl.basis) {
        SparseVec<F> u = u_image(s, sl.layout, sec, EL);
        if (!dx_span.contains(u)) {
          rep.flabby = false;
          rep.witness_vertex = x;
          rep.witness_degree = d;
          return rep;
        }
      }
    }
  }
  return rep;
}

// Structure algebra element: one polynomial per vertex, congruent along every
// edge modulo its label.
template <class F>
struct StructElem {
  std::vector<Poly<F>> z;
};

template <class F>
bool is_structure_element(const F& f, const StructElem<F>& z, const MomentGraph& g) {
  if (static_cast<int>(z.z.size()) != g.vertex_count()) return false;
  for (const auto& e : g.edges) {
    Poly<F> diff = poly_sub(f, z.z[e.tail], z.z[e.head]);
    if (!reduce_mod_linear(f, diff, e.label).is_zero()) return false;
  }
  return true;
}

// c_s: component at vertex x is the degree-2 polynomial x(alphacheck_s).
template <class F>
StructElem<F> cs_element(const F& f, const WeylGroup& W, const MomentGraph& g, int s) {
  if (s < 0 || s >= W.rank()) throw std::invalid_argument("cs_element: bad simple index");
  StructElem<F> out;
  IntVec alpha_check(W.rank(), 0);
  alpha_check[s] = 1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int elt = g.vertices[v].elt;
    if (elt < 0) throw std::invalid_argument("cs_element: vertex without group element");
    out.z.push_back(poly_from_lattice(f, W.coroot_matrix(WeylElt{elt}).apply(alpha_check)));
  }
  if (!is_structure_element(f, out, g))
    throw std::logic_error("cs_element: computed tuple is not in the structure algebra");
  return out;
}

// Componentwise action of a homogeneous structure algebra element on a
// section; the result is a section of degree (deg in + deg z).
template <class F>
SparseVec<F> act_structure(const Sheaf<F>& s, const SectionLayout<F>& Lin, const SparseVec<F>& sec,
                           const StructElem<F>& z, const SectionLayout<F>& Lout) {
  const F& f = s.field;
  std::vector<std::pair<int, typename F::Elem>> acc;
  for (int pos = 0; pos < static_cast<int>(Lin.verts.size()); ++pos) {
    int v = Lin.verts[pos];
    for (int j = Lin.first_block[pos]; j < Lin.first_block[pos + 1]; ++j) {
      const auto& bin = Lin.blocks[j];
      Poly<F> p = section_component(f, Lin, sec, v, bin.gen);
      if (p.is_zero()) continue;
      Poly<F> q = poly_mul(f, z.z[v], p);
      int opos = Lout.vert_pos[v];
      const auto& bout = Lout.blocks[Lout.first_block[opos] + bin.gen];
      for (const auto& t : q.terms) {
        int mp = detail::mono_position(bout.monos, t.m);
        if (mp < 0) throw std::logic_error("act_structure: degree mismatch");
        acc.emplace_back(bout.offset + mp, t.c);
      }
    }
  }
  return detail::combine_row(f, acc);
}

// Pullback along a validated k-homomorphism, normal form preserved: stalks
// are copied from image vertices, restriction matrices are twisted by the
// inverse lattice maps and re-reduced; collapsed edges become canonical
// quotients (identity matrices).
template <class F>
Sheaf<F> pullback(const F& f, const MGMorphism& m, const Sheaf<F>& src, const MomentGraph& dom) {
  MorphismReport rep = validate_morphism(f, m, dom, src.graph, false);
  if (!rep.ok)
    throw std::invalid_argument("pullback: invalid morphism: " + rep.violations.front());
  Sheaf<F> out{dom, f, {}, {}};
  out.stalk.resize(dom.vertex_count());
  for (int v = 0; v < dom.vertex_count(); ++v) out.stalk[v] = src.stalk[m.vertex_map[v]];
  out.rho.resize(dom.edge_count());
  for (int e = 0; e < dom.edge_count(); ++e) {
    const auto& edge = dom.edges[e];
    int fx = m.vertex_map[edge.tail], fy = m.vertex_map[edge.head];
    std::size_t nrows = out.stalk[edge.head].size(), ncols = out.stalk[edge.tail].size();
    out.rho[e].assign(nrows, std::vector<Poly<F>>(ncols));
    if (fx == fy) {
      // collapsed edge: module is the stalk mod label, both restrictions the
      // canonical quotient
      for (std::size_t i = 0; i < nrows && i < ncols; ++i) out.rho[e][i][i] = poly_one(f);
    } else {
      int ep = find_edge(src.graph, fx, fy);
      if (ep < 0) throw std::logic_error("pullback: mapped edge missing");
      FieldMat<F> sigma_inv =
          field_mat_inverse(f, FieldMat<F>::from_int_mat(f, m.lattice_autos[edge.tail]));
      for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j)
          out.rho[e][i][j] = reduce_mod_linear(
              f, twist_by_automorphism(f, src.rho[ep][i][j], sigma_inv), edge.label);
    }
  }
  return out;
}

// Induced sheaf on a vertex subset.
template <class F>
Sheaf<F> restrict_sheaf(const Sheaf<F>& s, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  Sheaf<F> out{restrict_graph(s.graph, keep), s.field, {}, {}};
  for (int v : keep) out.stalk.push_back(s.stalk[v]);
  // surviving edges keep their matrices; restrict_graph preserves edge order
  std::vector<int> new_index(s.graph.vertex_count(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) new_index[keep[i]] = static_cast<int>(i);
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    const auto& edge = s.graph.edges[e];
    if (new_index[edge.tail] >= 0 && new_index[edge.head] >= 0) out.rho.push_back(s.rho[e]);
  }
  return out;
}

template <class F>
nlohmann::ordered_json poly_to_json(const F& f, const Poly<F>& p, int rank) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : p.terms)
    terms.push_back({{"exponents", mono_exponents(t.m, rank)},
                     {"numerator", f.numerator_str(t.c)},
                     {"denominator", f.denominator_str(t.c)}});
  return terms;
}

template <class F>
nlohmann::ordered_json sheaf_to_json(const Sheaf<F>& s) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["field"] = s.field.name();
  j["rank"] = s.rank();
  j["stalks"] = nlohmann::ordered_json::array();
  for (int v = 0; v < s.graph.vertex_count(); ++v)
    j["stalks"].push_back({{"vertex", s.graph.vertices[v].id}, {"degrees", s.stalk[v]}});
  j["edges"] = nlohmann::ordered_json::array();
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    const auto& edge = s.graph.edges[e];
    nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
    for (const auto& row : s.rho[e]) {
      nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
      for (const auto& p : row) jrow.push_back(poly_to_json(s.field, p, s.rank()));
      matrix.push_back(jrow);
    }
    j["edges"].push_back({{"tail", s.graph.vertices[edge.tail].id},
                          {"head", s.graph.vertices[edge.head].id},
                          {"label", edge.label},
                          {"degrees", s.stalk[edge.head]},
                          {"restriction", matrix}});
  }
  return j;
}

}  // namespace mgkl
