#pragma once

#include <string>
#include <vector>

#include "mgkl/coxeter.hpp"
#include "mgkl/linalg.hpp"
#include "mgkl/moment_graph.hpp"

namespace mgkl {

// k-homomorphism of moment graphs: an order map of vertex sets plus one
// lattice automorphism per vertex. Validity over a given field is checked by
// validate_morphism, never assumed.
struct MGMorphism {
  std::vector<int> vertex_map;        // domain vertex index -> codomain vertex index
  std::vector<IntMat> lattice_autos;  // per domain vertex
};

struct MorphismReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string msg) {
    ok = false;
    violations.push_back(std::move(msg));
  }
};

// Finds the codomain edge tail->head, -1 if absent.
inline int find_edge(const MomentGraph& g, int tail, int head) {
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edges[e].tail == tail && g.edges[e].head == head) return e;
  return -1;
}

template <class F>
MorphismReport validate_morphism(const F& f, const MGMorphism& m, const MomentGraph& g,
                                 const MomentGraph& gp, bool require_iso = false) {
  MorphismReport rep;
  int n = g.vertex_count();
  if (static_cast<int>(m.vertex_map.size()) != n ||
      static_cast<int>(m.lattice_autos.size()) != n) {
    rep.fail("vertex map / lattice automorphism count does not match domain");
    return rep;
  }
  for (int v = 0; v < n; ++v)
    if (m.vertex_map[v] < 0 || m.vertex_map[v] >= gp.vertex_count()) {
      rep.fail("vertex map image out of range at " + g.vertices[v].id);
      return rep;
    }

  // Each f_{l,x} must be a k-automorphism of Y_k.
  for (int v = 0; v < n; ++v)
    if (!field_mat_invertible(f, FieldMat<F>::from_int_mat(f, m.lattice_autos[v])))
      rep.fail("lattice map at " + g.vertices[v].id + " not invertible over " + f.name());

  // MORPH1: order preservation, and edges either collapse or map to edges.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.leq(a, b) && !gp.leq(m.vertex_map[a], m.vertex_map[b]))
        rep.fail("MORPH1: order not preserved on (" + g.vertices[a].id + ", " + g.vertices[b].id + ")");
  for (const auto& e : g.edges) {
    int fx = m.vertex_map[e.tail], fy = m.vertex_map[e.head];
    if (fx == fy) continue;
    if (find_edge(gp, fx, fy) < 0)
      rep.fail("MORPH1: edge " + g.vertices[e.tail].id + "--" + g.vertices[e.head].id +
               " maps to a non-edge");
  }

  auto apply_over_field = [&](const IntMat& mat, const IntVec& v) {
    std::vector<typename F::Elem> out(mat.n, f.zero());
    for (int i = 0; i < mat.n; ++i)
      for (int j = 0; j < mat.n; ++j)
        out[i] = f.add(out[i], f.mul(f.from_int(static_cast<long>(mat(i, j))),
                                     f.from_int(static_cast<long>(v[j]))));
    return out;
  };
  auto proportional = [&](const std::vector<typename F::Elem>& u,
                          const std::vector<typename F::Elem>& v) {
    // u = h * v for some h (possibly 0) over the field
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        auto minor = f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
        if (!f.is_zero(minor)) return false;
      }
    return true;
  };

  // MORPH2 on non-collapsed edges.
  for (const auto& e : g.edges) {
    int fx = m.vertex_map[e.tail], fy = m.vertex_map[e.head];
    if (fx == fy) continue;
    int ep = find_edge(gp, fx, fy);
    if (ep < 0) continue;  // reported above
    const IntVec& lab = gp.edges[ep].label;
    bool label_nonzero = false;
    std::vector<typename F::Elem> labk(lab.size(), f.zero());
    for (std::size_t i = 0; i < lab.size(); ++i) {
      labk[i] = f.from_int(static_cast<long>(lab[i]));
      if (!f.is_zero(labk[i])) label_nonzero = true;
    }
    if (!label_nonzero) {
      rep.fail("MORPH2: image edge label vanishes over " + f.name() + " at " +
               gp.vertices[fx].id + "--" + gp.vertices[fy].id);
      continue;
    }
    // MORPH2a at both boundary vertices: f_{l,x}(l(E)) = h * l'(f(E)), h a unit.
    for (int side : {e.tail, e.head}) {
      auto img = apply_over_field(m.lattice_autos[side], e.label);
      bool img_nonzero = false;
      for (const auto& c : img)
        if (!f.is_zero(c)) img_nonzero = true;
      if (!img_nonzero || !proportional(img, labk))
        rep.fail("MORPH2a: label of " + g.vertices[e.tail].id + "--" + g.vertices[e.head].id +
                 " not carried to a unit multiple (side " + g.vertices[side].id + ")");
    }
    // MORPH2b: the two automorphisms agree modulo the image label.
    for (int col = 0; col < g.rank; ++col) {
      IntVec basis(g.rank, 0);
      basis[col] = 1;
      auto ax = apply_over_field(m.lattice_autos[e.tail], basis);
      auto ay = apply_over_field(m.lattice_autos[e.head], basis);
      std::vector<typename F::Elem> diff(ax.size());
      for (std::size_t i = 0; i < ax.size(); ++i) diff[i] = f.sub(ax[i], ay[i]);
      bool diff_zero = true;
      for (const auto& c : diff)
        if (!f.is_zero(c)) diff_zero = false;
      if (!diff_zero && !proportional(diff, labk))
        rep.fail("MORPH2b: automorphisms disagree mod label on edge " + g.vertices[e.tail].id +
                 "--" + g.vertices[e.head].id);
    }
  }

  if (require_iso) {
    // ISO1: poset isomorphism.
    std::vector<int> hit(gp.vertex_count(), 0);
    for (int v = 0; v < n; ++v) hit[m.vertex_map[v]]++;
    if (n != gp.vertex_count()) rep.fail("ISO1: vertex counts differ");
    for (int u = 0; u < gp.vertex_count(); ++u)
      if (hit[u] != 1) {
        rep.fail("ISO1: vertex map not bijective");
        break;
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (gp.leq(m.vertex_map[a], m.vertex_map[b]) && !g.leq(a, b))
          rep.fail("ISO1: inverse map not order preserving at (" + g.vertices[a].id + ", " +
                   g.vertices[b].id + ")");
    // ISO2: each codomain edge hit by exactly one domain edge.
    for (int ep = 0; ep < gp.edge_count(); ++ep) {
      int count = 0;
      for (const auto& e : g.edges)
        if (m.vertex_map[e.tail] == gp.edges[ep].tail && m.vertex_map[e.head] == gp.edges[ep].head)
          ++count;
      if (count != 1)
        rep.fail("ISO2: codomain edge " + gp.vertices[gp.edges[ep].tail].id + "--" +
                 gp.vertices[gp.edges[ep].head].id + " hit " + std::to_string(count) + " times");
    }
  }
  return rep;
}

// The anti-involution x -> x^{-1} as a moment graph morphism between two
// Bruhat(-derived) graphs whose vertices carry group elements; the lattice
// map at x is the coroot action of x^{-1}.
inline MGMorphism inverse_automorphism(const WeylGroup& W, const MomentGraph& dom,
                                       const MomentGraph& cod) {
  MGMorphism m;
  for (int v = 0; v < dom.vertex_count(); ++v) {
    WeylElt x{dom.vertices[v].elt};
    if (x.id < 0) throw std::invalid_argument("inverse_automorphism: vertex without group element");
    WeylElt xi = W.inverse(x);
    int img = -1;
    for (int u = 0; u < cod.vertex_count(); ++u)
      if (cod.vertices[u].elt == xi.id) img = u;
    if (img < 0)
      throw std::invalid_argument("inverse_automorphism: image of " + W.display(x) +
                                  " missing from codomain");
    m.vertex_map.push_back(img);
    m.lattice_autos.push_back(W.coroot_matrix(xi));
  }
  return m;
}

// x -> x*s between interval graphs [y,w] -> [ys,ws] (requires y <= w, ws < w,
// y not<= ws); all lattice maps the identity, labels preserved exactly.
inline MGMorphism right_mult_isomorphism(const WeylGroup& W, const MomentGraph& dom,
                                         const MomentGraph& cod, int s) {
  MGMorphism m;
  for (int v = 0; v < dom.vertex_count(); ++v) {
    WeylElt x{dom.vertices[v].elt};
    if (x.id < 0) throw std::invalid_argument("right_mult_isomorphism: vertex without group element");
    WeylElt xs = W.rmult(x, s);
    int img = -1;
    for (int u = 0; u < cod.vertex_count(); ++u)
      if (cod.vertices[u].elt == xs.id) img = u;
    if (img < 0)
      throw std::invalid_argument("right_mult_isomorphism: image of " + W.display(x) +
                                  " missing from codomain");
    m.vertex_map.push_back(img);
    m.lattice_autos.push_back(IntMat::identity(W.rank()));
  }
  return m;
}

}  // namespace mgkl
