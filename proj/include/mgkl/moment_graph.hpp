#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mgkl/coxeter.hpp"
#include "mgkl/field.hpp"
#include "mgkl/intmat.hpp"

namespace mgkl {

// Moment graph on the coroot lattice: ordered acyclic graph, at most one edge
// per vertex pair, labels nonzero integer lattice vectors, tail below head.
// The order relation is stored transitively closed; section computations
// query it constantly.
struct MomentGraph {
  struct Vertex {
    std::string id;    // stable display id ("e" for the identity)
    std::string word;  // reduced word, empty for the identity
    int length = 0;
    int elt = -1;      // WeylElt id when Bruhat-derived, else -1
  };
  struct Edge {
    int tail = -1, head = -1;
    IntVec label;
  };

  int rank = 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  // below[v] = bitset over vertex indices u with u <= v (reflexive).
  std::vector<std::vector<std::uint64_t>> below;

  bool leq(int u, int v) const {
    return (below[v][static_cast<std::size_t>(u) >> 6] >> (u & 63)) & 1;
  }
  bool lt(int u, int v) const { return u != v && leq(u, v); }

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  int find_vertex(const std::string& id) const {
    for (int i = 0; i < vertex_count(); ++i)
      if (vertices[i].id == id) return i;
    return -1;
  }

  // Edges with tail v, by edge index.
  std::vector<int> up_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < edge_count(); ++e)
      if (edges[e].tail == v) out.push_back(e);
    return out;
  }

  std::vector<int> incident_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < edge_count(); ++e)
      if (edges[e].tail == v || edges[e].head == v) out.push_back(e);
    return out;
  }

  std::vector<int> strictly_above(int v) const {
    std::vector<int> out;
    for (int u = 0; u < vertex_count(); ++u)
      if (u != v && leq(v, u)) out.push_back(u);
    return out;
  }

  // Index of the maximum vertex (every vertex below it), or -1.
  int unique_max() const {
    for (int v = 0; v < vertex_count(); ++v) {
      bool all = true;
      for (int u = 0; u < vertex_count(); ++u)
        if (!leq(u, v)) {
          all = false;
          break;
        }
      if (all) return v;
    }
    return -1;
  }

  void init_below(int n) {
    below.assign(n, std::vector<std::uint64_t>((static_cast<std::size_t>(n) + 63) / 64, 0));
    for (int v = 0; v < n; ++v) set_leq(v, v);
  }
  void set_leq(int u, int v) {
    below[v][static_cast<std::size_t>(u) >> 6] |= 1ull << (u & 63);
  }
};

inline void validate_graph(const MomentGraph& g) {
  int n = g.vertex_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && g.leq(a, b) && g.leq(b, a))
        throw std::invalid_argument("moment graph: order not antisymmetric");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.leq(a, b)) continue;
      for (int c = 0; c < n; ++c)
        if (g.leq(b, c) && !g.leq(a, c))
          throw std::invalid_argument("moment graph: order not transitive");
    }
  std::map<std::pair<int, int>, int> seen;
  for (const auto& e : g.edges) {
    if (e.tail == e.head) throw std::invalid_argument("moment graph: loop edge");
    if (!g.lt(e.tail, e.head)) throw std::invalid_argument("moment graph: edge tail not below head");
    if (is_zero(e.label)) throw std::invalid_argument("moment graph: zero label");
    auto key = std::minmax(e.tail, e.head);
    if (seen.count({key.first, key.second}))
      throw std::invalid_argument("moment graph: multiple edges between a vertex pair");
    seen[{key.first, key.second}] = 1;
  }
}

// Bruhat moment graph of W^J: vertices are the minimal coset representatives
// ordered by Bruhat order; x -> y is an edge when some reflection t satisfies
// t x in y W_J, labeled by the coroot of t. If two reflections connect the
// same pair with labels that are not rational multiples of each other, the
// construction aborts (the label would be ill-defined).
inline MomentGraph bruhat_graph(const WeylGroup& W, const std::vector<int>& J = {}) {
  MomentGraph g;
  g.rank = W.rank();
  ParabolicQuotient q = W.min_coset_reps(J);
  std::vector<int> vertex_of_elt(W.size(), -1);
  for (std::size_t i = 0; i < q.min_reps.size(); ++i) {
    WeylElt x = q.min_reps[i];
    g.vertices.push_back({W.display(x), W.word(x), W.length(x), x.id});
    vertex_of_elt[x.id] = static_cast<int>(i);
  }
  int n = g.vertex_count();
  g.init_below(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (W.leq(WeylElt{g.vertices[a].elt}, WeylElt{g.vertices[b].elt})) g.set_leq(a, b);

  std::map<std::pair<int, int>, std::pair<IntVec, int>> edge_label;  // (tail,head) -> (label, refl)
  const auto& refl = W.reflections();
  for (int v = 0; v < n; ++v) {
    WeylElt x{g.vertices[v].elt};
    for (std::size_t r = 0; r < refl.size(); ++r) {
      WeylElt y = W.project_to_min_rep(W.mult(refl[r].elt, x), J);
      int u = vertex_of_elt[y.id];
      if (u == v) continue;
      int tail = v, head = u;
      if (!g.lt(tail, head)) std::swap(tail, head);
      auto key = std::make_pair(tail, head);
      auto it = edge_label.find(key);
      if (it == edge_label.end()) {
        edge_label[key] = {refl[r].coroot, static_cast<int>(r)};
      } else if (it->second.second != static_cast<int>(r)) {
        // Well-defined only if the two coroots are proportional over Q.
        const IntVec& a = it->second.first;
        const IntVec& b = refl[r].coroot;
        bool proportional = true;
        for (int i = 0; i < g.rank && proportional; ++i)
          for (int j = i + 1; j < g.rank; ++j)
            if (a[i] * b[j] - a[j] * b[i] != 0) {
              proportional = false;
              break;
            }
        if (!proportional)
          throw std::runtime_error(
              "ambiguous parabolic edge label: vertices " + g.vertices[tail].id + " -- " +
              g.vertices[head].id + " reached by reflections " + W.display(refl[it->second.second].elt) +
              " and " + W.display(refl[r].elt));
      }
    }
  }
  for (const auto& [key, val] : edge_label)
    g.edges.push_back({key.first, key.second, val.first});
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
  return g;
}

// Induced subgraph on the given vertex indices (any order; sorted internally).
inline MomentGraph restrict_graph(const MomentGraph& g, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int v : keep)
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("restrict: bad vertex index");
  std::vector<int> new_index(g.vertex_count(), -1);
  MomentGraph r;
  r.rank = g.rank;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    new_index[keep[i]] = static_cast<int>(i);
    r.vertices.push_back(g.vertices[keep[i]]);
  }
  int n = r.vertex_count();
  r.init_below(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.leq(keep[a], keep[b])) r.set_leq(a, b);
  for (const auto& e : g.edges)
    if (new_index[e.tail] >= 0 && new_index[e.head] >= 0)
      r.edges.push_back({new_index[e.tail], new_index[e.head], e.label});
  return r;
}

// Restriction to {<= w} by vertex id.
inline MomentGraph lower_restriction(const MomentGraph& g, int w) {
  std::vector<int> keep;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.leq(v, w)) keep.push_back(v);
  return restrict_graph(g, keep);
}

inline bool is_k_moment_graph(const MomentGraph& g, const FieldSpec& k) {
  long p = k.characteristic();
  for (const auto& e : g.edges) {
    bool nonzero = false;
    for (auto c : e.label)
      if (p == 0 ? c != 0 : c % p != 0) nonzero = true;
    if (!nonzero) return false;
  }
  return true;
}

struct GkmViolation {
  int vertex = -1;
  int edge_a = -1, edge_b = -1;
};

struct GkmReport {
  bool gkm = true;
  std::vector<GkmViolation> violations;
};

// GKM pair test: at every vertex, any two distinct incident edges must carry
// labels linearly independent over k (2x2 minor scan, plus nonvanishing).
inline GkmReport is_gkm_pair(const MomentGraph& g, const FieldSpec& k) {
  long p = k.characteristic();
  auto dependent = [&](const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        long long m = a[i] * b[j] - a[j] * b[i];
        if (p == 0 ? m != 0 : m % p != 0) return false;
      }
    return true;
  };
  auto vanishes = [&](const IntVec& a) {
    for (auto c : a)
      if (p == 0 ? c != 0 : c % p != 0) return false;
    return true;
  };
  GkmReport rep;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> inc = g.incident_edges(v);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if (vanishes(g.edges[inc[i]].label)) {
        rep.gkm = false;
        rep.violations.push_back({v, inc[i], inc[i]});
      }
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        if (dependent(g.edges[inc[i]].label, g.edges[inc[j]].label)) {
          rep.gkm = false;
          rep.violations.push_back({v, inc[i], inc[j]});
        }
    }
  }
  return rep;
}

inline std::string label_to_string(const IntVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

inline std::string to_dot(const MomentGraph& g) {
  std::string out = "digraph moment_graph {\n  rankdir=BT;\n";
  for (const auto& v : g.vertices)
    out += "  \"" + v.id + "\" [label=\"" + v.id + " (" + std::to_string(v.length) + ")\"];\n";
  for (const auto& e : g.edges)
    out += "  \"" + g.vertices[e.tail].id + "\" -> \"" + g.vertices[e.head].id + "\" [label=\"" +
           label_to_string(e.label) + "\"];\n";
  out += "}\n";
  return out;
}

inline nlohmann::ordered_json graph_to_json(const MomentGraph& g) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["rank"] = g.rank;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices)
    j["vertices"].push_back({{"id", v.id}, {"word", v.word}, {"length", v.length}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"tail", g.vertices[e.tail].id},
                          {"head", g.vertices[e.head].id},
                          {"label", e.label}});
  j["order"] = nlohmann::ordered_json::array();
  for (int b = 0; b < g.vertex_count(); ++b)
    for (int a = 0; a < g.vertex_count(); ++a)
      if (g.lt(a, b)) j["order"].push_back({g.vertices[a].id, g.vertices[b].id});
  return j;
}

inline MomentGraph graph_from_json(const nlohmann::json& j) {
  MomentGraph g;
  g.rank = j.at("rank").get<int>();
  for (const auto& v : j.at("vertices"))
    g.vertices.push_back({v.at("id").get<std::string>(), v.at("word").get<std::string>(),
                          v.at("length").get<int>(), -1});
  int n = g.vertex_count();
  g.init_below(n);
  for (const auto& p : j.at("order")) {
    int a = g.find_vertex(p.at(0).get<std::string>());
    int b = g.find_vertex(p.at(1).get<std::string>());
    if (a < 0 || b < 0) throw std::invalid_argument("graph json: order references unknown vertex");
    g.set_leq(a, b);
  }
  for (const auto& e : j.at("edges")) {
    int t = g.find_vertex(e.at("tail").get<std::string>());
    int h = g.find_vertex(e.at("head").get<std::string>());
    if (t < 0 || h < 0) throw std::invalid_argument("graph json: edge references unknown vertex");
    g.edges.push_back({t, h, e.at("label").get<IntVec>()});
  }
  validate_graph(g);
  return g;
}

}  // namespace mgkl
