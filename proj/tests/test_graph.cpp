#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "mgkl/moment_graph.hpp"
#include "mgkl/morphism.hpp"

using namespace mgkl;

namespace {

std::map<std::pair<std::string, std::string>, IntVec> edge_map(const MomentGraph& g) {
  std::map<std::pair<std::string, std::string>, IntVec> m;
  for (const auto& e : g.edges)
    m[{g.vertices[e.tail].id, g.vertices[e.head].id}] = e.label;
  return m;
}

}  // namespace

TEST_CASE("A2 Bruhat graph: full edge list with labels") {
  WeylGroup W = WeylGroup::make("A2");
  MomentGraph g = bruhat_graph(W);
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 9);
  auto edges = edge_map(g);
  CHECK(edges.at({"e", "1"}) == IntVec{1, 0});
  CHECK(edges.at({"e", "2"}) == IntVec{0, 1});
  CHECK(edges.at({"e", "121"}) == IntVec{1, 1});
  CHECK(edges.at({"1", "21"}) == IntVec{0, 1});
  CHECK(edges.at({"1", "12"}) == IntVec{1, 1});
  CHECK(edges.at({"2", "12"}) == IntVec{1, 0});
  CHECK(edges.at({"2", "21"}) == IntVec{1, 1});
  CHECK(edges.at({"12", "121"}) == IntVec{0, 1});
  CHECK(edges.at({"21", "121"}) == IntVec{1, 0});
  validate_graph(g);
}

TEST_CASE("edge counts and length parity for the regular graph") {
  for (const char* type : {"A2", "B2", "A3", "G2"}) {
    WeylGroup W = WeylGroup::make(type);
    MomentGraph g = bruhat_graph(W);
    INFO(type);
    CHECK(g.edge_count() ==
          static_cast<int>(W.reflections().size()) * W.size() / 2);
    for (const auto& e : g.edges)
      CHECK((g.vertices[e.head].length - g.vertices[e.tail].length) % 2 == 1);
  }
}

TEST_CASE("parabolic Bruhat graph for A2, J={s1}") {
  WeylGroup W = WeylGroup::make("A2");
  MomentGraph g = bruhat_graph(W, {0});
  REQUIRE(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  auto edges = edge_map(g);
  CHECK(edges.at({"e", "2"}) == IntVec{0, 1});
  CHECK(edges.at({"2", "12"}) == IntVec{1, 0});
  CHECK(edges.at({"e", "12"}) == IntVec{1, 1});
}

TEST_CASE("vertex order in the graph is the Bruhat order") {
  WeylGroup W = WeylGroup::make("A3");
  for (const std::vector<int>& J : std::vector<std::vector<int>>{{}, {0, 2}}) {
    MomentGraph g = bruhat_graph(W, J);
    for (int a = 0; a < g.vertex_count(); ++a)
      for (int b = 0; b < g.vertex_count(); ++b)
        CHECK(g.leq(a, b) ==
              W.leq(WeylElt{g.vertices[a].elt}, WeylElt{g.vertices[b].elt}));
  }
}

TEST_CASE("restriction") {
  WeylGroup W = WeylGroup::make("A2");
  MomentGraph g = bruhat_graph(W);
  std::vector<int> all;
  for (int v = 0; v < g.vertex_count(); ++v) all.push_back(v);
  MomentGraph same = restrict_graph(g, all);
  CHECK(same.vertex_count() == 6);
  CHECK(same.edge_count() == 9);

  MomentGraph low = lower_restriction(g, g.find_vertex("12"));
  CHECK(low.vertex_count() == 4);
  CHECK(low.edge_count() == 4);

  MomentGraph single = restrict_graph(g, {g.find_vertex("121")});
  CHECK(single.vertex_count() == 1);
  CHECK(single.edge_count() == 0);
  CHECK(single.unique_max() == 0);
}

TEST_CASE("k-moment graph and GKM audits") {
  FieldSpec Q = FieldSpec::rational(), F3 = FieldSpec::prime(3), F5 = FieldSpec::prime(5);

  for (const char* type : {"A2", "A3"}) {
    MomentGraph g = bruhat_graph(WeylGroup::make(type));
    INFO(type);
    CHECK(is_k_moment_graph(g, F3));
    CHECK(is_gkm_pair(g, Q).gkm);
    CHECK(is_gkm_pair(g, F3).gkm);
    CHECK(is_gkm_pair(g, F5).gkm);
  }

  MomentGraph b2 = bruhat_graph(WeylGroup::make("B2"));
  CHECK(is_gkm_pair(b2, F3).gkm);
  CHECK(is_gkm_pair(b2, F5).gkm);

  MomentGraph g2 = bruhat_graph(WeylGroup::make("G2"));
  CHECK(is_gkm_pair(g2, Q).gkm);
  auto rep3 = is_gkm_pair(g2, F3);
  CHECK_FALSE(rep3.gkm);
  CHECK_FALSE(rep3.violations.empty());
  CHECK(is_k_moment_graph(g2, F3));  // labels stay nonzero, independence fails
  CHECK(is_gkm_pair(g2, F5).gkm);

  // GKM is inherited by induced subgraphs
  auto sub = lower_restriction(g2, g2.vertex_count() - 2);
  if (is_gkm_pair(g2, F5).gkm) CHECK(is_gkm_pair(sub, F5).gkm);
}

TEST_CASE("identity morphism validates") {
  WeylGroup W = WeylGroup::make("A2");
  MomentGraph g = bruhat_graph(W);
  MGMorphism id;
  for (int v = 0; v < g.vertex_count(); ++v) {
    id.vertex_map.push_back(v);
    id.lattice_autos.push_back(IntMat::identity(2));
  }
  RationalField Q;
  auto rep = validate_morphism(Q, id, g, g, true);
  CHECK(rep.ok);
}

TEST_CASE("inverse anti-involution is a k-automorphism for several k") {
  for (const char* type : {"A2", "A3", "B2"}) {
    WeylGroup W = WeylGroup::make(type);
    MomentGraph g = bruhat_graph(W);
    MGMorphism m = inverse_automorphism(W, g, g);
    INFO(type);
    CHECK(validate_morphism(RationalField{}, m, g, g, true).ok);
    CHECK(validate_morphism(PrimeField{3}, m, g, g, true).ok);
    CHECK(validate_morphism(PrimeField{5}, m, g, g, true).ok);
    // fixes involutions, sends 12 to 21 in A2
    if (std::string(type) == "A2") {
      int v12 = g.find_vertex("12"), v21 = g.find_vertex("21");
      CHECK(m.vertex_map[v12] == v21);
      CHECK(m.vertex_map[g.find_vertex("e")] == g.find_vertex("e"));
      CHECK(m.vertex_map[g.find_vertex("121")] == g.find_vertex("121"));
    }
  }
}

TEST_CASE("right multiplication isomorphism validates on every admissible triple") {
  for (const char* type : {"A3", "B2"}) {
    WeylGroup W = WeylGroup::make(type);
    MomentGraph full = bruhat_graph(W);
    RationalField Q;
    long triples = 0;
    for (WeylElt w : W.all_sorted())
      for (int s = 0; s < W.rank(); ++s) {
        if (!W.right_descent(w, s)) continue;
        WeylElt ws = W.rmult(w, s);
        for (WeylElt y : W.all_sorted()) {
          if (!W.leq(y, w) || W.leq(y, ws)) continue;
          ++triples;
          WeylElt ys = W.rmult(y, s);
          std::vector<int> dom, cod;
          for (int v = 0; v < full.vertex_count(); ++v) {
            WeylElt x{full.vertices[v].elt};
            if (W.leq(y, x) && W.leq(x, w)) dom.push_back(v);
            if (W.leq(ys, x) && W.leq(x, ws)) cod.push_back(v);
          }
          MomentGraph gd = restrict_graph(full, dom), gc = restrict_graph(full, cod);
          CHECK(gd.vertex_count() == gc.vertex_count());  // order isomorphism
          MGMorphism m = right_mult_isomorphism(W, gd, gc, s);
          auto rep = validate_morphism(Q, m, gd, gc, true);
          INFO("y=" << W.display(y) << " w=" << W.display(w) << " s=" << s + 1);
          CHECK(rep.ok);
          // labels preserved exactly
          for (const auto& e : gd.edges) {
            int ep = find_edge(gc, m.vertex_map[e.tail], m.vertex_map[e.head]);
            REQUIRE(ep >= 0);
            CHECK(gc.edges[ep].label == e.label);
          }
        }
      }
    INFO(type);
    CHECK(triples > 0);
  }
}

TEST_CASE("collapsing morphism obeys the collapse clause") {
  // two comparable vertices with one edge mapping onto a single vertex
  MomentGraph dom;
  dom.rank = 2;
  dom.vertices = {{"a", "a", 0, -1}, {"b", "b", 1, -1}};
  dom.init_below(2);
  dom.set_leq(0, 1);
  dom.edges = {{0, 1, IntVec{1, 0}}};
  MomentGraph cod;
  cod.rank = 2;
  cod.vertices = {{"pt", "pt", 0, -1}};
  cod.init_below(1);
  MGMorphism m;
  m.vertex_map = {0, 0};
  m.lattice_autos = {IntMat::identity(2), IntMat::identity(2)};
  RationalField Q;
  CHECK(validate_morphism(Q, m, dom, cod, false).ok);
}

TEST_CASE("dot export") {
  WeylGroup W = WeylGroup::make("A2");
  MomentGraph g = bruhat_graph(W);
  std::string dot = to_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"e\" -> \"121\" [label=\"[1,1]\"]") != std::string::npos);

  MomentGraph single = restrict_graph(g, {0});
  std::string sdot = to_dot(single);
  CHECK(sdot.find("\"e\"") != std::string::npos);
  CHECK(sdot.find("->") == std::string::npos);
}

TEST_CASE("json round trip is byte identical") {
  WeylGroup W = WeylGroup::make("B2");
  MomentGraph g = bruhat_graph(W, {1});
  std::string once = graph_to_json(g).dump(2);
  MomentGraph loaded = graph_from_json(nlohmann::json::parse(once));
  std::string twice = graph_to_json(loaded).dump(2);
  CHECK(once == twice);
  CHECK(loaded.vertex_count() == g.vertex_count());
  CHECK(loaded.edge_count() == g.edge_count());
}

TEST_CASE("graph validation rejects malformed data") {
  MomentGraph g;
  g.rank = 2;
  g.vertices = {{"a", "a", 0, -1}, {"b", "b", 1, -1}};
  g.init_below(2);
  g.set_leq(0, 1);
  g.edges = {{0, 1, IntVec{0, 0}}};  // zero label
  CHECK_THROWS_AS(validate_graph(g), std::invalid_argument);
  g.edges = {{1, 0, IntVec{1, 0}}};  // tail not below head
  CHECK_THROWS_AS(validate_graph(g), std::invalid_argument);
  g.edges = {{0, 1, IntVec{1, 0}}, {0, 1, IntVec{0, 1}}};  // multiple edges
  CHECK_THROWS_AS(validate_graph(g), std::invalid_argument);
}
