#include "doctest.h"

#include "gpk/catalog.hpp"
#include "gpk/corpus.hpp"
#include "gpk/error.hpp"
#include "gpk/eval.hpp"
#include "gpk/natives.hpp"
#include "gpk/parser.hpp"

using namespace gpk;

namespace {
IncidenceStructure undirected(const char* name) {
  return to_incidence(builtin_graph(name), VocabTag::graph2);
}
ElemMask mask_of(const IncidenceStructure& s,
                 std::initializer_list<const char*> ids) {
  ElemMask m = 0;
  for (const char* id : ids) m |= ElemMask{1} << s.index_of(id);
  return m;
}
}  // namespace

TEST_CASE("connectivity over an edge set, reflexive and monotone") {
  IncidenceStructure p3 = undirected("p3");
  int v1 = p3.index_of("v1"), v3 = p3.index_of("v3"), e1 = p3.index_of("e1");
  ElemMask all = mask_of(p3, {"e1", "e2"});
  CHECK(natives::connected(p3, all, v1, v3));
  CHECK_FALSE(natives::connected(p3, mask_of(p3, {"e1"}), v1, v3));
  CHECK(natives::connected(p3, 0, v1, v1));
  // an edge argument only connects when it lies in the set
  CHECK(natives::connected(p3, all, e1, v1));
  CHECK_FALSE(natives::connected(p3, mask_of(p3, {"e2"}), e1, v1));
}

TEST_CASE("cycle census: triangles yes, paths and single loops no") {
  IncidenceStructure c3 = undirected("c3");
  CHECK(natives::cycle(c3, mask_of(c3, {"e1", "e2", "e3"})));
  CHECK_FALSE(natives::cycle(c3, mask_of(c3, {"e1", "e2"})));
  IncidenceStructure loop = undirected("loop1");
  CHECK_FALSE(natives::cycle(loop, mask_of(loop, {"e1"})));
  IncidenceStructure dbl = undirected("k2-double");
  CHECK(natives::cycle(dbl, mask_of(dbl, {"e1", "e2"})));
  IncidenceStructure d2 =
      to_incidence(builtin_graph("d2cycle"), VocabTag::directed2);
  CHECK_THROWS_AS(natives::cycle(d2, 0), Error);
}

TEST_CASE("bridges are the edges whose removal disconnects their ends") {
  IncidenceStructure p3 = undirected("p3");
  CHECK(natives::bridge(p3, p3.index_of("e1")));
  IncidenceStructure c3 = undirected("c3");
  CHECK_FALSE(natives::bridge(c3, c3.index_of("e1")));
  IncidenceStructure loop = undirected("loop1");
  CHECK_FALSE(natives::bridge(loop, loop.index_of("e1")));
}

TEST_CASE("touching and component counts") {
  IncidenceStructure p3 = undirected("p3");
  ElemMask verts = all_vertices_mask(p3);
  ElemMask s1 = mask_of(p3, {"e1"});
  CHECK(natives::in_touching(p3, verts, s1, p3.index_of("v1")));
  CHECK(natives::in_touching(p3, verts, s1, p3.index_of("v2")));
  CHECK_FALSE(natives::in_touching(p3, verts, s1, p3.index_of("v3")));
  CHECK(natives::component_count(p3, s1) == 2);
  CHECK(natives::component_count(p3, 0) == 3);
  CHECK(natives::rank(p3, mask_of(p3, {"e1", "e2"})) == 2);
  CHECK(natives::rank(p3, 0) == 0);
}

TEST_CASE("last-in-component counts components of the chosen sort") {
  MultiGraph g = builtin_graph("p3");
  OrderedStructure m = ordered_incidence(g, VocabTag::graph2);
  std::vector<int> pos = m.positions();
  ElemMask verts = all_vertices_mask(m.s);
  ElemMask a = mask_of(m.s, {"e1"});
  int hits = 0;
  for (int x = 0; x < m.s.size(); ++x)
    if (natives::in_last_in_comp(m.s, pos, verts, a, x)) ++hits;
  CHECK(hits == natives::component_count(m.s, a));
  // edge census: every edge set S has as many S-last edges as components
  ElemMask s2 = mask_of(m.s, {"e1", "e2"});
  int edge_hits = 0;
  for (int x = 0; x < m.s.size(); ++x)
    if (natives::in_last_in_comp(m.s, pos, s2, s2, x)) ++edge_hits;
  CHECK(edge_hits == 1);
}

TEST_CASE("spanning forests and covers") {
  IncidenceStructure c3 = undirected("c3");
  CHECK(natives::spanning_forest(c3, mask_of(c3, {"e1", "e2"})));
  CHECK_FALSE(natives::spanning_forest(c3, mask_of(c3, {"e1", "e2", "e3"})));
  CHECK_FALSE(natives::spanning_forest(c3, mask_of(c3, {"e1"})));
  IncidenceStructure d3 =
      to_incidence(builtin_graph("dcycle3"), VocabTag::directed2);
  CHECK(natives::cycle_path_cover(d3, mask_of(d3, {"e1", "e2", "e3"})));
  CHECK(natives::cycle_path_cover(d3, mask_of(d3, {"e1"})));
  CHECK(natives::cycle_path_cover(d3, 0));
  IncidenceStructure dbl = [] {
    MultiGraph g;
    g.directed = true;
    g.vertices = {"u", "w"};
    g.edges = {{"e1", "u", "w"}, {"e2", "u", "w"}};
    return to_incidence(g, VocabTag::directed2);
  }();
  // two edges out of the same tail exceed the out-degree cap
  CHECK_FALSE(natives::cycle_path_cover(dbl, mask_of(dbl, {"e1", "e2"})));
}

TEST_CASE("model checking: quantifiers, counting, order") {
  IncidenceStructure k2 = undirected("k2");
  ParseCtx ctx;
  CHECK(models(k2, *parse_formula_text("(exists-exactly 2 v (rel PV v))")));
  CHECK_FALSE(
      models(k2, *parse_formula_text("(exists-exactly 3 v (rel PV v))")));
  CHECK(models(k2, *parse_formula_text(
                       "(forall (e) (implies (rel PE e)"
                       " (exists-exactly 2 v (rel N v e))))")));
  // O needs positions; edges-first puts every edge below every vertex
  FormulaPtr f = parse_formula_text(
      "(exists (x y) (and (rel PV x) (rel PE y) (rel O x y)))");
  OrderedStructure m = ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  std::vector<int> pos = m.positions();
  CHECK_FALSE(models(m.s, *f, &pos));
  std::vector<int> decl = {0, 1, 2};
  std::vector<int> decl_pos(3);
  for (int i = 0; i < 3; ++i) decl_pos[decl[static_cast<size_t>(i)]] = i;
  bool vertices_lead = m.s.is_vertex(0);
  CHECK(models(m.s, *f, &decl_pos) == vertices_lead);
}

TEST_CASE("second-order quantification starts from the empty relation") {
  IncidenceStructure k2 = undirected("k2");
  CHECK(models(k2, *parse_formula_text(
                       "(existsR R 1 (forall (x) (not (in x R))))")));
  CHECK(models(k2, *parse_formula_text(
                       "(existsR R 1 (exists-exactly 2 x (in x R)))")));
  CHECK_FALSE(models(k2, *parse_formula_text(
                         "(forallR R 1 (exists (x) (in x R)))")));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_formula_text("(exists x"), ParseError);
  CHECK_THROWS_AS(parse_formula_text("(frobnicate x)"), ParseError);
  CHECK_THROWS_AS(parse_formula_text("(call nosuch x)"), ParseError);
}
