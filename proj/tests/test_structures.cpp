#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "gpk/corpus.hpp"
#include "gpk/error.hpp"
#include "gpk/multigraph.hpp"
#include "gpk/structure.hpp"

using namespace gpk;

namespace {
std::vector<int> iota_order(const IncidenceStructure& s) {
  std::vector<int> o(static_cast<size_t>(s.size()));
  std::iota(o.begin(), o.end(), 0);
  return o;
}
}  // namespace

TEST_CASE("incidence of the builtins, one pair per loop") {
  IncidenceStructure k2 = to_incidence(builtin_graph("k2"), VocabTag::graph2);
  CHECK(k2.size() == 3);
  CHECK(k2.relation("N").tuples().size() == 2);
  CHECK_FALSE(k2.check_invariants().has_value());
  IncidenceStructure loop =
      to_incidence(builtin_graph("loop1"), VocabTag::graph2);
  CHECK(loop.size() == 2);
  CHECK(loop.relation("N").tuples().size() == 1);
  CHECK_FALSE(loop.check_invariants().has_value());
  IncidenceStructure d2 =
      to_incidence(builtin_graph("d2cycle"), VocabTag::directed2);
  CHECK(d2.relation("NO").tuples().size() == 2);
  CHECK(d2.relation("NI").tuples().size() == 2);
  CHECK_FALSE(d2.check_invariants().has_value());
}

TEST_CASE("to_incidence refuses mismatched orientation") {
  CHECK_THROWS_AS(to_incidence(builtin_graph("k2"), VocabTag::directed2),
                  Error);
  CHECK_THROWS_AS(to_incidence(builtin_graph("dk2"), VocabTag::graph2), Error);
}

TEST_CASE("multigraph text round trip") {
  MultiGraph g = builtin_graph("p3");
  MultiGraph h = MultiGraph::from_text(g.to_text());
  CHECK(h.to_text() == g.to_text());
  CHECK(h.vertices == g.vertices);
  CHECK(h.directed == g.directed);
  CHECK(h.edges.size() == g.edges.size());
}

TEST_CASE("deleting an edge leaves its endpoints") {
  IncidenceStructure s = to_incidence(builtin_graph("k2"), VocabTag::graph2);
  IncidenceStructure t = delete_edge(s, "e1");
  CHECK(t.size() == 2);
  CHECK(t.index_of("e1") == -1);
  CHECK(t.index_of("v1") >= 0);
  CHECK(t.relation("N").tuples().empty());
}

TEST_CASE("undirected contraction turns parallels into loops") {
  IncidenceStructure s =
      to_incidence(builtin_graph("k2-double"), VocabTag::graph2);
  IncidenceStructure t = contract_edge(s, "e1", iota_order(s));
  CHECK(t.size() == 2);
  CHECK(t.index_of("e1") == -1);
  CHECK(t.index_of("e2") >= 0);
  // e2 survives as a loop: exactly one incidence pair
  CHECK(t.relation("N").tuples().size() == 1);
  CHECK_FALSE(t.check_invariants().has_value());
  CHECK_THROWS_AS(
      contract_edge(to_incidence(builtin_graph("loop1"), VocabTag::graph2),
                    "e1", {0, 1}),
      Error);
}

TEST_CASE("extraction removes the closed neighborhood of the edge") {
  IncidenceStructure s = to_incidence(builtin_graph("p3"), VocabTag::graph2);
  IncidenceStructure t = extract_edge(s, "e1");
  CHECK(t.size() == 1);
  CHECK(t.index_of("v3") == 0);
}

TEST_CASE("directed contraction rewires the tail's in-edges to the head") {
  IncidenceStructure s =
      to_incidence(builtin_graph("d2cycle"), VocabTag::directed2);
  IncidenceStructure t = contract_directed_edge(s, "e1");
  REQUIRE(t.size() == 2);
  CHECK(t.index_of("v1") == -1);
  int v2 = t.index_of("v2");
  int e2 = t.index_of("e2");
  REQUIRE(v2 >= 0);
  REQUIRE(e2 >= 0);
  // e2 ran v2 -> v1 and now loops at the merged vertex
  CHECK(t.relation("NO").contains({v2, e2}));
  CHECK(t.relation("NI").contains({e2, v2}));
  CHECK_FALSE(t.check_invariants().has_value());
}

TEST_CASE("restrict_to keeps ids and reindexes tuples") {
  IncidenceStructure s = to_incidence(builtin_graph("k2"), VocabTag::graph2);
  std::vector<int> keep = {s.index_of("v1"), s.index_of("e1")};
  std::sort(keep.begin(), keep.end());
  IncidenceStructure t = s.restrict_to(keep);
  CHECK(t.size() == 2);
  int v1 = t.index_of("v1");
  int e1 = t.index_of("e1");
  REQUIRE(v1 >= 0);
  REQUIRE(e1 >= 0);
  CHECK(t.relation("N").tuples().size() == 1);
  CHECK(t.relation("N").contains({v1, e1}));
}

TEST_CASE("canonical keys separate kinds and relations") {
  IncidenceStructure a;
  a.vocab = VocabTag::graph2;
  a.universe = {"a", "b"};
  a.kinds = {ElementKind::vertex, ElementKind::edge};
  a.relations.emplace("N", Relation(2, 2));
  IncidenceStructure b = a;
  b.kinds = {ElementKind::edge, ElementKind::vertex};
  CHECK(a.canonical_key({0, 1}) != b.canonical_key({0, 1}));
  IncidenceStructure c = a;
  c.relations.at("N").insert({0, 1});
  CHECK(a.canonical_key({0, 1}) != c.canonical_key({0, 1}));
  CHECK(a.canonical_key({0, 1}) != a.canonical_key({1, 0}));
}

TEST_CASE("ordered structures invert their order into positions") {
  IncidenceStructure s = to_incidence(builtin_graph("k2"), VocabTag::graph2);
  OrderedStructure m{s, {2, 0, 1}, 1};
  m.validate();
  std::vector<int> pos = m.positions();
  CHECK(pos[2] == 0);
  CHECK(pos[0] == 1);
  CHECK(pos[1] == 2);
  OrderedStructure bad{s, {0, 0, 1}, 1};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("corpus sizes are the stars-and-bars counts") {
  CHECK(all_multigraphs(3, 3, false).size() == 109);
  CHECK(all_multigraphs(3, 3, true).size() == 260);
  CHECK(all_multigraphs(4, 4, false).size() == 1252);
  CHECK(all_multigraphs(4, 5, false).size() == 3528);
  CHECK(all_multigraphs(3, 4, true).size() == 791);
  CHECK(all_multigraphs(4, 4, true).size() == 5636);
  CHECK(all_multigraphs_bounded_universe(6, false).size() == 209);
  CHECK(all_multigraphs_bounded_universe(5, false).size() == 66);
  CHECK(all_multigraphs_bounded_universe(5, true).size() == 114);
}

TEST_CASE("every corpus graph is well formed") {
  for (const MultiGraph& g : all_multigraphs(3, 3, false)) {
    g.validate();
    IncidenceStructure s = to_incidence(g, VocabTag::graph2);
    CHECK_FALSE(s.check_invariants().has_value());
  }
  for (const MultiGraph& g : all_multigraphs(2, 2, true)) {
    g.validate();
    IncidenceStructure s = to_incidence(g, VocabTag::directed2);
    CHECK_FALSE(s.check_invariants().has_value());
  }
}

TEST_CASE("builtin names resolve and unknown ones do not") {
  for (const std::string& name : builtin_graph_names())
    CHECK_NOTHROW(builtin_graph(name));
  CHECK_THROWS_AS(builtin_graph("petersen"), Error);
  CHECK(builtin_graph("k4").edges.size() == 6);
  CHECK(builtin_graph("c3").edges.size() == 3);
  CHECK(builtin_graph("dcycle3").directed);
}
