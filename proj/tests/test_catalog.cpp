#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "gpk/catalog.hpp"
#include "gpk/corpus.hpp"
#include "gpk/error.hpp"

using namespace gpk;

TEST_CASE("the catalog lists six entries with their indeterminates") {
  const auto& entries = catalog();
  REQUIRE(entries.size() == 6);
  std::vector<std::string> names;
  for (const auto& e : entries) names.push_back(e.name);
  std::vector<std::string> want = {"matching", "tutte",        "potts",
                                   "xi",       "cover",        "noble-welsh"};
  std::sort(names.begin(), names.end());
  std::sort(want.begin(), want.end());
  CHECK(names == want);
  CHECK(find_entry("potts")->indeterminates ==
        std::vector<std::string>{"q", "v"});
  CHECK(find_entry("xi")->indeterminates ==
        std::vector<std::string>{"X", "Y", "Z"});
  CHECK(find_entry("nope") == nullptr);
  CHECK(find_entry("cover")->vocab == VocabTag::directed2);
  CHECK_FALSE(find_entry("noble-welsh")->recursion.has_value());
}

TEST_CASE("pinned oracle values") {
  CHECK(oracle_matching(builtin_graph("p3")) ==
        Polynomial::parse("X^3 + 2*X*Y"));
  CHECK(oracle_matching(builtin_graph("k2-double")) ==
        Polynomial::parse("X^2 + 2*Y"));
  CHECK(oracle_matching(builtin_graph("k3")) ==
        Polynomial::parse("X^3 + 3*X*Y"));
  CHECK(oracle_tutte(builtin_graph("c3")) ==
        Polynomial::parse("X^2 + X + Y"));
  CHECK(oracle_potts(builtin_graph("k2")) == Polynomial::parse("q^2 + q*v"));
  CHECK(oracle_xi(builtin_graph("k2")) ==
        Polynomial::parse("X^2 + X*Y + Z"));
  CHECK(oracle_cover(builtin_graph("de3")) ==
        Polynomial::parse("X^3 - 3*X^2 + 2*X"));
  CHECK(oracle_noble_welsh(builtin_graph("e2")) == Polynomial::parse("X1^2"));
  CHECK(oracle_noble_welsh(builtin_graph("e0")) == Polynomial::parse("1"));
  CHECK(oracle_noble_welsh(builtin_graph("k2")) ==
        Polynomial::parse("X1^2 + X2"));
  CHECK(oracle_noble_welsh(builtin_graph("k2-double")) ==
        Polynomial::parse("X1^2 + X2*y + 2*X2"));
}

TEST_CASE("edge activities do not depend on the inspection order") {
  for (const char* name : {"p3", "c3", "k2-double", "loop1"}) {
    CAPTURE(name);
    MultiGraph g = builtin_graph(name);
    Polynomial base = oracle_tutte(g);
    std::vector<int> perm(g.edges.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      CHECK(oracle_tutte(g, perm) == base);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("edges-first ordering leads with the edges") {
  OrderedStructure m = ordered_incidence(builtin_graph("p3"), VocabTag::graph2);
  REQUIRE(m.s.size() == 5);
  CHECK(m.s.is_edge(m.order[0]));
  CHECK(m.s.is_edge(m.order[1]));
  CHECK(m.s.is_vertex(m.order[2]));
  m.validate();
}

TEST_CASE("engines reject what they cannot run") {
  const CatalogEntry* nw = find_entry("noble-welsh");
  CHECK_THROWS_AS(eval_entry(*nw, builtin_graph("e1"), "recursive"), Error);
  CHECK_THROWS_AS(eval_entry(*nw, builtin_graph("e1"), "synthesized"), Error);
  const CatalogEntry* potts = find_entry("potts");
  CHECK_THROWS_AS(eval_entry(*potts, builtin_graph("k2"), "nonsense"), Error);
}

TEST_CASE("renaming utilities") {
  CHECK(rename_vars(Polynomial::parse("X^2"), {{"X", "Y"}}) ==
        Polynomial::parse("Y^2"));
  // simultaneous swap, not sequential substitution
  CHECK(rename_vars(Polynomial::parse("X*Y"), {{"X", "Y"}, {"Y", "X"}}) ==
        Polynomial::parse("X*Y"));
  CHECK(rename_vars(Polynomial::parse("X + Y"), {{"X", "Y"}, {"Y", "X"}}) ==
        Polynomial::parse("X + Y"));
  CHECK_THROWS_AS(
      renaming_invariance_test(*find_entry("potts"), builtin_graph("k2"),
                               {{"q", "v"}, {"v", "v"}}),
      Error);
}

TEST_CASE("index shifts change the size census, swaps do not") {
  const CatalogEntry* nw = find_entry("noble-welsh");
  CHECK_FALSE(
      renaming_invariance_test(*nw, builtin_graph("e1"), {{"X1", "X2"}}));
  CHECK(renaming_invariance_test(*nw, builtin_graph("e0"), {}));
  CHECK(renaming_invariance_test(*find_entry("potts"), builtin_graph("k3"),
                                 {{"q", "v"}, {"v", "q"}}));
  CHECK(renaming_invariance_test(*find_entry("matching"), builtin_graph("p3"),
                                 {{"X", "Y"}, {"Y", "X"}}));
}

TEST_CASE("forgetting the marked-vertex census recovers the partition sum") {
  // terms free of the third indeterminate are exactly the B-empty terms
  for (const char* name : {"p3", "c3", "loop1", "k2-double", "k4"}) {
    CAPTURE(name);
    MultiGraph g = builtin_graph(name);
    Polynomial recovered =
        oracle_xi(g).substitute("Z", Polynomial::constant(0));
    Polynomial expected =
        rename_vars(oracle_potts(g), {{"q", "X"}, {"v", "Y"}});
    CHECK(recovered == expected);
  }
}

TEST_CASE("the size-census expansion matches its oracle on small graphs") {
  const CatalogEntry* nw = find_entry("noble-welsh");
  for (const MultiGraph& g : all_multigraphs(2, 2, false)) {
    Polynomial expanded = eval_entry(*nw, g, "expansion");
    Polynomial direct = eval_entry(*nw, g, "oracle");
    CHECK(expanded == direct);
  }
  CHECK(eval_entry(*nw, builtin_graph("k3"), "expansion") ==
        oracle_noble_welsh(builtin_graph("k3")));
}
