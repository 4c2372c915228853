#include "doctest.h"

#include "gpk/catalog.hpp"
#include "gpk/corpus.hpp"
#include "gpk/error.hpp"
#include "gpk/eval.hpp"
#include "gpk/parser.hpp"
#include "gpk/suites.hpp"
#include "gpk/translation.hpp"

using namespace gpk;

namespace {
const TranslationScheme& pool_scheme(const std::string& name) {
  for (const TranslationScheme& s : suite_schemes())
    if (s.name == name) return s;
  throw Error("no pool scheme " + name);
}
}  // namespace

TEST_CASE("the delete rule's scheme agrees with the edge surgery") {
  const CatalogEntry* potts = find_entry("potts");
  REQUIRE(potts != nullptr);
  REQUIRE(potts->recursion.has_value());
  const GuardedDeconstruction* del = nullptr;
  for (const auto& rule : potts->recursion->rules)
    if (rule.name == "delete") del = &rule;
  REQUIRE(del != nullptr);
  OrderedStructure m = ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  int e1 = m.s.index_of("e1");
  OrderedStructure t = transduce(del->scheme, m, {{"c", e1}});
  IncidenceStructure want = delete_edge(m.s, "e1");
  CHECK(t.s == want);
  // the induced order keeps the survivors' relative positions
  std::vector<int> pos = m.positions();
  std::vector<int> tpos = t.positions();
  for (int a = 0; a < t.s.size(); ++a)
    for (int b = 0; b < t.s.size(); ++b) {
      int sa = m.s.index_of(t.s.universe[static_cast<size_t>(a)]);
      int sb = m.s.index_of(t.s.universe[static_cast<size_t>(b)]);
      CHECK((tpos[a] < tpos[b]) == (pos[sa] < pos[sb]));
    }
}

TEST_CASE("transduction demands a clause for every target relation") {
  TranslationScheme sch = parse_scheme(read_sexpr(
      "(scheme broken (source graph2) (target graph2) (domain (y) true))"));
  OrderedStructure m = ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  CHECK_THROWS_AS(transduce(sch, m), Error);
}

TEST_CASE("missing parameters are reported") {
  const CatalogEntry* potts = find_entry("potts");
  const GuardedDeconstruction& rule = potts->recursion->rules.front();
  OrderedStructure m = ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  CHECK_THROWS_AS(transduce(rule.scheme, m), Error);
}

TEST_CASE("composition matches sequential application on a spot check") {
  const TranslationScheme& a = pool_scheme("drop-least");
  const TranslationScheme& b = pool_scheme("vertices-only");
  OrderedStructure m = ordered_incidence(builtin_graph("p3"), VocabTag::graph2);
  OrderedStructure two = transduce(b, transduce(a, m));
  OrderedStructure one = transduce(compose(a, b), m);
  CHECK(one.s == two.s);
  CHECK(one.order == two.order);
  // dropping the least element twice, in either formulation
  OrderedStructure twice = transduce(compose(a, a), m);
  CHECK(twice.s.size() == m.s.size() - 2);
}

TEST_CASE("composition carries redefined sorts into an inheriting stage") {
  // the second stage inherits PV/PE/O, so the composed scheme has to carry
  // the first stage's swapped sorts instead of falling back to the source
  const TranslationScheme& swap = pool_scheme("swap-kinds");
  for (const char* second : {"drop-least", "identity", "drop-greatest"}) {
    const TranslationScheme& b = pool_scheme(second);
    for (const char* name : {"k2", "p3", "loop1", "k2-double"}) {
      OrderedStructure m = ordered_incidence(builtin_graph(name), VocabTag::graph2);
      OrderedStructure two = transduce(b, transduce(swap, m));
      OrderedStructure one = transduce(compose(swap, b), m);
      CAPTURE(second);
      CAPTURE(name);
      CHECK(one.s == two.s);
      CHECK(one.order == two.order);
    }
  }
}

TEST_CASE("swap-kinds exchanges the sorts") {
  const TranslationScheme& swap = pool_scheme("swap-kinds");
  OrderedStructure m = ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  OrderedStructure t = transduce(swap, m);
  CHECK(t.s.size() == 3);
  int e1 = t.s.index_of("e1");
  CHECK(t.s.is_vertex(e1));
  CHECK(t.s.is_edge(t.s.index_of("v1")));
  CHECK(t.s.relation("N").contains({e1, t.s.index_of("v1")}));
}

TEST_CASE("rewriting one sentence through one scheme, by hand") {
  const TranslationScheme& only_v = pool_scheme("vertices-only");
  FormulaPtr has_edge = parse_formula_text("(exists (e) (rel PE e))");
  FormulaPtr rewritten = translate(only_v, has_edge);
  OrderedStructure m = ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  std::vector<int> pos = m.positions();
  // the source has an edge, but the vertices-only image does not
  CHECK(models(m.s, *has_edge, &pos));
  CHECK_FALSE(models(m.s, *rewritten, &pos));
  OrderedStructure t = transduce(only_v, m);
  std::vector<int> tpos = t.positions();
  CHECK_FALSE(models(t.s, *has_edge, &tpos));
}

TEST_CASE("natives stop rewriting") {
  const TranslationScheme& sch = pool_scheme("identity");
  FormulaPtr f = parse_formula_text("(native cycle S)");
  CHECK_THROWS_AS(translate(sch, f), Error);
}

TEST_CASE("quantifier rank bookkeeping") {
  const TranslationScheme& drop = pool_scheme("drop-least");
  CHECK(scheme_quantifier_rank(drop) >= 1);
  FormulaPtr f = parse_formula_text("(exists (x y) (rel N x y))");
  int bound = translation_rank_bound(drop, *f);
  CHECK(bound >= 2);
  CHECK(bound >= scheme_quantifier_rank(drop));
  const TranslationScheme& id = pool_scheme("identity");
  CHECK(scheme_quantifier_rank(id) == 0);
}
