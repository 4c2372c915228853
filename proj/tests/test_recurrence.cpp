#include "doctest.h"

#include <algorithm>

#include "gpk/catalog.hpp"
#include "gpk/corpus.hpp"
#include "gpk/error.hpp"
#include "gpk/recurrence.hpp"

using namespace gpk;

namespace {
Polynomial run(const char* poly, const char* graph) {
  return eval_entry(*find_entry(poly), builtin_graph(graph), "recursive");
}
}  // namespace

TEST_CASE("pinned recursive values") {
  CHECK(run("tutte", "k2") == Polynomial::parse("X"));
  CHECK(run("tutte", "k2-double") == Polynomial::parse("X + Y"));
  CHECK(run("tutte", "c3") == Polynomial::parse("X^2 + X + Y"));
  CHECK(run("matching", "loop1") == Polynomial::parse("X + Y"));
  CHECK(run("matching", "k2-double") == Polynomial::parse("X^2 + 2*Y"));
  CHECK(run("matching", "p3") == Polynomial::parse("X^3 + 2*X*Y"));
  CHECK(run("potts", "loop1") == Polynomial::parse("q + q*v"));
  CHECK(run("potts", "k2") == Polynomial::parse("q^2 + q*v"));
  CHECK(run("xi", "k2") == Polynomial::parse("X^2 + X*Y + Z"));
  CHECK(run("xi", "loop1") == Polynomial::parse("X + X*Y + Z"));
  CHECK(run("cover", "dloop1") == Polynomial::parse("X + Y"));
  CHECK(run("cover", "d2cycle") == Polynomial::parse("X^2 + X + Y"));
  // empty cover, three one-edge paths, three two-edge paths, the full cycle
  CHECK(run("cover", "dcycle3") == Polynomial::parse("X^3 + 2*X + Y"));
}

TEST_CASE("which rules fire at the least element") {
  const RecursiveDefinition& potts = *find_entry("potts")->recursion;
  OrderedStructure k2 = ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  std::vector<std::string> at_edge = enabled_rules(potts, k2);
  std::sort(at_edge.begin(), at_edge.end());
  CHECK(at_edge == std::vector<std::string>{"contract", "delete"});
  OrderedStructure e1 = ordered_incidence(builtin_graph("e1"), VocabTag::graph2);
  CHECK(enabled_rules(potts, e1) ==
        std::vector<std::string>{"isolated-vertex"});
  OrderedStructure loop =
      ordered_incidence(builtin_graph("loop1"), VocabTag::graph2);
  std::vector<std::string> at_loop = enabled_rules(potts, loop);
  std::sort(at_loop.begin(), at_loop.end());
  CHECK(at_loop == std::vector<std::string>{"delete", "loop-contract"});
}

TEST_CASE("orders that strand a non-isolated vertex are infeasible") {
  const RecursiveDefinition& matching = *find_entry("matching")->recursion;
  IncidenceStructure s = to_incidence(builtin_graph("p3"), VocabTag::graph2);
  std::vector<int> order;
  order.push_back(s.index_of("v2"));  // the middle vertex leads
  for (int i = 0; i < s.size(); ++i)
    if (i != s.index_of("v2")) order.push_back(i);
  OrderedStructure m{s, order, 1};
  CHECK_FALSE(check_order_valid(matching, m));
  RecursiveEvaluator ev(matching);
  CHECK_THROWS_AS(ev.evaluate(m), InfeasibleOrderError);
}

TEST_CASE("declaration order is only admissible with edges in front") {
  const RecursiveDefinition& potts = *find_entry("potts")->recursion;
  OrderedStructure good =
      ordered_incidence(builtin_graph("k2"), VocabTag::graph2);
  CHECK(check_order_valid(potts, good));
  OrderedStructure bad = good;
  std::reverse(bad.order.begin(), bad.order.end());
  // k2 reversed leads with a vertex while an edge is still present
  CHECK_FALSE(check_order_valid(potts, bad));
}

TEST_CASE("all admissible orders of the triangle agree") {
  const RecursiveDefinition& potts = *find_entry("potts")->recursion;
  IncidenceStructure s = to_incidence(builtin_graph("k3"), VocabTag::graph2);
  auto orders = all_valid_orders(potts, s);
  CHECK(orders.size() == 36);  // three edges, three vertices, edges first
  InvarianceReport rep = check_order_invariance(potts, s, orders);
  CHECK(rep.agree);
  CHECK(rep.orders_checked == 36);
  CHECK(rep.value == eval_entry(*find_entry("potts"), builtin_graph("k3"),
                                "recursive"));
}

TEST_CASE("order enumeration refuses large universes") {
  const RecursiveDefinition& potts = *find_entry("potts")->recursion;
  IncidenceStructure s = to_incidence(builtin_graph("k4"), VocabTag::graph2);
  CHECK_THROWS_AS(all_valid_orders(potts, s), Error);
  std::vector<int> sampled = random_valid_order(potts, s, 11);
  OrderedStructure m{s, sampled, 1};
  CHECK(check_order_valid(potts, m));
}

TEST_CASE("memoization collapses shared subproblems") {
  const RecursiveDefinition& tutte = *find_entry("tutte")->recursion;
  RecursiveEvaluator ev(tutte);
  OrderedStructure m = ordered_incidence(builtin_graph("c4"), VocabTag::graph2);
  Polynomial value = ev.evaluate(m);
  CHECK(value == Polynomial::parse("X^3 + X^2 + X + Y"));
  CHECK(ev.stats().calls > 0);
  CHECK(ev.stats().memo_hits > 0);
  // leaves count unshared branches, so they exceed the memoized calls
  BigInt leaves = ev.leaf_count(m);
  CHECK(leaves >= 4);
}

TEST_CASE("empty structures return the declared empty value") {
  CHECK(run("potts", "e0") == Polynomial::parse("1"));
  CHECK(run("tutte", "e0") == Polynomial::parse("1"));
  CHECK(run("cover", "de0") == Polynomial::parse("1"));
}
