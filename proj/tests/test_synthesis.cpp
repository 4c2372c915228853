#include "doctest.h"

#include <algorithm>

#include "gpk/catalog.hpp"
#include "gpk/corpus.hpp"
#include "gpk/synthesis.hpp"

using namespace gpk;

namespace {
OrderedStructure ordered(const char* graph, VocabTag vocab) {
  return ordered_incidence(builtin_graph(graph), vocab);
}
}  // namespace

TEST_CASE("single-vertex colorings, exhaustively") {
  const RecursiveDefinition& potts = *find_entry("potts")->recursion;
  OrderedStructure m = ordered("e1", VocabTag::graph2);
  // rules are numbered from one; zero marks collateral removal
  CHECK_FALSE(simulate_coloring(potts, m, {0}).has_value());
  int fired = 0;
  Polynomial sum;
  for (int rule = 1; rule <= static_cast<int>(potts.rules.size()); ++rule) {
    auto contribution = simulate_coloring(potts, m, {rule});
    if (contribution) {
      ++fired;
      sum += *contribution;
    }
  }
  CHECK(fired == 1);  // only the isolated-vertex rule applies
  CHECK(sum == Polynomial::parse("q"));
}

TEST_CASE("the serial enumeration records replayable colorings") {
  const RecursiveDefinition& matching = *find_entry("matching")->recursion;
  OrderedStructure m = ordered("k2", VocabTag::graph2);
  SynthesisResult res = synthesize_serial(matching, m, {}, true);
  CHECK(res.value == Polynomial::parse("X^2 + Y"));
  CHECK(res.colorings == 2);
  REQUIRE(res.records.size() == 2);
  Polynomial replayed_sum;
  for (const ColoringRecord& rec : res.records) {
    auto replay = simulate_coloring(matching, m, rec.colors);
    REQUIRE(replay.has_value());
    CHECK(*replay == rec.contribution);
    replayed_sum += rec.contribution;
  }
  CHECK(replayed_sum == res.value);
  // the two colorings differ in the rule chosen at the edge
  CHECK(res.records[0].colors != res.records[1].colors);
}

TEST_CASE("corrupting a recorded coloring invalidates it") {
  const RecursiveDefinition& matching = *find_entry("matching")->recursion;
  OrderedStructure m = ordered("k2", VocabTag::graph2);
  SynthesisResult res = synthesize_serial(matching, m, {}, true);
  REQUIRE(res.records.size() == 2);
  for (const ColoringRecord& rec : res.records) {
    std::vector<int> colors = rec.colors;
    // flipping any coordinate off its recorded value must break the replay
    for (size_t i = 0; i < colors.size(); ++i) {
      std::vector<int> tweaked = colors;
      tweaked[i] = colors[i] == 0 ? 1 : 0;
      auto replay = simulate_coloring(matching, m, tweaked);
      bool still_recorded = false;
      for (const ColoringRecord& other : res.records)
        still_recorded = still_recorded || other.colors == tweaked;
      if (!still_recorded) CHECK_FALSE(replay.has_value());
    }
  }
}

TEST_CASE("flat parallel enumeration equals the depth-first reference") {
  for (const char* name : {"potts", "matching", "xi"}) {
    const RecursiveDefinition& def = *find_entry(name)->recursion;
    for (const char* graph : {"e2", "loop1", "p3", "k3"}) {
      CAPTURE(name);
      CAPTURE(graph);
      OrderedStructure m = ordered(graph, VocabTag::graph2);
      SynthesisResult serial = synthesize_serial(def, m);
      SynthesisResult parallel = synthesize_parallel(def, m);
      CHECK(serial.value == parallel.value);
      CHECK(serial.colorings == parallel.colorings);
    }
  }
  const RecursiveDefinition& cover = *find_entry("cover")->recursion;
  OrderedStructure m = ordered("d2cycle", VocabTag::directed2);
  SynthesisResult serial = synthesize_serial(cover, m);
  SynthesisResult parallel = synthesize_parallel(cover, m);
  CHECK(serial.value == parallel.value);
  CHECK(serial.colorings == parallel.colorings);
  CHECK(serial.value == Polynomial::parse("X^2 + X + Y"));
}

TEST_CASE("valid colorings count the recursion tree's leaves") {
  const RecursiveDefinition& potts = *find_entry("potts")->recursion;
  OrderedStructure m = ordered("c3", VocabTag::graph2);
  SynthesisCheck chk = check_synthesis(potts, m);
  CHECK(chk.agree);
  CHECK(chk.synthesized == chk.recursive);
  CHECK(chk.colorings == chk.leaves);
  CHECK(chk.colorings > 1);
}

TEST_CASE("synthesized cover of the single loop") {
  CHECK(eval_entry(*find_entry("cover"), builtin_graph("dloop1"),
                   "synthesized") == Polynomial::parse("X + Y"));
}
