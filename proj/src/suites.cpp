#include "gpk/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <numeric>
#include <random>
#include <sstream>

#include "gpk/defs_data.hpp"
#include "gpk/error.hpp"
#include "gpk/eval.hpp"
#include "gpk/natives.hpp"
#include "gpk/parser.hpp"
#include "gpk/recurrence.hpp"
#include "gpk/synthesis.hpp"

namespace gpk {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SuiteResult finish(SuiteResult r, Clock::time_point t0) {
  r.seconds = since(t0);
  return r;
}

const ParseCtx& predicate_macros() {
  static const ParseCtx ctx = parse_def_file(defs::kPredicates).macros;
  return ctx;
}

// X(X-1)...(X-n+1); the empty product is 1.
Polynomial falling_poly(int n) {
  Polynomial p = Polynomial::constant(1);
  for (int t = 0; t < n; ++t)
    p *= Polynomial::variable("X") - Polynomial::constant(t);
  return p;
}

std::vector<int> declaration_order(const IncidenceStructure& s) {
  std::vector<int> o(static_cast<size_t>(s.size()));
  std::iota(o.begin(), o.end(), 0);
  return o;
}

std::string describe(const MultiGraph& g) {
  std::ostringstream os;
  os << (g.directed ? "digraph" : "graph") << " " << g.vertices.size() << "v:";
  if (g.edges.empty()) os << " no edges";
  for (const auto& e : g.edges)
    os << " " << e.tail << (g.directed ? ">" : "-") << e.head;
  return os.str();
}

std::string raw_describe(const IncidenceStructure& s) {
  std::ostringstream os;
  os << s.size() << " elems, kinds ";
  for (int i = 0; i < s.size(); ++i) os << (s.is_vertex(i) ? 'v' : 'e');
  os << ", N {";
  bool first = true;
  for (const auto& t : s.relation("N").tuples()) {
    os << (first ? "" : " ") << t[0] << ":" << t[1];
    first = false;
  }
  os << "}";
  return os.str();
}

// One side of the property: the rewritten sentence on the source structure,
// the original sentence on the transduced one.
bool fundamental_holds(const TranslationScheme& sch, const Formula& original,
                       const Formula& rewritten, const IncidenceStructure& s,
                       std::string* why) {
  OrderedStructure m{s, declaration_order(s), 1};
  std::vector<int> mpos = m.positions();
  bool lhs = models(s, rewritten, &mpos);
  OrderedStructure t = transduce(sch, m);
  std::vector<int> tpos = t.positions();
  bool rhs = models(t.s, original, &tpos);
  if (lhs == rhs) return true;
  if (why) {
    std::ostringstream os;
    os << "scheme " << sch.name << " on [" << raw_describe(s) << "]: rewritten "
       << (lhs ? "holds" : "fails") << " but the transduced structure "
       << (rhs ? "satisfies" : "violates") << " the original";
    *why = os.str();
  }
  return false;
}

IncidenceStructure random_raw_structure(std::mt19937_64& rng, int max_elements) {
  std::uniform_int_distribution<int> size_dist(0, max_elements);
  int n = size_dist(rng);
  IncidenceStructure s;
  s.vocab = VocabTag::graph2;
  for (int i = 1; i <= n; ++i) {
    s.universe.push_back("x" + std::to_string(i));
    s.kinds.push_back((rng() & 1) ? ElementKind::edge : ElementKind::vertex);
  }
  Relation r(2, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.kinds[static_cast<size_t>(i)] == ElementKind::vertex &&
          s.kinds[static_cast<size_t>(j)] == ElementKind::edge && (rng() & 1))
        r.insert({i, j});
  s.relations.emplace("N", std::move(r));
  return s;
}

}  // namespace

std::vector<IncidenceStructure> all_raw_structures(int max_elements) {
  std::vector<IncidenceStructure> out;
  for (int n = 0; n <= max_elements; ++n) {
    for (uint32_t kinds = 0; kinds < (1u << n); ++kinds) {
      IncidenceStructure base;
      base.vocab = VocabTag::graph2;
      for (int i = 0; i < n; ++i) {
        base.universe.push_back("x" + std::to_string(i + 1));
        base.kinds.push_back((kinds >> i & 1) ? ElementKind::edge
                                              : ElementKind::vertex);
      }
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (base.kinds[static_cast<size_t>(i)] == ElementKind::vertex &&
              base.kinds[static_cast<size_t>(j)] == ElementKind::edge)
            pairs.emplace_back(i, j);
      for (uint32_t inc = 0; inc < (1u << pairs.size()); ++inc) {
        IncidenceStructure s = base;
        Relation r(2, n);
        for (size_t b = 0; b < pairs.size(); ++b)
          if (inc >> b & 1) r.insert({pairs[b].first, pairs[b].second});
        s.relations.emplace("N", std::move(r));
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

const std::vector<TranslationScheme>& suite_schemes() {
  static const std::vector<TranslationScheme> pool = [] {
    const ParseCtx& mac = predicate_macros();
    auto sch = [&](const std::string& text) {
      return parse_scheme(read_sexpr(text), mac);
    };
    std::vector<TranslationScheme> v;
    v.push_back(sch("(scheme identity (source graph2) (target graph2)"
                    " (domain (y) true)"
                    " (relation N (x e) (rel N x e)))"));
    v.push_back(sch("(scheme drop-least (source graph2) (target graph2)"
                    " (domain (y) (exists (z) (rel O z y)))"
                    " (relation N (x e) (rel N x e)))"));
    v.push_back(sch("(scheme drop-greatest (source graph2) (target graph2)"
                    " (domain (y) (exists (z) (rel O y z)))"
                    " (relation N (x e) (rel N x e)))"));
    v.push_back(sch("(scheme vertices-only (source graph2) (target graph2)"
                    " (domain (y) (rel PV y))"
                    " (relation N (x e) (rel N x e)))"));
    v.push_back(sch("(scheme edges-only (source graph2) (target graph2)"
                    " (domain (y) (rel PE y))"
                    " (relation N (x e) (rel N x e)))"));
    v.push_back(sch("(scheme swap-kinds (source graph2) (target graph2)"
                    " (domain (y) true)"
                    " (relation PV (x) (rel PE x))"
                    " (relation PE (x) (rel PV x))"
                    " (relation N (x e) (rel N e x)))"));
    v.push_back(sch("(scheme drop-isolated (source graph2) (target graph2)"
                    " (domain (y) (or (rel PE y) (exists (f) (rel N y f))))"
                    " (relation N (x e) (rel N x e)))"));
    v.push_back(sch("(scheme clear-incidence (source graph2) (target graph2)"
                    " (domain (y) true)"
                    " (relation N (x e) false))"));
    v.push_back(sch("(scheme full-incidence (source graph2) (target graph2)"
                    " (domain (y) true)"
                    " (relation N (x e) (and (rel PV x) (rel PE e))))"));
    v.push_back(sch("(scheme drop-loops (source graph2) (target graph2)"
                    " (domain (y) (or (rel PV y) (not (call loop y))))"
                    " (relation N (x e) (rel N x e)))"));
    return v;
  }();
  return pool;
}

const std::vector<FormulaPtr>& suite_formulas() {
  static const std::vector<FormulaPtr> pool = [] {
    const ParseCtx& mac = predicate_macros();
    std::vector<FormulaPtr> v;
    v.push_back(parse_formula_text("(exists (x) (rel PV x))", mac));
    v.push_back(parse_formula_text(
        "(forall (x y) (implies (rel N x y) (and (rel PV x) (rel PE y))))",
        mac));
    v.push_back(parse_formula_text(
        "(exists (x y) (and (rel N x y) (rel O x y)))", mac));
    v.push_back(parse_formula_text(
        "(exists (x y z) (and (rel O x y) (rel O y z)))", mac));
    v.push_back(parse_formula_text(
        "(exists (e) (and (rel PE e) (exists-exactly 1 v (rel N v e))))",
        mac));
    v.push_back(parse_formula_text(
        "(forall (e) (implies (rel PE e) (exists (v) (rel N v e))))", mac));
    v.push_back(parse_formula_text(
        "(exists (x) (forall (y) (implies (not (= x y)) (rel O x y))))",
        mac));
    v.push_back(parse_formula_text(
        "(existsR R 1 (forall (x) (implies (in x R) (rel PV x))))", mac));
    v.push_back(parse_formula_text(
        "(existsR R 2 (and (forall (x y) (implies (rvar R x y) (rel N x y)))"
        " (forall (x y) (implies (rvar R x y) (rel O x y)))))",
        mac));
    v.push_back(parse_formula_text(
        "(exists (u v) (and (rel PV u) (rel PV v) (not (= u v))"
        " (exists (e) (and (rel N u e) (rel N v e)))))",
        mac));
    return v;
  }();
  return pool;
}

PropertyReport fundamental_exhaustive(int max_elements) {
  PropertyReport rep;
  const auto structures = all_raw_structures(max_elements);
  const auto& schemes = suite_schemes();
  const auto& formulas = suite_formulas();
  std::vector<std::vector<FormulaPtr>> rewritten(schemes.size());
  for (size_t i = 0; i < schemes.size(); ++i)
    for (const auto& f : formulas)
      rewritten[i].push_back(translate(schemes[i], f));
  for (const auto& s : structures) {
    for (size_t i = 0; i < schemes.size(); ++i) {
      for (size_t j = 0; j < formulas.size(); ++j) {
        std::string why;
        ++rep.checked;
        if (!fundamental_holds(schemes[i], *formulas[j], *rewritten[i][j], s,
                               rep.failures == 0 ? &why : nullptr)) {
          if (rep.failures == 0)
            rep.first_failure = "formula " + std::to_string(j + 1) + ", " + why;
          ++rep.failures;
        }
      }
    }
  }
  return rep;
}

PropertyReport fundamental_random(int trials, int max_size, uint64_t seed) {
  PropertyReport rep;
  const auto& schemes = suite_schemes();
  const auto& formulas = suite_formulas();
  std::vector<std::vector<FormulaPtr>> rewritten(schemes.size());
  for (size_t i = 0; i < schemes.size(); ++i)
    for (const auto& f : formulas)
      rewritten[i].push_back(translate(schemes[i], f));
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    size_t i = rng() % schemes.size();
    size_t j = rng() % formulas.size();
    IncidenceStructure s = random_raw_structure(rng, max_size);
    std::string why;
    ++rep.checked;
    if (!fundamental_holds(schemes[i], *formulas[j], *rewritten[i][j], s,
                           rep.failures == 0 ? &why : nullptr)) {
      if (rep.failures == 0)
        rep.first_failure = "trial " + std::to_string(t) + ", formula " +
                            std::to_string(j + 1) + ", " + why;
      ++rep.failures;
    }
  }
  return rep;
}

PropertyReport composition_random(int trials, uint64_t seed) {
  PropertyReport rep;
  const auto& schemes = suite_schemes();
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    size_t i = rng() % schemes.size();
    size_t j = rng() % schemes.size();
    IncidenceStructure s = random_raw_structure(rng, 5);
    OrderedStructure m{s, declaration_order(s), 1};
    ++rep.checked;
    std::string why;
    try {
      TranslationScheme both = compose(schemes[i], schemes[j]);
      OrderedStructure one = transduce(both, m);
      OrderedStructure two = transduce(schemes[j], transduce(schemes[i], m));
      if (!(one.s == two.s) || one.order != two.order) {
        std::ostringstream os;
        os << "compose(" << schemes[i].name << ", " << schemes[j].name
           << ") on [" << raw_describe(s)
           << "] differs from the two-step transduction";
        why = os.str();
      }
    } catch (const std::exception& ex) {
      why = std::string("compose threw: ") + ex.what();
    }
    if (!why.empty()) {
      if (rep.failures == 0)
        rep.first_failure = "trial " + std::to_string(t) + ": " + why;
      ++rep.failures;
    }
  }
  return rep;
}

AgreementReport check_entry_agreement(const CatalogEntry& entry,
                                      const std::vector<MultiGraph>& corpus,
                                      int64_t budget_ms) {
  AgreementReport rep;
  rep.instances = static_cast<int>(corpus.size());
  auto t0 = Clock::now();
  std::atomic<bool> over{false};
  std::atomic<int> mismatches{0};
  int first_idx = INT_MAX;
  std::string first_msg;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(corpus.size()); ++i) {
    if (over.load(std::memory_order_relaxed)) continue;
    if (budget_ms > 0 && since(t0) * 1000.0 > static_cast<double>(budget_ms)) {
      over.store(true, std::memory_order_relaxed);
      continue;
    }
    const MultiGraph& g = corpus[static_cast<size_t>(i)];
    std::string why;
    try {
      Polynomial rec = eval_entry(entry, g, "recursive");
      Polynomial exp = eval_entry(entry, g, "expansion");
      Polynomial orc = eval_entry(entry, g, "oracle");
      if (rec != exp)
        why = "recursive " + rec.to_text() + " != expansion " + exp.to_text();
      else if (rec != orc)
        why = "recursive " + rec.to_text() + " != oracle " + orc.to_text();
    } catch (const std::exception& ex) {
      why = std::string("engine threw: ") + ex.what();
    }
    if (!why.empty()) {
      mismatches.fetch_add(1, std::memory_order_relaxed);
#pragma omp critical(gpk_agreement_first)
      {
        if (i < first_idx) {
          first_idx = i;
          first_msg = describe(g) + ": " + why;
        }
      }
    }
  }
  if (over.load())
    throw BudgetError(entry.name + " agreement sweep exceeded its budget of " +
                      std::to_string(budget_ms) + " ms");
  rep.mismatches = mismatches.load();
  if (first_idx != INT_MAX) rep.first_mismatch = first_msg;
  return rep;
}

SuiteResult criterion_initial_conditions() {
  auto t0 = Clock::now();
  SuiteResult r{"initial conditions", true, "", 0.0};
  struct Case {
    std::string entry, graph;
    Polynomial expect;
  };
  std::vector<Case> cases;
  cases.push_back({"potts", "e1", Polynomial::variable("q")});
  cases.push_back({"potts", "e0", Polynomial::constant(1)});
  cases.push_back({"matching", "e1", Polynomial::variable("X")});
  cases.push_back({"matching", "e0", Polynomial::constant(1)});
  cases.push_back({"tutte", "e1", Polynomial::constant(1)});
  cases.push_back({"tutte", "e0", Polynomial::constant(1)});
  cases.push_back({"xi", "e1", Polynomial::variable("X")});
  cases.push_back({"xi", "e0", Polynomial::constant(1)});
  cases.push_back({"cover", "de0", Polynomial::constant(1)});
  for (int n = 1; n <= 5; ++n)
    cases.push_back({"cover", "de" + std::to_string(n), falling_poly(n)});
  int checked = 0;
  for (const auto& c : cases) {
    const CatalogEntry* entry = find_entry(c.entry);
    MultiGraph g = builtin_graph(c.graph);
    for (const char* engine :
         {"recursive", "expansion", "oracle", "synthesized"}) {
      Polynomial got;
      try {
        got = eval_entry(*entry, g, engine);
      } catch (const std::exception& ex) {
        r.pass = false;
        r.detail = c.entry + " on " + c.graph + " via " + engine +
                   " threw: " + ex.what();
        return finish(std::move(r), t0);
      }
      if (got != c.expect) {
        r.pass = false;
        r.detail = c.entry + " on " + c.graph + " via " + engine + " gave " +
                   got.to_text() + ", expected " + c.expect.to_text();
        return finish(std::move(r), t0);
      }
      ++checked;
    }
  }
  r.detail = std::to_string(checked) +
             " evaluations (15 cases x 4 engines) matched the pinned values";
  return finish(std::move(r), t0);
}

SuiteResult criterion_engine_agreement() {
  auto t0 = Clock::now();
  SuiteResult r{"engine agreement", true, "", 0.0};
  const int64_t budget_ms = 600000;  // ten minutes, wall clock
  std::ostringstream detail;
  try {
    const auto und = all_multigraphs(4, 5, false);
    const auto dir = all_multigraphs(3, 4, true);
    auto sweep = [&](const std::string& name,
                     const std::vector<MultiGraph>& corpus) {
      int64_t left = budget_ms - static_cast<int64_t>(since(t0) * 1000.0);
      if (left <= 0)
        throw BudgetError("engine agreement exceeded its 600 s budget");
      AgreementReport rep =
          check_entry_agreement(*find_entry(name), corpus, left);
      if (rep.mismatches > 0) {
        r.pass = false;
        r.detail = name + ": " + std::to_string(rep.mismatches) +
                   " mismatches, first " + rep.first_mismatch;
        return false;
      }
      detail << name << " " << rep.instances << " ok; ";
      return true;
    };
    for (const char* name : {"matching", "tutte", "potts", "xi"})
      if (!sweep(name, und)) return finish(std::move(r), t0);
    if (!sweep("cover", dir)) return finish(std::move(r), t0);
  } catch (const BudgetError& ex) {
    r.pass = false;
    r.detail = ex.what();
    return finish(std::move(r), t0);
  }
  r.detail = detail.str() + "no mismatches within the 600 s budget";
  return finish(std::move(r), t0);
}

SuiteResult criterion_order_invariance() {
  auto t0 = Clock::now();
  SuiteResult r{"order invariance", true, "", 0.0};
  size_t graphs = 0, orders_total = 0;
  auto run_entry = [&](const std::string& name,
                       const std::vector<MultiGraph>& corpus) {
    const CatalogEntry* entry = find_entry(name);
    const RecursiveDefinition& def = *entry->recursion;
    for (size_t gi = 0; gi < corpus.size(); ++gi) {
      const MultiGraph& g = corpus[gi];
      OrderedStructure m = ordered_incidence(g, entry->vocab);
      std::vector<std::vector<int>> orders;
      if (m.s.size() <= 8) orders = all_valid_orders(def, m.s);
      if (orders.empty() || orders.size() > 720) {
        orders.clear();
        for (uint64_t k = 0; k < 20; ++k)
          orders.push_back(random_valid_order(
              def, m.s, 20260816ull + 1009ull * gi + 31ull * k));
      }
      InvarianceReport rep = check_order_invariance(def, m.s, orders);
      if (!rep.agree) {
        r.pass = false;
        r.detail = name + " on " + describe(g) + ": " + rep.mismatch_detail;
        return false;
      }
      ++graphs;
      orders_total += rep.orders_checked;
    }
    return true;
  };
  auto und = all_multigraphs(3, 3, false);
  und.push_back(builtin_graph("k4"));
  auto dir = all_multigraphs(3, 3, true);
  {
    // directed 4-cycle with a loop: nine elements, so orders are sampled
    MultiGraph g;
    g.directed = true;
    g.vertices = {"v1", "v2", "v3", "v4"};
    g.edges = {{"e1", "v1", "v2"},
               {"e2", "v2", "v3"},
               {"e3", "v3", "v4"},
               {"e4", "v4", "v1"},
               {"e5", "v2", "v2"}};
    dir.push_back(std::move(g));
  }
  for (const char* name : {"matching", "tutte", "potts", "xi"})
    if (!run_entry(name, und)) return finish(std::move(r), t0);
  if (!run_entry("cover", dir)) return finish(std::move(r), t0);
  std::ostringstream os;
  os << "one polynomial per instance across " << graphs << " instances and "
     << orders_total << " admissible orders";
  r.detail = os.str();
  return finish(std::move(r), t0);
}

SuiteResult criterion_fundamental_property() {
  auto t0 = Clock::now();
  SuiteResult r{"fundamental property", true, "", 0.0};
  PropertyReport ex = fundamental_exhaustive(4);
  if (ex.failures > 0) {
    r.pass = false;
    r.detail = std::to_string(ex.failures) + "/" + std::to_string(ex.checked) +
               " exhaustive failures, first: " + ex.first_failure;
    return finish(std::move(r), t0);
  }
  PropertyReport rnd = fundamental_random(500, 5, 0x5eedf00dULL);
  if (rnd.failures > 0) {
    r.pass = false;
    r.detail = std::to_string(rnd.failures) + "/" +
               std::to_string(rnd.checked) +
               " random failures, first: " + rnd.first_failure;
    return finish(std::move(r), t0);
  }
  r.detail = std::to_string(ex.checked) + " exhaustive and " +
             std::to_string(rnd.checked) + " random checks agree";
  return finish(std::move(r), t0);
}

SuiteResult criterion_composition() {
  auto t0 = Clock::now();
  SuiteResult r{"composition", true, "", 0.0};
  PropertyReport rep = composition_random(100, 0xc0ffeeULL);
  if (rep.failures > 0) {
    r.pass = false;
    r.detail = std::to_string(rep.failures) + "/" +
               std::to_string(rep.checked) +
               " failures, first: " + rep.first_failure;
  } else {
    r.detail = std::to_string(rep.checked) +
               " composed transductions equal their two-step runs";
  }
  return finish(std::move(r), t0);
}

SuiteResult criterion_synthesis_agreement() {
  auto t0 = Clock::now();
  SuiteResult r{"synthesis agreement", true, "", 0.0};
  const double budget_s = 300.0;  // five minutes, wall clock
  struct Sweep {
    const char* entry;
    int max_elements;
    bool directed;
  };
  int instances = 0;
  for (const Sweep& sw : std::initializer_list<Sweep>{
           {"potts", 6, false}, {"matching", 6, false}, {"xi", 5, false}}) {
    const CatalogEntry* entry = find_entry(sw.entry);
    const auto corpus =
        all_multigraphs_bounded_universe(sw.max_elements, sw.directed);
    for (const MultiGraph& g : corpus) {
      if (since(t0) > budget_s) {
        r.pass = false;
        r.detail = "exceeded the 300 s budget after " +
                   std::to_string(instances) + " instances";
        return finish(std::move(r), t0);
      }
      OrderedStructure m = ordered_incidence(g, entry->vocab);
      SynthesisCheck chk = check_synthesis(*entry->recursion, m);
      if (!chk.agree) {
        r.pass = false;
        r.detail = std::string(sw.entry) + " on " + describe(g) + ": " +
                   chk.detail;
        return finish(std::move(r), t0);
      }
      ++instances;
    }
  }
  r.detail = std::to_string(instances) +
             " instances: synthesized value and coloring count both match "
             "the recursion";
  return finish(std::move(r), t0);
}

SuiteResult criterion_synthesized_censuses() {
  auto t0 = Clock::now();
  SuiteResult r{"synthesized censuses", true, "", 0.0};
  int instances = 0;
  {
    const CatalogEntry* xi = find_entry("xi");
    for (const MultiGraph& g : all_multigraphs_bounded_universe(5, false)) {
      Polynomial syn = eval_entry(*xi, g, "synthesized");
      Polynomial exp = eval_entry(*xi, g, "expansion");
      if (syn != exp) {
        r.pass = false;
        r.detail = "xi on " + describe(g) + ": synthesized " + syn.to_text() +
                   " != expansion " + exp.to_text();
        return finish(std::move(r), t0);
      }
      ++instances;
    }
  }
  {
    const CatalogEntry* cover = find_entry("cover");
    for (const MultiGraph& g : all_multigraphs_bounded_universe(5, true)) {
      Polynomial syn = eval_entry(*cover, g, "synthesized");
      Polynomial orc = eval_entry(*cover, g, "oracle");
      if (syn != orc) {
        r.pass = false;
        r.detail = "cover on " + describe(g) + ": synthesized " +
                   syn.to_text() + " != census " + orc.to_text();
        return finish(std::move(r), t0);
      }
      ++instances;
    }
    Polynomial loop = eval_entry(*cover, builtin_graph("dloop1"), "synthesized");
    Polynomial want = Polynomial::parse("X + Y");
    if (loop != want) {
      r.pass = false;
      r.detail = "cover on the single loop synthesized to " + loop.to_text() +
                 ", expected X + Y";
      return finish(std::move(r), t0);
    }
    ++instances;
  }
  r.detail = std::to_string(instances) +
             " instances: synthesized xi matches its expansion, synthesized "
             "cover matches the census (single loop gives X + Y)";
  return finish(std::move(r), t0);
}

SuiteResult criterion_renaming() {
  auto t0 = Clock::now();
  SuiteResult r{"renaming", true, "", 0.0};
  const CatalogEntry* nw = find_entry("noble-welsh");
  for (int n = 0; n <= 5; ++n) {
    MultiGraph g = builtin_graph("e" + std::to_string(n));
    std::vector<std::pair<std::string, std::string>> shift;
    for (int i = 1; i <= n; ++i)
      shift.emplace_back("X" + std::to_string(i), "X" + std::to_string(i + 1));
    bool invariant = renaming_invariance_test(*nw, g, shift);
    bool want = (n == 0);  // shifting every index breaks the size census
    if (invariant != want) {
      r.pass = false;
      r.detail = "noble-welsh shift on e" + std::to_string(n) + " came out " +
                 (invariant ? "invariant" : "changed") + ", expected " +
                 (want ? "invariant" : "changed");
      return finish(std::move(r), t0);
    }
  }
  int instances = 0;
  const std::vector<std::pair<std::string, std::string>> potts_swap{
      {"q", "v"}, {"v", "q"}};
  const std::vector<std::pair<std::string, std::string>> matching_swap{
      {"X", "Y"}, {"Y", "X"}};
  const CatalogEntry* potts = find_entry("potts");
  const CatalogEntry* matching = find_entry("matching");
  for (const MultiGraph& g : all_multigraphs(3, 3, false)) {
    if (!renaming_invariance_test(*potts, g, potts_swap)) {
      r.pass = false;
      r.detail = "potts q/v swap changed the computation on " + describe(g);
      return finish(std::move(r), t0);
    }
    if (!renaming_invariance_test(*matching, g, matching_swap)) {
      r.pass = false;
      r.detail = "matching X/Y swap changed the computation on " + describe(g);
      return finish(std::move(r), t0);
    }
    instances += 2;
  }
  r.detail = "shift on e1..e5 changes the computation, e0 is unaffected; " +
             std::to_string(instances) + " indeterminate swaps are invariant";
  return finish(std::move(r), t0);
}

SuiteResult criterion_builders() {
  auto t0 = Clock::now();
  SuiteResult r{"census builders", true, "", 0.0};
  PolyExprPtr fall =
      pe_falling_power("X", "v", parse_formula_text("(rel PV v)"));
  PolyExprPtr fact = pe_card_factorial("v", parse_formula_text("(rel PV v)"));
  const char* falling_text[] = {"1", "X", "X^2 - X", "X^3 - 3*X^2 + 2*X"};
  const char* factorial_text[] = {"1", "1", "2", "6", "24"};
  for (int n = 0; n <= 4; ++n) {
    MultiGraph g = builtin_graph("e" + std::to_string(n));
    OrderedStructure m = ordered_incidence(g, VocabTag::graph2);
    std::vector<int> pos = m.positions();
    if (n <= 3) {
      Polynomial got = eval_poly_on(*fall, m.s, &pos);
      Polynomial want = Polynomial::parse(falling_text[n]);
      if (got != want) {
        r.pass = false;
        r.detail = "falling power on e" + std::to_string(n) + " gave " +
                   got.to_text() + ", expected " + falling_text[n];
        return finish(std::move(r), t0);
      }
    }
    Polynomial got = eval_poly_on(*fact, m.s, &pos);
    Polynomial want = Polynomial::parse(factorial_text[n]);
    if (got != want) {
      r.pass = false;
      r.detail = "cardinality factorial on e" + std::to_string(n) + " gave " +
                 got.to_text() + ", expected " + factorial_text[n];
      return finish(std::move(r), t0);
    }
  }
  r.detail =
      "falling powers 1, X, X^2 - X, X^3 - 3*X^2 + 2*X and factorials "
      "1, 1, 2, 6, 24 as pinned";
  return finish(std::move(r), t0);
}

SuiteResult criterion_native_agreement() {
  auto t0 = Clock::now();
  SuiteResult r{"native predicates versus defining formulas", true, "", 0.0};
  const ParseCtx& mac = predicate_macros();
  FormulaPtr f_conn = parse_formula_text("(call connected-sol S x y)", mac);
  FormulaPtr f_cycle = parse_formula_text("(call cycle-sol S)", mac);
  FormulaPtr f_touch_verts =
      parse_formula_text("(call touching-sol verts S x)", mac);
  FormulaPtr f_touch_self =
      parse_formula_text("(call touching-sol S S x)", mac);
  FormulaPtr f_lic_verts =
      parse_formula_text("(call last-in-comp-sol verts S x)", mac);
  FormulaPtr f_lic_self =
      parse_formula_text("(call last-in-comp-sol S S x)", mac);
  FormulaPtr f_bridge = parse_formula_text("(call bridge-sol x)", mac);
  FormulaPtr f_cpc = parse_formula_text("(call cycle-path-cover-sol B)", mac);

  std::atomic<long long> comparisons{0};
  int first_idx = INT_MAX;
  std::string first_msg;

  // Every S-dependent native against its formula twin on one structure.
  auto check_undirected = [&](const OrderedStructure& m) -> std::string {
    std::vector<int> pos = m.positions();
    Evaluator ev(m.s, &pos);
    const int n = m.s.size();
    const ElemMask vmask = all_vertices_mask(m.s);
    std::vector<int> edges;
    for (int i = 0; i < n; ++i)
      if (m.s.is_edge(i)) edges.push_back(i);
    long long local = 0;
    std::string why;
    auto named = [&](int i) { return m.s.universe[static_cast<size_t>(i)]; };
    for (int e : edges) {
      Assignment a;
      a.fo.emplace_back("x", e);
      ++local;
      if (ev.eval(*f_bridge, a) != natives::bridge(m.s, e)) {
        why = "bridge(" + named(e) + ")";
        break;
      }
    }
    for (uint32_t bits = 0;
         why.empty() && bits < (1u << edges.size()); ++bits) {
      Relation srel(1, n);
      ElemMask smask = 0;
      for (size_t b = 0; b < edges.size(); ++b)
        if (bits >> b & 1) {
          srel.insert({edges[b]});
          smask |= ElemMask{1} << edges[b];
        }
      {
        Assignment a;
        a.so.emplace_back("S", srel);
        ++local;
        if (ev.eval(*f_cycle, a) != natives::cycle(m.s, smask)) {
          why = "cycle(S=" + std::to_string(bits) + ")";
          break;
        }
      }
      for (int x = 0; why.empty() && x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          Assignment a;
          a.so.emplace_back("S", srel);
          a.fo.emplace_back("x", x);
          a.fo.emplace_back("y", y);
          ++local;
          if (ev.eval(*f_conn, a) != natives::connected(m.s, smask, x, y)) {
            why = "connected(S=" + std::to_string(bits) + ", " + named(x) +
                  ", " + named(y) + ")";
            break;
          }
        }
      }
      for (int x = 0; why.empty() && x < n; ++x) {
        Assignment a;
        a.so.emplace_back("S", srel);
        a.fo.emplace_back("x", x);
        local += 4;
        if (ev.eval(*f_touch_verts, a) !=
            natives::in_touching(m.s, vmask, smask, x)) {
          why = "touching(verts, S=" + std::to_string(bits) + ", " + named(x) +
                ")";
        } else if (ev.eval(*f_touch_self, a) !=
                   natives::in_touching(m.s, smask, smask, x)) {
          why = "touching(S, S=" + std::to_string(bits) + ", " + named(x) +
                ")";
        } else if (ev.eval(*f_lic_verts, a) !=
                   natives::in_last_in_comp(m.s, pos, vmask, smask, x)) {
          why = "last-in-comp(verts, S=" + std::to_string(bits) + ", " +
                named(x) + ")";
        } else if (ev.eval(*f_lic_self, a) !=
                   natives::in_last_in_comp(m.s, pos, smask, smask, x)) {
          why = "last-in-comp(S, S=" + std::to_string(bits) + ", " + named(x) +
                ")";
        }
      }
    }
    comparisons.fetch_add(local, std::memory_order_relaxed);
    return why;
  };

  auto check_directed = [&](const OrderedStructure& m) -> std::string {
    std::vector<int> pos = m.positions();
    Evaluator ev(m.s, &pos);
    const int n = m.s.size();
    std::vector<int> edges;
    for (int i = 0; i < n; ++i)
      if (m.s.is_edge(i)) edges.push_back(i);
    long long local = 0;
    std::string why;
    for (uint32_t bits = 0;
         why.empty() && bits < (1u << edges.size()); ++bits) {
      Relation brel(1, n);
      ElemMask bmask = 0;
      for (size_t b = 0; b < edges.size(); ++b)
        if (bits >> b & 1) {
          brel.insert({edges[b]});
          bmask |= ElemMask{1} << edges[b];
        }
      Assignment a;
      a.so.emplace_back("B", brel);
      ++local;
      if (ev.eval(*f_cpc, a) != natives::cycle_path_cover(m.s, bmask))
        why = "cycle-path-cover(B=" + std::to_string(bits) + ")";
    }
    comparisons.fetch_add(local, std::memory_order_relaxed);
    return why;
  };

  const auto und = all_multigraphs(4, 4, false);
  const auto dir = all_multigraphs(4, 4, true);
#pragma omp parallel for schedule(dynamic)
  for (int gi = 0; gi < static_cast<int>(und.size()); ++gi) {
    const MultiGraph& g = und[static_cast<size_t>(gi)];
    std::string why;
    try {
      why = check_undirected(ordered_incidence(g, VocabTag::graph2));
    } catch (const std::exception& ex) {
      why = std::string("evaluation threw: ") + ex.what();
    }
    if (!why.empty()) {
#pragma omp critical(gpk_native_first)
      {
        if (gi < first_idx) {
          first_idx = gi;
          first_msg = why + " on " + describe(g);
        }
      }
    }
  }
#pragma omp parallel for schedule(dynamic)
  for (int gi = 0; gi < static_cast<int>(dir.size()); ++gi) {
    const MultiGraph& g = dir[static_cast<size_t>(gi)];
    std::string why;
    try {
      why = check_directed(ordered_incidence(g, VocabTag::directed2));
    } catch (const std::exception& ex) {
      why = std::string("evaluation threw: ") + ex.what();
    }
    if (!why.empty()) {
      int key = gi + static_cast<int>(und.size());
#pragma omp critical(gpk_native_first)
      {
        if (key < first_idx) {
          first_idx = key;
          first_msg = why + " on " + describe(g);
        }
      }
    }
  }
  if (first_idx != INT_MAX) {
    r.pass = false;
    r.detail = "first disagreement: " + first_msg;
  } else {
    std::ostringstream os;
    os << comparisons.load() << " comparisons across " << und.size()
       << " undirected and " << dir.size() << " directed structures agree";
    r.detail = os.str();
  }
  return finish(std::move(r), t0);
}

std::vector<SuiteResult> run_all_criteria() {
  std::vector<SuiteResult> out;
  out.push_back(criterion_initial_conditions());
  out.push_back(criterion_engine_agreement());
  out.push_back(criterion_order_invariance());
  out.push_back(criterion_fundamental_property());
  out.push_back(criterion_composition());
  out.push_back(criterion_synthesis_agreement());
  out.push_back(criterion_synthesized_censuses());
  out.push_back(criterion_renaming());
  out.push_back(criterion_builders());
  out.push_back(criterion_native_agreement());
  return out;
}

}  // namespace gpk
