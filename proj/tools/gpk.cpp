#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "gpk/catalog.hpp"
#include "gpk/corpus.hpp"
#include "gpk/error.hpp"
#include "gpk/eval.hpp"
#include "gpk/recurrence.hpp"
#include "gpk/suites.hpp"
#include "gpk/synthesis.hpp"

namespace {

using gpk::BudgetError;
using gpk::Error;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int64_t budget_from_env() {
  const char* v = std::getenv("GPK_BUDGET_MS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  long long ms = std::strtoll(v, &end, 10);
  if (end == v || *end != '\0' || ms < 0)
    throw Error("GPK_BUDGET_MS must be a nonnegative integer, got '" +
                std::string(v) + "'");
  return ms;
}

void enforce_budget(int64_t budget_ms, Clock::time_point t0,
                    const std::string& what) {
  if (budget_ms > 0 && seconds_since(t0) * 1000.0 > double(budget_ms))
    throw BudgetError(what + " exceeded GPK_BUDGET_MS=" +
                      std::to_string(budget_ms));
}

const gpk::CatalogEntry& entry_or_throw(const std::string& poly) {
  const gpk::CatalogEntry* e = gpk::find_entry(poly);
  if (!e) {
    std::string names;
    for (const auto& c : gpk::catalog()) names += (names.empty() ? "" : ", ") + c.name;
    throw Error("unknown polynomial '" + poly + "' (have: " + names + ")");
  }
  return *e;
}

// Builtin name first, file path second. The graph's orientation follows the
// chosen polynomial's vocabulary, so the undirected builtins work with cover.
gpk::MultiGraph load_graph(const std::string& arg,
                           const gpk::CatalogEntry& entry, bool* from_file) {
  const auto names = gpk::builtin_graph_names();
  gpk::MultiGraph g;
  if (std::find(names.begin(), names.end(), arg) != names.end()) {
    g = gpk::builtin_graph(arg);
    if (from_file) *from_file = false;
  } else if (std::filesystem::exists(arg)) {
    g = gpk::MultiGraph::load(arg);
    if (from_file) *from_file = true;
  } else {
    std::string have;
    for (const auto& n : names) have += (have.empty() ? "" : ", ") + n;
    throw Error("unknown graph '" + arg + "' (neither a file nor one of: " + have + ")");
  }
  g.directed = entry.vocab == gpk::VocabTag::directed2;
  return g;
}

std::optional<std::vector<int>> resolve_order(const std::string& source,
                                              const gpk::CatalogEntry& entry,
                                              const gpk::MultiGraph& g) {
  if (source == "declaration") return std::nullopt;  // edges first, then vertices
  gpk::OrderedStructure m = gpk::ordered_incidence(g, entry.vocab);
  if (source.rfind("random:", 0) == 0) {
    if (!entry.recursion)
      throw Error("order source random: needs a recursive definition, which " +
                  entry.name + " does not have");
    uint64_t seed = 0;
    try {
      seed = std::stoull(source.substr(7));
    } catch (const std::exception&) {
      throw Error("bad seed in order source '" + source + "'");
    }
    return gpk::random_valid_order(*entry.recursion, m.s, seed);
  }
  if (source.rfind("file:", 0) == 0) {
    std::ifstream in(source.substr(5));
    if (!in) throw Error("cannot open order file '" + source.substr(5) + "'");
    std::vector<int> order;
    std::string id;
    while (in >> id) {
      int ix = m.s.index_of(id);
      if (ix < 0) throw Error("order file names unknown element '" + id + "'");
      order.push_back(ix);
    }
    if (static_cast<int>(order.size()) != m.s.size())
      throw Error("order file lists " + std::to_string(order.size()) +
                  " elements, the structure has " + std::to_string(m.s.size()));
    return order;
  }
  throw Error("unknown order source '" + source +
              "' (use declaration, random:SEED or file:PATH)");
}

json graph_provenance(const gpk::MultiGraph& g, bool from_file) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(e.id + ":" + e.tail + (g.directed ? ">" : "-") + e.head);
  return json{{"source", from_file ? "file" : "builtin"},
              {"directed", g.directed},
              {"vertices", g.vertices},
              {"edges", edges}};
}

int run_eval(const std::string& poly, const std::string& graph_arg,
             const std::string& engine, const std::string& order_spec,
             const std::string& format) {
  const gpk::CatalogEntry& entry = entry_or_throw(poly);
  bool from_file = false;
  gpk::MultiGraph g = load_graph(graph_arg, entry, &from_file);
  std::optional<std::vector<int>> order = resolve_order(order_spec, entry, g);
  int64_t budget = budget_from_env();
  auto t0 = Clock::now();
  gpk::Polynomial p =
      gpk::eval_entry(entry, g, engine, {}, order ? &*order : nullptr);
  enforce_budget(budget, t0, "eval");
  if (format == "machine") {
    json doc;
    doc["command"] = "eval";
    doc["config"] = {{"poly", poly},
                     {"graph", graph_arg},
                     {"engine", engine},
                     {"order", order_spec},
                     {"budget_ms", budget}};
    doc["results"] = {{"polynomial", p.to_text()}};
    json prov = graph_provenance(g, from_file);
    if (order) prov["order_indices"] = *order;
    doc["provenance"] = prov;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << p.to_text() << "\n";
  }
  return 0;
}

int run_check(const std::string& poly, const std::string& corpus_name,
              const std::string& format) {
  const gpk::CatalogEntry& entry = entry_or_throw(poly);
  if (corpus_name != "small")
    throw Error("unknown corpus '" + corpus_name + "' (only: small)");
  const bool directed = entry.vocab == gpk::VocabTag::directed2;
  // small: every labeled multigraph within the acceptance bounds, which are
  // 4 vertices and 5 edges undirected, 3 vertices and 4 edges directed
  const auto corpus = directed ? gpk::all_multigraphs(3, 4, true)
                               : gpk::all_multigraphs(4, 5, false);
  int64_t budget = budget_from_env();
  gpk::AgreementReport rep = gpk::check_entry_agreement(entry, corpus, budget);
  if (format == "machine") {
    json doc;
    doc["command"] = "check";
    doc["config"] = {{"poly", poly}, {"corpus", corpus_name},
                     {"budget_ms", budget}};
    doc["results"] = {{"instances", rep.instances},
                      {"mismatches", rep.mismatches},
                      {"first_mismatch", rep.first_mismatch}};
    doc["provenance"] = {
        {"engines", json::array({"recursive", "expansion", "oracle"})},
        {"corpus",
         directed ? "all labeled directed multigraphs, at most 3 vertices "
                    "and 4 edges"
                  : "all labeled multigraphs, at most 4 vertices and 5 "
                    "edges"}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "checked " << rep.instances << " graphs: " << rep.mismatches
              << " mismatches\n";
    if (rep.mismatches > 0) std::cout << "first: " << rep.first_mismatch << "\n";
  }
  return rep.mismatches > 0 ? 4 : 0;
}

int run_invariance(const std::string& poly, const std::string& graph_arg,
                   const std::string& orders_spec, uint64_t seed,
                   const std::string& format) {
  const gpk::CatalogEntry& entry = entry_or_throw(poly);
  if (!entry.recursion)
    throw Error(entry.name + " has no recursive definition to vary orders of");
  gpk::MultiGraph g = load_graph(graph_arg, entry, nullptr);
  gpk::OrderedStructure m = gpk::ordered_incidence(g, entry.vocab);
  int64_t budget = budget_from_env();
  auto t0 = Clock::now();
  std::vector<std::vector<int>> orders;
  if (orders_spec == "all") {
    if (m.s.size() > 8)
      throw Error("enumerating all orders is limited to 8 elements; pass a "
                  "count to sample instead");
    orders = gpk::all_valid_orders(*entry.recursion, m.s);
  } else {
    int count = 0;
    try {
      count = std::stoi(orders_spec);
    } catch (const std::exception&) {
      throw Error("--orders takes 'all' or a positive count");
    }
    if (count <= 0) throw Error("--orders takes 'all' or a positive count");
    for (int i = 0; i < count; ++i)
      orders.push_back(
          gpk::random_valid_order(*entry.recursion, m.s, seed + uint64_t(i)));
  }
  gpk::InvarianceReport rep =
      gpk::check_order_invariance(*entry.recursion, m.s, orders);
  enforce_budget(budget, t0, "invariance");
  if (format == "machine") {
    json doc;
    doc["command"] = "invariance";
    doc["config"] = {{"poly", poly},
                     {"graph", graph_arg},
                     {"orders", orders_spec},
                     {"seed", seed},
                     {"budget_ms", budget}};
    doc["results"] = {{"orders_checked", rep.orders_checked},
                      {"distinct_polynomials", rep.agree ? 1 : 2},
                      {"polynomial", rep.agree ? rep.value.to_text() : ""},
                      {"mismatch", rep.mismatch_detail}};
    doc["provenance"] = {{"order_source",
                          orders_spec == "all" ? "exhaustive" : "seeded"}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << rep.orders_checked << " admissible orders, "
              << (rep.agree ? "1 distinct polynomial" : "MISMATCH") << "\n";
    if (rep.agree)
      std::cout << rep.value.to_text() << "\n";
    else
      std::cout << rep.mismatch_detail << "\n";
  }
  return rep.agree ? 0 : 4;
}

int run_fundamental(int trials, int max_size, uint64_t seed,
                    const std::string& format) {
  if (trials <= 0) throw Error("--trials must be positive");
  if (max_size < 0 || max_size > 10)
    throw Error("--max-size must be between 0 and 10");
  int64_t budget = budget_from_env();
  auto t0 = Clock::now();
  gpk::PropertyReport rep = gpk::fundamental_random(trials, max_size, seed);
  enforce_budget(budget, t0, "fundamental");
  if (format == "machine") {
    json doc;
    doc["command"] = "fundamental";
    doc["config"] = {{"trials", trials},
                     {"max_size", max_size},
                     {"seed", seed},
                     {"budget_ms", budget}};
    doc["results"] = {{"checked", rep.checked},
                      {"agreed", rep.checked - rep.failures},
                      {"failures", rep.failures},
                      {"first_failure", rep.first_failure}};
    doc["provenance"] = {{"schemes", gpk::suite_schemes().size()},
                         {"formulas", gpk::suite_formulas().size()}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << (rep.checked - rep.failures) << "/" << rep.checked
              << " agree\n";
    if (rep.failures > 0) std::cout << "first: " << rep.first_failure << "\n";
  }
  return rep.failures > 0 ? 4 : 0;
}

// Serial reference paths against the parallel kernels, same inputs, results
// compared for equality. Wall times vary run to run, also in machine mode.
int run_bench(const std::string& format) {
  struct Row {
    std::string task;
    double serial_s = 0, parallel_s = 0;
    bool equal = false;
  };
  std::vector<Row> rows;
  int64_t budget = budget_from_env();
  auto t0 = Clock::now();

  {
    const gpk::CatalogEntry& potts = entry_or_throw("potts");
    gpk::OrderedStructure m =
        gpk::ordered_incidence(gpk::builtin_graph("c4"), potts.vocab);
    Row row{"synthesis potts on c4 (depth-first reference vs flat "
            "enumeration)",
            0, 0, false};
    auto a = Clock::now();
    gpk::SynthesisResult serial = gpk::synthesize_serial(*potts.recursion, m);
    row.serial_s = seconds_since(a);
    auto b = Clock::now();
    gpk::SynthesisResult parallel =
        gpk::synthesize_parallel(*potts.recursion, m);
    row.parallel_s = seconds_since(b);
    row.equal = serial.value == parallel.value &&
                serial.colorings == parallel.colorings;
    rows.push_back(row);
    enforce_budget(budget, t0, "bench");
  }
  {
    const gpk::CatalogEntry& xi = entry_or_throw("xi");
    gpk::OrderedStructure m =
        gpk::ordered_incidence(gpk::builtin_graph("k4"), xi.vocab);
    std::vector<int> pos = m.positions();
    gpk::Evaluator ev(m.s, &pos);
    gpk::Assignment a;
    Row row{"subset expansion xi on k4 (serial vs split large sum)", 0, 0,
            false};
    auto ta = Clock::now();
    gpk::Polynomial serial = gpk::eval_poly(*xi.expansion, ev, a);
    row.serial_s = seconds_since(ta);
    auto tb = Clock::now();
    gpk::Polynomial parallel = gpk::eval_poly_parallel(*xi.expansion, ev, a);
    row.parallel_s = seconds_since(tb);
    row.equal = serial == parallel;
    rows.push_back(row);
    enforce_budget(budget, t0, "bench");
  }
  {
    const gpk::CatalogEntry& matching = entry_or_throw("matching");
    const auto corpus = gpk::all_multigraphs(3, 3, false);
    Row row{"engine agreement matching, 109 graphs (one thread vs all)", 0, 0,
            false};
#ifdef _OPENMP
    int threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    auto ta = Clock::now();
    gpk::AgreementReport serial = gpk::check_entry_agreement(matching, corpus);
    row.serial_s = seconds_since(ta);
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
    auto tb = Clock::now();
    gpk::AgreementReport parallel =
        gpk::check_entry_agreement(matching, corpus);
    row.parallel_s = seconds_since(tb);
    row.equal = serial.mismatches == 0 && parallel.mismatches == 0;
    rows.push_back(row);
    enforce_budget(budget, t0, "bench");
  }

  bool all_equal = true;
  for (const Row& r : rows) all_equal = all_equal && r.equal;
  if (format == "machine") {
    json doc;
    doc["command"] = "bench";
    doc["config"] = {{"budget_ms", budget}};
    json jrows = json::array();
    for (const Row& r : rows)
      jrows.push_back({{"task", r.task},
                       {"serial_seconds", r.serial_s},
                       {"parallel_seconds", r.parallel_s},
                       {"equal", r.equal}});
    doc["results"] = jrows;
    doc["provenance"] = {
        {"note", "wall times vary run to run; the equal flags do not"}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout.setf(std::ios::fixed);
    std::cout.precision(3);
    for (const Row& r : rows)
      std::cout << r.task << "\n  serial " << r.serial_s << " s, parallel "
                << r.parallel_s << " s, results "
                << (r.equal ? "equal" : "DIFFER") << "\n";
  }
  return all_equal ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph polynomials from recursive definitions and subset "
               "expansions"};
  app.require_subcommand(1);
  std::string format = "text";
  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or machine (one JSON document)")
        ->check(CLI::IsMember({"text", "machine"}));
  };

  auto* eval_cmd =
      app.add_subcommand("eval", "evaluate one polynomial on one graph");
  std::string eval_poly, eval_graph, eval_engine = "recursive";
  std::string eval_order = "declaration";
  eval_cmd->add_option("--poly", eval_poly, "catalog entry")->required();
  eval_cmd->add_option("--graph", eval_graph, "builtin name or file path")
      ->required();
  eval_cmd->add_option("--engine", eval_engine,
                       "recursive, expansion, oracle or synthesized");
  eval_cmd->add_option("--order", eval_order,
                       "declaration, random:SEED or file:PATH");
  add_format(eval_cmd);

  auto* check_cmd = app.add_subcommand(
      "check", "recursive = expansion = oracle across a corpus");
  std::string check_poly, check_corpus = "small";
  check_cmd->add_option("--poly", check_poly, "catalog entry")->required();
  check_cmd->add_option("--corpus", check_corpus, "corpus name (small)");
  add_format(check_cmd);

  auto* inv_cmd = app.add_subcommand(
      "invariance", "one polynomial per graph across admissible orders");
  std::string inv_poly, inv_graph, inv_orders = "all";
  uint64_t inv_seed = 1;
  inv_cmd->add_option("--poly", inv_poly, "catalog entry")->required();
  inv_cmd->add_option("--graph", inv_graph, "builtin name or file path")
      ->required();
  inv_cmd->add_option("--orders", inv_orders, "'all' or a sample count");
  inv_cmd->add_option("--seed", inv_seed, "seed for sampled orders");
  add_format(inv_cmd);

  auto* fun_cmd = app.add_subcommand(
      "fundamental", "random rewriting/transduction agreement trials");
  int fun_trials = 200, fun_max_size = 4;
  uint64_t fun_seed = 7;
  fun_cmd->add_option("--trials", fun_trials, "number of random triples");
  fun_cmd->add_option("--max-size", fun_max_size,
                      "largest random structure, in elements");
  fun_cmd->add_option("--seed", fun_seed, "trial seed");
  add_format(fun_cmd);

  auto* bench_cmd = app.add_subcommand(
      "bench", "serial reference paths against the parallel kernels");
  add_format(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (eval_cmd->parsed())
      return run_eval(eval_poly, eval_graph, eval_engine, eval_order, format);
    if (check_cmd->parsed()) return run_check(check_poly, check_corpus, format);
    if (inv_cmd->parsed())
      return run_invariance(inv_poly, inv_graph, inv_orders, inv_seed, format);
    if (fun_cmd->parsed())
      return run_fundamental(fun_trials, fun_max_size, fun_seed, format);
    return run_bench(format);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const gpk::InfeasibleOrderError& e) {
    std::cerr << "infeasible order: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
