#include "gpk/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "gpk/defs_data.hpp"
#include "gpk/error.hpp"
#include "gpk/synthesis.hpp"

namespace gpk {

namespace {

// Private union-find: the oracles must stay independent of the logic
// machinery, the natives included.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

struct EdgeIx {
  int u, v;  // endpoint vertex indices; u == v for loops
};

std::vector<EdgeIx> endpoint_table(const MultiGraph& g) {
  std::vector<EdgeIx> out;
  out.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    int u = g.vertex_index(e.tail), v = g.vertex_index(e.head);
    if (u < 0 || v < 0) throw Error("edge endpoint not declared: " + e.id);
    out.push_back({u, v});
  }
  return out;
}

uint64_t subset_space(size_t m) {
  if (m > 24) throw Error("oracle census limited to 24 edges");
  return uint64_t(1) << m;
}

int component_count(const MultiGraph& g, const std::vector<EdgeIx>& ends, uint64_t mask) {
  UnionFind uf((int)g.vertices.size());
  for (size_t e = 0; e < ends.size(); ++e)
    if (mask >> e & 1) uf.unite(ends[e].u, ends[e].v);
  int k = 0;
  for (int v = 0; v < (int)g.vertices.size(); ++v)
    if (uf.find(v) == v) ++k;
  return k;
}

// Loop-free, acyclic, and keeping every component of the full edge set
// connected.
bool spanning_forest(const std::vector<EdgeIx>& ends, int n, uint64_t mask, int k_full) {
  UnionFind uf(n);
  for (size_t e = 0; e < ends.size(); ++e) {
    if (!(mask >> e & 1)) continue;
    if (ends[e].u == ends[e].v) return false;
    if (!uf.unite(ends[e].u, ends[e].v)) return false;
  }
  int k = 0;
  for (int v = 0; v < n; ++v)
    if (uf.find(v) == v) ++k;
  return k == k_full;
}

// Shared rank-size census. sigma pushes the index family: position i
// contributes X<sigma(i)> with the count of components of size sigma(i), so
// a shifted family stops seeing the sizes that fell out of its image.
Polynomial noble_welsh_sum(const MultiGraph& g, const std::map<int, int>& sigma,
                           const std::string& y_name) {
  auto ends = endpoint_table(g);
  int n = (int)g.vertices.size();
  auto image = [&](int i) {
    auto it = sigma.find(i);
    return it == sigma.end() ? i : it->second;
  };
  {
    std::set<int> seen;
    for (int i = 1; i <= n; ++i)
      if (!seen.insert(image(i)).second) throw Error("renaming must be injective");
  }
  Polynomial total;
  for (uint64_t A = 0; A < subset_space(g.edges.size()); ++A) {
    UnionFind uf(n);
    int picked = 0;
    for (size_t e = 0; e < ends.size(); ++e) {
      if (!(A >> e & 1)) continue;
      ++picked;
      uf.unite(ends[e].u, ends[e].v);
    }
    std::vector<int> size(n, 0);
    for (int v = 0; v < n; ++v) ++size[uf.find(v)];
    int k = 0;
    std::vector<int> census(n + 1, 0);
    for (int v = 0; v < n; ++v) {
      if (uf.find(v) != v) continue;
      ++k;
      ++census[size[v]];
    }
    int nullity = picked - (n - k);
    Polynomial term = Polynomial::variable(y_name, nullity);
    for (int i = 1; i <= n; ++i) {
      int j = image(i);
      int exponent = (j >= 1 && j <= n) ? census[j] : 0;
      term *= Polynomial::variable("X" + std::to_string(j), exponent);
    }
    total += term;
  }
  return total;
}

} // namespace

Polynomial oracle_matching(const MultiGraph& g) {
  auto ends = endpoint_table(g);
  int n = (int)g.vertices.size();
  Polynomial total;
  for (uint64_t F = 0; F < subset_space(g.edges.size()); ++F) {
    std::vector<int> used(n, 0);
    bool ok = true;
    int picked = 0;
    for (size_t e = 0; e < ends.size() && ok; ++e) {
      if (!(F >> e & 1)) continue;
      ++picked;
      // a loop occupies its vertex once, so a lone loop is a matching
      ++used[ends[e].u];
      if (ends[e].v != ends[e].u) ++used[ends[e].v];
      ok = used[ends[e].u] <= 1 && used[ends[e].v] <= 1;
    }
    if (!ok) continue;
    int uncovered = (int)std::count(used.begin(), used.end(), 0);
    total += Polynomial::variable("X", uncovered) * Polynomial::variable("Y", picked);
  }
  return total;
}

Polynomial oracle_tutte(const MultiGraph& g, const std::vector<int>& edge_order) {
  auto ends = endpoint_table(g);
  int n = (int)g.vertices.size();
  int m = (int)g.edges.size();
  if ((int)edge_order.size() != m)
    throw Error("tutte oracle: order must list every edge exactly once");
  std::vector<int> rank(m, -1);
  for (int r = 0; r < m; ++r) {
    int e = edge_order[r];
    if (e < 0 || e >= m || rank[e] >= 0)
      throw Error("tutte oracle: order must list every edge exactly once");
    rank[e] = r;
  }
  int k_full = component_count(g, ends, subset_space(m) - 1);
  Polynomial total;
  for (uint64_t F = 0; F < subset_space(m); ++F) {
    if (!spanning_forest(ends, n, F, k_full)) continue;
    int internal = 0, external = 0;
    for (int e = 0; e < m; ++e) {
      bool active = true;
      if (F >> e & 1) {
        for (int f = 0; f < m && active; ++f)
          if (f != e && rank[f] < rank[e] &&
              spanning_forest(ends, n, (F & ~(uint64_t(1) << e)) | (uint64_t(1) << f), k_full))
            active = false;
        internal += active;
      } else {
        for (int f = 0; f < m && active; ++f)
          if (f != e && rank[f] < rank[e] &&
              spanning_forest(ends, n, (F | (uint64_t(1) << e)) & ~(uint64_t(1) << f), k_full))
            active = false;
        external += active;
      }
    }
    total += Polynomial::variable("X", internal) * Polynomial::variable("Y", external);
  }
  return total;
}

Polynomial oracle_tutte(const MultiGraph& g) {
  std::vector<int> order((size_t)g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  return oracle_tutte(g, order);
}

Polynomial oracle_potts(const MultiGraph& g) {
  auto ends = endpoint_table(g);
  int n = (int)g.vertices.size();
  Polynomial total;
  for (uint64_t A = 0; A < subset_space(g.edges.size()); ++A) {
    UnionFind uf(n);
    int picked = 0;
    for (size_t e = 0; e < ends.size(); ++e) {
      if (!(A >> e & 1)) continue;
      ++picked;
      uf.unite(ends[e].u, ends[e].v);
    }
    int k = 0;
    for (int v = 0; v < n; ++v)
      if (uf.find(v) == v) ++k;
    total += Polynomial::variable("q", k) * Polynomial::variable("v", picked);
  }
  return total;
}

Polynomial oracle_xi(const MultiGraph& g) {
  auto ends = endpoint_table(g);
  int n = (int)g.vertices.size();
  int m = (int)g.edges.size();
  std::vector<uint64_t> vmask(m, 0);
  for (int e = 0; e < m; ++e)
    vmask[e] = (uint64_t(1) << ends[e].u) | (uint64_t(1) << ends[e].v);
  Polynomial total;
  for (uint64_t A = 0; A < subset_space(m); ++A) {
    uint64_t va = 0;
    for (int e = 0; e < m; ++e)
      if (A >> e & 1) va |= vmask[e];
    for (uint64_t B = 0; B < subset_space(m); ++B) {
      uint64_t vb = 0;
      for (int e = 0; e < m; ++e)
        if (B >> e & 1) vb |= vmask[e];
      if (va & vb) continue;
      UnionFind uf(n);
      int picked = 0;
      for (int e = 0; e < m; ++e) {
        if (!((A | B) >> e & 1)) continue;
        ++picked;
        uf.unite(ends[e].u, ends[e].v);
      }
      std::vector<char> has_b(n, 0);
      for (int e = 0; e < m; ++e)
        if (B >> e & 1) has_b[uf.find(ends[e].u)] = 1;
      int k = 0, k_b = 0;
      for (int v = 0; v < n; ++v) {
        if (uf.find(v) != v) continue;
        ++k;
        k_b += has_b[v];
      }
      total += Polynomial::variable("X", k - k_b) * Polynomial::variable("Y", picked - k_b) *
               Polynomial::variable("Z", k_b);
    }
  }
  return total;
}

Polynomial oracle_cover(const MultiGraph& g) {
  if (!g.directed) throw Error("cover oracle needs a directed graph");
  auto ends = endpoint_table(g);
  int n = (int)g.vertices.size();
  int m = (int)g.edges.size();
  Polynomial x = Polynomial::variable("X");
  Polynomial total;
  for (uint64_t B = 0; B < subset_space(m); ++B) {
    std::vector<int> outd(n, 0), ind(n, 0);
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(B >> e & 1)) continue;
      ok = ++outd[ends[e].u] <= 1 && ++ind[ends[e].v] <= 1;
    }
    if (!ok) continue;
    UnionFind uf(n);
    for (int e = 0; e < m; ++e)
      if (B >> e & 1) uf.unite(ends[e].u, ends[e].v);
    std::vector<int> vs(n, 0), es(n, 0);
    for (int v = 0; v < n; ++v) ++vs[uf.find(v)];
    for (int e = 0; e < m; ++e)
      if (B >> e & 1) ++es[uf.find(ends[e].u)];
    int paths = 0, cycles = 0;
    for (int v = 0; v < n; ++v) {
      if (uf.find(v) != v) continue;
      // a component with in/out degrees capped at one is a directed cycle
      // exactly when it has as many edges as vertices, a path otherwise
      (es[v] == vs[v] ? cycles : paths)++;
    }
    Polynomial term = Polynomial::variable("Y", cycles);
    for (int t = 0; t < paths; ++t) term *= x - Polynomial::constant(t);
    total += term;
  }
  return total;
}

Polynomial oracle_noble_welsh(const MultiGraph& g) { return noble_welsh_sum(g, {}, "y"); }

Polynomial oracle_noble_welsh_renamed(const MultiGraph& g, const std::map<int, int>& sigma,
                                      const std::string& y_name) {
  return noble_welsh_sum(g, sigma, y_name);
}

std::vector<int> edges_first_order(const IncidenceStructure& s) {
  std::vector<int> order;
  order.reserve((size_t)s.size());
  for (int i = 0; i < s.size(); ++i)
    if (s.is_edge(i)) order.push_back(i);
  for (int i = 0; i < s.size(); ++i)
    if (s.is_vertex(i)) order.push_back(i);
  return order;
}

OrderedStructure ordered_incidence(const MultiGraph& g, VocabTag vocab) {
  OrderedStructure m;
  m.s = to_incidence(g, vocab);
  m.order = edges_first_order(m.s);
  m.context_arity = 1;
  return m;
}

PolyExprPtr noble_welsh_expansion(int max_component_size, const ParseCtx& macros) {
  std::ostringstream os;
  os << "(sum-rel ((A 1)) (subset A edges) (prod\n";
  // nullity of A: edges whose endpoints were already joined by earlier A-edges
  os << "  (card-power y (e)\n"
        "    (and (in e A)\n"
        "         (or (call loop e)\n"
        "             (exists (u w) (and (not (= u w)) (rel N u e) (rel N w e)\n"
        "                                (call conn-v (before A e) u w))))))\n";
  for (int i = 1; i <= max_component_size; ++i)
    os << "  (card-power X" << i << " (v)\n"
       << "    (and (native in-last-in-comp verts A v)\n"
       << "         (exists-exactly " << i << " w (and (rel PV w) (call conn-v A v w)))))\n";
  os << "))";
  return parse_poly_expr_text(os.str(), macros);
}

namespace {

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  auto parse_with_predicates = [](const char* text) {
    return parse_def_file(std::string(defs::kPredicates) + "\n" + text);
  };
  auto table_entry = [&](const char* name, const char* text, const char* expansion_name,
                         VocabTag vocab, std::vector<std::string> inds,
                         std::function<Polynomial(const MultiGraph&)> oracle,
                         const char* notes) {
    DefFile f = parse_with_predicates(text);
    CatalogEntry e;
    e.name = name;
    e.vocab = vocab;
    e.directed = vocab == VocabTag::directed2;
    e.indeterminates = std::move(inds);
    e.recursion = f.definitions.at(0);
    e.expansion = f.polys.at(expansion_name);
    e.macros = f.macros;
    e.oracle = std::move(oracle);
    e.notes = notes;
    out.push_back(std::move(e));
  };

  table_entry("matching", defs::kMatching, "matching-expansion", VocabTag::graph2, {"X", "Y"},
              [](const MultiGraph& g) { return oracle_matching(g); },
              "X marks uncovered vertices, Y matched edges; a loop is matchable and covers "
              "its vertex once");
  table_entry("tutte", defs::kTutte, "tutte-expansion", VocabTag::graph2, {"X", "Y"},
              [](const MultiGraph& g) { return oracle_tutte(g); },
              "spanning-forest census with internal/external activities; the value is "
              "independent of the edge order");
  table_entry("potts", defs::kPotts, "potts-expansion", VocabTag::graph2, {"q", "v"},
              [](const MultiGraph& g) { return oracle_potts(g); },
              "component census over edge subsets; q^k(A) v^|A|");
  table_entry("xi", defs::kXi, "xi-expansion", VocabTag::graph2, {"X", "Y", "Z"},
              [](const MultiGraph& g) { return oracle_xi(g); },
              "vertex-disjoint subset pairs (A,B); Z marks one edge per covered component");
  table_entry("cover", defs::kCover, "cover-expansion", VocabTag::directed2, {"X", "Y"},
              [](const MultiGraph& g) { return oracle_cover(g); },
              "path/cycle covers of a digraph; X falls over the path count, Y counts "
              "cycles; a single loop gives X + Y");

  {
    DefFile f = parse_def_file(defs::kPredicates);
    CatalogEntry e;
    e.name = "noble-welsh";
    e.vocab = VocabTag::graph2;
    e.indeterminates = {"X<i>", "y"};
    e.macros = f.macros;
    e.oracle = [](const MultiGraph& g) { return oracle_noble_welsh(g); };
    e.notes = "rank-size census with one indeterminate per component size; no recursion "
              "table ships because the indexed family outgrows any fixed rule set, and the "
              "expansion is built per universe size";
    out.push_back(std::move(e));
  }
  return out;
}

} // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

Polynomial eval_entry(const CatalogEntry& entry, const MultiGraph& g, const std::string& engine,
                      const EvalLimits& limits, const std::vector<int>* order) {
  if (engine == "oracle") return entry.oracle(g);
  if (engine == "expansion") {
    OrderedStructure m = ordered_incidence(g, entry.vocab);
    if (order) {
      m.order = *order;
      m.validate();
    }
    PolyExprPtr expr = entry.expansion;
    if (!expr) {
      if (entry.name != "noble-welsh")
        throw Error("entry " + entry.name + " has no expansion form");
      expr = noble_welsh_expansion((int)g.vertices.size(), entry.macros);
    }
    std::vector<int> pos = m.positions();
    return eval_poly_on(*expr, m.s, &pos, {}, limits);
  }
  if (engine == "recursive" || engine == "synthesized") {
    if (!entry.recursion)
      throw Error("entry " + entry.name + " has no recursive definition");
    OrderedStructure m = ordered_incidence(g, entry.vocab);
    if (order) {
      m.order = *order;
      m.validate();
    }
    if (engine == "recursive") {
      RecursiveEvaluator ev(*entry.recursion, limits);
      return ev.evaluate(m);
    }
    return synthesize_parallel(*entry.recursion, m, limits).value;
  }
  throw Error("unknown engine " + engine +
              " (expected recursive, expansion, oracle or synthesized)");
}

Polynomial rename_vars(const Polynomial& p,
                       const std::vector<std::pair<std::string, std::string>>& renames) {
  // route through temporaries so swaps do not cascade
  Polynomial out = p;
  for (size_t i = 0; i < renames.size(); ++i)
    out = out.substitute(renames[i].first,
                         Polynomial::variable("gpk$rename" + std::to_string(i)));
  for (size_t i = 0; i < renames.size(); ++i)
    out = out.substitute("gpk$rename" + std::to_string(i),
                         Polynomial::variable(renames[i].second));
  return out;
}

PolyExprPtr rename_poly_expr(const PolyExprPtr& e,
                             const std::vector<std::pair<std::string, std::string>>& renames) {
  if (!e) return e;
  switch (e->kind) {
    case PolyExpr::Kind::constant:
      return pe_const(rename_vars(e->value, renames));
    case PolyExpr::Kind::truth_value:
      return e;
    case PolyExpr::Kind::product:
    case PolyExpr::Kind::sum: {
      std::vector<PolyExprPtr> children;
      children.reserve(e->children.size());
      for (const auto& c : e->children) children.push_back(rename_poly_expr(c, renames));
      return e->kind == PolyExpr::Kind::product ? pe_product(std::move(children))
                                                : pe_sum(std::move(children));
    }
    case PolyExpr::Kind::guarded_product:
      return pe_guarded_product(e->vars, e->guard, rename_poly_expr(e->children.at(0), renames));
    case PolyExpr::Kind::small_sum:
      return pe_small_sum(e->vars, e->guard, rename_poly_expr(e->children.at(0), renames));
    case PolyExpr::Kind::large_sum:
      return pe_large_sum(e->rel_vars, e->guard, rename_poly_expr(e->children.at(0), renames));
  }
  throw Error("unreachable expression kind");
}

RecursiveDefinition rename_definition(const RecursiveDefinition& def,
                                      const std::vector<std::pair<std::string, std::string>>& renames) {
  RecursiveDefinition out = def;
  out.empty_value = rename_vars(out.empty_value, renames);
  for (auto& rule : out.rules) rule.coeff = rename_poly_expr(rule.coeff, renames);
  return out;
}

bool renaming_invariance_test(const CatalogEntry& entry, const MultiGraph& g,
                              const std::vector<std::pair<std::string, std::string>>& renames) {
  {
    std::set<std::string> keys, values;
    for (const auto& [from, to] : renames)
      if (!keys.insert(from).second || !values.insert(to).second)
        throw Error("renaming must be injective");
  }
  if (entry.name == "noble-welsh") {
    std::map<int, int> sigma;
    std::string y_name = "y";
    for (const auto& [from, to] : renames) {
      if (from == "y") {
        y_name = to;
        continue;
      }
      auto index_of = [](const std::string& name) {
        if (name.size() < 2 || name[0] != 'X' ||
            !std::all_of(name.begin() + 1, name.end(),
                         [](unsigned char c) { return std::isdigit(c); }))
          throw Error("noble-welsh renames must map X<i> names or y");
        return std::stoi(name.substr(1));
      };
      sigma[index_of(from)] = index_of(to);
    }
    Polynomial recomputed = oracle_noble_welsh_renamed(g, sigma, y_name);
    Polynomial substituted = rename_vars(oracle_noble_welsh(g), renames);
    return recomputed == substituted;
  }
  if (!entry.recursion)
    throw Error("entry " + entry.name + " has no recursive definition to rename");
  OrderedStructure m = ordered_incidence(g, entry.vocab);
  RecursiveDefinition renamed = rename_definition(*entry.recursion, renames);
  RecursiveEvaluator original_eval(*entry.recursion);
  RecursiveEvaluator renamed_eval(renamed);
  Polynomial original = original_eval.evaluate(m);
  Polynomial recomputed = renamed_eval.evaluate(m);
  return recomputed == rename_vars(original, renames);
}

} // namespace gpk
