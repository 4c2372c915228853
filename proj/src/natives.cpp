#include "gpk/natives.hpp"

#include <numeric>

#include "gpk/error.hpp"

namespace gpk {

ElemMask all_vertices_mask(const IncidenceStructure& s) {
  ElemMask m = 0;
  for (int i = 0; i < (int)s.universe.size(); ++i)
    if (s.kinds[i] == ElementKind::vertex) m |= ElemMask(1) << i;
  return m;
}

ElemMask all_edges_mask(const IncidenceStructure& s) {
  ElemMask m = 0;
  for (int i = 0; i < (int)s.universe.size(); ++i)
    if (s.kinds[i] == ElementKind::edge) m |= ElemMask(1) << i;
  return m;
}

namespace natives {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Endpoint element indices of edge element e (loop yields u == v).
std::pair<int, int> endpoints_of(const IncidenceStructure& s, int e) {
  int u = -1, v = -1;
  int n = (int)s.universe.size();
  if (s.vocab == VocabTag::directed2) {
    const Relation& no = s.relation("NO");
    const Relation& ni = s.relation("NI");
    for (int x = 0; x < n; ++x) {
      if (s.kinds[x] != ElementKind::vertex) continue;
      if (no.contains({x, e})) u = x;
      if (ni.contains({e, x})) v = x;
    }
  } else {
    const Relation& inc = s.relation("N");
    for (int x = 0; x < n; ++x) {
      if (s.kinds[x] != ElementKind::vertex) continue;
      if (inc.contains({x, e})) { if (u < 0) u = x; else v = x; }
    }
    if (v < 0) v = u;  // single incidence pair = loop
  }
  if (u < 0 || v < 0) throw Error("edge without endpoints in incidence data");
  return {u, v};
}

// Union-find over the whole universe: S-edges join their endpoints, and each
// S-edge joins the edge element itself to that endpoint class. Edge elements
// outside S stay singletons that no connectivity question should reach.
Dsu components(const IncidenceStructure& s, ElemMask S) {
  int n = (int)s.universe.size();
  Dsu d(n);
  for (int e = 0; e < n; ++e) {
    if (s.kinds[e] != ElementKind::edge) continue;
    if (!(S >> e & 1)) continue;
    auto [u, v] = endpoints_of(s, e);
    d.unite(u, v);
    d.unite(u, e);
  }
  return d;
}

bool is_edge_elem(const IncidenceStructure& s, int x) {
  return s.kinds[x] == ElementKind::edge;
}

} // namespace

bool connected(const IncidenceStructure& s, ElemMask S, int x, int y) {
  if (x == y) return true;  // reflexive on every element
  // for distinct elements an edge participates only as a member of S
  if (is_edge_elem(s, x) && !(S >> x & 1)) return false;
  if (is_edge_elem(s, y) && !(S >> y & 1)) return false;
  Dsu d = components(s, S);
  return d.find(x) == d.find(y);
}

bool in_touching(const IncidenceStructure& s, ElemMask D, ElemMask S, int x) {
  if (!(D >> x & 1)) return false;
  int n = (int)s.universe.size();
  for (int e = 0; e < n; ++e) {
    if (!is_edge_elem(s, e) || !(S >> e & 1)) continue;
    auto [u, v] = endpoints_of(s, e);
    if (!is_edge_elem(s, x)) {
      if (x == u || x == v) return true;
    } else {
      auto [a, b] = endpoints_of(s, x);
      if (a == u || a == v || b == u || b == v) return true;
    }
  }
  return false;
}

bool in_last_in_comp(const IncidenceStructure& s, const std::vector<int>& pos,
                     ElemMask D, ElemMask S, int x) {
  if (!(D >> x & 1)) return false;
  int n = (int)s.universe.size();
  // only D-elements compete for being last, so vertex and edge censuses do
  // not disturb each other whatever the sort order of the universe
  for (int y = 0; y < n; ++y) {
    if (y == x || !(D >> y & 1) || pos[y] <= pos[x]) continue;
    if (connected(s, S, x, y)) return false;
  }
  return true;
}

bool cycle(const IncidenceStructure& s, ElemMask S) {
  if (s.vocab == VocabTag::directed2)
    throw Error("cycle predicate is defined on undirected structures");
  int n = (int)s.universe.size();
  std::vector<int> deg(n, 0);
  std::vector<int> touched;
  for (int e = 0; e < n; ++e) {
    if (!is_edge_elem(s, e) || !(S >> e & 1)) continue;
    auto [u, v] = endpoints_of(s, e);
    // incidence count: a loop contributes a single pair, hence degree 1
    deg[u] += 1;
    if (v != u) deg[v] += 1;
  }
  for (int x = 0; x < n; ++x)
    if (s.kinds[x] == ElementKind::vertex && deg[x] > 0) touched.push_back(x);
  if (touched.empty()) return true;  // vacuously 2-regular and connected
  Dsu d = components(s, S);
  int root = d.find(touched[0]);
  for (int x : touched) {
    if (deg[x] != 2) return false;
    if (d.find(x) != root) return false;
  }
  return true;
}

bool bridge(const IncidenceStructure& s, int e) {
  if (!is_edge_elem(s, e)) return false;
  auto [u, v] = endpoints_of(s, e);
  if (u == v) return false;
  ElemMask rest = all_edges_mask(s) & ~(ElemMask(1) << e);
  return !connected(s, rest, u, v);
}

bool spanning_forest(const IncidenceStructure& s, ElemMask F) {
  int n = (int)s.universe.size();
  Dsu d(n);
  for (int e = 0; e < n; ++e) {
    if (!is_edge_elem(s, e) || !(F >> e & 1)) continue;
    auto [u, v] = endpoints_of(s, e);
    if (u == v) return false;         // a loop is a circuit
    if (!d.unite(u, v)) return false; // closes a cycle
  }
  return component_count(s, F) == component_count(s, all_edges_mask(s));
}

bool cycle_path_cover(const IncidenceStructure& s, ElemMask B) {
  if (s.vocab != VocabTag::directed2)
    throw Error("cycle-path-cover predicate needs a directed structure");
  int n = (int)s.universe.size();
  std::vector<int> outd(n, 0), ind(n, 0);
  for (int e = 0; e < n; ++e) {
    if (!is_edge_elem(s, e) || !(B >> e & 1)) continue;
    auto [u, v] = endpoints_of(s, e);
    outd[u] += 1;
    ind[v] += 1;
  }
  for (int x = 0; x < n; ++x) {
    if (s.kinds[x] != ElementKind::vertex) continue;
    if (outd[x] > 1 || ind[x] > 1) return false;
  }
  return true;
}

bool on_cycle(const IncidenceStructure& s, ElemMask B, int v) {
  if (s.vocab != VocabTag::directed2)
    throw Error("on-cycle predicate needs a directed structure");
  if (is_edge_elem(s, v)) return false;
  int n = (int)s.universe.size();
  // reach v from v through at least one B-edge
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (int e = 0; e < n; ++e) {
    if (!is_edge_elem(s, e) || !(B >> e & 1)) continue;
    auto [u, w] = endpoints_of(s, e);
    if (u == v) { if (!seen[w]) { seen[w] = 1; stack.push_back(w); } }
  }
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (x == v) return true;
    for (int e = 0; e < n; ++e) {
      if (!is_edge_elem(s, e) || !(B >> e & 1)) continue;
      auto [u, w] = endpoints_of(s, e);
      if (u == x && !seen[w]) { seen[w] = 1; stack.push_back(w); }
    }
  }
  return seen[v] != 0;
}

int component_count(const IncidenceStructure& s, ElemMask S) {
  int n = (int)s.universe.size();
  Dsu d = components(s, S);
  // count classes containing at least one vertex (roots can be edge elements)
  std::vector<char> counted(n, 0);
  int k = 0;
  for (int x = 0; x < n; ++x) {
    if (s.kinds[x] != ElementKind::vertex) continue;
    int r = d.find(x);
    if (!counted[r]) { counted[r] = 1; ++k; }
  }
  return k;
}

int covered_component_count(const IncidenceStructure& s, ElemMask S) {
  int n = (int)s.universe.size();
  Dsu d = components(s, S);
  std::vector<char> counted(n, 0);
  int k = 0;
  for (int e = 0; e < n; ++e) {
    if (!is_edge_elem(s, e) || !(S >> e & 1)) continue;
    int r = d.find(e);
    if (!counted[r]) { counted[r] = 1; ++k; }
  }
  return k;
}

std::vector<int> component_size_census(const IncidenceStructure& s, ElemMask S) {
  int n = (int)s.universe.size();
  Dsu d = components(s, S);
  std::vector<int> size(n, 0);
  int maxsz = 0;
  for (int x = 0; x < n; ++x) {
    if (s.kinds[x] != ElementKind::vertex) continue;
    int r = d.find(x);
    size[r] += 1;
    if (size[r] > maxsz) maxsz = size[r];
  }
  std::vector<int> census(maxsz + 1, 0);
  for (int r = 0; r < n; ++r)
    if (size[r] > 0) census[size[r]] += 1;
  return census;
}

int rank(const IncidenceStructure& s, ElemMask S) {
  int nv = 0;
  for (auto k : s.kinds)
    if (k == ElementKind::vertex) ++nv;
  return nv - component_count(s, S);
}

} // namespace natives

} // namespace gpk
