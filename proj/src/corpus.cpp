#include "gpk/corpus.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "gpk/error.hpp"

namespace gpk {

namespace {

MultiGraph make_graph(int n, bool directed, const std::vector<std::pair<int, int>>& ends) {
  MultiGraph g;
  g.directed = directed;
  for (int i = 1; i <= n; ++i) g.vertices.push_back("v" + std::to_string(i));
  int k = 1;
  for (auto [u, v] : ends)
    g.edges.push_back({"e" + std::to_string(k++), g.vertices[(size_t)u], g.vertices[(size_t)v]});
  return g;
}

} // namespace

namespace {

void emit_with_vertex_count(int n, int max_edges, bool directed,
                            std::vector<MultiGraph>& out) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u; v < n; ++v)
      slots.emplace_back(u, v);
  for (int m = 0; m <= max_edges; ++m) {
    if (m > 0 && slots.empty()) break;
    // multisets of m endpoint slots, as nondecreasing index sequences
    std::vector<int> pick((size_t)m, 0);
    std::function<void(int, int)> emit = [&](int at, int lo) {
      if (at == m) {
        std::vector<std::pair<int, int>> ends;
        ends.reserve((size_t)m);
        for (int i : pick) ends.push_back(slots[(size_t)i]);
        out.push_back(make_graph(n, directed, ends));
        return;
      }
      for (int s = lo; s < (int)slots.size(); ++s) {
        pick[(size_t)at] = s;
        emit(at + 1, s);
      }
    };
    emit(0, 0);
  }
}

} // namespace

std::vector<MultiGraph> all_multigraphs(int max_vertices, int max_edges, bool directed) {
  std::vector<MultiGraph> out;
  for (int n = 0; n <= max_vertices; ++n)
    emit_with_vertex_count(n, max_edges, directed, out);
  return out;
}

std::vector<MultiGraph> all_multigraphs_bounded_universe(int max_elements, bool directed) {
  std::vector<MultiGraph> out;
  for (int n = 0; n <= max_elements; ++n)
    emit_with_vertex_count(n, max_elements - n, directed, out);
  return out;
}

namespace {

MultiGraph empty_graph(int n, bool directed) {
  return make_graph(n, directed, {});
}

std::vector<std::pair<std::string, MultiGraph>> builtin_table() {
  std::vector<std::pair<std::string, MultiGraph>> t;
  for (int n = 0; n <= 5; ++n) {
    t.emplace_back("e" + std::to_string(n), empty_graph(n, false));
    t.emplace_back("de" + std::to_string(n), empty_graph(n, true));
  }
  t.emplace_back("k2", make_graph(2, false, {{0, 1}}));
  t.emplace_back("k2-double", make_graph(2, false, {{0, 1}, {0, 1}}));
  t.emplace_back("loop1", make_graph(1, false, {{0, 0}}));
  t.emplace_back("p3", make_graph(3, false, {{0, 1}, {1, 2}}));
  t.emplace_back("k3", make_graph(3, false, {{0, 1}, {1, 2}, {0, 2}}));
  t.emplace_back("c3", make_graph(3, false, {{0, 1}, {1, 2}, {0, 2}}));
  t.emplace_back("c4", make_graph(4, false, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  t.emplace_back("k4",
                 make_graph(4, false, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  t.emplace_back("dk2", make_graph(2, true, {{0, 1}}));
  t.emplace_back("dloop1", make_graph(1, true, {{0, 0}}));
  t.emplace_back("d2cycle", make_graph(2, true, {{0, 1}, {1, 0}}));
  t.emplace_back("dpath3", make_graph(3, true, {{0, 1}, {1, 2}}));
  t.emplace_back("dcycle3", make_graph(3, true, {{0, 1}, {1, 2}, {2, 0}}));
  return t;
}

} // namespace

MultiGraph builtin_graph(const std::string& name) {
  static const auto table = builtin_table();
  for (const auto& [id, g] : table)
    if (id == name) return g;
  throw Error("unknown builtin graph " + name);
}

std::vector<std::string> builtin_graph_names() {
  static const auto table = builtin_table();
  std::vector<std::string> names;
  names.reserve(table.size());
  for (const auto& [id, g] : table) names.push_back(id);
  return names;
}

} // namespace gpk
