#pragma once

#include <string>
#include <vector>

#include "gpk/multigraph.hpp"

namespace gpk {

// Every labeled multigraph within the bounds, in a fixed deterministic
// order: for each vertex count and edge count, one graph per multiset of
// endpoint slots. Loops and parallel edges included; duplicates are
// suppressed by the canonical labeled form only, no isomorphism reduction.
std::vector<MultiGraph> all_multigraphs(int max_vertices, int max_edges, bool directed);

// Same enumeration bounded by universe size: every labeled multigraph with
// vertices + edges <= max_elements.
std::vector<MultiGraph> all_multigraphs_bounded_universe(int max_elements, bool directed);

// Named instances for the command line and the suites: e0..e5, k2,
// k2-double, loop1, p3, k3 (alias c3), c4, k4, and directed de0..de5,
// dk2, dloop1, d2cycle, dpath3, dcycle3.
MultiGraph builtin_graph(const std::string& name);  // throws Error when unknown
std::vector<std::string> builtin_graph_names();

} // namespace gpk
