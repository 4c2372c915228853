#pragma once

#include <cstdint>
#include <vector>

#include "gpk/structure.hpp"

namespace gpk {

// Element sets over a structure's universe as bitmasks; universes are capped
// at 64 elements (plenty for the desk scale this artifact targets).
using ElemMask = uint64_t;

ElemMask all_vertices_mask(const IncidenceStructure& s);
ElemMask all_edges_mask(const IncidenceStructure& s);

namespace natives {

// Connectivity through the edges in S. Defined for vertex endpoints (plus
// the reflexive case); an edge element takes part only when it lies in S,
// mixed vertex/edge pairs are unrelated. Matches the defining formulas on
// their vertex domain and makes |LastInComp(V,A)| = k(A) and
// |LastInComp(B,B)| = k_cov(B) come out right.
bool connected(const IncidenceStructure& s, ElemMask S, int x, int y);

// x ∈ Touching(D, S): x ∈ D and x is a vertex incident to an S-edge, or an
// edge sharing an endpoint with an S-edge.
bool in_touching(const IncidenceStructure& s, ElemMask D, ElemMask S, int x);

// x ∈ LastInComp(D, S): x ∈ D and no later D-element (by the order
// positions) is connected to x through S.
bool in_last_in_comp(const IncidenceStructure& s, const std::vector<int>& pos,
                     ElemMask D, ElemMask S, int x);

// Single connected 2-regular edge set per the defining formula (vacuous on
// S=∅; a loop contributes one incidence, so {loop} is NOT a cycle here).
bool cycle(const IncidenceStructure& s, ElemMask S);

// Standard bridge: a non-loop edge whose removal disconnects its endpoints.
bool bridge(const IncidenceStructure& s, int e);

// Maximal-acyclic check, matroid-correct: loops and parallel duplicates are
// circuits; component count of (V,F) must equal that of (V,E).
bool spanning_forest(const IncidenceStructure& s, ElemMask F);

// Directed: every vertex has at most one B-out-edge and one B-in-edge.
bool cycle_path_cover(const IncidenceStructure& s, ElemMask B);

// Directed: v lies on a directed cycle made of B-edges.
bool on_cycle(const IncidenceStructure& s, ElemMask B, int v);

// Counting helpers (not formula atoms).
int component_count(const IncidenceStructure& s, ElemMask S);          // k
int covered_component_count(const IncidenceStructure& s, ElemMask S);  // k_cov
std::vector<int> component_size_census(const IncidenceStructure& s, ElemMask S);  // census value at size i, 1-based
int rank(const IncidenceStructure& s, ElemMask S);                     // |V| - k

} // namespace natives

} // namespace gpk
