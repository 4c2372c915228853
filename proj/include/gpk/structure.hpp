#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpk/multigraph.hpp"

namespace gpk {

enum class ElementKind : uint8_t { vertex, edge };

// Two-sorted incidence signatures plus the one-sorted simple-graph signature.
//   graph1:     universe V, E ⊆ V×V symmetric (simple graphs only)
//   graph2:     universe V ∪ E, N ⊆ V×E (a loop carries ONE incidence pair)
//   directed2:  universe V ∪ E, NO ⊆ V×E (tail), NI ⊆ E×V (head)
enum class VocabTag : uint8_t { graph1, graph2, directed2 };

struct RelationSymbol {
    std::string name;
    int arity;
};

struct Vocabulary {
    VocabTag tag;
    std::vector<RelationSymbol> relations;
    const RelationSymbol* find(const std::string& name) const;
};

const Vocabulary& vocabulary(VocabTag tag);
const char* vocab_name(VocabTag tag);                 // "graph1" | "graph2" | "directed2"
VocabTag vocab_from_name(const std::string& name);

// Dense-bitset relation over universe indices, row-major tuple indexing
// (first coordinate most significant). dim is the universe size it was
// built against.
class Relation {
public:
    Relation() = default;
    Relation(int arity, int dim);

    int arity() const { return arity_; }
    int dim() const { return dim_; }
    uint64_t tuple_count() const;

    bool contains(std::span<const int> tuple) const;
    void insert(std::span<const int> tuple);
    void erase(std::span<const int> tuple);
    bool contains(std::initializer_list<int> t) const {
        return contains(std::span<const int>(t.begin(), t.size()));
    }
    void insert(std::initializer_list<int> t) { insert(std::span<const int>(t.begin(), t.size())); }
    void erase(std::initializer_list<int> t) { erase(std::span<const int>(t.begin(), t.size())); }
    bool bit(uint64_t index) const;
    void set_bit(uint64_t index, bool value);
    uint64_t space() const { return space_; }  // dim^arity

    std::vector<std::vector<int>> tuples() const;  // ascending tuple index
    bool operator==(const Relation& o) const {
        return arity_ == o.arity_ && dim_ == o.dim_ && bits_ == o.bits_;
    }

private:
    uint64_t index_of(std::span<const int> tuple) const;
    int arity_ = 0;
    int dim_ = 0;
    uint64_t space_ = 1;
    std::vector<uint64_t> bits_;
};

// Finite relational structure over one of the vocabularies above. Element
// ids are opaque strings; `universe` order is the canonical (declaration)
// order. Structures are value types: surgeries return new structures.
struct IncidenceStructure {
    VocabTag vocab = VocabTag::graph2;
    std::vector<std::string> universe;
    std::vector<ElementKind> kinds;
    std::map<std::string, Relation> relations;

    int size() const { return static_cast<int>(universe.size()); }
    int index_of(const std::string& id) const;  // -1 when absent
    bool is_vertex(int i) const { return kinds[static_cast<size_t>(i)] == ElementKind::vertex; }
    bool is_edge(int i) const { return kinds[static_cast<size_t>(i)] == ElementKind::edge; }
    const Relation& relation(const std::string& name) const;

    // Keeps the elements whose indices are listed (in the given order must be
    // ascending relative to `universe`); relations are intersected with the
    // surviving universe and reindexed.
    IncidenceStructure restrict_to(const std::vector<int>& keep) const;

    // Incidence well-formedness for graph2/directed2 universes: every edge has
    // the right incidence pairs (one pair for an undirected loop, tail+head
    // for directed), no dangling references. Returns a diagnostic or nullopt.
    std::optional<std::string> check_invariants() const;

    // Canonical one-line serialization of (universe in the given order,
    // relation tuples by id). Memo key for recursion.
    std::string canonical_key(const std::vector<int>& order) const;

    bool operator==(const IncidenceStructure& o) const;
};

// to_incidence per vocabulary. graph1 demands a simple undirected graph and
// errors otherwise; graph2 demands undirected; directed2 demands directed.
IncidenceStructure to_incidence(const MultiGraph& g, VocabTag tag);

// Structure plus a strict total order (permutation of universe indices;
// order[k] = index of the k-th smallest element) and a context arity.
struct OrderedStructure {
    IncidenceStructure s;
    std::vector<int> order;
    int context_arity = 1;

    std::vector<int> positions() const;  // positions()[elem] = rank
    void validate() const;               // order is a permutation of the universe
};

// Surgeries. All are total functions on well-formed inputs satisfying their
// preconditions; each strictly shrinks the universe. They operate on graph2
// (undirected) or directed2 (directed pair) structures and preserve ids.
IncidenceStructure delete_edge(const IncidenceStructure& s, const std::string& edge_id);
// Deletes the vertex and its incidence pairs. Guards in the recursion layer
// only invoke it on isolated vertices; the raw operation does not check.
IncidenceStructure delete_vertex(const IncidenceStructure& s, const std::string& vertex_id);
// Undirected contraction: deletes e and its smaller endpoint u (smaller in
// `order` positions), the larger endpoint inherits u's incidences; parallel
// edges between u,v become loops. Errors on loops.
IncidenceStructure contract_edge(const IncidenceStructure& s, const std::string& edge_id,
                                 const std::vector<int>& order);
// Undirected extraction: deletes e, both endpoints, and every edge incident
// to either endpoint.
IncidenceStructure extract_edge(const IncidenceStructure& s, const std::string& edge_id);
// Directed contraction ⟨u,v⟩: deletes e, the tail u, u's out-edges and v's
// in-edges; u's in-edges are rewired to head at v (the merged vertex keeps
// v's id). A directed loop contracts to deleting its vertex and everything
// incident to it.
IncidenceStructure contract_directed_edge(const IncidenceStructure& s, const std::string& edge_id);

} // namespace gpk
