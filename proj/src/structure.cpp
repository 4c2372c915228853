#include "gpk/structure.hpp"

#include <algorithm>
#include <sstream>

#include "gpk/error.hpp"

namespace gpk {

const RelationSymbol* Vocabulary::find(const std::string& name) const {
    for (auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

const Vocabulary& vocabulary(VocabTag tag) {
    static const Vocabulary g1{VocabTag::graph1, {{"E", 2}}};
    static const Vocabulary g2{VocabTag::graph2, {{"N", 2}}};
    static const Vocabulary d2{VocabTag::directed2, {{"NO", 2}, {"NI", 2}}};
    switch (tag) {
        case VocabTag::graph1: return g1;
        case VocabTag::graph2: return g2;
        case VocabTag::directed2: return d2;
    }
    throw Error("unknown vocabulary tag");
}

const char* vocab_name(VocabTag tag) {
    switch (tag) {
        case VocabTag::graph1: return "graph1";
        case VocabTag::graph2: return "graph2";
        case VocabTag::directed2: return "directed2";
    }
    return "?";
}

VocabTag vocab_from_name(const std::string& name) {
    if (name == "graph1") return VocabTag::graph1;
    if (name == "graph2") return VocabTag::graph2;
    if (name == "directed2") return VocabTag::directed2;
    throw Error("unknown vocabulary: " + name);
}

Relation::Relation(int arity, int dim) : arity_(arity), dim_(dim) {
    space_ = 1;
    for (int i = 0; i < arity; ++i) space_ *= static_cast<uint64_t>(dim);
    bits_.assign((space_ + 63) / 64, 0);
}

uint64_t Relation::index_of(std::span<const int> tuple) const {
    uint64_t idx = 0;
    for (int x : tuple) idx = idx * static_cast<uint64_t>(dim_) + static_cast<uint64_t>(x);
    return idx;
}

bool Relation::bit(uint64_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }

void Relation::set_bit(uint64_t i, bool v) {
    if (v) bits_[i >> 6] |= (uint64_t{1} << (i & 63));
    else bits_[i >> 6] &= ~(uint64_t{1} << (i & 63));
}

bool Relation::contains(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != arity_) throw Error("relation arity mismatch");
    for (int x : tuple)
        if (x < 0 || x >= dim_) return false;
    return bit(index_of(tuple));
}

void Relation::insert(std::span<const int> tuple) {
    if (static_cast<int>(tuple.size()) != arity_) throw Error("relation arity mismatch");
    set_bit(index_of(tuple), true);
}

void Relation::erase(std::span<const int> tuple) {
    if (static_cast<int>(tuple.size()) != arity_) throw Error("relation arity mismatch");
    set_bit(index_of(tuple), false);
}

uint64_t Relation::tuple_count() const {
    uint64_t n = 0;
    for (uint64_t w : bits_) n += static_cast<uint64_t>(__builtin_popcountll(w));
    return n;
}

std::vector<std::vector<int>> Relation::tuples() const {
    std::vector<std::vector<int>> out;
    for (uint64_t i = 0; i < space_; ++i) {
        if (!bit(i)) continue;
        std::vector<int> t(static_cast<size_t>(arity_));
        uint64_t rest = i;
        for (int p = arity_ - 1; p >= 0; --p) {
            t[static_cast<size_t>(p)] = static_cast<int>(rest % static_cast<uint64_t>(dim_));
            rest /= static_cast<uint64_t>(dim_);
        }
        out.push_back(std::move(t));
    }
    return out;
}

int IncidenceStructure::index_of(const std::string& id) const {
    for (size_t i = 0; i < universe.size(); ++i)
        if (universe[i] == id) return static_cast<int>(i);
    return -1;
}

const Relation& IncidenceStructure::relation(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw Error("structure has no relation " + name);
    return it->second;
}

IncidenceStructure IncidenceStructure::restrict_to(const std::vector<int>& keep) const {
    IncidenceStructure r;
    r.vocab = vocab;
    std::vector<int> remap(universe.size(), -1);
    for (size_t k = 0; k < keep.size(); ++k) {
        int old = keep[k];
        r.universe.push_back(universe[static_cast<size_t>(old)]);
        r.kinds.push_back(kinds[static_cast<size_t>(old)]);
        remap[static_cast<size_t>(old)] = static_cast<int>(k);
    }
    int nd = static_cast<int>(keep.size());
    for (auto& [name, rel] : relations) {
        Relation nr(rel.arity(), nd);
        for (auto& t : rel.tuples()) {
            std::vector<int> nt;
            nt.reserve(t.size());
            bool alive = true;
            for (int x : t) {
                int m = remap[static_cast<size_t>(x)];
                if (m < 0) { alive = false; break; }
                nt.push_back(m);
            }
            if (alive) nr.insert(nt);
        }
        r.relations.emplace(name, std::move(nr));
    }
    return r;
}

bool IncidenceStructure::operator==(const IncidenceStructure& o) const {
    return vocab == o.vocab && universe == o.universe && kinds == o.kinds && relations == o.relations;
}

std::optional<std::string> IncidenceStructure::check_invariants() const {
    int n = size();
    if (vocab == VocabTag::graph2) {
        const Relation& N = relation("N");
        for (int e = 0; e < n; ++e) {
            if (!is_edge(e)) continue;
            int pairs = 0;
            for (int v = 0; v < n; ++v) {
                int t[2] = {v, e};
                if (N.contains(t)) {
                    if (!is_vertex(v)) return "incidence pair with non-vertex first coordinate at " + universe[static_cast<size_t>(e)];
                    ++pairs;
                }
            }
            if (pairs < 1 || pairs > 2)
                return "edge " + universe[static_cast<size_t>(e)] + " has " + std::to_string(pairs) + " incidence pairs";
        }
        for (auto& t : N.tuples())
            if (!is_vertex(t[0]) || !is_edge(t[1])) return "N tuple off V x E";
    } else if (vocab == VocabTag::directed2) {
        const Relation& NO = relation("NO");
        const Relation& NI = relation("NI");
        for (int e = 0; e < n; ++e) {
            if (!is_edge(e)) continue;
            int tails = 0, heads = 0;
            for (int v = 0; v < n; ++v) {
                int to[2] = {v, e};
                int ti[2] = {e, v};
                if (NO.contains(to)) ++tails;
                if (NI.contains(ti)) ++heads;
            }
            if (tails != 1 || heads != 1)
                return "edge " + universe[static_cast<size_t>(e)] + " needs one tail and one head";
        }
        for (auto& t : NO.tuples())
            if (!is_vertex(t[0]) || !is_edge(t[1])) return "NO tuple off V x E";
        for (auto& t : NI.tuples())
            if (!is_edge(t[0]) || !is_vertex(t[1])) return "NI tuple off E x V";
    }
    return std::nullopt;
}

std::string IncidenceStructure::canonical_key(const std::vector<int>& order) const {
    std::ostringstream os;
    for (int i : order)
        os << universe[static_cast<size_t>(i)] << (is_edge(i) ? "/e," : "/v,");
    os << "|";
    for (auto& [name, rel] : relations) {
        os << name << ":";
        for (auto& t : rel.tuples()) {
            os << "(";
            for (int x : t) os << universe[static_cast<size_t>(x)] << " ";
            os << ")";
        }
        os << ";";
    }
    return os.str();
}

IncidenceStructure to_incidence(const MultiGraph& g, VocabTag tag) {
    g.validate();
    IncidenceStructure s;
    s.vocab = tag;
    if (tag == VocabTag::graph1) {
        if (g.directed) throw Error("graph1 vocabulary requires an undirected graph");
        for (auto& e : g.edges) {
            if (e.tail == e.head) throw Error("graph1 vocabulary rejects loops (simple graphs only)");
            for (auto& f : g.edges)
                if (&e != &f && ((e.tail == f.tail && e.head == f.head) || (e.tail == f.head && e.head == f.tail)))
                    throw Error("graph1 vocabulary rejects parallel edges (simple graphs only)");
        }
        s.universe = g.vertices;
        s.kinds.assign(s.universe.size(), ElementKind::vertex);
        Relation E(2, s.size());
        for (auto& e : g.edges) {
            int a = s.index_of(e.tail), b = s.index_of(e.head);
            int t1[2] = {a, b}, t2[2] = {b, a};
            E.insert(t1);
            E.insert(t2);
        }
        s.relations.emplace("E", std::move(E));
        return s;
    }
    if (tag == VocabTag::graph2 && g.directed)
        throw Error("graph2 vocabulary requires an undirected graph");
    if (tag == VocabTag::directed2 && !g.directed)
        throw Error("directed2 vocabulary requires a directed graph");
    for (auto& v : g.vertices) {
        s.universe.push_back(v);
        s.kinds.push_back(ElementKind::vertex);
    }
    for (auto& e : g.edges) {
        s.universe.push_back(e.id);
        s.kinds.push_back(ElementKind::edge);
    }
    int n = s.size();
    if (tag == VocabTag::graph2) {
        Relation N(2, n);
        for (auto& e : g.edges) {
            int ei = s.index_of(e.id);
            int a = s.index_of(e.tail), b = s.index_of(e.head);
            int t1[2] = {a, ei}, t2[2] = {b, ei};
            N.insert(t1);
            if (b != a) N.insert(t2);  // loop keeps a single pair
        }
        s.relations.emplace("N", std::move(N));
    } else {
        Relation NO(2, n), NI(2, n);
        for (auto& e : g.edges) {
            int ei = s.index_of(e.id);
            int a = s.index_of(e.tail), b = s.index_of(e.head);
            int to[2] = {a, ei}, ti[2] = {ei, b};
            NO.insert(to);
            NI.insert(ti);
        }
        s.relations.emplace("NO", std::move(NO));
        s.relations.emplace("NI", std::move(NI));
    }
    return s;
}

std::vector<int> OrderedStructure::positions() const {
    std::vector<int> pos(order.size(), -1);
    for (size_t r = 0; r < order.size(); ++r) pos[static_cast<size_t>(order[r])] = static_cast<int>(r);
    return pos;
}

void OrderedStructure::validate() const {
    if (static_cast<int>(order.size()) != s.size()) throw Error("order length differs from universe");
    std::vector<bool> seen(order.size(), false);
    for (int i : order) {
        if (i < 0 || i >= s.size() || seen[static_cast<size_t>(i)])
            throw Error("order is not a permutation of the universe");
        seen[static_cast<size_t>(i)] = true;
    }
}

namespace {

int require_edge(const IncidenceStructure& s, const std::string& id) {
    int i = s.index_of(id);
    if (i < 0) throw Error("no such element: " + id);
    if (!s.is_edge(i)) throw Error(id + " is not an edge");
    return i;
}

std::vector<int> all_but(const IncidenceStructure& s, const std::vector<int>& drop) {
    std::vector<int> keep;
    keep.reserve(s.universe.size());
    for (int i = 0; i < s.size(); ++i)
        if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
    return keep;
}

// Endpoints of an undirected edge (graph2): 1 entry for loops, else 2.
std::vector<int> graph2_endpoints(const IncidenceStructure& s, int e) {
    std::vector<int> ends;
    const Relation& N = s.relation("N");
    for (int v = 0; v < s.size(); ++v) {
        int t[2] = {v, e};
        if (N.contains(t)) ends.push_back(v);
    }
    return ends;
}

} // namespace

IncidenceStructure delete_edge(const IncidenceStructure& s, const std::string& edge_id) {
    int e = require_edge(s, edge_id);
    return s.restrict_to(all_but(s, {e}));
}

IncidenceStructure delete_vertex(const IncidenceStructure& s, const std::string& vertex_id) {
    int v = s.index_of(vertex_id);
    if (v < 0) throw Error("no such element: " + vertex_id);
    if (!s.is_vertex(v)) throw Error(vertex_id + " is not a vertex");
    return s.restrict_to(all_but(s, {v}));
}

IncidenceStructure contract_edge(const IncidenceStructure& s, const std::string& edge_id,
                                 const std::vector<int>& order) {
    if (s.vocab != VocabTag::graph2) throw Error("contract_edge needs a graph2 structure");
    int e = require_edge(s, edge_id);
    auto ends = graph2_endpoints(s, e);
    if (ends.size() != 2) throw Error("cannot contract a loop: " + edge_id);
    std::vector<int> pos(s.universe.size());
    {
        OrderedStructure os{s, order, 1};
        os.validate();
        pos = os.positions();
    }
    int u = ends[0], v = ends[1];
    if (pos[static_cast<size_t>(u)] > pos[static_cast<size_t>(v)]) std::swap(u, v);  // u is the smaller endpoint
    IncidenceStructure base = s;
    Relation& N = base.relations.at("N");
    // v inherits u's incidences; a set relation collapses parallels to loops.
    for (int f = 0; f < base.size(); ++f) {
        if (!base.is_edge(f) || f == e) continue;
        int tu[2] = {u, f};
        if (N.contains(tu)) {
            N.erase(tu);
            int tv[2] = {v, f};
            N.insert(tv);
        }
    }
    return base.restrict_to(all_but(base, {e, u}));
}

IncidenceStructure extract_edge(const IncidenceStructure& s, const std::string& edge_id) {
    if (s.vocab != VocabTag::graph2) throw Error("extract_edge needs a graph2 structure");
    int e = require_edge(s, edge_id);
    auto ends = graph2_endpoints(s, e);
    std::vector<int> drop = {e};
    const Relation& N = s.relation("N");
    for (int w : ends) drop.push_back(w);
    for (int f = 0; f < s.size(); ++f) {
        if (!s.is_edge(f) || f == e) continue;
        for (int w : ends) {
            int t[2] = {w, f};
            if (N.contains(t)) { drop.push_back(f); break; }
        }
    }
    return s.restrict_to(all_but(s, drop));
}

IncidenceStructure contract_directed_edge(const IncidenceStructure& s, const std::string& edge_id) {
    if (s.vocab != VocabTag::directed2) throw Error("contract_directed_edge needs a directed2 structure");
    int e = require_edge(s, edge_id);
    const Relation& NO = s.relation("NO");
    const Relation& NI = s.relation("NI");
    int tail = -1, head = -1;
    for (int v = 0; v < s.size(); ++v) {
        int to[2] = {v, e};
        int ti[2] = {e, v};
        if (NO.contains(to)) tail = v;
        if (NI.contains(ti)) head = v;
    }
    if (tail < 0 || head < 0) throw Error("malformed directed edge: " + edge_id);
    std::vector<int> drop = {e};
    if (tail == head) {
        // loop: delete the vertex and everything incident to it
        drop.push_back(tail);
        for (int f = 0; f < s.size(); ++f) {
            if (!s.is_edge(f) || f == e) continue;
            int to[2] = {tail, f};
            int ti[2] = {f, tail};
            if (NO.contains(to) || NI.contains(ti)) drop.push_back(f);
        }
        return s.restrict_to(all_but(s, drop));
    }
    // ⟨u,v⟩: drop u, u's out-edges, v's in-edges; u's in-edges land on v.
    drop.push_back(tail);
    IncidenceStructure base = s;
    Relation& bNI = base.relations.at("NI");
    for (int f = 0; f < s.size(); ++f) {
        if (!s.is_edge(f) || f == e) continue;
        int out_u[2] = {tail, f};
        int in_v[2] = {f, head};
        if (NO.contains(out_u)) { drop.push_back(f); continue; }
        if (NI.contains(in_v)) { drop.push_back(f); continue; }
        int in_u[2] = {f, tail};
        if (NI.contains(in_u)) {
            bNI.erase(in_u);
            int nt[2] = {f, head};
            bNI.insert(nt);
        }
    }
    return base.restrict_to(all_but(base, drop));
}

} // namespace gpk
