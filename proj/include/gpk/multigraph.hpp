#pragma once

#include <string>
#include <vector>

namespace gpk {

// Finite labeled multigraph: loops and parallel edges allowed, ids opaque.
// Declaration order of vertices/edges is meaningful (it fixes the canonical
// universe order of the incidence structure).
struct MultiGraph {
    struct Edge {
        std::string id, tail, head;  // undirected: tail/head are just the two endpoints
    };

    bool directed = false;
    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    int vertex_index(const std::string& id) const;  // -1 when absent
    bool has_vertex(const std::string& id) const { return vertex_index(id) >= 0; }
    void validate() const;  // distinct ids, endpoints declared

    // Text format, bit-exact round trip:
    //   # comment
    //   directed: true|false
    //   vertex <id>
    //   edge <id> <tail> <head>
    static MultiGraph from_text(const std::string& text);
    std::string to_text() const;
    static MultiGraph load(const std::string& path);
    void save(const std::string& path) const;
};

} // namespace gpk
