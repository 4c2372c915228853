#include "gpk/multigraph.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "gpk/error.hpp"

namespace gpk {

int MultiGraph::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == id) return static_cast<int>(i);
    return -1;
}

void MultiGraph::validate() const {
    std::unordered_set<std::string> seen;
    for (auto& v : vertices) {
        if (!seen.insert(v).second) throw Error("duplicate vertex id: " + v);
    }
    for (auto& e : edges) {
        if (!seen.insert(e.id).second) throw Error("duplicate id: " + e.id);
        if (!has_vertex(e.tail)) throw Error("edge " + e.id + " references unknown vertex " + e.tail);
        if (!has_vertex(e.head)) throw Error("edge " + e.id + " references unknown vertex " + e.head);
    }
}

MultiGraph MultiGraph::from_text(const std::string& text) {
    MultiGraph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "directed:") {
            std::string v;
            ls >> v;
            if (v != "true" && v != "false")
                throw ParseError("graph header expects true|false", lineno, 1);
            g.directed = v == "true";
            saw_header = true;
        } else if (kw == "vertex") {
            std::string id;
            if (!(ls >> id)) throw ParseError("vertex needs an id", lineno, 1);
            g.vertices.push_back(id);
        } else if (kw == "edge") {
            Edge e;
            if (!(ls >> e.id >> e.tail >> e.head))
                throw ParseError("edge needs id tail head", lineno, 1);
            g.edges.push_back(std::move(e));
        } else {
            throw ParseError("unknown directive '" + kw + "'", lineno, 1);
        }
    }
    if (!saw_header) throw Error("graph file missing 'directed:' header");
    g.validate();
    return g;
}

std::string MultiGraph::to_text() const {
    std::ostringstream os;
    os << "directed: " << (directed ? "true" : "false") << "\n";
    for (auto& v : vertices) os << "vertex " << v << "\n";
    for (auto& e : edges) os << "edge " << e.id << " " << e.tail << " " << e.head << "\n";
    return os.str();
}

MultiGraph MultiGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

void MultiGraph::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write graph file: " + path);
    out << to_text();
}

} // namespace gpk
