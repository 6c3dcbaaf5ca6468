#include "tdag/io.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace tdag {

DiGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(ErrKind::BadInput, std::string("invalid JSON: ") + e.what());
    }
    DiGraph g;
    try {
        for (const auto& v : j.at("vertices")) g.vertices.insert(v.get<int>());
        for (const auto& e : j.at("edges"))
            g.edges.push_back(Edge{e.at("id").get<int>(), e.at("tail").get<int>(), e.at("head").get<int>()});
        g.source = j.at("source").get<int>();
        g.target = j.at("target").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(ErrKind::BadInput, std::string("graph JSON missing fields: ") + e.what());
    }
    check_well_formed(g);
    return g;
}

std::string graph_to_json(const DiGraph& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (VertexId v : g.vertices) j["vertices"].push_back(v);
    j["edges"] = nlohmann::json::array();
    std::vector<Edge> es = g.edges;
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (const auto& e : es)
        j["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    j["source"] = g.source;
    j["target"] = g.target;
    return j.dump();
}

std::string export_dot(const DiGraph& g) {
    std::ostringstream os;
    os << "digraph G {\n";
    for (VertexId v : g.vertices) {
        os << "  v" << v << " [label=\"" << v << "\"";
        if (v == g.source || v == g.target) os << ", shape=doublecircle";
        os << "];\n";
    }
    std::vector<Edge> es = g.edges;
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (const auto& e : es)
        os << "  v" << e.tail << " -> v" << e.head << " [label=\"" << e.id << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace tdag
