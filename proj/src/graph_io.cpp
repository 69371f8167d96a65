#include "pcs/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pcs/errors.hpp"

namespace pcs {

using nlohmann::json;

DualGraph parse_graph_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("graph JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("vertices")) throw InputError("graph JSON needs a \"vertices\" array");
        std::vector<std::vector<VertexId>> parents;
        std::vector<std::pair<VertexId, int>> declared;
        int expected = 1;
        for (const auto& v : doc.at("vertices")) {
            const int id = v.at("id").get<int>();
            if (id != expected) throw InputError("vertex ids must be 1, 2, ... in order");
            ++expected;
            auto ps = v.value("parents", std::vector<VertexId>{});
            for (VertexId p : ps) {
                if (p < 1 || p >= id) throw InputError("vertex " + std::to_string(id) + " has an invalid parent");
            }
            parents.push_back(std::move(ps));
            if (v.contains("self_intersection")) declared.emplace_back(id, v.at("self_intersection").get<int>());
        }
        DualGraph g = DualGraph::from_parents(parents);
        for (const auto& [id, si] : declared) {
            if (g.self_intersection(id) != si) {
                throw InputError("vertex " + std::to_string(id) + ": self-intersection " + std::to_string(si) +
                                 " does not match replay (" + std::to_string(g.self_intersection(id)) + ")");
            }
        }
        g.set_marked_divisors(doc.value("marked_divisors", std::vector<VertexId>{}));
        std::vector<Arrow> arrows;
        if (doc.contains("arrows")) {
            for (const auto& a : doc.at("arrows")) arrows.push_back({a.at("vertex").get<int>(), a.at("branch").get<int>()});
        }
        g.set_arrows(std::move(arrows));
        return g;
    } catch (const json::exception& e) {
        throw InputError(std::string("graph JSON: ") + e.what());
    }
}

std::string graph_to_json(const DualGraph& graph)
{
    json vertices = json::array();
    for (VertexId v = 1; v <= graph.size(); ++v) {
        vertices.push_back({{"id", v}, {"parents", graph.parents(v)}, {"self_intersection", graph.self_intersection(v)}});
    }
    json arrows = json::array();
    for (const auto& a : graph.arrows()) arrows.push_back({{"vertex", a.vertex}, {"branch", a.branch}});
    json doc = {{"vertices", vertices}, {"marked_divisors", graph.marked_divisors()}, {"arrows", arrows}};
    return doc.dump(2) + "\n";
}

DualGraph read_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_graph_json(ss.str());
}

} // namespace pcs
