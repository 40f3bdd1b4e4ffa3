#include "geewe/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "geewe/errors.hpp"

namespace geewe {

using nlohmann::json;

json instance_to_json(const EstimateGraph& graph, const WeightAssignment* actual) {
    json edges = json::array();
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const Edge& edge = graph.edge(e);
        json item = {{"a", edge.a}, {"b", edge.b}, {"lower", edge.lower.str()}, {"upper", edge.upper.str()}};
        if (actual) item["actual"] = (*actual)[e].str();
        edges.push_back(std::move(item));
    }
    return json{{"n", graph.vertex_count()}, {"s", graph.start()}, {"t", graph.end()}, {"edges", std::move(edges)}};
}

namespace {

Rational rational_field(const json& item, const char* key) {
    const auto& v = item.at(key);
    if (!v.is_string()) throw InvalidInput(std::string("field '") + key + "' must be a \"p/q\" string");
    return Rational::parse(v.get<std::string>());
}

}  // namespace

Instance instance_from_json(const json& doc) {
    try {
        int n = doc.at("n").get<int>();
        VertexId s = doc.at("s").get<int>();
        VertexId t = doc.at("t").get<int>();
        std::vector<Edge> edges;
        std::vector<Rational> actual;
        std::size_t with_actual = 0;
        for (const auto& item : doc.at("edges")) {
            Edge e{item.at("a").get<int>(), item.at("b").get<int>(), rational_field(item, "lower"),
                   rational_field(item, "upper")};
            edges.push_back(e);
            if (item.contains("actual")) {
                actual.push_back(rational_field(item, "actual"));
                ++with_actual;
            }
        }
        if (with_actual != 0 && with_actual != edges.size()) {
            throw InvalidInput("\"actual\" must be given for all edges or none");
        }
        Instance inst{EstimateGraph::checked(n, std::move(edges), s, t), std::nullopt};
        if (with_actual != 0) {
            WeightAssignment w{std::move(actual)};
            auto problems = check_assignment(inst.graph, w);
            if (!problems.empty()) throw InvalidInput("actual weights: " + problems.front());
            inst.actual = std::move(w);
        }
        return inst;
    } catch (const json::exception& ex) {
        throw InvalidInput(std::string("malformed instance: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw InvalidInput(std::string("malformed instance: ") + ex.what());
    } catch (const std::domain_error& ex) {
        throw InvalidInput(std::string("malformed instance: ") + ex.what());
    }
}

std::string dump_instance(const EstimateGraph& graph, const WeightAssignment* actual) {
    return instance_to_json(graph, actual).dump(2) + "\n";
}

Instance read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& ex) {
        throw InvalidInput(path.string() + ": " + ex.what());
    }
    return instance_from_json(doc);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << text;
}

}  // namespace geewe
