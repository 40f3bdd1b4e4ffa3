#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "geewe/graph.hpp"

namespace geewe {

// Instance file contents: structure, intervals, and optionally the actual weights.
struct Instance {
    EstimateGraph graph;
    std::optional<WeightAssignment> actual;
};

/*
 * {"n": int, "s": int, "t": int,
 *  "edges": [{"a": int, "b": int, "lower": "p/q", "upper": "p/q", "actual": "p/q"?}]}
 *
 * "actual" must be present on every edge or on none.
 */
nlohmann::json instance_to_json(const EstimateGraph& graph, const WeightAssignment* actual = nullptr);
Instance instance_from_json(const nlohmann::json& doc);

std::string dump_instance(const EstimateGraph& graph, const WeightAssignment* actual = nullptr);
Instance read_instance_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace geewe
