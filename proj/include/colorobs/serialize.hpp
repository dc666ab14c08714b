#pragma once

#include "json.hpp"

#include "colorobs/chromatic.hpp"
#include "colorobs/graph.hpp"
#include "colorobs/mitigation.hpp"
#include "colorobs/pair_graph.hpp"
#include "colorobs/pathology.hpp"
#include "colorobs/taxonomy.hpp"
#include "colorobs/tracking.hpp"

namespace colorobs {

using Json = nlohmann::ordered_json;

Json to_json(const ColoredGraph& graph);
Json to_json(const EdgeColoredGraph& graph);
Json to_json(const Provenance& provenance);

// Schema-level conversion; does not validate.
GraphData graph_data_from_json(const Json& doc);
EdgeColoredData edge_colored_data_from_json(const Json& doc);
bool is_edge_colored_json(const Json& doc);

// Reports. Nodes and colors appear by id and name.
Json to_json(const CycleWitness& witness, const ColoredGraph& graph);
Json to_json(const PathologyReport& report, const ColoredGraph& graph);
Json to_json(const Flags& flags);
Json to_json(const Classification& classification);
Json to_json(const IndicatorPlacement& placement);
Json to_json(const ChromaticResult& result, const ColoredGraph& graph);
Json to_json(const GrowthReport& report, const ColoredGraph& graph);
Json to_json(const TriangleInstance& instance);

/// {"vertices": n, "edges": [[u, v], ...]}
TriangleInstance triangle_instance_from_json(const Json& doc);
/// Either a JSON list of [from, to] pairs or one "from to" pair per line;
/// blank lines and lines starting with '#' are skipped.
std::vector<EdgeId> parse_edge_list(const std::string& text);

/// Dense row-major transitions from {"a": {"b": 0.5, ...}, ...} keyed by node
/// id (missing rows and entries are zero) or an n x n array in node order.
std::vector<double> transition_matrix_from_json(const Json& doc, const ColoredGraph& graph);

/// Pair graph as DOT, one node per line labelled "(a,b)".
std::string to_dot(const PairGraph& pg, const ColoredGraph& graph);

/// CSV with header "step,count"; steps are 1-based.
std::string to_csv(const HypothesisCount& count);

/// FNV-1a over the canonical JSON dump of graph, transitions and initial
/// distribution, as 16 hex digits.
std::string model_hash(const HmmModel& model);

}  // namespace colorobs
