#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "colorobs/graph.hpp"
#include "colorobs/taxonomy.hpp"

namespace colorobs {

struct EdgeId {
  std::string from;
  std::string to;

  auto operator<=>(const EdgeId&) const = default;
};

inline constexpr const char* kIndicatorInfix = "__ind__";
inline constexpr const char* kDefaultIndicatorColor = "Grey";

struct IndicatorPlacement {
  // Sorted, no repeats.
  std::vector<EdgeId> chosen_edges;
  // Joins the palette when it is not already there.
  std::string indicator_color = kDefaultIndicatorColor;
};

std::string indicator_id(const EdgeId& e);

/// Replaces each chosen edge u -> v by u -> u__ind__v -> v. Throws Error for
/// edges missing from the graph, repeated edges and id collisions.
ColoredGraph apply_indicators(const ColoredGraph& graph, const IndicatorPlacement& placement);

std::vector<EdgeId> all_edges(const ColoredGraph& graph);
/// Edges entering or leaving `node`.
std::vector<EdgeId> edges_adjacent(const ColoredGraph& graph, const std::string& node);

struct ExactOptions {
  // Largest candidate set accepted.
  std::size_t budget = 20;
  std::string indicator_color = kDefaultIndicatorColor;
  // Skip minimization and return the first verified placement.
  bool feasibility_only = false;
  // Pathology witnesses turned into nogoods per failed check.
  std::size_t witnesses_per_check = 24;
};

struct ExactStats {
  std::size_t sat_calls = 0;
  std::size_t checks = 0;
  std::size_t nogoods = 0;
};

/// Minimum-cardinality placement within F reaching `target`, the
/// lexicographically least among those. Every candidate placement is checked
/// by reclassifying the mitigated graph; failed checks add nogood clauses
/// built from the pathology witnesses they expose. Unifilar is not a valid
/// target. Throws BudgetExceeded when |F| > budget.
std::optional<IndicatorPlacement> solve_insp_exact(const ColoredGraph& graph, const std::vector<EdgeId>& F,
                                                   GraphClass target, const ExactOptions& options = {},
                                                   ExactStats* stats = nullptr);

/// Long-run edge traversal frequency pi(u) P(u,v), averaged from a uniform
/// start so that chains with several closed classes are covered. Nodes
/// without out-edges hold their mass. `P` is dense row-major; null means
/// uniform over out-edges.
std::vector<double> edge_frequencies(const ColoredGraph& graph, const std::vector<double>* P = nullptr);

/// Repeatedly breaks the blocking pathology by inserting an indicator on the
/// least frequently traversed F-edge of its witness. Supports Trackable,
/// PartlyAPosterioriObservable, SemiUnifilar and Observable.
std::optional<IndicatorPlacement> solve_insp_greedy(const ColoredGraph& graph, const std::vector<EdgeId>& F,
                                                    GraphClass target, const std::vector<double>* P = nullptr,
                                                    const std::string& indicator_color = kDefaultIndicatorColor);

struct TriangleInstance {
  std::size_t vertices = 0;
  // u < v, sorted, unique.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // Vertex triples a < b < c, sorted.
  std::vector<std::array<std::size_t, 3>> triangles;
  // Indices into `edges` of each triangle's sides: ab, ac, bc.
  std::vector<std::array<std::size_t, 3>> triangle_edges;

  static TriangleInstance from_edges(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);
  static TriangleInstance complete(std::size_t vertices);
};

enum class IndicatorColorMode { Existing, Fresh };

struct InspReduction {
  ColoredGraph graph;
  std::vector<EdgeId> F;
  std::string indicator_color;
  std::size_t tree_depth = 0;
  std::size_t array_length = 0;
};

/// Graph whose candidate edges admit a placement making it partly a
/// posteriori observable iff the instance has an edge 2-coloring without
/// monochromatic triangles.
InspReduction build_insp_reduction(const TriangleInstance& instance, IndicatorColorMode mode);

/// Exhaustive check over 2^|E| colorings. Throws Error above 24 edges.
bool monochromatic_triangle_oracle(const TriangleInstance& instance);

}  // namespace colorobs
