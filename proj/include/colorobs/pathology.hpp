#pragma once

#include <optional>
#include <vector>

#include "colorobs/graph.hpp"
#include "colorobs/pair_graph.hpp"

namespace colorobs {

/// A node with two or more out-neighbors that can emit the same color.
struct SconEntry {
  NodeIndex node = 0;
  ColorIndex color = 0;
  std::vector<NodeIndex> neighbors;
};

struct PathologyReport {
  std::vector<SconEntry> scon;
  std::optional<CycleWitness> intersecting;
  std::optional<CycleWitness> separated;

  bool has_scon() const noexcept { return !scon.empty(); }
  bool has_intersecting() const noexcept { return intersecting.has_value(); }
  bool has_separated() const noexcept { return separated.has_value(); }
};

/// One entry per (node, color) with at least two out-neighbors carrying it.
std::vector<SconEntry> detect_scon(const ColoredGraph& graph);

/// Closed pair walk in a product SCC that holds both a diagonal and an
/// off-diagonal pair. Position 0 is the diagonal pair.
std::optional<CycleWitness> detect_intersecting_cycles(const ColoredGraph& graph);

/// A cycle of G²; projections differ at every position.
std::optional<CycleWitness> detect_separated_cycles(const ColoredGraph& graph);

/// Up to `limit` witnesses, one per qualifying SCC.
std::vector<CycleWitness> intersecting_witnesses(const ColoredGraph& graph, std::size_t limit);
std::vector<CycleWitness> separated_witnesses(const ColoredGraph& graph, std::size_t limit);

/// Runs all three detectors. Throws InternalConsistencyError if an
/// intersecting witness shows up without any scon entry.
PathologyReport full_report(const ColoredGraph& graph);

// Flag-only variants that skip witness construction.
bool has_intersecting_cycles(const ColoredGraph& graph);
bool has_separated_cycles(const ColoredGraph& graph);

}  // namespace colorobs
