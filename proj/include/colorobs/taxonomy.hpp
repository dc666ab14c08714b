#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colorobs/graph.hpp"

namespace colorobs {

enum class GraphClass {
  Trackable,
  PartlyAPosterioriObservable,
  PartlyObservable,
  SemiUnifilar,
  Observable,
  Unifilar,
};

std::string to_string(GraphClass c);
/// Accepts the display names and snake/kebab-case spellings
/// ("partly-a-posteriori-observable", "semi_unifilar", ...).
GraphClass parse_graph_class(const std::string& name);

enum class Region { I = 1, II, III, IV, V, VI, VII, VIII };

std::string to_string(Region r);

struct Flags {
  bool has_scon = false;
  bool has_intersecting = false;
  bool has_separated = false;
  bool g2_acyclic = true;
  bool g2tilde_acyclic = true;

  bool trackable() const noexcept { return !has_intersecting; }
  bool semi_unifilar() const noexcept { return !has_scon; }
  bool partly_a_posteriori_observable() const noexcept { return g2_acyclic; }
  bool partly_observable() const noexcept { return g2tilde_acyclic; }
  bool observable() const noexcept { return !has_scon && !has_separated; }

  friend bool operator==(const Flags&, const Flags&) = default;
};

/// Violated containments between the flags; empty for every real graph.
std::vector<std::string> infeasibility(const Flags& flags);

/// Region decision table. Throws InternalConsistencyError on flag
/// combinations no graph can produce.
Region region_of(const Flags& flags);

struct UnifilarReport {
  bool unifilar = false;
  bool start_condition_evaluated = false;
  std::vector<std::string> violations;
};

/// 1) every node emits exactly one color, 2) no node has two out-neighbors
/// emitting the same color, 3) at most one start node per color. Condition 3
/// is only checked when the graph has a start set.
UnifilarReport is_unifilar(const ColoredGraph& graph);

struct Classification {
  Flags flags;
  std::vector<GraphClass> classes;
  Region region = Region::I;
  UnifilarReport unifilar;

  bool has(GraphClass c) const;
};

Flags compute_flags(const ColoredGraph& graph);
Classification classify(const ColoredGraph& graph);

/// Whether `graph` belongs to `target`, computing only what is needed.
bool satisfies(const ColoredGraph& graph, GraphClass target);

/// For observable graphs: the number of observations after which the current
/// node is always determined, i.e. any T+1 observations pin it down. It is
/// 1 + the longest G² path from a color-compatible pair (restricted to start
/// pairs when a start set is given), or 0 when no such pair exists. Absent
/// for graphs that are not observable.
std::optional<std::size_t> compute_burn_in(const ColoredGraph& graph);

}  // namespace colorobs
