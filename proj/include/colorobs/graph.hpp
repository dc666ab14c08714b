#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace colorobs {

using NodeIndex = std::uint32_t;
using ColorIndex = std::uint32_t;

struct ColorId {
  std::string name;
  ColorIndex index = 0;

  friend bool operator==(const ColorId&, const ColorId&) = default;
};

/// Plain, possibly invalid description of a node-colored graph.
///
/// This is what loaders produce and what callers fill in by hand; `validate`
/// reports what is wrong with it and `ColoredGraph::from_data` refuses to
/// build from it unless the list is empty. An empty palette means "derive the
/// palette from node colors in order of first appearance".
struct GraphData {
  struct Node {
    std::string id;
    std::vector<std::string> colors;
  };
  struct Edge {
    std::string from;
    std::string to;
  };

  std::vector<std::string> palette;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::optional<std::vector<std::string>> start_nodes;
};

/// Violations of the node-colored graph invariants, one message per offending
/// element. Empty iff the description is a valid graph.
std::vector<std::string> validate(const GraphData& data);

/// Immutable directed graph with a node -> color-set labelling.
///
/// Node indices are dense in [0, size()) in input order. Edges are unique
/// ordered pairs; self-loops are allowed. Color sets are sorted and nonempty.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  /// Throws ValidationError listing every violation.
  static ColoredGraph from_data(const GraphData& data);
  GraphData to_data() const;

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& id(NodeIndex v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<NodeIndex> index_of(const std::string& id) const;
  NodeIndex require_index(const std::string& id) const;

  const std::vector<ColorId>& palette() const noexcept { return palette_; }
  std::optional<ColorIndex> color_index(const std::string& name) const;
  ColorIndex require_color(const std::string& name) const;
  const std::string& color_name(ColorIndex c) const { return palette_[c].name; }

  std::span<const ColorIndex> colors(NodeIndex v) const { return colors_[v]; }
  bool has_color(NodeIndex v, ColorIndex c) const;
  /// L(a) ∩ L(b) ≠ ∅
  bool shares_color(NodeIndex a, NodeIndex b) const;
  bool single_colored() const noexcept { return single_colored_; }
  /// The one color of a node. Only meaningful for single-colored graphs.
  ColorIndex color_of(NodeIndex v) const { return colors_[v].front(); }

  std::span<const NodeIndex> successors(NodeIndex v) const { return out_[v]; }
  std::span<const NodeIndex> predecessors(NodeIndex v) const { return in_[v]; }
  bool has_edge(NodeIndex from, NodeIndex to) const;
  /// Sorted by (from, to).
  const std::vector<std::pair<NodeIndex, NodeIndex>>& edges() const noexcept { return edges_; }

  const std::optional<std::vector<NodeIndex>>& start_nodes() const noexcept { return start_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<ColorId> palette_;
  std::unordered_map<std::string, ColorIndex> color_index_;
  std::vector<std::vector<ColorIndex>> colors_;
  std::vector<std::vector<NodeIndex>> out_;
  std::vector<std::vector<NodeIndex>> in_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
  std::optional<std::vector<NodeIndex>> start_;
  bool single_colored_ = true;
};

/// Same palette, nodes, colors, edges and start set, ignoring ordering.
bool structurally_equal(const ColoredGraph& a, const ColoredGraph& b);

/// Edge-labelled graph: colors live on the edges instead of the nodes.
struct EdgeColoredData {
  struct Edge {
    std::string from;
    std::string to;
    std::vector<std::string> colors;
  };

  std::vector<std::string> palette;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::optional<std::vector<std::string>> start_nodes;
};

std::vector<std::string> validate(const EdgeColoredData& data);

class EdgeColoredGraph {
 public:
  struct Edge {
    NodeIndex from;
    NodeIndex to;
    std::vector<ColorIndex> colors;
  };

  static EdgeColoredGraph from_data(const EdgeColoredData& data);
  EdgeColoredData to_data() const;

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(NodeIndex v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<NodeIndex> index_of(const std::string& id) const;
  const std::vector<std::string>& palette() const noexcept { return palette_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::optional<std::vector<NodeIndex>>& start_nodes() const noexcept { return start_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::string> palette_;
  std::vector<Edge> edges_;
  std::optional<std::vector<NodeIndex>> start_;
};

/// Output node id -> id of the node it was copied from.
using Provenance = std::map<std::string, std::string>;

struct Reduction {
  ColoredGraph graph;
  Provenance provenance;
};

/// Split every multi-colored node into one single-colored copy per color.
/// Copies are named `<id>__<color>` and inherit all in- and out-edges.
Reduction reduce_multicolor(const ColoredGraph& graph);

/// Reserved color carried by nodes without incoming edges after
/// `reduce_edge_colored`.
inline constexpr const char* kSourceColor = "__source__";

/// Turn an edge-colored graph into a node-colored one: every node takes the
/// color(s) of its incoming edges and is split into one copy per incoming
/// color. A copy is reached from every copy of the edge's tail.
Reduction reduce_edge_colored(const EdgeColoredGraph& graph);

}  // namespace colorobs
