#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "colorobs/graph.hpp"

namespace colorobs {

enum class PairKind { G2, G2Tilde, Product, AUncolored };

std::string to_string(PairKind kind);

using NodePair = std::pair<NodeIndex, NodeIndex>;
using PairIndex = std::uint32_t;

// Which pair nodes a builder materializes. Every edge of these graphs ends in
// a pair whose components share a color (or, for A, in any pair), so
// restricting to color-compatible pairs loses no cycle; it only drops
// source-only nodes.
enum class PairScope { All, ColorCompatible };

/// Directed graph over ordered pairs of source nodes, stored as CSR.
class PairGraph {
 public:
  PairKind kind() const noexcept { return kind_; }
  std::size_t source_size() const noexcept { return n_; }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  const std::vector<NodePair>& nodes() const noexcept { return nodes_; }
  const NodePair& node(PairIndex i) const { return nodes_[i]; }
  bool is_diagonal(PairIndex i) const { return nodes_[i].first == nodes_[i].second; }
  std::optional<PairIndex> index_of(NodeIndex a, NodeIndex b) const;

  std::span<const PairIndex> successors(PairIndex i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  bool has_edge(PairIndex from, PairIndex to) const;
  std::vector<std::pair<PairIndex, PairIndex>> edges() const;

 private:
  friend PairGraph build_pair_graph(const ColoredGraph&, PairKind, PairScope);

  PairKind kind_ = PairKind::G2;
  std::size_t n_ = 0;
  std::vector<NodePair> nodes_;
  std::vector<std::int32_t> lookup_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<PairIndex> targets_;
};

PairGraph build_pair_graph(const ColoredGraph& graph, PairKind kind, PairScope scope = PairScope::All);

/// (v1,v2) -> (v1',v2') iff both edges exist in G and L(v1') ∩ L(v2') ≠ ∅.
PairGraph build_g2(const ColoredGraph& graph);
/// Heads may come from either tail: v1', v2' ∈ succ(v1) ∪ succ(v2), same color.
PairGraph build_g2_tilde(const ColoredGraph& graph);
/// G² rule over all pairs including the diagonal.
PairGraph build_product(const ColoredGraph& graph);
/// Colors ignored: off-diagonal pairs, edge iff both component edges exist.
PairGraph build_A(const ColoredGraph& graph);

/// Strongly connected components. Each component is sorted; components are
/// ordered by their smallest member.
std::vector<std::vector<PairIndex>> sccs(const PairGraph& pg);

/// A component of size one without a self-loop is trivial.
bool is_nontrivial(const PairGraph& pg, const std::vector<PairIndex>& component);

bool is_acyclic(const PairGraph& pg);

struct CycleWitness {
  PairKind kind = PairKind::G2;
  std::vector<NodePair> pair_cycle;
  std::vector<NodeIndex> projection_1;
  std::vector<NodeIndex> projection_2;
  std::vector<std::vector<ColorIndex>> shared_colors;
  // Position where the projections coincide, for intersecting witnesses.
  std::optional<std::size_t> intersection;

  std::size_t length() const noexcept { return pair_cycle.size(); }
};

/// Shortest cycle through the smallest node of the first nontrivial SCC.
std::optional<CycleWitness> find_cycle(const PairGraph& pg, const ColoredGraph& graph);

/// Shortest path inside `allowed` from `from` to `to` (at least one edge).
/// Returned as the node sequence, starting at `from` and excluding the
/// final `to`. Empty if unreachable.
std::vector<PairIndex> shortest_cycle_path(const PairGraph& pg, PairIndex from, PairIndex to,
                                           const std::vector<char>& allowed);

CycleWitness make_witness(const PairGraph& pg, const ColoredGraph& graph, const std::vector<PairIndex>& cycle);

/// Broken witness invariants, empty when the witness is sound. Projections
/// must be closed walks for every kind except G2Tilde, whose edges do not
/// follow the components individually.
std::vector<std::string> witness_violations(const ColoredGraph& graph, const CycleWitness& w);

}  // namespace colorobs
