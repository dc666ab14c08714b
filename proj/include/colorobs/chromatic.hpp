#pragma once

#include <cstddef>
#include <vector>

#include "colorobs/graph.hpp"
#include "colorobs/pair_graph.hpp"

namespace colorobs {

inline constexpr std::size_t kDefaultCycleBudget = 10000;

/// Elementary cycles (Johnson). Each cycle starts at its smallest pair index.
/// Throws BudgetExceeded once more than `budget` cycles are found.
std::vector<std::vector<PairIndex>> elementary_cycles(const PairGraph& pg, std::size_t budget = kDefaultCycleBudget);

struct UndirectedGraph {
  std::size_t n = 0;
  // Normalized so that first < second; sorted, unique.
  std::vector<NodePair> edges;

  std::vector<std::vector<NodeIndex>> adjacency() const;
};

/// Greedy set cover of the cycles of A by unordered node pairs. A cycle is
/// covered by {u,v} when it passes through (u,v) or (v,u). Ties go to the
/// lexicographically smallest pair. Returned pairs have first < second.
std::vector<NodePair> select_cycle_pairs(const PairGraph& A, const std::vector<std::vector<PairIndex>>& cycles);

/// B over V with one undirected edge per selected pair. Throws Error if some
/// elementary cycle of A (within `budget`) passes through no selected pair.
UndirectedGraph build_B(const ColoredGraph& graph, const PairGraph& A, const std::vector<NodePair>& selection,
                        std::size_t budget = kDefaultCycleBudget);

/// Order: descending degree, ties by node id. Each node takes the smallest
/// color unused by its already colored neighbours.
std::vector<int> greedy_coloring(const UndirectedGraph& B, const std::vector<std::string>& ids);

struct ChromaticResult {
  int bound = 1;
  std::vector<NodePair> selection;
  std::vector<int> coloring;
  UndirectedGraph B;
  ColoredGraph recolored;
};

/// Recolors V from a greedy coloring of B and checks that the recolored graph
/// has an acyclic G².
ChromaticResult chromatic_bound(const ColoredGraph& graph, std::size_t budget = kDefaultCycleBudget);

}  // namespace colorobs
