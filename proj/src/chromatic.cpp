#include "colorobs/chromatic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "colorobs/errors.hpp"

namespace colorobs {

namespace {

class Johnson {
 public:
  Johnson(const PairGraph& pg, std::size_t budget) : pg_(pg), budget_(budget), reverse_(pg.size()) {
    for (PairIndex i = 0; i < pg.size(); ++i) {
      for (auto j : pg.successors(i)) reverse_[j].push_back(i);
    }
  }

  std::vector<std::vector<PairIndex>> run() {
    const auto n = pg_.size();
    blocked_.assign(n, 0);
    blist_.assign(n, {});
    in_comp_.assign(n, 0);
    for (PairIndex s = 0; s < n; ++s) {
      if (!component_of(s)) continue;
      start_ = s;
      for (PairIndex v = s; v < n; ++v) {
        if (in_comp_[v]) {
          blocked_[v] = 0;
          blist_[v].clear();
        }
      }
      circuit(s);
    }
    return std::move(cycles_);
  }

 private:
  // Marks the SCC of s within nodes >= s; false when it holds no cycle.
  bool component_of(PairIndex s) {
    std::fill(in_comp_.begin(), in_comp_.end(), 0);
    auto reach = [&](const auto& next) {
      std::vector<char> seen(pg_.size(), 0);
      std::vector<PairIndex> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : next(v)) {
          if (w >= s && !seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      return seen;
    };
    auto fwd = reach([&](PairIndex v) { return pg_.successors(v); });
    auto bwd = reach([&](PairIndex v) { return std::span<const PairIndex>(reverse_[v]); });
    std::size_t size = 0;
    for (PairIndex v = s; v < pg_.size(); ++v) {
      in_comp_[v] = fwd[v] && bwd[v];
      size += in_comp_[v];
    }
    return size > 1 || pg_.has_edge(s, s);
  }

  void unblock(PairIndex u) {
    blocked_[u] = 0;
    auto pending = std::move(blist_[u]);
    blist_[u].clear();
    for (auto w : pending) {
      if (blocked_[w]) unblock(w);
    }
  }

  bool circuit(PairIndex v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = 1;
    for (auto w : pg_.successors(v)) {
      if (!in_comp_[w]) continue;
      if (w == start_) {
        if (cycles_.size() >= budget_)
          throw BudgetExceeded("more than " + std::to_string(budget_) + " elementary cycles");
        cycles_.push_back(path_);
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (auto w : pg_.successors(v)) {
        if (in_comp_[w] && std::find(blist_[w].begin(), blist_[w].end(), v) == blist_[w].end())
          blist_[w].push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  const PairGraph& pg_;
  std::size_t budget_;
  std::vector<std::vector<PairIndex>> reverse_;
  std::vector<char> blocked_;
  std::vector<std::vector<PairIndex>> blist_;
  std::vector<char> in_comp_;
  std::vector<PairIndex> path_;
  std::vector<std::vector<PairIndex>> cycles_;
  PairIndex start_ = 0;
};

NodePair unordered(const NodePair& p) { return p.first < p.second ? p : NodePair{p.second, p.first}; }

}  // namespace

std::vector<std::vector<PairIndex>> elementary_cycles(const PairGraph& pg, std::size_t budget) {
  return Johnson(pg, budget).run();
}

std::vector<std::vector<NodeIndex>> UndirectedGraph::adjacency() const {
  std::vector<std::vector<NodeIndex>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::vector<NodePair> select_cycle_pairs(const PairGraph& A, const std::vector<std::vector<PairIndex>>& cycles) {
  // pair -> cycles passing through it
  std::map<NodePair, std::vector<std::size_t>> covers;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    std::set<NodePair> seen;
    for (auto i : cycles[c]) seen.insert(unordered(A.node(i)));
    for (const auto& p : seen) covers[p].push_back(c);
  }
  std::vector<char> covered(cycles.size(), 0);
  std::size_t remaining = cycles.size();
  std::vector<NodePair> selection;
  while (remaining > 0) {
    const NodePair* best = nullptr;
    std::size_t best_gain = 0;
    for (const auto& [p, cs] : covers) {
      std::size_t gain = 0;
      for (auto c : cs) gain += !covered[c];
      if (gain > best_gain) {
        best_gain = gain;
        best = &p;
      }
    }
    if (!best) throw InternalConsistencyError("uncoverable cycle in set cover");
    for (auto c : covers[*best]) {
      if (!covered[c]) {
        covered[c] = 1;
        --remaining;
      }
    }
    selection.push_back(*best);
  }
  std::sort(selection.begin(), selection.end());
  return selection;
}

UndirectedGraph build_B(const ColoredGraph& graph, const PairGraph& A, const std::vector<NodePair>& selection,
                        std::size_t budget) {
  std::set<NodePair> chosen;
  for (const auto& p : selection) {
    if (p.first >= graph.size() || p.second >= graph.size() || p.first == p.second)
      throw Error("selection contains an invalid pair");
    chosen.insert(unordered(p));
  }
  const auto cycles = elementary_cycles(A, budget);
  for (const auto& cycle : cycles) {
    const bool hit = std::any_of(cycle.begin(), cycle.end(), [&](PairIndex i) { return chosen.contains(unordered(A.node(i))); });
    if (!hit) {
      std::string desc;
      for (auto i : cycle) desc += "(" + graph.id(A.node(i).first) + "," + graph.id(A.node(i).second) + ")";
      throw Error("selection misses cycle " + desc);
    }
  }
  UndirectedGraph B;
  B.n = graph.size();
  B.edges.assign(chosen.begin(), chosen.end());
  return B;
}

std::vector<int> greedy_coloring(const UndirectedGraph& B, const std::vector<std::string>& ids) {
  const auto adj = B.adjacency();
  std::vector<NodeIndex> order(B.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    if (adj[a].size() != adj[b].size()) return adj[a].size() > adj[b].size();
    return ids[a] < ids[b];
  });
  std::vector<int> color(B.n, -1);
  for (auto v : order) {
    std::vector<char> used(adj[v].size() + 1, 0);
    for (auto w : adj[v]) {
      if (color[w] >= 0 && static_cast<std::size_t>(color[w]) < used.size()) used[color[w]] = 1;
    }
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

ChromaticResult chromatic_bound(const ColoredGraph& graph, std::size_t budget) {
  ChromaticResult result;
  const auto A = build_A(graph);
  const auto cycles = elementary_cycles(A, budget);
  result.selection = select_cycle_pairs(A, cycles);
  result.B = build_B(graph, A, result.selection, budget);
  result.coloring = greedy_coloring(result.B, graph.ids());
  result.bound = result.coloring.empty() ? 1 : *std::max_element(result.coloring.begin(), result.coloring.end()) + 1;

  GraphData data;
  for (int c = 0; c < result.bound; ++c) data.palette.push_back("k" + std::to_string(c));
  for (NodeIndex v = 0; v < graph.size(); ++v) data.nodes.push_back({graph.id(v), {data.palette[result.coloring[v]]}});
  for (const auto& [a, b] : graph.edges()) data.edges.push_back({graph.id(a), graph.id(b)});
  if (graph.start_nodes()) {
    std::vector<std::string> start;
    for (auto v : *graph.start_nodes()) start.push_back(graph.id(v));
    data.start_nodes = std::move(start);
  }
  result.recolored = ColoredGraph::from_data(data);
  if (!is_acyclic(build_pair_graph(result.recolored, PairKind::G2, PairScope::ColorCompatible)))
    throw InternalConsistencyError("recolored graph still has separated cycles");
  return result;
}

}  // namespace colorobs
