#include "colorobs/pair_graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "colorobs/errors.hpp"

namespace colorobs {

std::string to_string(PairKind kind) {
  switch (kind) {
    case PairKind::G2: return "G2";
    case PairKind::G2Tilde: return "G2_TILDE";
    case PairKind::Product: return "PRODUCT";
    case PairKind::AUncolored: return "A_UNCOLORED";
  }
  return "?";
}

std::optional<PairIndex> PairGraph::index_of(NodeIndex a, NodeIndex b) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  const auto i = lookup_[static_cast<std::size_t>(a) * n_ + b];
  if (i < 0) return std::nullopt;
  return static_cast<PairIndex>(i);
}

bool PairGraph::has_edge(PairIndex from, PairIndex to) const {
  auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<std::pair<PairIndex, PairIndex>> PairGraph::edges() const {
  std::vector<std::pair<PairIndex, PairIndex>> out;
  out.reserve(edge_count());
  for (PairIndex i = 0; i < size(); ++i) {
    for (auto j : successors(i)) out.emplace_back(i, j);
  }
  return out;
}

PairGraph build_pair_graph(const ColoredGraph& graph, PairKind kind, PairScope scope) {
  PairGraph pg;
  pg.kind_ = kind;
  pg.n_ = graph.size();
  const auto n = graph.size();
  const bool diagonal = kind == PairKind::Product;
  const bool colored = kind != PairKind::AUncolored;
  const bool restrict = scope == PairScope::ColorCompatible && colored;

  pg.lookup_.assign(n * n, -1);
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = 0; b < n; ++b) {
      if (a == b && !diagonal) continue;
      if (restrict && !graph.shares_color(a, b)) continue;
      pg.lookup_[static_cast<std::size_t>(a) * n + b] = static_cast<std::int32_t>(pg.nodes_.size());
      pg.nodes_.emplace_back(a, b);
    }
  }

  auto push = [&](NodeIndex x, NodeIndex y) {
    if (x == y && !diagonal) return;
    if (colored && !graph.shares_color(x, y)) return;
    const auto j = pg.lookup_[static_cast<std::size_t>(x) * n + y];
    if (j >= 0) pg.targets_.push_back(static_cast<PairIndex>(j));
  };

  std::vector<NodeIndex> heads;
  pg.offsets_.reserve(pg.nodes_.size() + 1);
  for (const auto& [a, b] : pg.nodes_) {
    if (kind == PairKind::G2Tilde) {
      heads.clear();
      auto sa = graph.successors(a);
      auto sb = graph.successors(b);
      std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(heads));
      for (auto x : heads) {
        for (auto y : heads) push(x, y);
      }
    } else {
      for (auto x : graph.successors(a)) {
        for (auto y : graph.successors(b)) push(x, y);
      }
    }
    pg.offsets_.push_back(static_cast<std::uint32_t>(pg.targets_.size()));
  }
  return pg;
}

PairGraph build_g2(const ColoredGraph& graph) { return build_pair_graph(graph, PairKind::G2); }
PairGraph build_g2_tilde(const ColoredGraph& graph) { return build_pair_graph(graph, PairKind::G2Tilde); }
PairGraph build_product(const ColoredGraph& graph) { return build_pair_graph(graph, PairKind::Product); }
PairGraph build_A(const ColoredGraph& graph) { return build_pair_graph(graph, PairKind::AUncolored); }

std::vector<std::vector<PairIndex>> sccs(const PairGraph& pg) {
  constexpr auto kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const auto n = pg.size();
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<PairIndex> stack;
  std::vector<std::pair<PairIndex, std::uint32_t>> call;  // node, next successor offset
  std::vector<std::vector<PairIndex>> out;
  std::uint32_t counter = 0;

  for (PairIndex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto succ = pg.successors(v);
      if (pos < succ.size()) {
        const auto w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<PairIndex> comp;
        PairIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool is_nontrivial(const PairGraph& pg, const std::vector<PairIndex>& component) {
  return component.size() > 1 || pg.has_edge(component.front(), component.front());
}

bool is_acyclic(const PairGraph& pg) {
  // Kahn's algorithm; cheaper than a full SCC pass.
  std::vector<std::uint32_t> indeg(pg.size(), 0);
  for (PairIndex i = 0; i < pg.size(); ++i) {
    for (auto j : pg.successors(i)) ++indeg[j];
  }
  std::vector<PairIndex> queue;
  for (PairIndex i = 0; i < pg.size(); ++i) {
    if (indeg[i] == 0) queue.push_back(i);
  }
  std::size_t removed = 0;
  while (!queue.empty()) {
    auto v = queue.back();
    queue.pop_back();
    ++removed;
    for (auto j : pg.successors(v)) {
      if (--indeg[j] == 0) queue.push_back(j);
    }
  }
  return removed == pg.size();
}

std::vector<PairIndex> shortest_cycle_path(const PairGraph& pg, PairIndex from, PairIndex to,
                                           const std::vector<char>& allowed) {
  constexpr auto kNone = std::numeric_limits<PairIndex>::max();
  std::vector<PairIndex> parent(pg.size(), kNone);
  std::vector<char> seen(pg.size(), 0);
  std::deque<PairIndex> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : pg.successors(v)) {
      if (!allowed[w]) continue;
      if (w == to) {
        std::vector<PairIndex> path{v};
        while (path.back() != from) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return {};
}

CycleWitness make_witness(const PairGraph& pg, const ColoredGraph& graph, const std::vector<PairIndex>& cycle) {
  CycleWitness w;
  w.kind = pg.kind();
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto [a, b] = pg.node(cycle[i]);
    w.pair_cycle.emplace_back(a, b);
    w.projection_1.push_back(a);
    w.projection_2.push_back(b);
    std::vector<ColorIndex> shared;
    auto ca = graph.colors(a);
    auto cb = graph.colors(b);
    std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(shared));
    w.shared_colors.push_back(std::move(shared));
    if (a == b && !w.intersection) w.intersection = i;
  }
  return w;
}

std::optional<CycleWitness> find_cycle(const PairGraph& pg, const ColoredGraph& graph) {
  if (pg.source_size() != graph.size()) throw Error("pair graph does not belong to this graph");
  for (const auto& comp : sccs(pg)) {
    if (!is_nontrivial(pg, comp)) continue;
    std::vector<char> allowed(pg.size(), 0);
    for (auto v : comp) allowed[v] = 1;
    auto cycle = shortest_cycle_path(pg, comp.front(), comp.front(), allowed);
    if (cycle.empty()) throw InternalConsistencyError("nontrivial SCC without a cycle through its root");
    return make_witness(pg, graph, cycle);
  }
  return std::nullopt;
}

std::vector<std::string> witness_violations(const ColoredGraph& graph, const CycleWitness& w) {
  std::vector<std::string> out;
  const auto k = w.pair_cycle.size();
  if (k == 0) out.push_back("empty cycle");
  if (w.projection_1.size() != k || w.projection_2.size() != k || w.shared_colors.size() != k) {
    out.push_back("projection lengths differ from the cycle length");
    return out;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto a = w.projection_1[i];
    const auto b = w.projection_2[i];
    if (a >= graph.size() || b >= graph.size()) {
      out.push_back("projection references a missing node");
      return out;
    }
    if (w.pair_cycle[i] != NodePair{a, b}) out.push_back("projection disagrees with pair cycle at " + std::to_string(i));
    const auto next = (i + 1) % k;
    if (w.kind != PairKind::G2Tilde) {
      if (!graph.has_edge(a, w.projection_1[next]))
        out.push_back("first projection is not a walk at " + std::to_string(i));
      if (!graph.has_edge(b, w.projection_2[next]))
        out.push_back("second projection is not a walk at " + std::to_string(i));
    }
    if (w.kind != PairKind::AUncolored) {
      if (w.shared_colors[i].empty()) out.push_back("no shared color at " + std::to_string(i));
      for (auto c : w.shared_colors[i]) {
        if (!graph.has_color(a, c) || !graph.has_color(b, c))
          out.push_back("shared color not carried by both nodes at " + std::to_string(i));
      }
    }
  }
  if (w.intersection) {
    if (*w.intersection >= k || w.projection_1[*w.intersection] != w.projection_2[*w.intersection])
      out.push_back("marked intersection position has distinct projections");
  }
  return out;
}

}  // namespace colorobs
