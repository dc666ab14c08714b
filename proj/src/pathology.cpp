#include "colorobs/pathology.hpp"

#include <algorithm>

#include "colorobs/errors.hpp"

namespace colorobs {

std::vector<SconEntry> detect_scon(const ColoredGraph& graph) {
  std::vector<SconEntry> out;
  const auto k = graph.palette().size();
  std::vector<std::vector<NodeIndex>> by_color(k);
  for (NodeIndex v = 0; v < graph.size(); ++v) {
    for (auto& b : by_color) b.clear();
    for (auto w : graph.successors(v)) {
      for (auto c : graph.colors(w)) by_color[c].push_back(w);
    }
    for (ColorIndex c = 0; c < k; ++c) {
      if (by_color[c].size() >= 2) out.push_back({v, c, by_color[c]});
    }
  }
  return out;
}

namespace {

// Components of the product graph that mix diagonal and off-diagonal pairs.
std::vector<std::vector<PairIndex>> mixed_components(const PairGraph& prod) {
  std::vector<std::vector<PairIndex>> out;
  for (auto& comp : sccs(prod)) {
    if (comp.size() < 2) continue;
    bool diag = false;
    bool off = false;
    for (auto i : comp) (prod.is_diagonal(i) ? diag : off) = true;
    if (diag && off) out.push_back(std::move(comp));
  }
  return out;
}

CycleWitness intersecting_witness(const PairGraph& prod, const ColoredGraph& graph, const std::vector<PairIndex>& comp) {
  std::vector<char> allowed(prod.size(), 0);
  for (auto i : comp) allowed[i] = 1;
  for (auto d : comp) {
    if (!prod.is_diagonal(d)) continue;
    for (auto o : prod.successors(d)) {
      if (!allowed[o] || prod.is_diagonal(o)) continue;
      auto back = shortest_cycle_path(prod, o, d, allowed);
      if (back.empty()) throw InternalConsistencyError("no path back to the diagonal inside an SCC");
      std::vector<PairIndex> cycle{d};
      cycle.insert(cycle.end(), back.begin(), back.end());
      auto w = make_witness(prod, graph, cycle);
      w.intersection = 0;
      return w;
    }
  }
  throw InternalConsistencyError("mixed SCC without a diagonal to off-diagonal edge");
}

PairGraph product(const ColoredGraph& graph) {
  return build_pair_graph(graph, PairKind::Product, PairScope::ColorCompatible);
}

PairGraph g2(const ColoredGraph& graph) { return build_pair_graph(graph, PairKind::G2, PairScope::ColorCompatible); }

}  // namespace

std::vector<CycleWitness> intersecting_witnesses(const ColoredGraph& graph, std::size_t limit) {
  std::vector<CycleWitness> out;
  const auto prod = product(graph);
  for (const auto& comp : mixed_components(prod)) {
    if (out.size() >= limit) break;
    out.push_back(intersecting_witness(prod, graph, comp));
  }
  return out;
}

std::vector<CycleWitness> separated_witnesses(const ColoredGraph& graph, std::size_t limit) {
  std::vector<CycleWitness> out;
  const auto pg = g2(graph);
  for (const auto& comp : sccs(pg)) {
    if (out.size() >= limit) break;
    if (!is_nontrivial(pg, comp)) continue;
    std::vector<char> allowed(pg.size(), 0);
    for (auto i : comp) allowed[i] = 1;
    auto cycle = shortest_cycle_path(pg, comp.front(), comp.front(), allowed);
    out.push_back(make_witness(pg, graph, cycle));
  }
  return out;
}

std::optional<CycleWitness> detect_intersecting_cycles(const ColoredGraph& graph) {
  auto ws = intersecting_witnesses(graph, 1);
  if (ws.empty()) return std::nullopt;
  return std::move(ws.front());
}

std::optional<CycleWitness> detect_separated_cycles(const ColoredGraph& graph) {
  auto ws = separated_witnesses(graph, 1);
  if (ws.empty()) return std::nullopt;
  return std::move(ws.front());
}

bool has_intersecting_cycles(const ColoredGraph& graph) { return !mixed_components(product(graph)).empty(); }

bool has_separated_cycles(const ColoredGraph& graph) { return !is_acyclic(g2(graph)); }

PathologyReport full_report(const ColoredGraph& graph) {
  PathologyReport r;
  r.scon = detect_scon(graph);
  r.intersecting = detect_intersecting_cycles(graph);
  r.separated = detect_separated_cycles(graph);
  if (r.has_intersecting() && !r.has_scon())
    throw InternalConsistencyError("intersecting cycles found in a graph without same-colored out-neighbors");
  for (const auto* w : {&r.intersecting, &r.separated}) {
    if (*w && !witness_violations(graph, **w).empty())
      throw InternalConsistencyError("detector produced an invalid witness");
  }
  return r;
}

}  // namespace colorobs
