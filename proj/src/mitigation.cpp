#include "colorobs/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "colorobs/errors.hpp"
#include "colorobs/pair_graph.hpp"
#include "colorobs/pathology.hpp"
#include "colorobs/sat.hpp"

namespace colorobs {

std::string indicator_id(const EdgeId& e) { return e.from + kIndicatorInfix + e.to; }

namespace {

std::string describe(const EdgeId& e) { return e.from + " -> " + e.to; }

void require_edge(const ColoredGraph& graph, const EdgeId& e) {
  auto a = graph.index_of(e.from);
  auto b = graph.index_of(e.to);
  if (!a || !b || !graph.has_edge(*a, *b)) throw Error("edge " + describe(e) + " is not in the graph");
}

std::vector<EdgeId> canonical(const ColoredGraph& graph, std::vector<EdgeId> F) {
  std::sort(F.begin(), F.end());
  F.erase(std::unique(F.begin(), F.end()), F.end());
  for (const auto& e : F) require_edge(graph, e);
  return F;
}

}  // namespace

ColoredGraph apply_indicators(const ColoredGraph& graph, const IndicatorPlacement& placement) {
  std::set<EdgeId> chosen;
  std::set<std::string> fresh_ids;
  for (const auto& e : placement.chosen_edges) {
    if (!chosen.insert(e).second) throw Error("edge " + describe(e) + " chosen twice");
    require_edge(graph, e);
    const auto id = indicator_id(e);
    if (graph.index_of(id) || !fresh_ids.insert(id).second)
      throw Error("indicator id " + id + " collides with an existing node");
  }
  if (chosen.empty()) return graph;
  if (placement.indicator_color.empty()) throw Error("indicator color must not be empty");

  auto data = graph.to_data();
  if (std::find(data.palette.begin(), data.palette.end(), placement.indicator_color) == data.palette.end())
    data.palette.push_back(placement.indicator_color);
  std::vector<GraphData::Edge> edges;
  edges.reserve(data.edges.size() + chosen.size());
  for (const auto& e : data.edges) {
    EdgeId key{e.from, e.to};
    if (chosen.count(key)) {
      const auto id = indicator_id(key);
      edges.push_back({e.from, id});
      edges.push_back({id, e.to});
    } else {
      edges.push_back(e);
    }
  }
  data.edges = std::move(edges);
  for (const auto& e : chosen) data.nodes.push_back({indicator_id(e), {placement.indicator_color}});
  return ColoredGraph::from_data(data);
}

std::vector<EdgeId> all_edges(const ColoredGraph& graph) {
  std::vector<EdgeId> out;
  for (const auto& [a, b] : graph.edges()) out.push_back({graph.id(a), graph.id(b)});
  return out;
}

std::vector<EdgeId> edges_adjacent(const ColoredGraph& graph, const std::string& node) {
  const auto v = graph.require_index(node);
  std::vector<EdgeId> out;
  for (const auto& [a, b] : graph.edges()) {
    if (a == v || b == v) out.push_back({graph.id(a), graph.id(b)});
  }
  return out;
}

namespace {

using EdgeList = std::vector<std::pair<NodeIndex, NodeIndex>>;

void walk_edges(const std::vector<NodeIndex>& walk, EdgeList& out) {
  for (std::size_t i = 0; i < walk.size(); ++i) out.emplace_back(walk[i], walk[(i + 1) % walk.size()]);
}

// Cycles through several seeds of every nontrivial SCC, up to `limit` total.
std::vector<std::vector<PairIndex>> pair_cycles(const PairGraph& pg, std::size_t limit) {
  std::vector<std::vector<PairIndex>> out;
  std::vector<char> allowed(pg.size(), 0);
  for (const auto& comp : sccs(pg)) {
    if (out.size() >= limit) break;
    if (!is_nontrivial(pg, comp)) continue;
    for (auto p : comp) allowed[p] = 1;
    const auto stride = std::max<std::size_t>(1, comp.size() / limit);
    for (std::size_t k = 0; k < comp.size() && out.size() < limit; k += stride) {
      auto path = shortest_cycle_path(pg, comp[k], comp[k], allowed);
      if (!path.empty()) out.push_back(std::move(path));
    }
    for (auto p : comp) allowed[p] = 0;
  }
  return out;
}

// Edges of the mitigated graph that keep each witness alive, one list per
// witness.
std::vector<EdgeList> blocking_edges(const ColoredGraph& g, GraphClass target, std::size_t limit) {
  std::vector<EdgeList> out;
  auto scon = [&] {
    for (const auto& e : detect_scon(g)) {
      for (std::size_t i = 1; i < e.neighbors.size() && out.size() < limit; ++i)
        out.push_back({{e.node, e.neighbors[0]}, {e.node, e.neighbors[i]}});
    }
  };
  auto pair_graph_cycles = [&](PairKind kind) {
    const auto pg = build_pair_graph(g, kind, PairScope::ColorCompatible);
    for (const auto& cycle : pair_cycles(pg, limit)) {
      EdgeList edges;
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto [a, b] = pg.node(cycle[i]);
        const auto [x, y] = pg.node(cycle[(i + 1) % cycle.size()]);
        if (kind == PairKind::G2) {
          edges.emplace_back(a, x);
          edges.emplace_back(b, y);
        } else {
          for (auto s : {a, b})
            for (auto t : {x, y})
              if (g.has_edge(s, t)) edges.emplace_back(s, t);
        }
      }
      out.push_back(std::move(edges));
    }
  };
  switch (target) {
    case GraphClass::Trackable:
      for (const auto& w : intersecting_witnesses(g, limit)) {
        EdgeList edges;
        walk_edges(w.projection_1, edges);
        walk_edges(w.projection_2, edges);
        out.push_back(std::move(edges));
      }
      break;
    case GraphClass::PartlyAPosterioriObservable: pair_graph_cycles(PairKind::G2); break;
    case GraphClass::PartlyObservable: pair_graph_cycles(PairKind::G2Tilde); break;
    case GraphClass::SemiUnifilar: scon(); break;
    case GraphClass::Observable:
      scon();
      if (out.empty()) pair_graph_cycles(PairKind::G2);
      break;
    case GraphClass::Unifilar: break;
  }
  return out;
}

class ExactSearch {
 public:
  ExactSearch(const ColoredGraph& graph, std::vector<EdgeId> F, GraphClass target, const ExactOptions& options,
              ExactStats& stats)
      : graph_(graph), F_(std::move(F)), target_(target), options_(options), stats_(stats) {
    for (std::size_t i = 0; i < F_.size(); ++i) {
      vars_.push_back(solver_.new_var());
      index_[F_[i]] = i;
      indicator_[indicator_id(F_[i])] = i;
    }
  }

  std::optional<std::vector<char>> verified(const std::vector<sat::Lit>& assumptions) {
    for (;;) {
      ++stats_.sat_calls;
      if (!solver_.solve(assumptions)) return std::nullopt;
      std::vector<char> chosen(F_.size());
      for (std::size_t i = 0; i < F_.size(); ++i) chosen[i] = solver_.model_value(vars_[i]);
      if (check(chosen)) return chosen;
    }
  }

  std::optional<IndicatorPlacement> run() {
    auto best = verified({});
    if (!best) return std::nullopt;
    if (!options_.feasibility_only) {
      std::vector<sat::Lit> inputs;
      for (auto v : vars_) inputs.push_back(sat::pos(v));
      sat::Totalizer count(solver_, inputs);
      auto k = static_cast<std::size_t>(std::count(best->begin(), best->end(), 1));
      while (k > 0) {
        auto smaller = verified(count.at_most(k - 1));
        if (!smaller) break;
        best = std::move(smaller);
        k = static_cast<std::size_t>(std::count(best->begin(), best->end(), 1));
      }
      // Lexicographically least among the minimum placements.
      std::vector<sat::Lit> prefix = count.at_most(k);
      std::size_t taken = 0;
      for (std::size_t i = 0; i < F_.size(); ++i) {
        if (taken == k) {
          (*best)[i] = 0;
          continue;
        }
        if (!(*best)[i]) {
          auto trial = prefix;
          trial.push_back(sat::pos(vars_[i]));
          if (auto r = verified(trial)) best = std::move(r);
        }
        prefix.push_back((*best)[i] ? sat::pos(vars_[i]) : sat::neg(vars_[i]));
        taken += (*best)[i] ? 1 : 0;
      }
      if (!check(*best)) throw InternalConsistencyError("minimal placement failed verification");
    }
    return placement(*best);
  }

 private:
  IndicatorPlacement placement(const std::vector<char>& chosen) const {
    IndicatorPlacement p;
    p.indicator_color = options_.indicator_color;
    for (std::size_t i = 0; i < F_.size(); ++i) {
      if (chosen[i]) p.chosen_edges.push_back(F_[i]);
    }
    return p;
  }

  bool check(const std::vector<char>& chosen) {
    ++stats_.checks;
    const auto g = apply_indicators(graph_, placement(chosen));
    if (satisfies(g, target_)) return true;
    std::size_t added = 0;
    for (const auto& edges : blocking_edges(g, target_, options_.witnesses_per_check)) {
      std::set<sat::Lit> clause;
      for (const auto& [a, b] : edges) {
        if (auto it = indicator_.find(g.id(a)); it != indicator_.end()) {
          clause.insert(sat::neg(vars_[it->second]));
        } else if (auto jt = indicator_.find(g.id(b)); jt != indicator_.end()) {
          clause.insert(sat::neg(vars_[jt->second]));
        } else if (auto kt = index_.find(EdgeId{g.id(a), g.id(b)}); kt != index_.end()) {
          clause.insert(sat::pos(vars_[kt->second]));
        }
      }
      solver_.add_clause({clause.begin(), clause.end()});
      ++added;
    }
    stats_.nogoods += added;
    if (added == 0) throw InternalConsistencyError("failed check produced no witness for " + to_string(target_));
    return false;
  }

  const ColoredGraph& graph_;
  std::vector<EdgeId> F_;
  GraphClass target_;
  const ExactOptions& options_;
  ExactStats& stats_;
  sat::Solver solver_;
  std::vector<std::uint32_t> vars_;
  std::map<EdgeId, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> indicator_;
};

}  // namespace

std::optional<IndicatorPlacement> solve_insp_exact(const ColoredGraph& graph, const std::vector<EdgeId>& F,
                                                   GraphClass target, const ExactOptions& options,
                                                   ExactStats* stats) {
  if (target == GraphClass::Unifilar) throw Error("Unifilar is not a mitigation target");
  auto candidates = canonical(graph, F);
  if (candidates.size() > options.budget)
    throw BudgetExceeded("candidate set has " + std::to_string(candidates.size()) + " edges; budget is " +
                         std::to_string(options.budget));
  ExactStats local;
  ExactSearch search(graph, std::move(candidates), target, options, stats ? *stats : local);
  return search.run();
}

std::vector<double> edge_frequencies(const ColoredGraph& graph, const std::vector<double>* P) {
  const auto n = graph.size();
  std::vector<double> probs(n * n, 0.0);
  if (P) {
    if (P->size() != n * n) throw ModelError("probability matrix has the wrong size");
    for (NodeIndex u = 0; u < n; ++u) {
      double sum = 0.0;
      for (NodeIndex v = 0; v < n; ++v) {
        const double p = (*P)[u * n + v];
        if (!(p >= 0.0) || !std::isfinite(p)) throw ModelError("invalid probabilities");
        if (p > 0.0 && !graph.has_edge(u, v))
          throw ModelError("probability on missing edge " + graph.id(u) + " -> " + graph.id(v));
        sum += p;
      }
      if (!graph.successors(u).empty() && std::abs(sum - 1.0) > 1e-9)
        throw ModelError("row " + graph.id(u) + " does not sum to 1");
      for (NodeIndex v = 0; v < n; ++v) probs[u * n + v] = (*P)[u * n + v];
    }
  } else {
    for (NodeIndex u = 0; u < n; ++u) {
      for (auto v : graph.successors(u)) probs[u * n + v] = 1.0 / static_cast<double>(graph.successors(u).size());
    }
  }

  std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t it = 0; it < 1'000'000; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeIndex u = 0; u < n; ++u) {
      if (graph.successors(u).empty()) {
        next[u] += x[u];
        continue;
      }
      for (auto v : graph.successors(u)) next[v] += x[u] * probs[u * n + v];
    }
    double diff = 0.0;
    for (NodeIndex u = 0; u < n; ++u) {
      const double lazy = 0.5 * (x[u] + next[u]);
      diff = std::max(diff, std::abs(lazy - x[u]));
      x[u] = lazy;
    }
    if (diff < 1e-14) break;
  }
  // Transient nodes have no long-run mass; clear the numerical residue.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (NodeIndex s = 0; s < n; ++s) {
    std::vector<NodeIndex> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : graph.successors(u)) {
        if (!reach[s][v]) {
          reach[s][v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (reach[u][v] && !reach[v][u]) {
        x[u] = 0.0;
        break;
      }
    }
  }
  std::vector<double> out;
  for (const auto& [u, v] : graph.edges()) out.push_back(x[u] * probs[u * n + v]);
  return out;
}

std::optional<IndicatorPlacement> solve_insp_greedy(const ColoredGraph& graph, const std::vector<EdgeId>& F,
                                                    GraphClass target, const std::vector<double>* P,
                                                    const std::string& indicator_color) {
  if (target == GraphClass::PartlyObservable || target == GraphClass::Unifilar)
    throw Error("greedy solver does not support target " + to_string(target));
  const auto candidates = canonical(graph, F);
  const std::set<EdgeId> in_f(candidates.begin(), candidates.end());
  std::map<EdgeId, double> freq;
  {
    const auto f = edge_frequencies(graph, P);
    const auto& edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) freq[{graph.id(edges[i].first), graph.id(edges[i].second)}] = f[i];
  }

  IndicatorPlacement placement;
  placement.indicator_color = indicator_color;
  auto current = graph;
  for (std::size_t round = 0; round <= candidates.size(); ++round) {
    if (satisfies(current, target)) {
      std::sort(placement.chosen_edges.begin(), placement.chosen_edges.end());
      if (!satisfies(apply_indicators(graph, placement), target))
        throw InternalConsistencyError("greedy placement failed verification");
      return placement;
    }
    std::optional<EdgeId> pick;
    for (const auto& edges : blocking_edges(current, target, 32)) {
      for (const auto& [a, b] : edges) {
        EdgeId e{current.id(a), current.id(b)};
        if (!in_f.count(e)) continue;
        if (std::find(placement.chosen_edges.begin(), placement.chosen_edges.end(), e) !=
            placement.chosen_edges.end())
          continue;
        if (!pick) {
          pick = e;
          continue;
        }
        const double fe = freq.at(e), fp = freq.at(*pick);
        const bool tied = std::abs(fe - fp) <= 1e-9 * std::max({1e-300, fe, fp});
        if ((tied && e < *pick) || (!tied && fe < fp)) pick = e;
      }
      if (pick) break;
    }
    if (!pick) return std::nullopt;
    placement.chosen_edges.push_back(*pick);
    current = apply_indicators(graph, placement);
  }
  return std::nullopt;
}

TriangleInstance TriangleInstance::from_edges(std::size_t vertices,
                                              std::vector<std::pair<std::size_t, std::size_t>> edges) {
  TriangleInstance t;
  t.vertices = vertices;
  for (auto& [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw ValidationError({"edge references a vertex out of range"});
    if (u == v) throw ValidationError({"self-loop on vertex " + std::to_string(u)});
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  t.edges = std::move(edges);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < t.edges.size(); ++i) index[t.edges[i]] = i;
  for (std::size_t a = 0; a < vertices; ++a) {
    for (std::size_t b = a + 1; b < vertices; ++b) {
      auto ab = index.find({a, b});
      if (ab == index.end()) continue;
      for (std::size_t c = b + 1; c < vertices; ++c) {
        auto ac = index.find({a, c});
        auto bc = index.find({b, c});
        if (ac == index.end() || bc == index.end()) continue;
        t.triangles.push_back({a, b, c});
        t.triangle_edges.push_back({ab->second, ac->second, bc->second});
      }
    }
  }
  return t;
}

TriangleInstance TriangleInstance::complete(std::size_t vertices) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < vertices; ++u)
    for (std::size_t v = u + 1; v < vertices; ++v) edges.emplace_back(u, v);
  return from_edges(vertices, std::move(edges));
}

InspReduction build_insp_reduction(const TriangleInstance& instance, IndicatorColorMode mode) {
  const auto S = instance.triangles.size();
  if (S == 0) throw Error("instance has no triangles");
  std::size_t depth = 0;
  while ((std::size_t{1} << depth) < S) ++depth;
  const auto m = 2 * S + 7;

  GraphData d;
  d.palette = {"black", "white", "red"};
  auto node = [&](std::string id, const char* color) {
    d.nodes.push_back({std::move(id), {color}});
    return d.nodes.back().id;
  };
  auto edge = [&](const std::string& a, const std::string& b) { d.edges.push_back({a, b}); };
  auto copy_id = [](std::size_t i, std::size_t j) { return "T" + std::to_string(i + 1) + "_" + std::to_string(j + 1); };
  auto edge_id = [&](std::size_t k, const char* end) {
    const auto& [u, v] = instance.edges[k];
    return "e" + std::to_string(u) + "_" + std::to_string(v) + "_" + end;
  };

  InspReduction r{ColoredGraph{}, {}, mode == IndicatorColorMode::Existing ? "black" : "grey", depth, m};

  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < 3; ++j) node(copy_id(i, j), "red");
  for (std::size_t k = 0; k < instance.edges.size(); ++k) {
    node(edge_id(k, "s"), "red");
    node(edge_id(k, "n"), "red");
  }
  for (std::size_t i = 0; i < S; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (auto k : instance.triangle_edges[i]) {
        edge(copy_id(i, j), edge_id(k, "s"));
        r.F.push_back({copy_id(i, j), edge_id(k, "s")});
      }
    }
  }
  for (std::size_t k = 0; k < instance.edges.size(); ++k) {
    edge(edge_id(k, "s"), edge_id(k, "n"));
    r.F.push_back({edge_id(k, "s"), edge_id(k, "n")});
  }

  // Binary trees: "0" is a black left child, "1" a white right child.
  for (std::size_t j = 0; j < 3; ++j) {
    const auto root = "t" + std::to_string(j + 1) + "_r";
    std::vector<std::string> level{node(root, "black")};
    for (std::size_t lvl = 0; lvl < depth; ++lvl) {
      std::vector<std::string> next;
      for (const auto& parent : level) {
        next.push_back(node(parent + "0", "black"));
        next.push_back(node(parent + "1", "white"));
        edge(parent, next[next.size() - 2]);
        edge(parent, next.back());
      }
      level = std::move(next);
    }
    for (std::size_t i = 0; i < S; ++i) edge(level[i], copy_id(i, j));
  }

  for (std::size_t x = 1; x <= 2; ++x) {
    const auto prefix = "a" + std::to_string(x) + "_";
    std::string prev;
    for (std::size_t k = 1; k <= 2 * m; ++k) {
      const bool white = k <= m;
      const auto id = node(prefix + (white ? "w" : "b") + std::to_string(white ? k : k - m), white ? "white" : "black");
      if (!prev.empty()) edge(prev, id);
      prev = id;
    }
    for (std::size_t j = 0; j < 3; ++j) edge(prev, "t" + std::to_string(j + 1) + "_r");
    for (std::size_t k = 0; k < instance.edges.size(); ++k) edge(edge_id(k, "n"), prefix + "w1");
  }

  r.graph = ColoredGraph::from_data(d);
  return r;
}

bool monochromatic_triangle_oracle(const TriangleInstance& instance) {
  const auto e = instance.edges.size();
  if (e > 24) throw Error("instance has " + std::to_string(e) + " edges; the oracle enumerates at most 24");
  std::vector<std::uint32_t> masks;
  for (const auto& t : instance.triangle_edges)
    masks.push_back((1u << t[0]) | (1u << t[1]) | (1u << t[2]));
  for (std::uint32_t coloring = 0; coloring < (1u << e); ++coloring) {
    bool ok = true;
    for (auto m : masks) {
      const auto hit = coloring & m;
      if (hit == 0 || hit == m) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace colorobs
