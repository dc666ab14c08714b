#include "colorobs/taxonomy.hpp"

#include <algorithm>
#include <cctype>

#include "colorobs/errors.hpp"
#include "colorobs/pair_graph.hpp"
#include "colorobs/pathology.hpp"

namespace colorobs {

std::string to_string(GraphClass c) {
  switch (c) {
    case GraphClass::Trackable: return "Trackable";
    case GraphClass::PartlyAPosterioriObservable: return "PartlyAPosterioriObservable";
    case GraphClass::PartlyObservable: return "PartlyObservable";
    case GraphClass::SemiUnifilar: return "SemiUnifilar";
    case GraphClass::Observable: return "Observable";
    case GraphClass::Unifilar: return "Unifilar";
  }
  return "?";
}

GraphClass parse_graph_class(const std::string& name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (auto c : {GraphClass::Trackable, GraphClass::PartlyAPosterioriObservable, GraphClass::PartlyObservable,
                 GraphClass::SemiUnifilar, GraphClass::Observable, GraphClass::Unifilar}) {
    std::string canon;
    for (char ch : to_string(c)) canon.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (key == canon) return c;
  }
  if (key == "papo") return GraphClass::PartlyAPosterioriObservable;
  if (key == "po") return GraphClass::PartlyObservable;
  throw Error("unknown class " + name);
}

std::string to_string(Region r) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
  return names[static_cast<int>(r) - 1];
}

std::vector<std::string> infeasibility(const Flags& f) {
  std::vector<std::string> out;
  if (f.g2_acyclic == f.has_separated) out.push_back("G2 acyclicity disagrees with separated cycles");
  if (f.g2tilde_acyclic && !f.g2_acyclic) out.push_back("partly observable but not partly a posteriori observable");
  if (f.has_intersecting && !f.has_scon) out.push_back("intersecting cycles without same-colored out-neighbors");
  return out;
}

Region region_of(const Flags& f) {
  if (auto bad = infeasibility(f); !bad.empty()) throw InternalConsistencyError("infeasible flags: " + bad.front());
  const bool tr = f.trackable();
  const bool su = f.semi_unifilar();
  const bool papo = f.partly_a_posteriori_observable();
  const bool po = f.partly_observable();
  if (f.observable()) return Region::VIII;
  if (su) return Region::VII;
  if (po && tr) return Region::VI;
  if (po) return Region::V;
  if (papo && tr) return Region::IV;
  if (papo) return Region::II;
  if (tr) return Region::III;
  return Region::I;
}

UnifilarReport is_unifilar(const ColoredGraph& graph) {
  UnifilarReport r;
  for (NodeIndex v = 0; v < graph.size(); ++v) {
    if (graph.colors(v).size() != 1)
      r.violations.push_back("condition 1: node " + graph.id(v) + " emits " + std::to_string(graph.colors(v).size()) +
                             " colors");
  }
  for (const auto& e : detect_scon(graph)) {
    std::string names;
    for (auto w : e.neighbors) names += (names.empty() ? "" : ", ") + graph.id(w);
    r.violations.push_back("condition 2: node " + graph.id(e.node) + " has out-neighbors " + names + " emitting " +
                           graph.color_name(e.color));
  }
  if (graph.start_nodes()) {
    r.start_condition_evaluated = true;
    for (ColorIndex c = 0; c < graph.palette().size(); ++c) {
      std::vector<std::string> emitters;
      for (auto v : *graph.start_nodes()) {
        if (graph.has_color(v, c)) emitters.push_back(graph.id(v));
      }
      if (emitters.size() >= 2) {
        std::string names;
        for (const auto& id : emitters) names += (names.empty() ? "" : ", ") + id;
        r.violations.push_back("condition 3: start nodes " + names + " emit " + graph.color_name(c));
      }
    }
  }
  r.unifilar = r.violations.empty();
  return r;
}

bool Classification::has(GraphClass c) const { return std::find(classes.begin(), classes.end(), c) != classes.end(); }

Flags compute_flags(const ColoredGraph& graph) {
  Flags f;
  f.has_scon = !detect_scon(graph).empty();
  f.has_intersecting = has_intersecting_cycles(graph);
  f.has_separated = has_separated_cycles(graph);
  f.g2_acyclic = !f.has_separated;
  f.g2tilde_acyclic = is_acyclic(build_pair_graph(graph, PairKind::G2Tilde, PairScope::ColorCompatible));
  return f;
}

Classification classify(const ColoredGraph& graph) {
  Classification c;
  c.flags = compute_flags(graph);
  c.region = region_of(c.flags);
  const auto& f = c.flags;
  if (f.trackable()) c.classes.push_back(GraphClass::Trackable);
  if (f.partly_a_posteriori_observable()) c.classes.push_back(GraphClass::PartlyAPosterioriObservable);
  if (f.partly_observable()) c.classes.push_back(GraphClass::PartlyObservable);
  if (f.semi_unifilar()) c.classes.push_back(GraphClass::SemiUnifilar);
  if (f.observable()) c.classes.push_back(GraphClass::Observable);
  c.unifilar = is_unifilar(graph);
  if (c.unifilar.unifilar && c.unifilar.start_condition_evaluated) c.classes.push_back(GraphClass::Unifilar);

  auto in = [&](GraphClass x) { return c.has(x); };
  if ((in(GraphClass::PartlyObservable) && !in(GraphClass::PartlyAPosterioriObservable)) ||
      (in(GraphClass::SemiUnifilar) && !in(GraphClass::Trackable)) ||
      (in(GraphClass::Observable) && !in(GraphClass::SemiUnifilar)) ||
      (in(GraphClass::Unifilar) && !in(GraphClass::SemiUnifilar)))
    throw InternalConsistencyError("class containment violated");
  return c;
}

bool satisfies(const ColoredGraph& graph, GraphClass target) {
  switch (target) {
    case GraphClass::Trackable: return !has_intersecting_cycles(graph);
    case GraphClass::PartlyAPosterioriObservable: return !has_separated_cycles(graph);
    case GraphClass::PartlyObservable:
      return is_acyclic(build_pair_graph(graph, PairKind::G2Tilde, PairScope::ColorCompatible));
    case GraphClass::SemiUnifilar: return detect_scon(graph).empty();
    case GraphClass::Observable: return detect_scon(graph).empty() && !has_separated_cycles(graph);
    case GraphClass::Unifilar: {
      auto r = is_unifilar(graph);
      return r.unifilar && r.start_condition_evaluated;
    }
  }
  return false;
}

std::optional<std::size_t> compute_burn_in(const ColoredGraph& graph) {
  if (!detect_scon(graph).empty()) return std::nullopt;
  const auto g2 = build_pair_graph(graph, PairKind::G2, PairScope::ColorCompatible);

  // Longest path by reverse topological order; a cycle means not observable.
  std::vector<std::uint32_t> indeg(g2.size(), 0);
  for (PairIndex i = 0; i < g2.size(); ++i) {
    for (auto j : g2.successors(i)) ++indeg[j];
  }
  std::vector<PairIndex> order;
  for (PairIndex i = 0; i < g2.size(); ++i) {
    if (indeg[i] == 0) order.push_back(i);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto j : g2.successors(order[k])) {
      if (--indeg[j] == 0) order.push_back(j);
    }
  }
  if (order.size() != g2.size()) return std::nullopt;

  std::vector<std::size_t> longest(g2.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (auto j : g2.successors(*it)) longest[*it] = std::max(longest[*it], longest[j] + 1);
  }

  std::vector<char> start(graph.size(), 1);
  if (graph.start_nodes()) {
    std::fill(start.begin(), start.end(), 0);
    for (auto v : *graph.start_nodes()) start[v] = 1;
  }
  std::optional<std::size_t> best;
  for (PairIndex i = 0; i < g2.size(); ++i) {
    const auto [a, b] = g2.node(i);
    if (!start[a] || !start[b]) continue;
    best = std::max(best.value_or(0), longest[i]);
  }
  return best ? *best + 1 : 0;
}

}  // namespace colorobs
