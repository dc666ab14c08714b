#include "colorobs/graph.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "colorobs/errors.hpp"

namespace colorobs {

namespace {

std::vector<std::string> derive_palette(const GraphData& data) {
  std::vector<std::string> palette;
  std::unordered_set<std::string> seen;
  for (const auto& node : data.nodes) {
    for (const auto& c : node.colors) {
      if (seen.insert(c).second) palette.push_back(c);
    }
  }
  return palette;
}

void check_palette(const std::vector<std::string>& palette, std::vector<std::string>& out) {
  std::unordered_set<std::string> seen;
  for (const auto& c : palette) {
    if (c.empty()) out.push_back("palette contains an empty color name");
    if (!seen.insert(c).second) out.push_back("duplicate palette color " + c);
  }
}

}  // namespace

std::vector<std::string> validate(const GraphData& data) {
  std::vector<std::string> out;
  if (data.nodes.empty()) out.push_back("graph has no nodes");
  check_palette(data.palette, out);

  const std::unordered_set<std::string> palette(data.palette.begin(), data.palette.end());
  std::unordered_set<std::string> ids;
  for (const auto& node : data.nodes) {
    if (node.id.empty()) out.push_back("node with empty id");
    if (!ids.insert(node.id).second) out.push_back("duplicate node id " + node.id);
    if (node.colors.empty()) out.push_back("node " + node.id + " has no colors");
    if (!data.palette.empty()) {
      for (const auto& c : node.colors) {
        if (!palette.contains(c)) out.push_back("node " + node.id + " uses color " + c + " not in palette");
      }
    }
  }

  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : data.edges) {
    bool ok = true;
    if (!ids.contains(e.from)) {
      out.push_back("edge references missing node " + e.from);
      ok = false;
    }
    if (!ids.contains(e.to) && e.to != e.from) {
      out.push_back("edge references missing node " + e.to);
      ok = false;
    }
    if (ok && !edges.emplace(e.from, e.to).second) out.push_back("duplicate edge " + e.from + " -> " + e.to);
  }

  if (data.start_nodes) {
    for (const auto& s : *data.start_nodes) {
      if (!ids.contains(s)) out.push_back("start node " + s + " is not a node");
    }
  }
  return out;
}

ColoredGraph ColoredGraph::from_data(const GraphData& data) {
  if (auto violations = validate(data); !violations.empty()) throw ValidationError(std::move(violations));

  ColoredGraph g;
  const auto palette = data.palette.empty() ? derive_palette(data) : data.palette;
  for (ColorIndex i = 0; i < palette.size(); ++i) {
    g.palette_.push_back({palette[i], i});
    g.color_index_.emplace(palette[i], i);
  }

  const auto n = data.nodes.size();
  g.ids_.reserve(n);
  g.colors_.resize(n);
  g.out_.resize(n);
  g.in_.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    const auto& node = data.nodes[v];
    g.ids_.push_back(node.id);
    g.index_.emplace(node.id, v);
    auto& cs = g.colors_[v];
    for (const auto& c : node.colors) cs.push_back(g.color_index_.at(c));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    if (cs.size() != 1) g.single_colored_ = false;
  }

  for (const auto& e : data.edges) g.edges_.emplace_back(g.index_.at(e.from), g.index_.at(e.to));
  std::sort(g.edges_.begin(), g.edges_.end());
  for (const auto& [a, b] : g.edges_) {
    g.out_[a].push_back(b);
    g.in_[b].push_back(a);
  }
  for (auto& preds : g.in_) std::sort(preds.begin(), preds.end());

  if (data.start_nodes) {
    std::vector<NodeIndex> start;
    for (const auto& s : *data.start_nodes) start.push_back(g.index_.at(s));
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    g.start_ = std::move(start);
  }
  return g;
}

GraphData ColoredGraph::to_data() const {
  GraphData data;
  for (const auto& c : palette_) data.palette.push_back(c.name);
  for (NodeIndex v = 0; v < size(); ++v) {
    GraphData::Node node{ids_[v], {}};
    for (auto c : colors_[v]) node.colors.push_back(palette_[c].name);
    data.nodes.push_back(std::move(node));
  }
  for (const auto& [a, b] : edges_) data.edges.push_back({ids_[a], ids_[b]});
  if (start_) {
    std::vector<std::string> start;
    for (auto v : *start_) start.push_back(ids_[v]);
    data.start_nodes = std::move(start);
  }
  return data;
}

std::optional<NodeIndex> ColoredGraph::index_of(const std::string& id) const {
  if (auto it = index_.find(id); it != index_.end()) return it->second;
  return std::nullopt;
}

NodeIndex ColoredGraph::require_index(const std::string& id) const {
  if (auto v = index_of(id)) return *v;
  throw Error("unknown node " + id);
}

std::optional<ColorIndex> ColoredGraph::color_index(const std::string& name) const {
  if (auto it = color_index_.find(name); it != color_index_.end()) return it->second;
  return std::nullopt;
}

ColorIndex ColoredGraph::require_color(const std::string& name) const {
  if (auto c = color_index(name)) return *c;
  throw Error("unknown color " + name);
}

bool ColoredGraph::has_color(NodeIndex v, ColorIndex c) const {
  const auto& cs = colors_[v];
  return std::binary_search(cs.begin(), cs.end(), c);
}

bool ColoredGraph::shares_color(NodeIndex a, NodeIndex b) const {
  const auto& x = colors_[a];
  const auto& y = colors_[b];
  if (x.size() == 1 && y.size() == 1) return x.front() == y.front();
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

bool ColoredGraph::has_edge(NodeIndex from, NodeIndex to) const {
  const auto& succ = out_[from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

bool structurally_equal(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  if (a.palette().size() != b.palette().size()) return false;
  for (const auto& c : a.palette()) {
    if (!b.color_index(c.name)) return false;
  }
  auto color_names = [](const ColoredGraph& g, NodeIndex v) {
    std::set<std::string> names;
    for (auto c : g.colors(v)) names.insert(g.color_name(c));
    return names;
  };
  for (NodeIndex v = 0; v < a.size(); ++v) {
    auto w = b.index_of(a.id(v));
    if (!w || color_names(a, v) != color_names(b, *w)) return false;
  }
  for (const auto& [x, y] : a.edges()) {
    if (!b.has_edge(b.require_index(a.id(x)), b.require_index(a.id(y)))) return false;
  }
  if (a.start_nodes().has_value() != b.start_nodes().has_value()) return false;
  if (a.start_nodes()) {
    std::set<std::string> sa;
    std::set<std::string> sb;
    for (auto v : *a.start_nodes()) sa.insert(a.id(v));
    for (auto v : *b.start_nodes()) sb.insert(b.id(v));
    if (sa != sb) return false;
  }
  return true;
}

std::vector<std::string> validate(const EdgeColoredData& data) {
  std::vector<std::string> out;
  if (data.nodes.empty()) out.push_back("graph has no nodes");
  check_palette(data.palette, out);
  const std::unordered_set<std::string> palette(data.palette.begin(), data.palette.end());
  std::unordered_set<std::string> ids;
  for (const auto& id : data.nodes) {
    if (id.empty()) out.push_back("node with empty id");
    if (!ids.insert(id).second) out.push_back("duplicate node id " + id);
  }
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : data.edges) {
    bool ok = true;
    if (!ids.contains(e.from)) {
      out.push_back("edge references missing node " + e.from);
      ok = false;
    }
    if (!ids.contains(e.to) && e.to != e.from) {
      out.push_back("edge references missing node " + e.to);
      ok = false;
    }
    if (e.colors.empty()) out.push_back("edge " + e.from + " -> " + e.to + " has no colors");
    if (!data.palette.empty()) {
      for (const auto& c : e.colors) {
        if (!palette.contains(c)) out.push_back("edge " + e.from + " -> " + e.to + " uses color " + c + " not in palette");
      }
    }
    if (ok && !edges.emplace(e.from, e.to).second) out.push_back("duplicate edge " + e.from + " -> " + e.to);
  }
  if (data.start_nodes) {
    for (const auto& s : *data.start_nodes) {
      if (!ids.contains(s)) out.push_back("start node " + s + " is not a node");
    }
  }
  return out;
}

EdgeColoredGraph EdgeColoredGraph::from_data(const EdgeColoredData& data) {
  if (auto violations = validate(data); !violations.empty()) throw ValidationError(std::move(violations));
  EdgeColoredGraph g;
  g.palette_ = data.palette;
  if (g.palette_.empty()) {
    std::unordered_set<std::string> seen;
    for (const auto& e : data.edges) {
      for (const auto& c : e.colors) {
        if (seen.insert(c).second) g.palette_.push_back(c);
      }
    }
  }
  std::unordered_map<std::string, ColorIndex> color_index;
  for (ColorIndex i = 0; i < g.palette_.size(); ++i) color_index.emplace(g.palette_[i], i);

  for (NodeIndex v = 0; v < data.nodes.size(); ++v) {
    g.ids_.push_back(data.nodes[v]);
    g.index_.emplace(data.nodes[v], v);
  }
  for (const auto& e : data.edges) {
    Edge edge{g.index_.at(e.from), g.index_.at(e.to), {}};
    for (const auto& c : e.colors) edge.colors.push_back(color_index.at(c));
    std::sort(edge.colors.begin(), edge.colors.end());
    edge.colors.erase(std::unique(edge.colors.begin(), edge.colors.end()), edge.colors.end());
    g.edges_.push_back(std::move(edge));
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
  if (data.start_nodes) {
    std::vector<NodeIndex> start;
    for (const auto& s : *data.start_nodes) start.push_back(g.index_.at(s));
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    g.start_ = std::move(start);
  }
  return g;
}

EdgeColoredData EdgeColoredGraph::to_data() const {
  EdgeColoredData data;
  data.palette = palette_;
  data.nodes = ids_;
  for (const auto& e : edges_) {
    EdgeColoredData::Edge edge{ids_[e.from], ids_[e.to], {}};
    for (auto c : e.colors) edge.colors.push_back(palette_[c]);
    data.edges.push_back(std::move(edge));
  }
  if (start_) {
    std::vector<std::string> start;
    for (auto v : *start_) start.push_back(ids_[v]);
    data.start_nodes = std::move(start);
  }
  return data;
}

std::optional<NodeIndex> EdgeColoredGraph::index_of(const std::string& id) const {
  if (auto it = index_.find(id); it != index_.end()) return it->second;
  return std::nullopt;
}

namespace {

std::string copy_name(const std::string& id, const std::string& color) { return id + "__" + color; }

}  // namespace

Reduction reduce_multicolor(const ColoredGraph& graph) {
  GraphData data;
  for (const auto& c : graph.palette()) data.palette.push_back(c.name);

  // copies[v] = ids of the single-colored nodes that replace v
  std::vector<std::vector<std::string>> copies(graph.size());
  Provenance provenance;
  for (NodeIndex v = 0; v < graph.size(); ++v) {
    const auto cs = graph.colors(v);
    for (auto c : cs) {
      const auto& cname = graph.color_name(c);
      auto id = cs.size() == 1 ? graph.id(v) : copy_name(graph.id(v), cname);
      data.nodes.push_back({id, {cname}});
      provenance.emplace(id, graph.id(v));
      copies[v].push_back(std::move(id));
    }
  }
  for (const auto& [a, b] : graph.edges()) {
    for (const auto& x : copies[a]) {
      for (const auto& y : copies[b]) data.edges.push_back({x, y});
    }
  }
  if (graph.start_nodes()) {
    std::vector<std::string> start;
    for (auto v : *graph.start_nodes()) start.insert(start.end(), copies[v].begin(), copies[v].end());
    data.start_nodes = std::move(start);
  }
  return {ColoredGraph::from_data(data), std::move(provenance)};
}

Reduction reduce_edge_colored(const EdgeColoredGraph& graph) {
  const auto n = graph.size();
  std::vector<std::set<ColorIndex>> incoming(n);
  for (const auto& e : graph.edges()) incoming[e.to].insert(e.colors.begin(), e.colors.end());

  GraphData data;
  data.palette = graph.palette();
  const bool needs_source =
      std::any_of(incoming.begin(), incoming.end(), [](const auto& s) { return s.empty(); });
  if (needs_source) data.palette.emplace_back(kSourceColor);

  // copy_of[v][c] = id of v's copy that emits c
  std::vector<std::map<ColorIndex, std::string>> copy_of(n);
  std::vector<std::vector<std::string>> copies(n);
  Provenance provenance;
  for (NodeIndex v = 0; v < n; ++v) {
    if (incoming[v].empty()) {
      data.nodes.push_back({graph.id(v), {kSourceColor}});
      copies[v].push_back(graph.id(v));
      provenance.emplace(graph.id(v), graph.id(v));
      continue;
    }
    for (auto c : incoming[v]) {
      const auto& cname = graph.palette()[c];
      auto id = incoming[v].size() == 1 ? graph.id(v) : copy_name(graph.id(v), cname);
      data.nodes.push_back({id, {cname}});
      provenance.emplace(id, graph.id(v));
      copy_of[v].emplace(c, id);
      copies[v].push_back(std::move(id));
    }
  }

  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : graph.edges()) {
    for (auto c : e.colors) {
      const auto& target = copy_of[e.to].at(c);
      for (const auto& tail : copies[e.from]) edges.emplace(tail, target);
    }
  }
  for (const auto& [a, b] : edges) data.edges.push_back({a, b});

  if (graph.start_nodes()) {
    std::vector<std::string> start;
    for (auto v : *graph.start_nodes()) start.insert(start.end(), copies[v].begin(), copies[v].end());
    data.start_nodes = std::move(start);
  }
  return {ColoredGraph::from_data(data), std::move(provenance)};
}

}  // namespace colorobs
