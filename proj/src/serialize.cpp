#include "colorobs/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "colorobs/errors.hpp"

namespace colorobs {

namespace {

Json ids(const ColoredGraph& g, const std::vector<NodeIndex>& nodes) {
  Json out = Json::array();
  for (auto v : nodes) out.push_back(g.id(v));
  return out;
}

Json color_names(const ColoredGraph& g, const std::vector<ColorIndex>& colors) {
  Json out = Json::array();
  for (auto c : colors) out.push_back(g.color_name(c));
  return out;
}

}  // namespace

Json to_json(const CycleWitness& w, const ColoredGraph& graph) {
  Json j;
  j["kind"] = to_string(w.kind);
  j["length"] = w.length();
  j["projection_1"] = ids(graph, w.projection_1);
  j["projection_2"] = ids(graph, w.projection_2);
  Json shared = Json::array();
  for (const auto& s : w.shared_colors) shared.push_back(color_names(graph, s));
  j["shared_colors"] = std::move(shared);
  j["intersection"] = w.intersection ? Json(*w.intersection) : Json(nullptr);
  return j;
}

Json to_json(const PathologyReport& r, const ColoredGraph& graph) {
  Json j;
  j["has_scon"] = r.has_scon();
  j["has_intersecting"] = r.has_intersecting();
  j["has_separated"] = r.has_separated();
  Json scon = Json::array();
  for (const auto& e : r.scon) {
    Json entry;
    entry["node"] = graph.id(e.node);
    entry["color"] = graph.color_name(e.color);
    entry["neighbors"] = ids(graph, e.neighbors);
    scon.push_back(std::move(entry));
  }
  j["scon"] = std::move(scon);
  j["intersecting"] = r.intersecting ? to_json(*r.intersecting, graph) : Json(nullptr);
  j["separated"] = r.separated ? to_json(*r.separated, graph) : Json(nullptr);
  return j;
}

Json to_json(const Flags& f) {
  Json j;
  j["has_scon"] = f.has_scon;
  j["has_intersecting"] = f.has_intersecting;
  j["has_separated"] = f.has_separated;
  j["g2_acyclic"] = f.g2_acyclic;
  j["g2tilde_acyclic"] = f.g2tilde_acyclic;
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["region"] = to_string(c.region);
  Json classes = Json::array();
  for (auto x : c.classes) classes.push_back(to_string(x));
  j["classes"] = std::move(classes);
  j["flags"] = to_json(c.flags);
  Json u;
  u["unifilar"] = c.unifilar.unifilar;
  u["start_condition_evaluated"] = c.unifilar.start_condition_evaluated;
  u["violations"] = c.unifilar.violations;
  j["unifilar"] = std::move(u);
  return j;
}

Json to_json(const IndicatorPlacement& p) {
  Json j;
  j["indicator_color"] = p.indicator_color;
  Json edges = Json::array();
  for (const auto& e : p.chosen_edges) {
    Json x;
    x["from"] = e.from;
    x["to"] = e.to;
    x["indicator"] = indicator_id(e);
    edges.push_back(std::move(x));
  }
  j["size"] = p.chosen_edges.size();
  j["chosen_edges"] = std::move(edges);
  return j;
}

Json to_json(const ChromaticResult& r, const ColoredGraph& graph) {
  Json j;
  j["bound"] = r.bound;
  Json sel = Json::array();
  for (const auto& [a, b] : r.selection) sel.push_back(Json::array({graph.id(a), graph.id(b)}));
  j["selection"] = std::move(sel);
  Json coloring = Json::object();
  for (NodeIndex v = 0; v < graph.size(); ++v) coloring[graph.id(v)] = r.coloring[v];
  j["coloring"] = std::move(coloring);
  Json b = Json::array();
  for (const auto& [u, v] : r.B.edges) b.push_back(Json::array({graph.id(u), graph.id(v)}));
  j["B_edges"] = std::move(b);
  j["recolored"] = to_json(r.recolored);
  return j;
}

Json to_json(const GrowthReport& r, const ColoredGraph& graph) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["max_counts"] = r.max_counts;
  j["maximizing_sequence"] = color_names(graph, r.maximizing_sequence);
  j["loglog_slope"] = r.loglog_slope;
  if (r.pump_node) {
    Json pump;
    pump["node"] = graph.id(*r.pump_node);
    pump["word"] = color_names(graph, r.pump_word);
    j["pump"] = std::move(pump);
  } else {
    j["pump"] = nullptr;
  }
  j["trackable"] = r.trackable;
  j["agrees_with_taxonomy"] = r.agrees_with_taxonomy;
  return j;
}

Json to_json(const TriangleInstance& t) {
  Json j;
  j["vertices"] = t.vertices;
  Json edges = Json::array();
  for (const auto& [u, v] : t.edges) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  Json tris = Json::array();
  for (const auto& x : t.triangles) tris.push_back(Json::array({x[0], x[1], x[2]}));
  j["triangles"] = std::move(tris);
  return j;
}

TriangleInstance triangle_instance_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw ParseError("triangle instance needs \"vertices\" and \"edges\"", 0, 0);
  if (!doc["vertices"].is_number_unsigned()) throw ParseError("\"vertices\" must be a nonnegative integer", 0, 0);
  if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array", 0, 0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw ParseError("each edge must be a pair of vertex numbers", 0, 0);
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return TriangleInstance::from_edges(doc["vertices"].get<std::size_t>(), std::move(edges));
}

std::vector<EdgeId> parse_edge_list(const std::string& text) {
  std::vector<EdgeId> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed edge list: ") + e.what(), 0, 0);
    }
    for (const auto& e : doc) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("edge list entries must be [from, to] string pairs", 0, 0);
      out.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a) || a[0] == '#') continue;
    if (!(fields >> b) || (fields >> extra)) throw ParseError("expected \"from to\"", lineno, 1);
    out.push_back({a, b});
  }
  return out;
}

std::vector<double> transition_matrix_from_json(const Json& doc, const ColoredGraph& graph) {
  const auto n = graph.size();
  std::vector<double> P(n * n, 0.0);
  auto number = [](const Json& x) {
    if (!x.is_number()) throw ParseError("transition probabilities must be numbers", 0, 0);
    return x.get<double>();
  };
  if (doc.is_array()) {
    if (doc.size() != n) throw ParseError("transition matrix must have one row per node", 0, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!doc[i].is_array() || doc[i].size() != n)
        throw ParseError("transition matrix must have one column per node", 0, 0);
      for (std::size_t j = 0; j < n; ++j) P[i * n + j] = number(doc[i][j]);
    }
    return P;
  }
  if (!doc.is_object()) throw ParseError("transitions must be an object or a matrix", 0, 0);
  for (const auto& [from, row] : doc.items()) {
    const auto i = graph.index_of(from);
    if (!i) throw ParseError("transitions mention unknown node " + from, 0, 0);
    if (!row.is_object()) throw ParseError("transition row " + from + " must be an object", 0, 0);
    for (const auto& [to, p] : row.items()) {
      const auto j = graph.index_of(to);
      if (!j) throw ParseError("transitions mention unknown node " + to, 0, 0);
      P[*i * n + *j] = number(p);
    }
  }
  return P;
}

std::string to_dot(const PairGraph& pg, const ColoredGraph& graph) {
  std::ostringstream out;
  out << "digraph \"" << to_string(pg.kind()) << "\" {\n";
  auto name = [&](PairIndex i) {
    const auto [a, b] = pg.node(i);
    return "\"(" + graph.id(a) + "," + graph.id(b) + ")\"";
  };
  for (PairIndex i = 0; i < pg.size(); ++i) {
    out << "  " << name(i);
    if (pg.is_diagonal(i)) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (PairIndex i = 0; i < pg.size(); ++i) {
    for (auto j : pg.successors(i)) out << "  " << name(i) << " -> " << name(j) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_csv(const HypothesisCount& count) {
  std::string out = "step,count\n";
  for (std::size_t i = 0; i < count.per_step.size(); ++i)
    out += std::to_string(i + 1) + "," + count.per_step[i].str() + "\n";
  return out;
}

std::string model_hash(const HmmModel& model) {
  Json doc;
  doc["graph"] = to_json(model.graph);
  doc["P"] = model.P;
  doc["initial"] = model.initial;
  const auto text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace colorobs
