#include "colorobs/graph_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "colorobs/errors.hpp"
#include "colorobs/serialize.hpp"

namespace colorobs {

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "dot") return Format::Dot;
  throw Error("unknown graph format " + name);
}

Format format_for_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".dot") || ends_with(".gv") ? Format::Dot : Format::Json;
}

// ---------------------------------------------------------------- JSON

namespace {

std::vector<std::string> string_list(const Json& value, const char* what) {
  if (!value.is_array()) throw ParseError(std::string(what) + " must be an array", 0, 0);
  std::vector<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) throw ParseError(std::string(what) + " must contain strings", 0, 0);
    out.push_back(v.get<std::string>());
  }
  return out;
}

const Json& require_field(const Json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + " is missing \"" + key + "\"", 0, 0);
  return *it;
}

std::string string_field(const Json& obj, const char* key, const char* where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_string()) throw ParseError(std::string(where) + " field \"" + key + "\" must be a string", 0, 0);
  return v.get<std::string>();
}

void check_top(const Json& doc) {
  if (!doc.is_object()) throw ParseError("graph document must be a JSON object", 0, 0);
  if (!doc.contains("nodes")) throw ParseError("graph document is missing \"nodes\"", 0, 0);
}

std::optional<std::vector<std::string>> start_field(const Json& doc) {
  auto it = doc.find("start_nodes");
  if (it == doc.end() || it->is_null()) return std::nullopt;
  return string_list(*it, "start_nodes");
}

std::vector<std::string> palette_field(const Json& doc) {
  auto it = doc.find("palette");
  if (it == doc.end() || it->is_null()) return {};
  return string_list(*it, "palette");
}

Json edges_field(const Json& doc) {
  auto it = doc.find("edges");
  if (it == doc.end() || it->is_null()) return Json::array();
  if (!it->is_array()) throw ParseError("edges must be an array", 0, 0);
  return *it;
}

}  // namespace

bool is_edge_colored_json(const Json& doc) {
  auto it = doc.find("edges");
  if (it == doc.end() || !it->is_array()) return false;
  return std::any_of(it->begin(), it->end(), [](const Json& e) { return e.is_object() && e.contains("colors"); });
}

GraphData graph_data_from_json(const Json& doc) {
  check_top(doc);
  GraphData data;
  data.palette = palette_field(doc);
  const auto& nodes = doc.at("nodes");
  if (!nodes.is_array()) throw ParseError("nodes must be an array", 0, 0);
  for (const auto& n : nodes) {
    if (!n.is_object()) throw ParseError("node entries must be objects", 0, 0);
    GraphData::Node node{string_field(n, "id", "node"), {}};
    if (auto it = n.find("colors"); it != n.end()) node.colors = string_list(*it, "node colors");
    data.nodes.push_back(std::move(node));
  }
  for (const auto& e : edges_field(doc)) {
    if (!e.is_object()) throw ParseError("edge entries must be objects", 0, 0);
    data.edges.push_back({string_field(e, "from", "edge"), string_field(e, "to", "edge")});
  }
  data.start_nodes = start_field(doc);
  return data;
}

EdgeColoredData edge_colored_data_from_json(const Json& doc) {
  check_top(doc);
  EdgeColoredData data;
  data.palette = palette_field(doc);
  const auto& nodes = doc.at("nodes");
  if (!nodes.is_array()) throw ParseError("nodes must be an array", 0, 0);
  for (const auto& n : nodes) {
    if (n.is_string()) data.nodes.push_back(n.get<std::string>());
    else if (n.is_object()) data.nodes.push_back(string_field(n, "id", "node"));
    else throw ParseError("node entries must be strings or objects", 0, 0);
  }
  for (const auto& e : edges_field(doc)) {
    if (!e.is_object()) throw ParseError("edge entries must be objects", 0, 0);
    EdgeColoredData::Edge edge{string_field(e, "from", "edge"), string_field(e, "to", "edge"), {}};
    if (auto it = e.find("colors"); it != e.end()) edge.colors = string_list(*it, "edge colors");
    data.edges.push_back(std::move(edge));
  }
  data.start_nodes = start_field(doc);
  return data;
}

Json to_json(const ColoredGraph& graph) {
  const auto data = graph.to_data();
  Json doc;
  doc["palette"] = data.palette;
  doc["nodes"] = Json::array();
  for (const auto& n : data.nodes) doc["nodes"].push_back({{"id", n.id}, {"colors", n.colors}});
  doc["edges"] = Json::array();
  for (const auto& e : data.edges) doc["edges"].push_back({{"from", e.from}, {"to", e.to}});
  if (data.start_nodes) doc["start_nodes"] = *data.start_nodes;
  return doc;
}

Json to_json(const EdgeColoredGraph& graph) {
  const auto data = graph.to_data();
  Json doc;
  doc["palette"] = data.palette;
  doc["nodes"] = data.nodes;
  doc["edges"] = Json::array();
  for (const auto& e : data.edges) doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"colors", e.colors}});
  if (data.start_nodes) doc["start_nodes"] = *data.start_nodes;
  return doc;
}

Json to_json(const Provenance& provenance) {
  Json doc = Json::object();
  for (const auto& [k, v] : provenance) doc[k] = v;
  return doc;
}

namespace {

AnyGraph graph_from_json(const Json& doc) {
  if (is_edge_colored_json(doc)) return EdgeColoredGraph::from_data(edge_colored_data_from_json(doc));
  return ColoredGraph::from_data(graph_data_from_json(doc));
}

AnyGraph load_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const auto limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError("malformed JSON: " + what, line, column);
  }
  return graph_from_json(doc);
}

// ---------------------------------------------------------------- DOT

struct Token {
  enum Kind { Id, Punct, Arrow, End } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class DotLexer {
 public:
  explicit DotLexer(const std::string& text) : text_(text) {}

  Token next() {
    skip();
    const auto line = line_;
    const auto column = column_;
    if (pos_ >= text_.size()) return {Token::End, "", line, column};
    const char c = text_[pos_];
    if (c == '"') {
      advance();
      std::string out;
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", line, column);
        char d = text_[pos_];
        advance();
        if (d == '"') break;
        if (d == '\\' && pos_ < text_.size()) {
          char e = text_[pos_];
          advance();
          if (e == '"' || e == '\\') out.push_back(e);
          else if (e == '\n') continue;
          else {
            out.push_back('\\');
            out.push_back(e);
          }
          continue;
        }
        out.push_back(d);
      }
      return {Token::Id, out, line, column};
    }
    if (c == '-' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')) {
      advance();
      advance();
      return {Token::Arrow, text_[pos_ - 1] == '>' ? "->" : "--", line, column};
    }
    if (std::string_view("{}[]=;,:").find(c) != std::string_view::npos) {
      advance();
      return {Token::Punct, std::string(1, c), line, column};
    }
    if (is_id_char(c)) {
      std::string out;
      while (pos_ < text_.size() && is_id_char(text_[pos_]) && !at_arrow()) {
        out.push_back(text_[pos_]);
        advance();
      }
      return {Token::Id, out, line, column};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, column);
  }

 private:
  static bool is_id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           static_cast<unsigned char>(c) >= 0x80 || c == '-';
  }

  bool at_arrow() const {
    return text_[pos_] == '-' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-');
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        const auto line = line_;
        const auto column = column_;
        advance();
        advance();
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= text_.size()) throw ParseError("unterminated comment", line, column);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

using Attrs = std::map<std::string, std::string>;

struct DotGraph {
  std::vector<std::string> order;
  std::map<std::string, Attrs> node_attrs;
  struct Edge {
    std::string from;
    std::string to;
    Attrs attrs;
  };
  std::vector<Edge> edges;
  Attrs graph_attrs;

  void touch(const std::string& id) {
    if (node_attrs.emplace(id, Attrs{}).second) order.push_back(id);
  }
};

class DotParser {
 public:
  explicit DotParser(const std::string& text) : lexer_(text) { tok_ = lexer_.next(); }

  DotGraph parse() {
    if (is_keyword("strict")) shift();
    if (is_keyword("graph")) throw error("undirected graphs are not supported");
    if (!is_keyword("digraph")) throw error("expected 'digraph'");
    shift();
    if (tok_.kind == Token::Id) shift();
    expect("{");
    while (!is_punct("}")) {
      if (tok_.kind == Token::End) throw error("expected '}'");
      statement();
    }
    shift();
    if (tok_.kind != Token::End) throw error("trailing content after graph");
    return std::move(graph_);
  }

 private:
  ParseError error(const std::string& msg) const { return ParseError(msg, tok_.line, tok_.column); }

  bool is_punct(const char* p) const { return tok_.kind == Token::Punct && tok_.text == p; }
  bool is_keyword(const char* k) const {
    if (tok_.kind != Token::Id) return false;
    std::string lower = tok_.text;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    return lower == k;
  }
  void shift() { tok_ = lexer_.next(); }
  void expect(const char* p) {
    if (!is_punct(p)) throw error(std::string("expected '") + p + "'");
    shift();
  }
  std::string id() {
    if (tok_.kind != Token::Id) throw error("expected identifier");
    auto out = tok_.text;
    shift();
    return out;
  }

  Attrs attr_lists() {
    Attrs attrs;
    while (is_punct("[")) {
      shift();
      while (!is_punct("]")) {
        auto key = id();
        std::string value = "true";
        if (is_punct("=")) {
          shift();
          value = id();
        }
        attrs[key] = value;
        if (is_punct(",") || is_punct(";")) shift();
      }
      shift();
    }
    return attrs;
  }

  void statement() {
    if (is_punct(";")) {
      shift();
      return;
    }
    if (is_keyword("subgraph") || is_punct("{")) throw error("subgraphs are not supported");
    if (is_keyword("graph")) {
      shift();
      for (auto& [k, v] : attr_lists()) graph_.graph_attrs[k] = v;
      return;
    }
    if (is_keyword("node") || is_keyword("edge")) {
      shift();
      attr_lists();
      return;
    }
    auto first = id();
    if (is_punct(":")) throw error("ports are not supported");
    if (is_punct("=")) {
      shift();
      graph_.graph_attrs[first] = id();
      return;
    }
    std::vector<std::string> chain{first};
    while (tok_.kind == Token::Arrow) {
      if (tok_.text != "->") throw error("expected '->' in a digraph");
      shift();
      chain.push_back(id());
    }
    auto attrs = attr_lists();
    for (const auto& n : chain) graph_.touch(n);
    if (chain.size() == 1) {
      for (auto& [k, v] : attrs) graph_.node_attrs[first][k] = v;
    } else {
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) graph_.edges.push_back({chain[i], chain[i + 1], attrs});
    }
  }

  DotLexer lexer_;
  Token tok_;
  DotGraph graph_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    auto b = cur.find_first_not_of(' ');
    auto e = cur.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (char c : s) {
    if (c == ',') flush();
    else cur.push_back(c);
  }
  flush();
  return out;
}

AnyGraph load_dot(const std::string& text) {
  auto dot = DotParser(text).parse();
  std::vector<std::string> palette;
  if (auto it = dot.graph_attrs.find("palette"); it != dot.graph_attrs.end()) palette = split_list(it->second);

  std::optional<std::vector<std::string>> start;
  for (const auto& id : dot.order) {
    const auto& attrs = dot.node_attrs[id];
    if (auto it = attrs.find("start"); it != attrs.end() && it->second == "true") {
      if (!start) start.emplace();
      start->push_back(id);
    }
  }

  const bool edge_colored = std::any_of(dot.edges.begin(), dot.edges.end(),
                                        [](const auto& e) { return e.attrs.contains("colors"); });
  if (edge_colored) {
    EdgeColoredData data;
    data.palette = palette;
    data.nodes = dot.order;
    for (const auto& e : dot.edges) {
      EdgeColoredData::Edge edge{e.from, e.to, {}};
      if (auto it = e.attrs.find("colors"); it != e.attrs.end()) edge.colors = split_list(it->second);
      data.edges.push_back(std::move(edge));
    }
    data.start_nodes = start;
    return EdgeColoredGraph::from_data(data);
  }

  GraphData data;
  data.palette = palette;
  for (const auto& id : dot.order) {
    GraphData::Node node{id, {}};
    const auto& attrs = dot.node_attrs[id];
    if (auto it = attrs.find("colors"); it != attrs.end()) node.colors = split_list(it->second);
    data.nodes.push_back(std::move(node));
  }
  for (const auto& e : dot.edges) data.edges.push_back({e.from, e.to});
  data.start_nodes = start;
  return ColoredGraph::from_data(data);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

constexpr std::array<const char*, 8> kShapes = {"circle",   "box",     "diamond", "hexagon",
                                                "triangle", "pentagon", "octagon", "ellipse"};

std::string shape_for(ColorIndex index) { return kShapes[index % kShapes.size()]; }

}  // namespace

std::string x11_color(const std::string& color, ColorIndex index) {
  static const std::map<std::string, std::string> table = {
      {"r", "red"},         {"red", "red"},          {"b", "lightblue"},   {"blue", "lightblue"},
      {"g", "palegreen"},   {"green", "palegreen"},  {"o", "orange"},      {"orange", "orange"},
      {"y", "yellow"},      {"yellow", "yellow"},    {"p", "plum"},        {"purple", "plum"},
      {"black", "black"},   {"white", "white"},      {"grey", "grey"},     {"gray", "grey"},
      {kSourceColor, "lightgrey"},
  };
  static const std::array<const char*, 8> fallback = {"lightcoral", "lightskyblue", "khaki",  "lightpink",
                                                      "aquamarine", "wheat",        "thistle", "lightsalmon"};
  std::string lower = color;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (auto it = table.find(lower); it != table.end()) return it->second;
  return fallback[index % fallback.size()];
}

std::string save(const ColoredGraph& graph, Format format) {
  if (format == Format::Json) return to_json(graph).dump(2) + "\n";

  std::vector<std::string> palette;
  for (const auto& c : graph.palette()) palette.push_back(c.name);
  std::vector<bool> is_start(graph.size(), false);
  if (graph.start_nodes()) {
    for (auto v : *graph.start_nodes()) is_start[v] = true;
  }

  std::ostringstream out;
  out << "digraph colorobs {\n";
  out << "  graph [palette=" << quote(join(palette, ",")) << "];\n";
  out << "  node [style=filled];\n";
  for (NodeIndex v = 0; v < graph.size(); ++v) {
    std::vector<std::string> names;
    std::vector<std::string> fills;
    for (auto c : graph.colors(v)) {
      names.push_back(graph.color_name(c));
      fills.push_back(x11_color(graph.color_name(c), c));
    }
    out << "  " << quote(graph.id(v)) << " [colors=" << quote(join(names, ",")) << ", fillcolor="
        << quote(join(fills, ":")) << ", shape=" << shape_for(graph.colors(v).front());
    if (is_start[v]) out << ", start=true";
    out << "];\n";
  }
  for (const auto& [a, b] : graph.edges()) out << "  " << quote(graph.id(a)) << " -> " << quote(graph.id(b)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string save(const EdgeColoredGraph& graph, Format format) {
  if (format == Format::Json) return to_json(graph).dump(2) + "\n";

  std::vector<bool> is_start(graph.size(), false);
  if (graph.start_nodes()) {
    for (auto v : *graph.start_nodes()) is_start[v] = true;
  }
  std::ostringstream out;
  out << "digraph colorobs {\n";
  out << "  graph [palette=" << quote(join(graph.palette(), ",")) << "];\n";
  for (NodeIndex v = 0; v < graph.size(); ++v) {
    out << "  " << quote(graph.id(v));
    if (is_start[v]) out << " [start=true]";
    out << ";\n";
  }
  for (const auto& e : graph.edges()) {
    std::vector<std::string> names;
    for (auto c : e.colors) names.push_back(graph.palette()[c]);
    out << "  " << quote(graph.id(e.from)) << " -> " << quote(graph.id(e.to)) << " [colors=" << quote(join(names, ","))
        << ", color=" << quote(x11_color(names.front(), e.colors.front())) << "];\n";
  }
  out << "}\n";
  return out.str();
}

AnyGraph load_string(const std::string& text, Format format) {
  return format == Format::Json ? load_json(text) : load_dot(text);
}

AnyGraph load(std::istream& in, Format format) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_string(buffer.str(), format);
}

AnyGraph load_file(const std::string& path, Format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return load(in, format);
}

ColoredGraph load_colored(const std::string& text, Format format) {
  auto g = load_string(text, format);
  if (auto* cg = std::get_if<ColoredGraph>(&g)) return std::move(*cg);
  throw Error("expected a node-colored graph, got an edge-colored one");
}

ColoredGraph load_colored_file(const std::string& path) {
  auto g = load_file(path, format_for_path(path));
  if (auto* cg = std::get_if<ColoredGraph>(&g)) return std::move(*cg);
  throw Error(path + ": expected a node-colored graph, got an edge-colored one");
}

}  // namespace colorobs
