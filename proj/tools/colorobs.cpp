// colorobs: command-line front end.
//
// Exit codes: 0 success, 1 analysis-negative, 2 usage or input error,
// 3 budget exceeded. Only the documented payload goes to stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "colorobs/chromatic.hpp"
#include "colorobs/errors.hpp"
#include "colorobs/graph_io.hpp"
#include "colorobs/mitigation.hpp"
#include "colorobs/pathology.hpp"
#include "colorobs/serialize.hpp"
#include "colorobs/taxonomy.hpp"
#include "colorobs/tracking.hpp"

namespace fs = std::filesystem;
using namespace colorobs;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Global {
  std::string format;
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write " + path);
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

ColoredGraph load_node_colored(const std::string& path) {
  auto any = load_file(path, format_for_path(path));
  if (std::holds_alternative<EdgeColoredGraph>(any))
    throw Error(path + " is edge-colored; convert it with `colorobs reduce --from edge-colored` first");
  return std::get<ColoredGraph>(std::move(any));
}

Format graph_format(const Global& g) {
  if (g.format.empty() || g.format == "json") return Format::Json;
  if (g.format == "dot") return Format::Dot;
  throw Error("format " + g.format + " is not available for graphs");
}

std::vector<ColorIndex> parse_colors(const ColoredGraph& graph, const std::string& text) {
  std::vector<ColorIndex> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto b = token.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    const auto e = token.find_last_not_of(" \t\r\n");
    out.push_back(graph.require_color(token.substr(b, e - b + 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct ValidateCmd {
  std::string path;

  int run(const Global&) const {
    const auto text = read_file(path);
    Json out;
    try {
      auto any = load_string(text, format_for_path(path));
      out["valid"] = true;
      if (auto* g = std::get_if<ColoredGraph>(&any)) {
        out["kind"] = "node-colored";
        out["nodes"] = g->size();
        out["edges"] = g->edge_count();
        out["palette"] = g->to_data().palette;
        out["single_colored"] = g->single_colored();
      } else {
        const auto& e = std::get<EdgeColoredGraph>(any);
        out["kind"] = "edge-colored";
        out["nodes"] = e.size();
        out["edges"] = e.edges().size();
        out["palette"] = e.palette();
      }
    } catch (const ValidationError& e) {
      out["valid"] = false;
      out["violations"] = e.violations();
      emit(out);
      return kNegative;
    }
    emit(out);
    return kOk;
  }
};

struct ReduceCmd {
  std::string path;
  std::string from;
  std::string provenance;

  int run(const Global& g) const {
    auto any = load_file(path, format_for_path(path));
    Reduction r;
    if (from == "edge-colored") {
      auto* e = std::get_if<EdgeColoredGraph>(&any);
      if (!e) throw Error(path + " is not edge-colored");
      r = reduce_edge_colored(*e);
    } else {
      auto* c = std::get_if<ColoredGraph>(&any);
      if (!c) throw Error(path + " is edge-colored; use --from edge-colored");
      r = reduce_multicolor(*c);
    }
    if (!provenance.empty()) write_file(provenance, to_json(r.provenance).dump(2) + "\n");
    std::cout << save(r.graph, graph_format(g));
    return kOk;
  }
};

struct ClassifyCmd {
  std::string path;
  bool emit_aux = false;
  bool json = false;
  std::string require;

  int run(const Global&) const {
    const auto graph = load_node_colored(path);
    const auto c = classify(graph);
    Json out = to_json(c);
    const auto t = compute_burn_in(graph);
    out["burn_in"] = t ? Json(*t) : Json(nullptr);
    if (emit_aux) {
      const auto base = fs::path(path).replace_extension("");
      const auto g2 = base.string() + ".g2.dot";
      const auto g2t = base.string() + ".g2tilde.dot";
      write_file(g2, to_dot(build_pair_graph(graph, PairKind::G2, PairScope::All), graph));
      write_file(g2t, to_dot(build_pair_graph(graph, PairKind::G2Tilde, PairScope::All), graph));
      out["aux"] = Json{{"g2", g2}, {"g2tilde", g2t}};
    }
    if (!require.empty()) {
      const auto cls = parse_graph_class(require);
      out["required"] = to_string(cls);
      out["satisfied"] = c.has(cls);
      emit(out);
      return c.has(cls) ? kOk : kNegative;
    }
    emit(out);
    return kOk;
  }
};

struct DetectCmd {
  std::string path;
  std::size_t limit = 1;

  int run(const Global&) const {
    const auto graph = load_node_colored(path);
    const auto r = full_report(graph);
    Json out = to_json(r, graph);
    if (limit > 1) {
      Json all_i = Json::array(), all_s = Json::array();
      for (const auto& w : intersecting_witnesses(graph, limit)) all_i.push_back(to_json(w, graph));
      for (const auto& w : separated_witnesses(graph, limit)) all_s.push_back(to_json(w, graph));
      out["intersecting_all"] = std::move(all_i);
      out["separated_all"] = std::move(all_s);
    }
    emit(out);
    return kOk;
  }
};

struct MitigateCmd {
  std::string path;
  std::string target;
  std::string candidates = "all";
  std::string mode = "exact";
  std::string probabilities;
  std::string indicator_color = kDefaultIndicatorColor;
  std::string output_graph;

  int run(const Global& g) const {
    const auto graph = load_node_colored(path);
    const auto cls = parse_graph_class(target);
    const auto F = candidates == "all" ? all_edges(graph) : parse_edge_list(read_file(candidates));
    std::optional<std::vector<double>> P;
    if (!probabilities.empty()) P = transition_matrix_from_json(Json::parse(read_file(probabilities)), graph);

    Json out;
    out["target"] = to_string(cls);
    out["mode"] = mode;
    out["candidates"] = F.size();
    std::optional<IndicatorPlacement> placement;
    if (mode == "exact") {
      if (P) throw Error("--probabilities only applies to --mode greedy");
      ExactOptions opt;
      if (g.budget) opt.budget = *g.budget;
      opt.indicator_color = indicator_color;
      ExactStats stats;
      placement = solve_insp_exact(graph, F, cls, opt, &stats);
      out["stats"] = Json{{"sat_calls", stats.sat_calls}, {"checks", stats.checks}, {"nogoods", stats.nogoods}};
    } else if (mode == "greedy") {
      placement = solve_insp_greedy(graph, F, cls, P ? &*P : nullptr, indicator_color);
    } else {
      throw Error("unknown mode " + mode);
    }
    out["before"] = to_json(classify(graph));
    if (!placement) {
      out["placement"] = nullptr;
      out["after"] = nullptr;
      out["explanation"] = "no placement within the candidate edges reaches " + to_string(cls);
      emit(out);
      return kNegative;
    }
    const auto mitigated = apply_indicators(graph, *placement);
    out["placement"] = to_json(*placement);
    out["after"] = to_json(classify(mitigated));
    if (!output_graph.empty()) write_file(output_graph, save(mitigated, format_for_path(output_graph)));
    emit(out);
    return kOk;
  }
};

struct SimulateCmd {
  std::string path;
  std::size_t beta_max = 10;
  std::size_t gamma_max = 50;
  std::size_t trials = 1000;
  std::size_t length = 0;
  std::string anchor = "end";
  std::string start = "stationary";
  std::vector<std::string> subset;
  std::string probabilities;
  unsigned threads = 1;
  std::string out;
  std::string sidecar;

  int run(const Global& g) const {
    if (!g.format.empty() && g.format != "csv") throw Error("simulate writes CSV only");
    const auto graph = load_node_colored(path);
    StartMode mode = StartMode::Stationary;
    if (start == "uniform") mode = StartMode::Uniform;
    else if (start == "subset") mode = StartMode::Subset;
    else if (start != "stationary") throw Error("unknown start mode " + start);
    std::vector<NodeIndex> nodes;
    for (const auto& id : subset) nodes.push_back(graph.require_index(id));
    if (mode == StartMode::Subset && nodes.empty()) throw Error("--start subset needs --subset");

    const auto model = probabilities.empty()
                           ? uniform_model(graph, mode, nodes)
                           : model_with_transitions(
                                 graph, transition_matrix_from_json(Json::parse(read_file(probabilities)), graph),
                                 mode, nodes);
    CurrencyOptions opt;
    opt.beta_max = beta_max;
    opt.gamma_max = gamma_max;
    opt.trials = trials;
    opt.seed = g.seed;
    opt.length = length;
    opt.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    if (anchor == "start") opt.anchor = Anchor::Start;
    else if (anchor != "end") throw Error("unknown anchor " + anchor);

    const auto surface = currency_surface(model, opt);
    const auto csv = surface.to_csv();
    if (out.empty()) std::cout << csv;
    else write_file(out, csv);

    const auto side = !sidecar.empty() ? sidecar : (out.empty() ? std::string() : out + ".json");
    if (!side.empty()) {
      Json meta;
      meta["model_hash"] = model_hash(model);
      meta["seed"] = g.seed;
      meta["trials"] = trials;
      meta["beta_max"] = surface.beta_max;
      meta["gamma_max"] = surface.gamma_max;
      meta["length"] = std::max(length, gamma_max);
      meta["anchor"] = anchor;
      meta["start"] = start;
      meta["median_alpha"] = surface.median_alpha();
      write_file(side, meta.dump(2) + "\n");
    }
    return kOk;
  }
};

struct HypcountCmd {
  std::string path;
  std::string colors;
  std::string colors_file;
  bool growth = false;
  std::size_t length_cap = 8;
  std::string growth_mode = "worst-case";
  std::size_t samples = 200;

  int run(const Global& g) const {
    const auto graph = load_node_colored(path);
    if (growth) {
      GrowthOptions opt;
      opt.length_cap = length_cap;
      opt.seed = g.seed;
      opt.samples = samples;
      if (growth_mode == "sampled") opt.mode = GrowthMode::Sampled;
      else if (growth_mode != "worst-case") throw Error("unknown growth mode " + growth_mode);
      if (g.budget) opt.enumeration_budget = static_cast<double>(*g.budget);
      emit(to_json(growth_class(graph, opt), graph));
      return kOk;
    }
    const auto text = !colors_file.empty() ? read_file(colors_file) : colors;
    if (text.find_first_not_of(" \t\r\n,") == std::string::npos) throw Error("no colors given");
    const auto seq = parse_colors(graph, text);
    const auto count = hypothesis_count(graph, seq);
    if (g.format == "json") {
      Json out;
      out["total"] = count.total.str();
      Json steps = Json::array();
      for (const auto& c : count.per_step) steps.push_back(c.str());
      out["per_step"] = std::move(steps);
      emit(out);
    } else if (g.format.empty() || g.format == "csv") {
      std::cout << to_csv(count);
    } else {
      throw Error("hypcount writes csv or json");
    }
    return count.total == 0 ? kNegative : kOk;
  }
};

struct ReduceInspCmd {
  std::string path;
  std::string indicator_mode = "existing";

  int run(const Global& g) const {
    const auto instance = triangle_instance_from_json(Json::parse(read_file(path)));
    IndicatorColorMode mode = IndicatorColorMode::Existing;
    if (indicator_mode == "fresh") mode = IndicatorColorMode::Fresh;
    else if (indicator_mode != "existing") throw Error("unknown indicator color mode " + indicator_mode);
    const auto r = build_insp_reduction(instance, mode);
    if (g.format == "dot") {
      std::cout << save(r.graph, Format::Dot);
      return kOk;
    }
    if (!g.format.empty() && g.format != "json") throw Error("reduce-insp writes json or dot");
    Json out;
    out["instance"] = to_json(instance);
    out["indicator_color"] = r.indicator_color;
    out["tree_depth"] = r.tree_depth;
    out["array_length"] = r.array_length;
    Json F = Json::array();
    for (const auto& e : r.F) F.push_back(Json::array({e.from, e.to}));
    out["F"] = std::move(F);
    out["graph"] = to_json(r.graph);
    emit(out);
    return kOk;
  }
};

struct ChromaticCmd {
  std::string path;

  int run(const Global& g) const {
    const auto graph = load_node_colored(path);
    const auto r = chromatic_bound(graph, g.budget.value_or(kDefaultCycleBudget));
    if (g.format == "dot") {
      std::cout << save(r.recolored, Format::Dot);
      return kOk;
    }
    emit(to_json(r, graph));
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Observability analysis of node-colored directed graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--format", global.format, "Output format: json, dot or csv")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
  app.add_option("--seed", global.seed, "Random seed (default 0)");
  app.add_option("--budget", global.budget, "Search budget for exponential procedures");

  ValidateCmd validate;
  auto* v = app.add_subcommand("validate", "Check a graph file against the schema and invariants");
  v->add_option("graph", validate.path)->required();

  ReduceCmd reduce;
  auto* r = app.add_subcommand("reduce", "Normalize to a single-colored node-colored graph");
  r->add_option("graph", reduce.path)->required();
  r->add_option("--from", reduce.from, "edge-colored or multi-colored")
      ->required()
      ->check(CLI::IsMember({"edge-colored", "multi-colored"}));
  r->add_option("--provenance", reduce.provenance, "Write the copy -> original map here");

  ClassifyCmd classify_cmd;
  auto* c = app.add_subcommand("classify", "Observability classes and region");
  c->add_option("graph", classify_cmd.path)->required();
  c->add_flag("--emit-aux", classify_cmd.emit_aux, "Write G2 and G2-tilde DOT files next to the input");
  c->add_flag("--json", classify_cmd.json, "JSON output (the default)");
  c->add_option("--require", classify_cmd.require, "Exit 1 unless the graph is in this class");

  DetectCmd detect;
  auto* d = app.add_subcommand("detect", "Pathology report with witnesses");
  d->add_option("graph", detect.path)->required();
  d->add_option("--limit", detect.limit, "Also list up to this many witnesses per kind");

  MitigateCmd mitigate;
  auto* m = app.add_subcommand("mitigate", "Choose indicator placements");
  m->add_option("graph", mitigate.path)->required();
  m->add_option("--target", mitigate.target, "Target class")->required();
  m->add_option("--candidates", mitigate.candidates, "Edge-list file or 'all'");
  m->add_option("--mode", mitigate.mode, "exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));
  m->add_option("--probabilities", mitigate.probabilities, "Transition probabilities (JSON)");
  m->add_option("--indicator-color", mitigate.indicator_color, "Color of inserted nodes");
  m->add_option("--output-graph", mitigate.output_graph, "Write the mitigated graph here");

  SimulateCmd simulate;
  auto* s = app.add_subcommand("simulate", "Currency surface as CSV");
  s->add_option("graph", simulate.path)->required();
  s->add_option("--beta-max", simulate.beta_max);
  s->add_option("--gamma-max", simulate.gamma_max);
  s->add_option("--trials", simulate.trials);
  s->add_option("--length", simulate.length, "Trajectory length (at least gamma-max)");
  s->add_option("--anchor", simulate.anchor, "end or start")->check(CLI::IsMember({"end", "start"}));
  s->add_option("--start", simulate.start, "stationary, uniform or subset")
      ->check(CLI::IsMember({"stationary", "uniform", "subset"}));
  s->add_option("--subset", simulate.subset, "Start nodes for --start subset")->delimiter(',');
  s->add_option("--probabilities", simulate.probabilities, "Transition probabilities (JSON)");
  s->add_option("--threads", simulate.threads, "Worker threads, 0 for all cores");
  s->add_option("--out", simulate.out, "Write the CSV here instead of stdout");
  s->add_option("--sidecar", simulate.sidecar, "Metadata JSON path (default: OUT.json)");

  HypcountCmd hyp;
  auto* h = app.add_subcommand("hypcount", "Consistent state sequences per step");
  h->add_option("graph", hyp.path)->required();
  h->add_option("--colors", hyp.colors, "Comma-separated color names");
  h->add_option("--colors-file", hyp.colors_file, "File with comma-separated color names");
  h->add_flag("--growth", hyp.growth, "Classify hypothesis growth instead");
  h->add_option("--length-cap", hyp.length_cap);
  h->add_option("--growth-mode", hyp.growth_mode, "worst-case or sampled")
      ->check(CLI::IsMember({"worst-case", "sampled"}));
  h->add_option("--samples", hyp.samples);

  ReduceInspCmd insp;
  auto* ri = app.add_subcommand("reduce-insp", "Indicator-selection instance from a triangle instance");
  ri->add_option("instance", insp.path)->required();
  ri->add_option("--indicator-color-mode", insp.indicator_mode, "existing or fresh")
      ->check(CLI::IsMember({"existing", "fresh"}));

  ChromaticCmd chrom;
  auto* cb = app.add_subcommand("chromatic-bound", "Upper bound on colors needed for partial observability");
  cb->add_option("graph", chrom.path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*v) return validate.run(global);
    if (*r) return reduce.run(global);
    if (*c) return classify_cmd.run(global);
    if (*d) return detect.run(global);
    if (*m) return mitigate.run(global);
    if (*s) return simulate.run(global);
    if (*h) return hyp.run(global);
    if (*ri) return insp.run(global);
    if (*cb) return chrom.run(global);
  } catch (const BudgetExceeded& e) {
    std::cerr << "colorobs: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "colorobs: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "colorobs: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
