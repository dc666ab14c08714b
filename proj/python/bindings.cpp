#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "colorobs/chromatic.hpp"
#include "colorobs/errors.hpp"
#include "colorobs/graph_io.hpp"
#include "colorobs/mitigation.hpp"
#include "colorobs/pathology.hpp"
#include "colorobs/serialize.hpp"
#include "colorobs/taxonomy.hpp"
#include "colorobs/tracking.hpp"

namespace py = pybind11;
using namespace colorobs;

namespace {

// Results cross the boundary as JSON-compatible Python objects.
py::object to_py(const Json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

Json from_py(const py::object& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

ColoredGraph graph_from(const py::object& obj) {
  if (py::isinstance<ColoredGraph>(obj)) return obj.cast<ColoredGraph>();
  if (py::isinstance<py::str>(obj)) return load_colored(obj.cast<std::string>(), Format::Json);
  return load_colored(from_py(obj).dump(), Format::Json);
}

std::vector<EdgeId> edges_from(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<EdgeId> out;
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

StartMode start_mode(const std::string& name) {
  if (name == "stationary") return StartMode::Stationary;
  if (name == "uniform") return StartMode::Uniform;
  if (name == "subset") return StartMode::Subset;
  throw Error("unknown start mode " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Observability analysis of node-colored directed graphs";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error);
  py::register_exception<ModelError>(m, "ModelError", error);
  py::register_exception<InternalConsistencyError>(m, "InternalConsistencyError", error);

  py::class_<ColoredGraph>(m, "Graph")
      .def_static("from_json", [](const std::string& text) { return load_colored(text, Format::Json); })
      .def_static("from_dot", [](const std::string& text) { return load_colored(text, Format::Dot); })
      .def_static("load", &load_colored_file, py::arg("path"))
      .def("to_json", [](const ColoredGraph& g) { return save(g, Format::Json); })
      .def("to_dot", [](const ColoredGraph& g) { return save(g, Format::Dot); })
      .def("to_dict", [](const ColoredGraph& g) { return to_py(to_json(g)); })
      .def_property_readonly("ids", &ColoredGraph::ids)
      .def_property_readonly("palette",
                             [](const ColoredGraph& g) {
                               std::vector<std::string> out;
                               for (const auto& c : g.palette()) out.push_back(c.name);
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const ColoredGraph& g) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& [a, b] : g.edges()) out.emplace_back(g.id(a), g.id(b));
                               return out;
                             })
      .def("__len__", &ColoredGraph::size)
      .def("__repr__", [](const ColoredGraph& g) {
        return "<Graph nodes=" + std::to_string(g.size()) + " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("classify", [](const py::object& g) { return to_py(to_json(classify(graph_from(g)))); }, py::arg("graph"));

  m.def(
      "satisfies",
      [](const py::object& g, const std::string& target) { return satisfies(graph_from(g), parse_graph_class(target)); },
      py::arg("graph"), py::arg("target"));

  m.def(
      "detect",
      [](const py::object& g) {
        const auto graph = graph_from(g);
        return to_py(to_json(full_report(graph), graph));
      },
      py::arg("graph"));

  m.def("burn_in", [](const py::object& g) { return compute_burn_in(graph_from(g)); }, py::arg("graph"));

  m.def(
      "reduce_multicolor", [](const py::object& g) { return reduce_multicolor(graph_from(g)).graph; },
      py::arg("graph"));

  m.def(
      "hypothesis_count",
      [](const py::object& g, const std::vector<std::string>& colors) {
        const auto graph = graph_from(g);
        std::vector<ColorIndex> word;
        for (const auto& c : colors) word.push_back(graph.require_color(c));
        const auto count = hypothesis_count(graph, word);
        py::list out;
        for (const auto& c : count.per_step) out.append(py::int_(py::str(c.str())));
        return out;
      },
      py::arg("graph"), py::arg("colors"));

  m.def(
      "growth_class",
      [](const py::object& g, std::size_t length_cap, const std::string& mode, std::uint64_t seed) {
        const auto graph = graph_from(g);
        GrowthOptions opt;
        opt.length_cap = length_cap;
        opt.seed = seed;
        if (mode == "sampled") opt.mode = GrowthMode::Sampled;
        else if (mode != "worst-case") throw Error("unknown growth mode " + mode);
        return to_py(to_json(growth_class(graph, opt), graph));
      },
      py::arg("graph"), py::arg("length_cap") = 8, py::arg("mode") = "worst-case", py::arg("seed") = 0);

  m.def(
      "simulate",
      [](const py::object& g, std::size_t beta_max, std::size_t gamma_max, std::size_t trials, std::uint64_t seed,
         const std::string& anchor, const std::string& start, const std::vector<std::string>& subset,
         unsigned threads) {
        const auto graph = graph_from(g);
        std::vector<NodeIndex> nodes;
        for (const auto& id : subset) nodes.push_back(graph.require_index(id));
        CurrencyOptions opt;
        opt.beta_max = beta_max;
        opt.gamma_max = gamma_max;
        opt.trials = trials;
        opt.seed = seed;
        opt.threads = threads;
        if (anchor == "start") opt.anchor = Anchor::Start;
        else if (anchor != "end") throw Error("unknown anchor " + anchor);
        py::gil_scoped_release release;
        return currency_surface(uniform_model(graph, start_mode(start), nodes), opt).to_csv();
      },
      py::arg("graph"), py::arg("beta_max") = 10, py::arg("gamma_max") = 50, py::arg("trials") = 1000,
      py::arg("seed") = 0, py::arg("anchor") = "end", py::arg("start") = "stationary",
      py::arg("subset") = std::vector<std::string>{}, py::arg("threads") = 1);

  m.def(
      "mitigate",
      [](const py::object& g, const std::string& target, const std::optional<std::vector<std::pair<std::string, std::string>>>& candidates,
         const std::string& mode, std::size_t budget, const std::string& indicator_color) -> py::object {
        const auto graph = graph_from(g);
        const auto F = candidates ? edges_from(*candidates) : all_edges(graph);
        const auto cls = parse_graph_class(target);
        std::optional<IndicatorPlacement> placement;
        if (mode == "exact") {
          ExactOptions opt;
          opt.budget = budget;
          opt.indicator_color = indicator_color;
          placement = solve_insp_exact(graph, F, cls, opt);
        } else if (mode == "greedy") {
          placement = solve_insp_greedy(graph, F, cls, nullptr, indicator_color);
        } else {
          throw Error("unknown mode " + mode);
        }
        if (!placement) return py::none();
        return to_py(to_json(*placement));
      },
      py::arg("graph"), py::arg("target"), py::arg("candidates") = py::none(), py::arg("mode") = "exact",
      py::arg("budget") = 20, py::arg("indicator_color") = kDefaultIndicatorColor);

  m.def(
      "apply_indicators",
      [](const py::object& g, const std::vector<std::pair<std::string, std::string>>& edges,
         const std::string& indicator_color) {
        IndicatorPlacement p;
        p.chosen_edges = edges_from(edges);
        std::sort(p.chosen_edges.begin(), p.chosen_edges.end());
        p.indicator_color = indicator_color;
        return apply_indicators(graph_from(g), p);
      },
      py::arg("graph"), py::arg("edges"), py::arg("indicator_color") = kDefaultIndicatorColor);

  m.def(
      "chromatic_bound",
      [](const py::object& g) {
        const auto graph = graph_from(g);
        return to_py(to_json(chromatic_bound(graph), graph));
      },
      py::arg("graph"));

  m.def(
      "reduce_insp",
      [](const py::object& instance, const std::string& mode) {
        if (mode != "existing" && mode != "fresh") throw Error("unknown indicator color mode " + mode);
        const auto r = build_insp_reduction(triangle_instance_from_json(from_py(instance)),
                                            mode == "fresh" ? IndicatorColorMode::Fresh : IndicatorColorMode::Existing);
        py::dict out;
        out["graph"] = r.graph;
        py::list F;
        for (const auto& e : r.F) F.append(py::make_tuple(e.from, e.to));
        out["F"] = F;
        out["indicator_color"] = r.indicator_color;
        return out;
      },
      py::arg("instance"), py::arg("mode") = "existing");

  m.def(
      "two_colorable_without_monochromatic_triangle",
      [](const py::object& instance) { return monochromatic_triangle_oracle(triangle_instance_from_json(from_py(instance))); },
      py::arg("instance"));
}
