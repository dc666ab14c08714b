// Acceptance gate. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails. Usage: acceptance [path-to-colorobs-cli]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "colorobs/chromatic.hpp"
#include "colorobs/graph_io.hpp"
#include "colorobs/mitigation.hpp"
#include "colorobs/pair_graph.hpp"
#include "colorobs/pathology.hpp"
#include "colorobs/taxonomy.hpp"
#include "colorobs/tracking.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "process.hpp"
#include "random_graphs.hpp"

using namespace colorobs;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and sizes.
constexpr double kSigma = 3.0;               // binomial standard errors allowed for "alpha = 1"
constexpr std::size_t kSurfaceTrials = 10000;
constexpr std::size_t kGammaMax = 50;
constexpr double kCrossing = 0.99;           // burn-in crossing level
constexpr double kMinSpeedup = 3.0;
constexpr std::size_t kOracleWalkLength = 25;
constexpr std::size_t kMaxWordLength = 8;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double seconds_limit;
  std::function<Outcome()> body;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << std::fixed << x;
  return ss.str();
}

std::string cli_path;

// ---------------------------------------------------------------------------

Outcome taxonomy_fixtures() {
  const std::vector<std::pair<std::string, Region>> table = {
      {"g_butterfly", Region::I},  {"region_ii", Region::II},  {"region_iii", Region::III},
      {"region_iv", Region::IV},   {"g_intersect", Region::V}, {"g_scon", Region::VI},
      {"g_sym", Region::VII},      {"alternating_2cycle", Region::VIII},
  };
  Outcome out;
  std::set<Region> seen;
  for (const auto& [name, want] : table) {
    const auto got = classify(testing::fixture(name)).region;
    seen.insert(got);
    if (got != want) {
      out.pass = false;
      out.detail += name + "->" + to_string(got) + " (want " + to_string(want) + ") ";
    }
  }
  if (seen.size() != 8) out.pass = false;
  out.detail += std::to_string(seen.size()) + "/8 regions covered";
  return out;
}

Outcome containments() {
  std::mt19937_64 rng(0);
  testing::RandomGraphSpec spec;
  spec.max_nodes = 7;
  spec.max_colors = 3;
  std::size_t violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = classify(testing::random_graph(rng, spec));
    auto in = [&](GraphClass x) { return c.has(x); };
    if (in(GraphClass::PartlyObservable) && !in(GraphClass::PartlyAPosterioriObservable)) ++violations;
    if (in(GraphClass::SemiUnifilar) && !in(GraphClass::Trackable)) ++violations;
    if (in(GraphClass::Observable) && !in(GraphClass::SemiUnifilar)) ++violations;
    if (c.flags.has_intersecting && !c.flags.has_scon) ++violations;
  }
  return {violations == 0, "1000 graphs, " + std::to_string(violations) + " violations"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(0);
  testing::RandomGraphSpec spec;
  spec.max_nodes = 5;
  spec.max_colors = 3;
  spec.multicolor_probability = 0.15;
  std::size_t detector_mismatch = 0, count_mismatch = 0, words = 0, nonzero = 0;
  std::array<std::size_t, 3> positives{};
  for (int i = 0; i < 5000; ++i) {
    const auto g = testing::random_graph(rng, spec);
    const std::array<bool, 3> oracle = {testing::oracle_scon(g), testing::oracle_intersecting(g, kOracleWalkLength),
                                        testing::oracle_separated(g, kOracleWalkLength)};
    const std::array<bool, 3> got = {!detect_scon(g).empty(), has_intersecting_cycles(g), has_separated_cycles(g)};
    for (std::size_t d = 0; d < 3; ++d) {
      positives[d] += oracle[d];
      if (got[d] != oracle[d]) ++detector_mismatch;
    }

    const auto k = g.palette().size();
    std::uniform_int_distribution<std::size_t> len(1, kMaxWordLength);
    std::uniform_int_distribution<std::size_t> color(0, k - 1);
    std::uniform_int_distribution<std::size_t> node(0, g.size() - 1);
    for (int w = 0; w < 4; ++w) {
      std::vector<ColorIndex> word(len(rng));
      if (w < 2) {
        for (auto& c : word) c = static_cast<ColorIndex>(color(rng));
      } else {
        // Colors read off a random walk, so the count is usually nonzero.
        NodeIndex v = node(rng);
        for (auto& c : word) {
          const auto cs = g.colors(v);
          c = cs[std::uniform_int_distribution<std::size_t>(0, cs.size() - 1)(rng)];
          const auto succ = g.successors(v);
          if (!succ.empty()) v = succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)];
        }
      }
      ++words;
      const auto expected = testing::oracle_path_count(g, word);
      nonzero += expected > 0;
      if (hypothesis_count(g, word).total != BigCount(expected)) ++count_mismatch;
    }
  }
  return {detector_mismatch == 0 && count_mismatch == 0,
          "5000 graphs (scon/intersecting/separated positives " + std::to_string(positives[0]) + "/" +
              std::to_string(positives[1]) + "/" + std::to_string(positives[2]) + "): detector mismatches " +
              std::to_string(detector_mismatch) + ", count mismatches " + std::to_string(count_mismatch) + "/" +
              std::to_string(words) + " words (" + std::to_string(nonzero) + " nonzero)"};
}

Outcome growth_dichotomy() {
  Outcome out;
  const auto gi = testing::fixture("g_intersect");
  const auto blue = gi.require_color("Blue"), red = gi.require_color("Red");
  // Blue (Red Blue)^k has length 2k+1.
  std::vector<ColorIndex> word{blue};
  std::size_t exact = 0;
  for (std::size_t k = 1; k <= 30; ++k) {
    word.push_back(red);
    word.push_back(blue);
    if (hypothesis_count(gi, word).total == (BigCount(1) << k)) ++exact;
  }
  if (exact != 30) out.pass = false;
  out.detail = "2^k at length 2k+1 for " + std::to_string(exact) + "/30 k";

  // Worst case over all words doubles every two steps.
  GrowthOptions gopt;
  gopt.length_cap = 12;
  const auto gr = growth_class(gi, gopt);
  bool doubling = true;
  // max_counts[i] is for length i + 1.
  for (std::size_t i = 0; i + 2 < gr.max_counts.size(); ++i)
    if (gr.max_counts[i + 2] != 2 * gr.max_counts[i]) doubling = false;
  if (!doubling) out.pass = false;
  out.detail += doubling ? ", worst case doubles per period" : ", worst case does not double";

  std::size_t agree = 0, total = 0;
  for (const auto& entry : fs::directory_iterator(std::string(COLOROBS_DATA_DIR) + "/fixtures")) {
    const auto any = load_file(entry.path().string(), Format::Json);
    if (!std::holds_alternative<ColoredGraph>(any)) continue;
    const auto& g = std::get<ColoredGraph>(any);
    GrowthOptions opt;
    opt.length_cap = 8;
    const bool exponential = growth_class(g, opt).verdict == Growth::Exponential;
    ++total;
    if (exponential == !classify(g).has(GraphClass::Trackable)) ++agree;
  }
  if (agree != total) out.pass = false;
  out.detail += ", verdict matches Trackable on " + std::to_string(agree) + "/" + std::to_string(total) + " fixtures";
  return out;
}

CurrencySurface surface(const std::string& fixture, Anchor anchor, StartMode start,
                        const std::vector<std::string>& subset = {}) {
  const auto g = testing::fixture(fixture);
  std::vector<NodeIndex> nodes;
  for (const auto& id : subset) nodes.push_back(g.require_index(id));
  CurrencyOptions opt;
  opt.beta_max = kGammaMax - 1;
  opt.gamma_max = kGammaMax;
  opt.trials = kSurfaceTrials;
  opt.anchor = anchor;
  return currency_surface(uniform_model(g, start, nodes), opt);
}

// Smallest gamma from which alpha(0, gamma') >= level for every gamma' >= gamma.
std::size_t crossing(const CurrencySurface& s, double level) {
  std::size_t at = s.gamma_max + 1;
  for (std::size_t g = s.gamma_max; g >= 1; --g) {
    if (s.alpha(0, g) < level) break;
    at = g;
  }
  return at;
}

Outcome currency_surfaces() {
  Outcome out;
  const std::vector<std::string> lower = {"g1", "o1", "g2", "o2"};

  // (a) all pathologies: alpha stays below 1 everywhere.
  const auto base = surface("g_butterfly", Anchor::End, StartMode::Stationary);
  double base_max = 0.0;
  for (std::size_t g = 1; g <= kGammaMax; ++g)
    for (std::size_t b = 0; b < g; ++b) base_max = std::max(base_max, base.alpha(b, g));
  const bool a = base_max < 1.0;

  // (b) trackable mitigation: alpha = 1 for beta >= 4 at gamma = 50.
  const auto tr = surface("butterfly_trackable", Anchor::End, StartMode::Stationary);
  double worst_gap = 0.0;
  bool b = true;
  for (std::size_t beta = 4; beta < kGammaMax; ++beta) {
    const double gap = 1.0 - tr.alpha(beta, kGammaMax);
    worst_gap = std::max(worst_gap, gap);
    if (gap > kSigma * tr.standard_error(beta, kGammaMax)) b = false;
  }

  // (c) semi-unifilar mitigation: alpha = 1 for beta < gamma - 4.
  const auto su = surface("butterfly_semi_unifilar", Anchor::End, StartMode::Stationary);
  std::size_t c_bad = 0;
  for (std::size_t g = 1; g <= kGammaMax; ++g)
    for (std::size_t beta = 0; beta + 4 < g; ++beta)
      if (su.alpha(beta, g) != 1.0) ++c_bad;
  const bool c = c_bad == 0;

  // (d) observable mitigation from the lower subset: alpha = 1 for gamma > 2,
  // and a faster burn-in than the semi-unifilar variant from the same start.
  const auto ob = surface("butterfly_observable", Anchor::Start, StartMode::Subset, lower);
  const auto su_start = surface("butterfly_semi_unifilar", Anchor::Start, StartMode::Subset, lower);
  std::size_t d_bad = 0;
  for (std::size_t g = 3; g <= kGammaMax; ++g)
    for (std::size_t beta = 0; beta < g; ++beta)
      if (ob.alpha(beta, g) != 1.0) ++d_bad;
  const auto cross_ob = crossing(ob, kCrossing), cross_su = crossing(su_start, kCrossing);
  const double speedup = static_cast<double>(cross_su) / static_cast<double>(cross_ob);
  const bool d = d_bad == 0 && speedup >= kMinSpeedup;

  out.pass = a && b && c && d;
  out.detail = std::string("(a) ") + (a ? "ok" : "FAIL") + " max alpha " + fmt(base_max) + ", median " +
               fmt(base.median_alpha()) + "; (b) " + (b ? "ok" : "FAIL") + " worst gap " + fmt(worst_gap) +
               "; (c) " + (c ? "ok" : "FAIL") + " " + std::to_string(c_bad) + " cells below 1; (d) " +
               (d ? "ok" : "FAIL") + " " + std::to_string(d_bad) + " cells below 1, crossing " +
               std::to_string(cross_su) + " vs " + std::to_string(cross_ob) + " (" + fmt(speedup, 2) + "x)";
  return out;
}

Outcome observable_exactness() {
  Outcome out;
  std::size_t cells = 0, bad = 0, graphs = 0;
  auto check = [&](const ColoredGraph& g, Anchor anchor, StartMode start, const std::vector<NodeIndex>& subset) {
    const auto t = compute_burn_in(g);
    if (!t) {
      ++bad;
      return;
    }
    CurrencyOptions opt;
    opt.beta_max = 20;
    opt.gamma_max = 24;
    opt.trials = 2000;
    opt.anchor = anchor;
    const auto s = currency_surface(uniform_model(g, start, subset), opt);
    for (std::size_t gm = 1; gm <= opt.gamma_max; ++gm)
      for (std::size_t b = 0; b <= opt.beta_max && b < gm; ++b)
        if (gm - b > *t) {
          ++cells;
          if (s.alpha(b, gm) != 1.0) ++bad;
        }
  };

  for (const auto& entry : fs::directory_iterator(std::string(COLOROBS_DATA_DIR) + "/fixtures")) {
    const auto any = load_file(entry.path().string(), Format::Json);
    if (!std::holds_alternative<ColoredGraph>(any)) continue;
    auto g = std::get<ColoredGraph>(any);
    if (!classify(g).has(GraphClass::Observable)) continue;
    if (!g.single_colored()) g = reduce_multicolor(g).graph;
    ++graphs;
    if (g.start_nodes()) {
      // Burn-in is measured from the declared start set.
      check(g, Anchor::Start, StartMode::Subset, *g.start_nodes());
      auto d = g.to_data();
      d.start_nodes.reset();
      g = ColoredGraph::from_data(d);
    }
    check(g, Anchor::End, StartMode::Stationary, {});
    check(g, Anchor::Start, StartMode::Uniform, {});
  }

  // compute_burn_in against sequence enumeration on small observable graphs.
  std::mt19937_64 rng(0);
  testing::RandomGraphSpec spec;
  spec.max_nodes = 6;
  spec.max_colors = 3;
  std::size_t enumerated = 0, t_bad = 0;
  for (int trial = 0; trial < 20000 && enumerated < 200; ++trial) {
    auto d = testing::random_graph_data(rng, spec);
    if (trial % 2 == 0 && d.nodes.size() > 2) d.start_nodes = std::vector<std::string>{d.nodes[0].id, d.nodes[1].id};
    const auto g = ColoredGraph::from_data(d);
    const auto t = compute_burn_in(g);
    if (!t) continue;
    ++enumerated;
    if (*t > 8 || testing::oracle_burn_in(g, 9) != *t) ++t_bad;
  }
  out.pass = bad == 0 && t_bad == 0 && graphs > 0 && enumerated >= 100;
  out.detail = std::to_string(graphs) + " observable fixtures, " + std::to_string(cells) + " cells, " +
               std::to_string(bad) + " below 1; burn-in enumeration " + std::to_string(enumerated - t_bad) + "/" +
               std::to_string(enumerated) + " agree";
  return out;
}

// Non-isomorphic graphs on at most six vertices, with isolated vertices dropped.
std::vector<TriangleInstance> triangle_family(std::size_t max_triangles, std::size_t max_edges) {
  constexpr std::size_t n = 6;
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::array<std::array<std::size_t, n>, n> index{};
  for (std::size_t i = 0; i < all.size(); ++i) {
    index[all[i].first][all[i].second] = i;
    index[all[i].second][all[i].first] = i;
  }
  std::vector<std::array<std::size_t, n>> perms;
  std::array<std::size_t, n> p{};
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::set<std::uint32_t> canon_seen;
  std::vector<TriangleInstance> out;
  for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_edges) continue;
    std::uint32_t canon = UINT32_MAX;
    for (const auto& q : perms) {
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) m |= 1u << index[q[all[i].first]][q[all[i].second]];
      canon = std::min(canon, m);
    }
    if (!canon_seen.insert(canon).second) continue;

    std::array<int, n> relabel{};
    relabel.fill(-1);
    std::size_t used = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!(canon >> i & 1)) continue;
      for (auto v : {all[i].first, all[i].second})
        if (relabel[v] < 0) relabel[v] = static_cast<int>(used++);
      edges.emplace_back(relabel[all[i].first], relabel[all[i].second]);
    }
    auto inst = TriangleInstance::from_edges(used, std::move(edges));
    if (inst.triangles.empty() || inst.triangles.size() > max_triangles) continue;
    out.push_back(std::move(inst));
  }
  return out;
}

Outcome insp_reduction() {
  auto family = triangle_family(4, 12);
  const auto bounded = family.size();
  // No instance within those bounds is infeasible; K6 supplies the negative case.
  family.push_back(TriangleInstance::complete(6));

  std::size_t feasible = 0, infeasible = 0, mismatches = 0, mode_disagree = 0;
  for (const auto& inst : family) {
    const bool oracle = monochromatic_triangle_oracle(inst);
    (oracle ? feasible : infeasible) += 1;
    std::array<bool, 2> solved{};
    for (auto mode : {IndicatorColorMode::Existing, IndicatorColorMode::Fresh}) {
      const auto r = build_insp_reduction(inst, mode);
      ExactOptions opt;
      opt.budget = r.F.size();
      opt.feasibility_only = true;
      opt.indicator_color = r.indicator_color;
      const bool ok = solve_insp_exact(r.graph, r.F, GraphClass::PartlyAPosterioriObservable, opt).has_value();
      solved[mode == IndicatorColorMode::Fresh] = ok;
      if (ok != oracle) ++mismatches;
    }
    if (solved[0] != solved[1]) ++mode_disagree;
  }
  return {mismatches == 0 && mode_disagree == 0 && infeasible > 0,
          std::to_string(bounded) + " instances plus K6 (" + std::to_string(feasible) + " feasible, " +
              std::to_string(infeasible) + " infeasible): " + std::to_string(mismatches) +
              " oracle mismatches, " + std::to_string(mode_disagree) + " color-mode disagreements"};
}

Outcome chromatic() {
  const auto r = chromatic_bound(testing::fixture("g_sym"));
  const bool acyclic = is_acyclic(build_g2(r.recolored));
  return {r.bound <= 2 && acyclic,
          "bound " + std::to_string(r.bound) + ", recolored G2 " + (acyclic ? "acyclic" : "cyclic")};
}

Outcome determinism() {
  if (cli_path.empty() || !fs::exists(cli_path)) return {false, "CLI not found: " + cli_path};
  const auto base = testing::quote(cli_path) + " --seed 7 simulate " +
                    testing::quote(testing::fixture_path("g_butterfly")) +
                    " --beta-max 10 --gamma-max 50 --trials 10000";
  const auto a = testing::run_process(base);
  const auto b = testing::run_process(base);
  const auto c = testing::run_process(base + " --threads 4");
  const bool ok = a.exit_code == 0 && b.exit_code == 0 && c.exit_code == 0 && !a.out.empty() && a.out == b.out &&
                  a.out == c.out;
  return {ok, std::to_string(a.out.size()) + " bytes; repeat " + (a.out == b.out ? "identical" : "differs") +
                  ", 4 threads " + (a.out == c.out ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  cli_path = argc > 1 ? argv[1] : COLOROBS_CLI_PATH;
  const std::vector<Criterion> criteria = {
      {1, "taxonomy fixtures", 1.0, taxonomy_fixtures},
      {2, "containment theorems", 30.0, containments},
      {3, "oracle equivalence", 300.0, oracle_equivalence},
      {4, "growth dichotomy", 10.0, growth_dichotomy},
      {5, "currency surfaces", 600.0, currency_surfaces},
      {6, "observable exactness", 60.0, observable_exactness},
      {7, "indicator placement reduction", 300.0, insp_reduction},
      {8, "chromatic bound", 1.0, chromatic},
      {9, "simulate determinism", 60.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.seconds_limit;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name << "): " << o.detail
              << "; " << fmt(secs, 2) << "s of " << fmt(c.seconds_limit, 0) << "s" << (in_time ? "" : " OVER TIME")
              << std::endl;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
