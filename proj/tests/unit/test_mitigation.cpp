#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "random_graphs.hpp"

#include "colorobs/errors.hpp"
#include "colorobs/mitigation.hpp"
#include "colorobs/sat.hpp"

using namespace colorobs;

namespace {

bool brute_sat(std::size_t n, const std::vector<std::vector<sat::Lit>>& clauses, const std::vector<sat::Lit>& fixed) {
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    auto holds = [&](sat::Lit l) { return bool((m >> sat::var_of(l)) & 1) != sat::is_neg(l); };
    bool ok = std::all_of(fixed.begin(), fixed.end(), holds);
    for (const auto& c : clauses) ok = ok && std::any_of(c.begin(), c.end(), holds);
    if (ok) return true;
  }
  return false;
}

// First subset in (size, lexicographic index order) reaching the target.
std::optional<std::vector<EdgeId>> brute_min(const ColoredGraph& g, std::vector<EdgeId> F, GraphClass target) {
  std::sort(F.begin(), F.end());
  const auto n = F.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      IndicatorPlacement p;
      for (auto i : idx) p.chosen_edges.push_back(F[i]);
      if (satisfies(apply_indicators(g, p), target)) return p.chosen_edges;
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::vector<EdgeId> edge_ids(std::initializer_list<std::pair<const char*, const char*>> list) {
  std::vector<EdgeId> out;
  for (const auto& [a, b] : list) out.push_back({a, b});
  return out;
}

}  // namespace

TEST_SUITE("mitigation") {
  TEST_CASE("sat solver agrees with truth tables") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t n = 3 + rng() % 8;
      sat::Solver s;
      for (std::size_t v = 0; v < n; ++v) s.new_var();
      std::vector<std::vector<sat::Lit>> clauses;
      const auto m = rng() % (5 * n);
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<sat::Lit> c;
        for (std::size_t k = 0, len = 1 + rng() % 3; k < len; ++k) c.push_back(static_cast<sat::Lit>(rng() % (2 * n)));
        clauses.push_back(c);
        s.add_clause(c);
      }
      std::vector<sat::Lit> assume;
      if (trial % 2) assume = {static_cast<sat::Lit>(rng() % (2 * n)), static_cast<sat::Lit>(rng() % (2 * n))};
      const bool expected = brute_sat(n, clauses, assume);
      REQUIRE(s.solve(assume) == expected);
      if (expected) {
        for (const auto& c : clauses) {
          CHECK(std::any_of(c.begin(), c.end(),
                            [&](sat::Lit l) { return s.model_value(sat::var_of(l)) != sat::is_neg(l); }));
        }
      }
      // Assumptions do not persist.
      CHECK(s.solve() == brute_sat(n, clauses, {}));
    }
  }

  TEST_CASE("totalizer bounds the count") {
    for (std::size_t n = 1; n <= 7; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        sat::Solver s;
        std::vector<sat::Lit> in;
        for (std::size_t i = 0; i < n; ++i) in.push_back(sat::pos(s.new_var()));
        sat::Totalizer t(s, in);
        // Forcing k+1 inputs true contradicts at_most(k).
        auto a = t.at_most(k);
        REQUIRE(s.solve(a));
        std::size_t ones = 0;
        for (std::size_t i = 0; i < n; ++i) ones += s.model_value(i);
        CHECK(ones <= k);
        if (k < n) {
          auto b = a;
          for (std::size_t i = 0; i <= k; ++i) b.push_back(in[i]);
          CHECK(!s.solve(b));
        }
      }
    }
  }

  TEST_CASE("apply_indicators") {
    auto g = testing::fixture("g_butterfly");
    CHECK(apply_indicators(g, {}).to_data().edges.size() == g.edge_count());

    IndicatorPlacement p{edge_ids({{"l4", "c"}}), "Grey"};
    auto m = apply_indicators(g, p);
    CHECK(m.size() == g.size() + 1);
    CHECK(m.edge_count() == g.edge_count() + 1);
    CHECK(m.index_of("l4__ind__c"));
    CHECK(!m.has_edge(m.require_index("l4"), m.require_index("c")));
    CHECK(m.color_name(m.color_of(m.require_index("l4__ind__c"))) == "Grey");
    auto c = classify(m);
    CHECK(c.has(GraphClass::Trackable));
    CHECK(!c.has(GraphClass::SemiUnifilar));
    CHECK(c.region == classify(testing::fixture("butterfly_trackable")).region);

    CHECK_THROWS_AS(apply_indicators(g, {edge_ids({{"c", "g1"}}), "Grey"}), Error);
    CHECK_THROWS_AS(apply_indicators(g, {edge_ids({{"c", "l1"}, {"c", "l1"}}), "Grey"}), Error);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      auto r = testing::random_graph(rng, {});
      auto all = all_edges(r);
      IndicatorPlacement q;
      for (const auto& e : all)
        if (rng() % 2) q.chosen_edges.push_back(e);
      auto out = apply_indicators(r, q);
      CHECK(out.size() == r.size() + q.chosen_edges.size());
      CHECK(out.edge_count() == r.edge_count() + q.chosen_edges.size());
    }
  }

  TEST_CASE("exact solver on fixtures") {
    auto sym = testing::fixture("g_sym");
    auto p = solve_insp_exact(sym, all_edges(sym), GraphClass::PartlyAPosterioriObservable);
    REQUIRE(p);
    CHECK(p->chosen_edges == edge_ids({{"a", "b"}}));

    auto alt = testing::fixture("alternating_2cycle");
    p = solve_insp_exact(alt, all_edges(alt), GraphClass::Observable);
    REQUIRE(p);
    CHECK(p->chosen_edges.empty());

    // No candidate touches the cycle pair.
    auto bf = testing::fixture("g_butterfly");
    CHECK(!solve_insp_exact(bf, edge_ids({{"g1", "c"}, {"o2", "c"}}), GraphClass::PartlyAPosterioriObservable));

    ExactOptions tight;
    tight.budget = 3;
    CHECK_THROWS_AS(solve_insp_exact(sym, all_edges(sym), GraphClass::Trackable, tight), BudgetExceeded);
    CHECK_THROWS_AS(solve_insp_exact(sym, all_edges(sym), GraphClass::Unifilar), Error);
  }

  TEST_CASE("exact solver is minimal and lexicographically least") {
    std::mt19937_64 rng(23);
    testing::RandomGraphSpec spec;
    spec.max_nodes = 5;
    spec.max_colors = 2;
    spec.edge_probability = 0.4;
    const GraphClass targets[] = {GraphClass::Trackable, GraphClass::PartlyAPosterioriObservable,
                                  GraphClass::PartlyObservable, GraphClass::SemiUnifilar, GraphClass::Observable};
    int solved = 0, absent = 0;
    for (int trial = 0; trial < 250; ++trial) {
      auto g = testing::random_graph(rng, spec);
      auto F = all_edges(g);
      std::shuffle(F.begin(), F.end(), rng);
      if (F.size() > 10) F.resize(10);
      const auto target = targets[trial % 5];
      auto expected = brute_min(g, F, target);
      auto got = solve_insp_exact(g, F, target);
      REQUIRE(expected.has_value() == got.has_value());
      if (got) {
        CHECK(got->chosen_edges == *expected);
        CHECK(satisfies(apply_indicators(g, *got), target));
        ++solved;
      } else {
        ++absent;
      }
    }
    CHECK(solved > 50);
    CHECK(absent > 5);
  }

  TEST_CASE("greedy solver") {
    auto bf = testing::fixture("g_butterfly");
    std::vector<EdgeId> into_center;
    for (const auto& e : edges_adjacent(bf, "c"))
      if (e.to == "c") into_center.push_back(e);
    auto p = solve_insp_greedy(bf, into_center, GraphClass::Trackable);
    REQUIRE(p);
    CHECK(p->chosen_edges == edge_ids({{"l4", "c"}}));

    auto su = testing::fixture("butterfly_semi_unifilar");
    p = solve_insp_greedy(su, edge_ids({{"g2", "o2"}, {"o2", "g2"}}), GraphClass::Observable);
    REQUIRE(p);
    CHECK(p->chosen_edges == edge_ids({{"g2", "o2"}}));
    CHECK(classify(apply_indicators(su, *p)).region == Region::VIII);

    CHECK(!solve_insp_greedy(bf, edge_ids({{"g1", "o1"}}), GraphClass::Trackable));
    CHECK_THROWS_AS(solve_insp_greedy(bf, into_center, GraphClass::PartlyObservable), Error);

    std::vector<double> bad(bf.size() * bf.size(), 0.0);
    CHECK_THROWS_AS(solve_insp_greedy(bf, into_center, GraphClass::Trackable, &bad), ModelError);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      auto g = testing::random_graph(rng, {});
      const GraphClass t = trial % 2 ? GraphClass::Observable : GraphClass::Trackable;
      if (auto r = solve_insp_greedy(g, all_edges(g), t)) CHECK(satisfies(apply_indicators(g, *r), t));
    }
  }

  TEST_CASE("edge frequencies") {
    auto bf = testing::fixture("g_butterfly");
    auto f = edge_frequencies(bf);
    const auto& edges = bf.edges();
    double total = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      total += f[i];
      if (bf.id(edges[i].first) == "c") CHECK(f[i] == doctest::Approx(0.1));
    }
    CHECK(total == doctest::Approx(1.0));
  }

  TEST_CASE("triangle instances and the oracle") {
    auto one = TriangleInstance::from_edges(3, {{0, 1}, {2, 1}, {0, 2}});
    CHECK(one.triangles.size() == 1);
    CHECK(monochromatic_triangle_oracle(one));
    CHECK(monochromatic_triangle_oracle(TriangleInstance::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})));
    CHECK(TriangleInstance::complete(6).triangles.size() == 20);
    CHECK(!monochromatic_triangle_oracle(TriangleInstance::complete(6)));
    CHECK(monochromatic_triangle_oracle(TriangleInstance::complete(5)));
    CHECK_THROWS_AS(monochromatic_triangle_oracle(TriangleInstance::complete(8)), Error);
    CHECK_THROWS_AS(TriangleInstance::from_edges(2, {{0, 0}}), ValidationError);
  }

  TEST_CASE("reduction structure") {
    auto one = build_insp_reduction(TriangleInstance::complete(3), IndicatorColorMode::Existing);
    CHECK(one.tree_depth == 0);
    CHECK(one.array_length == 9);
    CHECK(one.F.size() == 12);
    // 3 triangle copies, 6 real-edge nodes, 3 roots, 2 x 18 array nodes.
    CHECK(one.graph.size() == 3 + 6 + 3 + 36);
    CHECK(one.indicator_color == "black");
    std::size_t connectors = 0;
    for (const auto& e : one.F) connectors += e.from[0] == 'T';
    CHECK(connectors == 9);

    auto shared = build_insp_reduction(TriangleInstance::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}),
                                       IndicatorColorMode::Fresh);
    CHECK(shared.tree_depth == 1);
    CHECK(shared.indicator_color == "grey");
    CHECK(shared.graph.predecessors(shared.graph.require_index("e1_2_s")).size() == 6);
    CHECK(shared.graph.predecessors(shared.graph.require_index("e0_1_s")).size() == 3);

    CHECK_THROWS_AS(build_insp_reduction(TriangleInstance::from_edges(3, {{0, 1}}), IndicatorColorMode::Fresh), Error);
  }

  TEST_CASE("reduction feasibility matches the oracle on small instances") {
    const std::vector<TriangleInstance> instances = {
        TriangleInstance::complete(3),
        TriangleInstance::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}),
        TriangleInstance::complete(4),
    };
    for (const auto& inst : instances) {
      for (auto mode : {IndicatorColorMode::Existing, IndicatorColorMode::Fresh}) {
        auto r = build_insp_reduction(inst, mode);
        ExactOptions opt;
        opt.budget = r.F.size();
        opt.indicator_color = r.indicator_color;
        auto p = solve_insp_exact(r.graph, r.F, GraphClass::PartlyAPosterioriObservable, opt);
        CHECK(p.has_value() == monochromatic_triangle_oracle(inst));
      }
    }
  }
}
