#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "fixtures.hpp"
#include "process.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using testing::fixture_path;
using testing::instance_path;
using testing::quote;
using testing::run_process;

namespace {

testing::ProcessResult cli(const std::string& args) {
  return run_process(quote(COLOROBS_CLI_PATH) + " " + args);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("colorobs_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(file(name)) << text; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify reports the region") {
    auto r = cli("classify " + quote(fixture_path("g_sym")));
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).at("region") == "VII");

    r = cli("classify --json " + quote(fixture_path("g_butterfly")));
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).at("region") == "I");
  }

  TEST_CASE("input errors exit 2 with nothing on stdout") {
    TempDir tmp;
    tmp.write("truncated.json", "{\"nodes\": [");
    tmp.write("bad_color.json", R"({"palette":["R"],"nodes":[{"id":"a","colors":["Q"]}],"edges":[]})");
    tmp.write("dangling.json", R"({"palette":["R"],"nodes":[{"id":"a","colors":["R"]}],"edges":[{"from":"a","to":"z"}]})");

    for (const auto& args : {"classify " + quote(tmp.file("missing.json")),
                             "classify " + quote(tmp.file("truncated.json")),
                             "classify " + quote(tmp.file("bad_color.json")),
                             "detect " + quote(tmp.file("dangling.json")),
                             "hypcount " + quote(tmp.file("bad_color.json")) + " --colors R",
                             "simulate " + quote(tmp.file("truncated.json")),
                             "reduce-insp " + quote(tmp.file("truncated.json"))}) {
      CAPTURE(args);
      const auto r = cli(args);
      CHECK(r.exit_code == 2);
      CHECK(r.out.empty());
    }
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(cli("").exit_code == 2);
    CHECK(cli("frobnicate").exit_code == 2);
    CHECK(cli("classify").exit_code == 2);
    CHECK(cli("classify " + quote(fixture_path("g_sym")) + " --no-such-flag").exit_code == 2);
    CHECK(cli("--format yaml classify " + quote(fixture_path("g_sym"))).exit_code == 2);
    CHECK(cli("mitigate " + quote(fixture_path("g_sym")) + " --target Nonsense").exit_code == 2);
    CHECK(cli("hypcount " + quote(fixture_path("g_sym")) + " --colors Purple").exit_code == 2);
    CHECK(cli("simulate " + quote(fixture_path("g_sym")) + " --start subset").exit_code == 2);
  }

  TEST_CASE("validate separates invalid from unreadable") {
    TempDir tmp;
    tmp.write("bad_color.json", R"({"palette":["R"],"nodes":[{"id":"a","colors":["Q"]}],"edges":[]})");
    tmp.write("truncated.json", "{");

    auto r = cli("validate " + quote(fixture_path("g_intersect")));
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).at("valid") == true);

    r = cli("validate " + quote(tmp.file("bad_color.json")));
    CHECK(r.exit_code == 1);
    const auto doc = json::parse(r.out);
    CHECK(doc.at("valid") == false);
    CHECK(doc.at("violations").size() == 1);

    CHECK(cli("validate " + quote(tmp.file("truncated.json"))).exit_code == 2);

    r = cli("validate " + quote(fixture_path("edge_colored_small")));
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).at("kind") == "edge-colored");
  }

  TEST_CASE("require turns a negative classification into exit 1") {
    auto r = cli("classify " + quote(fixture_path("g_butterfly")) + " --require Observable");
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out).at("satisfied") == false);
    r = cli("classify " + quote(fixture_path("observable_3node")) + " --require Observable");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).at("burn_in").is_number());
  }

  TEST_CASE("emit-aux writes both pair graphs next to the input") {
    TempDir tmp;
    const auto g = tmp.file("g_sym.json");
    fs::copy_file(fixture_path("g_sym"), g);
    const auto r = cli("classify --emit-aux " + quote(g));
    CHECK(r.exit_code == 0);
    const auto g2 = slurp(tmp.file("g_sym.g2.dot"));
    const auto g2t = slurp(tmp.file("g_sym.g2tilde.dot"));
    CHECK(g2.rfind("digraph", 0) == 0);
    CHECK(g2t.rfind("digraph", 0) == 0);
    CHECK(g2.find("\"(a,c)\" -> \"(b,d)\"") != std::string::npos);
  }

  TEST_CASE("reduce normalizes edge-colored input") {
    TempDir tmp;
    const auto r = cli("reduce " + quote(fixture_path("edge_colored_small")) +
                       " --from edge-colored --provenance " + quote(tmp.file("prov.json")));
    REQUIRE(r.exit_code == 0);
    const auto g = json::parse(r.out);
    CHECK(g.at("nodes").size() == 3);
    const auto prov = json::parse(slurp(tmp.file("prov.json")));
    CHECK(prov.at("q__Red") == "q");

    tmp.write("reduced.json", r.out);
    CHECK(cli("classify " + quote(tmp.file("reduced.json"))).exit_code == 0);
    // Edge-colored input is refused by the node-colored analyses.
    CHECK(cli("classify " + quote(fixture_path("edge_colored_small"))).exit_code == 2);

    const auto m = cli("reduce " + quote(fixture_path("multicolor_node")) + " --from multi-colored");
    CHECK(m.exit_code == 0);
    CHECK(cli("--format dot reduce " + quote(fixture_path("multicolor_node")) + " --from multi-colored")
              .out.rfind("digraph", 0) == 0);
  }

  TEST_CASE("detect lists witnesses") {
    const auto r = cli("detect " + quote(fixture_path("g_intersect")) + " --limit 3");
    REQUIRE(r.exit_code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc.contains("intersecting_all"));
    CHECK(!doc.at("intersecting_all").empty());
  }

  TEST_CASE("mitigate") {
    SUBCASE("greedy trackable on the butterfly needs one indicator") {
      const auto r = cli("mitigate " + quote(fixture_path("g_butterfly")) + " --target trackable --mode greedy");
      REQUIRE(r.exit_code == 0);
      const auto doc = json::parse(r.out);
      CHECK(doc.at("placement").at("size") == 1);
      const auto& classes = doc.at("after").at("classes");
      CHECK(std::find(classes.begin(), classes.end(), "Trackable") != classes.end());
      CHECK(doc.at("before").at("region") == "I");
    }
    SUBCASE("exact on G_SYM") {
      const auto r = cli("mitigate " + quote(fixture_path("g_sym")) + " --target PartlyAPosterioriObservable");
      REQUIRE(r.exit_code == 0);
      const auto e = json::parse(r.out).at("placement").at("chosen_edges");
      REQUIRE(e.size() == 1);
      CHECK(e[0].at("from") == "a");
      CHECK(e[0].at("to") == "b");
    }
    SUBCASE("no placement exits 1 with an explanation") {
      TempDir tmp;
      tmp.write("f.txt", "# b keeps two Red successors\nr1 b\n");
      const auto r = cli("mitigate " + quote(fixture_path("g_intersect")) + " --target Observable --candidates " +
                         quote(tmp.file("f.txt")));
      CHECK(r.exit_code == 1);
      const auto doc = json::parse(r.out);
      CHECK(doc.at("placement").is_null());
      CHECK(doc.contains("explanation"));
    }
    SUBCASE("budget exceeded exits 3") {
      const auto r = cli("--budget 3 mitigate " + quote(fixture_path("g_butterfly")) + " --target Trackable");
      CHECK(r.exit_code == 3);
      CHECK(r.out.empty());
    }
    SUBCASE("output graph") {
      TempDir tmp;
      const auto r = cli("mitigate " + quote(fixture_path("g_sym")) + " --target PartlyAPosterioriObservable " +
                         "--indicator-color Black --output-graph " + quote(tmp.file("out.json")));
      REQUIRE(r.exit_code == 0);
      const auto g = json::parse(slurp(tmp.file("out.json")));
      CHECK(g.at("nodes").size() == 5);
    }
  }

  TEST_CASE("simulate is byte-identical for a fixed seed") {
    TempDir tmp;
    const auto base = "simulate " + quote(fixture_path("g_intersect")) + " --beta-max 3 --gamma-max 8 --trials 300";
    const auto a = cli("--seed 7 " + base);
    const auto b = cli("--seed 7 " + base);
    const auto c = cli("--seed 7 " + base + " --threads 3");
    const auto d = cli("--seed 8 " + base);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out.rfind("beta,gamma,alpha,stderr\n", 0) == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out != d.out);
    // Default seed is 0, not the clock.
    CHECK(cli(base).out == cli("--seed 0 " + base).out);

    const auto w = cli("--seed 7 " + base + " --out " + quote(tmp.file("s.csv")));
    REQUIRE(w.exit_code == 0);
    CHECK(w.out.empty());
    CHECK(slurp(tmp.file("s.csv")) == a.out);
    const auto meta = json::parse(slurp(tmp.file("s.csv.json")));
    CHECK(meta.at("seed") == 7);
    CHECK(meta.at("trials") == 300);
    CHECK(meta.at("model_hash").get<std::string>().size() == 16);
  }

  TEST_CASE("hypcount") {
    auto r = cli("hypcount " + quote(fixture_path("g_sym")) + " --colors R,B,R,B");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "step,count\n1,2\n2,2\n3,2\n4,2\n");

    r = cli("--format json hypcount " + quote(fixture_path("g_sym")) + " --colors R,R");
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out).at("total") == "0");

    r = cli("hypcount " + quote(fixture_path("g_intersect")) + " --growth");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("verdict") == "exponential");

    CHECK(cli("hypcount " + quote(fixture_path("g_intersect")) + " --growth --length-cap 30").exit_code == 3);
  }

  TEST_CASE("reduce-insp") {
    auto r = cli("reduce-insp " + quote(instance_path("single_triangle")));
    REQUIRE(r.exit_code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc.at("array_length") == 9);
    std::size_t array_nodes = 0;
    for (const auto& n : doc.at("graph").at("nodes"))
      if (n.at("id").get<std::string>().rfind("a1_", 0) == 0) ++array_nodes;
    CHECK(array_nodes == 18);
    CHECK(doc.at("indicator_color") == "black");

    r = cli("reduce-insp " + quote(instance_path("single_triangle")) + " --indicator-color-mode fresh");
    CHECK(json::parse(r.out).at("indicator_color") == "grey");
    CHECK(cli("--format dot reduce-insp " + quote(instance_path("k6"))).out.rfind("digraph", 0) == 0);
  }

  TEST_CASE("chromatic-bound") {
    const auto r = cli("chromatic-bound " + quote(fixture_path("g_sym")));
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("bound").get<int>() <= 2);
  }

  TEST_CASE("every subcommand is deterministic") {
    for (const auto& args : {"classify " + quote(fixture_path("g_butterfly")),
                             "detect " + quote(fixture_path("g_butterfly")) + " --limit 5",
                             "mitigate " + quote(fixture_path("g_butterfly")) + " --target Trackable --mode greedy",
                             "hypcount " + quote(fixture_path("g_butterfly")) + " --growth --growth-mode sampled",
                             "reduce-insp " + quote(instance_path("two_triangles_shared_edge")),
                             "chromatic-bound " + quote(fixture_path("g_butterfly"))}) {
      CAPTURE(args);
      const auto a = cli(args);
      const auto b = cli(args);
      CHECK(a.exit_code == b.exit_code);
      CHECK(a.out == b.out);
    }
  }
}
