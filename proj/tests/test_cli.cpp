#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "latdist/cli.hpp"

using namespace latdist;
using nlohmann::json;

namespace {

struct RunCapture {
  int status = 0;
  std::string out;
  std::string err;
};

RunCapture run_config(const RunConfig& config) {
  std::ostringstream out, err;
  RunCapture c;
  c.status = run(config, out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

RunCapture run_args(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"latdist"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  RunCapture c;
  c.status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

struct TempFile {
  explicit TempFile(const std::string& contents) {
    path = std::string("latdist_test_") + std::to_string(counter++) + ".tmp";
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
  static int counter;
};
int TempFile::counter = 0;

}  // namespace

TEST_CASE("load_graph parses the documented format") {
  const TempFile file(
      "# oriented path, unit weights\n"
      "n 3\n"
      "1 2 1.0\n"
      "2 3\n");  // missing epsilon defaults to 1
  const WeightedDigraph g = load_graph(file.path);
  CHECK(g.n_vertices() == 3);
  REQUIRE(g.arrows().size() == 2);
  CHECK(g.arrows()[1].epsilon == 1.0);
  CHECK(graph_distance(g, 1, 3) == doctest::Approx(2.0));
}

TEST_CASE("load_graph error paths") {
  SUBCASE("missing file") { CHECK_THROWS_AS(load_graph("does_not_exist.graph"), IoError); }

  SUBCASE("zero weight violates the invariants") {
    const TempFile file("n 2\n1 2 0.0\n");
    CHECK_THROWS_AS(load_graph(file.path), InvariantViolationError);
  }

  SUBCASE("garbled arrow line carries its line number") {
    const TempFile file("n 2\n# fine\n1 two\n");
    try {
      load_graph(file.path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
    }
  }

  SUBCASE("missing header") {
    const TempFile file("1 2 1.0\n");
    CHECK_THROWS_AS(load_graph(file.path), ParseError);
  }

  SUBCASE("trailing comment and blank lines are fine") {
    const TempFile file("\nn 2   # two vertices\n\n1 2 0.5  # the only arrow\n");
    CHECK(load_graph(file.path).arrows().size() == 1);
  }
}

TEST_CASE("matrix mode emits the open-lattice csv matrix") {
  RunConfig config;
  config.mode = RunMode::Matrix;
  config.lattice = {4, Topology::Open};
  config.kind = DiracKind::AdjacencyDoubled;
  config.output_format = OutputFormat::Csv;
  const RunCapture c = run_config(config);
  REQUIRE(c.status == 0);

  std::istringstream in(c.out);
  const auto m = parse_csv_matrix(in);
  const std::vector<std::vector<double>> expected{
      {0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}};
  CHECK(m == expected);
}

TEST_CASE("csv rendering round-trips numeric matrices exactly") {
  RunConfig config;
  config.mode = RunMode::Matrix;
  config.lattice = {5, Topology::Open};
  config.kind = DiracKind::SymmetricDifference;
  config.solver.restarts = 2;
  config.output_format = OutputFormat::Csv;
  const RunCapture c = run_config(config);
  REQUIRE(c.status == 0);

  const SpectralTriple t = build_triple(config.lattice, config.kind);
  const auto direct = distance_matrix(t, config.solver);

  std::istringstream in(c.out);
  const auto parsed = parse_csv_matrix(in);
  REQUIRE(parsed.size() == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i)
    for (std::size_t j = 0; j < direct.size(); ++j)
      CHECK(parsed[i][j] == direct[i][j]);  // exact round-trip
}

TEST_CASE("pair mode") {
  SUBCASE("closed lattice spec example") {
    const RunCapture c = run_args({"--mode", "pair", "--topology", "closed", "--n", "6",
                                   "--kind", "closed-adjacency-doubled", "--pair", "1,5"});
    REQUIRE(c.status == 0);
    const json j = json::parse(c.out);
    CHECK(j["data"]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(j["data"]["method"] == "exact-closed");
    CHECK(j["meta"]["kind"] == "closed-adjacency-doubled");
    CHECK(j["meta"]["n"] == 6);
    CHECK(j["meta"]["topology"] == "closed");
    CHECK(j["meta"].contains("seed"));
    CHECK(j["meta"].contains("version"));
  }

  SUBCASE("numeric pair carries a certificate") {
    const RunCapture c = run_args({"--mode", "pair", "--n", "4", "--kind",
                                   "symmetric-difference", "--pair", "1,2", "--restarts", "2"});
    REQUIRE(c.status == 0);
    const json j = json::parse(c.out);
    CHECK(j["data"]["method"] == "numeric");
    CHECK(j["data"]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(j["data"]["certificate"].size() == 4);
  }
}

TEST_CASE("exit status contract") {
  SUBCASE("usage errors exit 1") {
    CHECK(run_args({"--mode", "pair", "--n", "4"}).status == 1);  // no --pair
    CHECK(run_args({"--mode", "matrix"}).status == 1);            // no --n
    CHECK(run_args({"--mode", "nonsense", "--n", "4"}).status == 1);
    CHECK(run_args({"--mode", "matrix", "--n", "4", "--kind", "closed-adjacency-doubled"})
              .status == 1);  // kind/topology mismatch
    CHECK(run_args({"--mode", "converge", "--kind", "adjacency-doubled"}).status == 1);
    CHECK(run_args({"--mode", "pair", "--n", "4", "--pair", "1,9"}).status == 1);
    CHECK(run_args({"--mode", "matrix", "--n", "4", "--tol", "-1"}).status == 1);

    const RunCapture c = run_args({"--mode", "pair", "--n", "4"});
    const json rec = json::parse(c.err);  // single-line machine-parsable record
    CHECK(rec["exit"] == 1);
    CHECK(rec["category"] == "usage");
  }

  SUBCASE("non-convergence exits 2 but still emits the result") {
    const RunCapture c =
        run_args({"--mode", "pair", "--n", "5", "--kind", "symmetric-difference", "--pair",
                  "1,4", "--max-iter", "1", "--restarts", "1"});
    CHECK(c.status == 2);
    const json j = json::parse(c.out);
    CHECK(j["data"]["converged"] == false);
    const json rec = json::parse(c.err);
    CHECK(rec["exit"] == 2);
  }

  SUBCASE("graph file problems exit 3") {
    CHECK(run_args({"--mode", "graph", "--graph", "missing.graph"}).status == 3);
    const TempFile bad("n 2\n1 2 oops\n");
    const RunCapture c = run_args({"--mode", "graph", "--graph", bad.path});
    CHECK(c.status == 3);
    const json rec = json::parse(c.err);
    CHECK(rec["exit"] == 3);
  }
}

TEST_CASE("graph mode emits the distance matrix") {
  const TempFile file("n 3\n1 2 1.0\n2 3 1.0\n");
  const RunCapture c = run_args({"--mode", "graph", "--graph", file.path});
  REQUIRE(c.status == 0);
  const json j = json::parse(c.out);
  CHECK(j["data"]["matrix"][0][2].get<double>() == doctest::Approx(2.0));
  CHECK(j["meta"]["n_vertices"] == 3);

  // disconnected pairs serialize as null
  const TempFile split("n 3\n1 2 1.0\n");
  const RunCapture d = run_args({"--mode", "graph", "--graph", split.path});
  REQUIRE(d.status == 0);
  const json k = json::parse(d.out);
  CHECK(k["data"]["matrix"][0][2].is_null());
}

TEST_CASE("verify mode passes on a small lattice") {
  const RunCapture c = run_args({"--mode", "verify", "--n", "4", "--restarts", "3"});
  REQUIRE(c.status == 0);
  const json j = json::parse(c.out);
  CHECK(j["data"]["all_passed"] == true);
  CHECK(j["data"]["suites"].size() == 6);
}

TEST_CASE("converge mode reports the reference values") {
  const RunCapture c = run_args(
      {"--mode", "converge", "--sweep", "5,7", "--format", "csv", "--restarts", "2"});
  REQUIRE(c.status == 0);
  std::istringstream in(c.out);
  std::string line;
  int rows = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("n,center", 0) == 0) {
      saw_header = true;
      continue;
    }
    ++rows;
    CHECK(line.find("2.8284271247461903") != std::string::npos);
  }
  CHECK(saw_header);
  CHECK(rows == 2);
}

TEST_CASE("output is deterministic for a fixed config and seed") {
  const std::vector<std::string> args{"--mode", "matrix", "--n",        "5",
                                      "--kind", "symmetric-difference", "--restarts", "2",
                                      "--seed", "777"};
  const RunCapture a = run_args(args);
  const RunCapture b = run_args(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("output file writing") {
  const std::string path = "latdist_out_test.json";
  RunConfig config;
  config.mode = RunMode::Pair;
  config.lattice = {4, Topology::Open};
  config.kind = DiracKind::AdjacencyDoubled;
  config.pair = {{1, 3}};
  config.output_path = path;
  const RunCapture c = run_config(config);
  REQUIRE(c.status == 0);
  CHECK(c.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  const json j = json::parse(in);
  CHECK(j["data"]["value"].get<double>() == 2.0);
  std::remove(path.c_str());
}

TEST_CASE("help exits zero") {
  CHECK(run_args({"--help"}).status == 0);
}
