#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latdist/distance.hpp"
#include "latdist/graph.hpp"

namespace latdist {

inline constexpr const char* kToolVersion = "0.1.0";

enum class RunMode { Matrix, Pair, Verify, Converge, Graph };
enum class OutputFormat { Json, Csv };

struct RunConfig {
  RunMode mode = RunMode::Matrix;
  LatticeSpec lattice{4, Topology::Open};
  DiracKind kind = DiracKind::AdjacencyDoubled;
  std::optional<std::pair<int, int>> pair;
  std::vector<int> sweep;  // converge mode; defaults to 11,21,41,81
  SolverOptions solver;
  OutputFormat output_format = OutputFormat::Json;
  std::optional<std::string> output_path;
  std::optional<std::string> graph_file;
};

// Plain-text graph format: optional '#' comments, first content line
// "n <vertex-count>", then one arrow per line "k l [epsilon]" (1-based,
// epsilon defaults to 1). Throws ParseError / InvariantViolationError /
// IoError.
WeightedDigraph load_graph(const std::string& path);

// Executes one run and writes the artifact to config.output_path (or `out`).
// Exit status: 0 success, 1 usage/config error, 2 computation flagged
// (non-convergence or failed verify suite), 3 I/O or parse error. Every
// nonzero status is accompanied by a single-line JSON record on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Flag parsing front end; returns the process exit status.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Inverse of the CSV matrix rendering: skips '#' comment lines, splits rows
// on commas. Used by the round-trip tests.
std::vector<std::vector<double>> parse_csv_matrix(std::istream& in);

}  // namespace latdist
