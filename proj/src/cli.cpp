#include "latdist/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "latdist/verify.hpp"

namespace latdist {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string method_name(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::ExactOpen: return "exact-open";
    case DistanceMethod::ExactClosed: return "exact-closed";
    case DistanceMethod::Numeric: return "numeric";
    case DistanceMethod::Oracle: return "oracle";
  }
  return "unknown";
}

std::string mode_name(RunMode m) {
  switch (m) {
    case RunMode::Matrix: return "matrix";
    case RunMode::Pair: return "pair";
    case RunMode::Verify: return "verify";
    case RunMode::Converge: return "converge";
    case RunMode::Graph: return "graph";
  }
  return "unknown";
}

void emit_record(std::ostream& err, int exit_code, const std::string& category,
                 const std::string& message) {
  json j;
  j["status"] = exit_code == 2 ? "flagged" : "error";
  j["exit"] = exit_code;
  j["category"] = category;
  j["message"] = message;
  err << j.dump() << "\n";
}

json meta_json(const RunConfig& config) {
  json meta;
  meta["tool"] = "latdist";
  meta["version"] = kToolVersion;
  meta["mode"] = mode_name(config.mode);
  meta["seed"] = config.solver.seed;
  if (config.mode != RunMode::Graph) {
    meta["kind"] = to_string(config.kind);
    meta["topology"] = to_string(config.lattice.topology);
    meta["n"] = config.lattice.n_sites;
  }
  meta["solver"] = {{"max_iterations", config.solver.max_iterations},
                    {"tolerance", config.solver.tolerance},
                    {"restarts", config.solver.restarts},
                    {"initial_step", config.solver.initial_step}};
  return meta;
}

std::string csv_header(const RunConfig& config) {
  std::ostringstream os;
  os << "# latdist version=" << kToolVersion << " mode=" << mode_name(config.mode);
  if (config.mode != RunMode::Graph)
    os << " kind=" << to_string(config.kind) << " topology=" << to_string(config.lattice.topology)
       << " n=" << config.lattice.n_sites;
  os << " seed=" << config.solver.seed << "\n";
  return os.str();
}

std::string render_matrix_csv(const RunConfig& config,
                              const std::vector<std::vector<double>>& m) {
  std::ostringstream os;
  os << csv_header(config);
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << fmt17(row[j]);
    os << "\n";
  }
  return os.str();
}

json matrix_json(const std::vector<std::vector<double>>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (double v : row) {
      if (std::isfinite(v))
        r.push_back(v);
      else
        r.push_back(nullptr);  // unbounded pair
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

struct Rendered {
  std::string text;
  int status = 0;
  std::string flag_message;
};

Rendered do_matrix(const RunConfig& config) {
  const SpectralTriple t = build_triple(config.lattice, config.kind);
  MatrixStats stats;
  const auto m = distance_matrix(t, config.solver, &stats);
  Rendered out;
  if (stats.nonconverged_pairs > 0) {
    out.status = 2;
    out.flag_message = std::to_string(stats.nonconverged_pairs) + " pair(s) hit the iteration cap";
  }
  if (config.output_format == OutputFormat::Csv) {
    out.text = render_matrix_csv(config, m);
  } else {
    json j;
    j["meta"] = meta_json(config);
    j["meta"]["solver_stats"] = {{"iterations_total", stats.iterations_total},
                                 {"nonconverged_pairs", stats.nonconverged_pairs}};
    j["data"]["matrix"] = matrix_json(m);
    out.text = j.dump(2) + "\n";
  }
  return out;
}

Rendered do_pair(const RunConfig& config) {
  const SpectralTriple t = build_triple(config.lattice, config.kind);
  const auto [p, q] = *config.pair;
  DistanceResult r;
  switch (config.kind) {
    case DiracKind::AdjacencyPlain:
    case DiracKind::AdjacencyDoubled:
      r.value = distance_exact_open(config.lattice.n_sites, p, q);
      r.method = DistanceMethod::ExactOpen;
      break;
    case DiracKind::ClosedAdjacencyDoubled:
      r.value = distance_exact_closed(config.lattice.n_sites, p, q);
      r.method = DistanceMethod::ExactClosed;
      break;
    case DiracKind::SymmetricDifference:
      r = distance_numeric({t, p, q}, config.solver);
      break;
  }
  Rendered out;
  if (!r.converged) {
    out.status = 2;
    out.flag_message = "solver hit the iteration cap while still improving";
  }
  if (config.output_format == OutputFormat::Csv) {
    std::ostringstream os;
    os << csv_header(config);
    os << "p,q,value,method,iterations_used,converged,unbounded\n";
    os << p << "," << q << "," << fmt17(r.value) << "," << method_name(r.method) << ","
       << r.iterations_used << "," << (r.converged ? 1 : 0) << "," << (r.unbounded ? 1 : 0)
       << "\n";
    out.text = os.str();
  } else {
    json j;
    j["meta"] = meta_json(config);
    json d;
    d["p"] = p;
    d["q"] = q;
    d["value"] = r.unbounded ? json(nullptr) : json(r.value);
    d["method"] = method_name(r.method);
    d["iterations_used"] = r.iterations_used;
    d["converged"] = r.converged;
    d["unbounded"] = r.unbounded;
    if (!r.certificate.empty()) d["certificate"] = r.certificate;
    j["data"] = std::move(d);
    out.text = j.dump(2) + "\n";
  }
  return out;
}

Rendered do_verify(const RunConfig& config) {
  const auto suites = run_verify_suites(config.lattice.n_sites, config.solver);
  const bool all_passed =
      std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.passed; });
  Rendered out;
  if (!all_passed) {
    out.status = 2;
    out.flag_message = "one or more verify suites failed";
  }
  if (config.output_format == OutputFormat::Csv) {
    std::ostringstream os;
    os << csv_header(config);
    os << "suite,max_deviation,tolerance,passed\n";
    for (const auto& s : suites)
      os << s.name << "," << fmt17(s.max_deviation) << "," << fmt17(s.tolerance) << ","
         << (s.passed ? 1 : 0) << "\n";
    out.text = os.str();
  } else {
    json j;
    j["meta"] = meta_json(config);
    json rows = json::array();
    for (const auto& s : suites)
      rows.push_back({{"name", s.name},
                      {"max_deviation", s.max_deviation},
                      {"tolerance", s.tolerance},
                      {"passed", s.passed}});
    j["data"]["suites"] = std::move(rows);
    j["data"]["all_passed"] = all_passed;
    out.text = j.dump(2) + "\n";
  }
  return out;
}

Rendered do_converge(const RunConfig& config) {
  const auto rows = run_converge(config.sweep, config.solver);
  Rendered out;
  if (config.output_format == OutputFormat::Csv) {
    std::ostringstream os;
    os << csv_header(config);
    os << "n,center,d_next,d_next_next,ref_next,ref_next_next\n";
    for (const auto& r : rows)
      os << r.n << "," << r.center << "," << fmt17(r.d_next) << "," << fmt17(r.d_next_next) << ","
         << fmt17(r.ref_next) << "," << fmt17(r.ref_next_next) << "\n";
    out.text = os.str();
  } else {
    json j;
    j["meta"] = meta_json(config);
    json data = json::array();
    for (const auto& r : rows)
      data.push_back({{"n", r.n},
                      {"center", r.center},
                      {"d_next", r.d_next},
                      {"d_next_next", r.d_next_next},
                      {"ref_next", r.ref_next},
                      {"ref_next_next", r.ref_next_next}});
    j["data"]["rows"] = std::move(data);
    out.text = j.dump(2) + "\n";
  }
  return out;
}

Rendered do_graph(const RunConfig& config) {
  const WeightedDigraph g = load_graph(*config.graph_file);
  const int n = g.n_vertices();
  std::vector<std::vector<double>> m(n);
  for (int p = 1; p <= n; ++p) m[p - 1] = shortest_path_oracle(g, p);
  Rendered out;
  if (config.output_format == OutputFormat::Csv) {
    out.text = render_matrix_csv(config, m);
  } else {
    json j;
    j["meta"] = meta_json(config);
    j["meta"]["graph_file"] = *config.graph_file;
    j["meta"]["n_vertices"] = n;
    j["data"]["matrix"] = matrix_json(m);
    out.text = j.dump(2) + "\n";
  }
  return out;
}

// Returns a usage-error message, or empty when the config is well-formed.
std::string validate_config(const RunConfig& config) {
  const bool lattice_mode = config.mode == RunMode::Matrix || config.mode == RunMode::Pair ||
                            config.mode == RunMode::Verify;
  if (lattice_mode) {
    if (config.lattice.n_sites < 2) return "--n must be at least 2";
    if (config.lattice.topology == Topology::Closed && config.lattice.n_sites < 3)
      return "closed lattices need --n of at least 3";
  }
  if (config.mode == RunMode::Matrix || config.mode == RunMode::Pair) {
    const bool open = config.lattice.topology == Topology::Open;
    const bool open_kind = config.kind != DiracKind::ClosedAdjacencyDoubled;
    if (open != open_kind)
      return "kind '" + to_string(config.kind) + "' is incompatible with " +
             to_string(config.lattice.topology) + " topology";
  }
  if (config.mode == RunMode::Pair) {
    if (!config.pair) return "pair mode requires --pair p,q";
    const auto [p, q] = *config.pair;
    if (p < 1 || p > config.lattice.n_sites || q < 1 || q > config.lattice.n_sites)
      return "--pair indices must lie in 1.." + std::to_string(config.lattice.n_sites);
  }
  if (config.mode == RunMode::Converge) {
    if (config.kind != DiracKind::SymmetricDifference)
      return "converge mode requires --kind symmetric-difference";
    if (config.sweep.empty()) return "converge mode requires a nonempty --sweep";
    for (int n : config.sweep)
      if (n < 4) return "--sweep entries must be at least 4";
  }
  if (config.mode == RunMode::Graph && !config.graph_file)
    return "graph mode requires --graph <path>";
  if (config.solver.tolerance <= 0.0) return "--tol must be positive";
  if (config.solver.max_iterations < 1) return "--max-iter must be at least 1";
  if (config.solver.restarts < 1) return "--restarts must be at least 1";
  return {};
}

}  // namespace

WeightedDigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);

  int n_vertices = -1;
  std::vector<Arrow> arrows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> tokens;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;

    auto parse_int = [&](const std::string& s) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(s, &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + s + "'");
      }
      if (used != s.size()) throw ParseError(line_no, "expected an integer, got '" + s + "'");
      return v;
    };
    auto parse_double = [&](const std::string& s) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected a number, got '" + s + "'");
      }
      if (used != s.size()) throw ParseError(line_no, "expected a number, got '" + s + "'");
      return v;
    };

    if (n_vertices < 0) {
      if (tokens.size() != 2 || tokens[0] != "n")
        throw ParseError(line_no, "expected header 'n <vertex-count>'");
      n_vertices = parse_int(tokens[1]);
      if (n_vertices < 1) throw ParseError(line_no, "vertex count must be positive");
      continue;
    }
    if (tokens.size() != 2 && tokens.size() != 3)
      throw ParseError(line_no, "expected arrow line 'k l [epsilon]'");
    Arrow a;
    a.from = parse_int(tokens[0]);
    a.to = parse_int(tokens[1]);
    a.epsilon = tokens.size() == 3 ? parse_double(tokens[2]) : 1.0;
    arrows.push_back(a);
  }
  if (n_vertices < 0) throw ParseError(line_no, "missing 'n <vertex-count>' header");
  return WeightedDigraph(n_vertices, std::move(arrows));
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string usage = validate_config(config);
  if (!usage.empty()) {
    emit_record(err, 1, "usage", usage);
    return 1;
  }

  Rendered rendered;
  try {
    switch (config.mode) {
      case RunMode::Matrix: rendered = do_matrix(config); break;
      case RunMode::Pair: rendered = do_pair(config); break;
      case RunMode::Verify: rendered = do_verify(config); break;
      case RunMode::Converge: rendered = do_converge(config); break;
      case RunMode::Graph: rendered = do_graph(config); break;
    }
  } catch (const ParseError& e) {
    emit_record(err, 3, "parse", e.what());
    return 3;
  } catch (const IoError& e) {
    emit_record(err, 3, "io", e.what());
    return 3;
  } catch (const InvariantViolationError& e) {
    // Only the graph loader can reach this after config validation.
    emit_record(err, 3, "graph", e.what());
    return 3;
  } catch (const Error& e) {
    emit_record(err, 1, "usage", e.what());
    return 1;
  }

  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file) {
      emit_record(err, 3, "io", "cannot open output file: " + *config.output_path);
      return 3;
    }
    file << rendered.text;
    if (!file) {
      emit_record(err, 3, "io", "failed writing output file: " + *config.output_path);
      return 3;
    }
  } else {
    out << rendered.text;
  }

  if (rendered.status != 0) {
    emit_record(err, rendered.status, "compute", rendered.flag_message);
    return rendered.status;
  }
  return 0;
}

std::vector<std::vector<double>> parse_csv_matrix(std::istream& in) {
  std::vector<std::vector<double>> m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (!row.empty()) m.push_back(std::move(row));
  }
  return m;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connes distance functions on one-dimensional lattice spectral triples"};

  std::string mode_s;
  std::string topology_s = "open";
  std::string kind_s;
  std::string pair_s;
  std::string sweep_s;
  std::string format_s = "json";
  std::string out_path;
  std::string graph_path;
  int n = 0;
  SolverOptions solver;

  app.add_option("--mode", mode_s, "matrix | pair | verify | converge | graph")->required();
  app.add_option("--topology", topology_s, "open | closed (default open)");
  app.add_option("--n", n, "number of lattice sites");
  app.add_option("--kind", kind_s,
                 "adjacency-plain | adjacency-doubled | symmetric-difference | "
                 "closed-adjacency-doubled");
  app.add_option("--pair", pair_s, "site pair p,q (1-based)");
  app.add_option("--sweep", sweep_s, "comma-separated lattice sizes for converge mode");
  app.add_option("--format", format_s, "json | csv (default json)");
  app.add_option("--out", out_path, "output file (stdout when omitted)");
  app.add_option("--seed", solver.seed, "solver restart seed");
  app.add_option("--tol", solver.tolerance, "solver convergence tolerance");
  app.add_option("--max-iter", solver.max_iterations, "solver iteration cap per restart");
  app.add_option("--restarts", solver.restarts, "number of solver restarts");
  app.add_option("--graph", graph_path, "weighted digraph file for graph mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_record(err, 1, "usage", e.what());
    return 1;
  }

  RunConfig config;
  config.solver = solver;

  if (mode_s == "matrix") config.mode = RunMode::Matrix;
  else if (mode_s == "pair") config.mode = RunMode::Pair;
  else if (mode_s == "verify") config.mode = RunMode::Verify;
  else if (mode_s == "converge") config.mode = RunMode::Converge;
  else if (mode_s == "graph") config.mode = RunMode::Graph;
  else {
    emit_record(err, 1, "usage", "unknown --mode '" + mode_s + "'");
    return 1;
  }

  if (topology_s == "open") config.lattice.topology = Topology::Open;
  else if (topology_s == "closed") config.lattice.topology = Topology::Closed;
  else {
    emit_record(err, 1, "usage", "unknown --topology '" + topology_s + "'");
    return 1;
  }
  config.lattice.n_sites = n;

  if (kind_s.empty()) {
    if (config.mode == RunMode::Converge) config.kind = DiracKind::SymmetricDifference;
    else if (config.lattice.topology == Topology::Closed)
      config.kind = DiracKind::ClosedAdjacencyDoubled;
    else config.kind = DiracKind::AdjacencyDoubled;
  } else if (kind_s == "adjacency-plain") config.kind = DiracKind::AdjacencyPlain;
  else if (kind_s == "adjacency-doubled") config.kind = DiracKind::AdjacencyDoubled;
  else if (kind_s == "symmetric-difference") config.kind = DiracKind::SymmetricDifference;
  else if (kind_s == "closed-adjacency-doubled") config.kind = DiracKind::ClosedAdjacencyDoubled;
  else {
    emit_record(err, 1, "usage", "unknown --kind '" + kind_s + "'");
    return 1;
  }

  auto parse_int_list = [&](const std::string& s, std::vector<int>& into) {
    std::istringstream ls(s);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(cell, &used);
      } catch (const std::exception&) {
        return false;
      }
      if (used != cell.size()) return false;
      into.push_back(v);
    }
    return !into.empty();
  };

  if (!pair_s.empty()) {
    std::vector<int> pq;
    if (!parse_int_list(pair_s, pq) || pq.size() != 2) {
      emit_record(err, 1, "usage", "--pair expects two comma-separated integers");
      return 1;
    }
    config.pair = {pq[0], pq[1]};
  }

  if (!sweep_s.empty()) {
    std::vector<int> sweep;
    if (!parse_int_list(sweep_s, sweep)) {
      emit_record(err, 1, "usage", "--sweep expects comma-separated integers");
      return 1;
    }
    config.sweep = std::move(sweep);
  } else if (config.mode == RunMode::Converge) {
    config.sweep = {11, 21, 41, 81};
  }

  if (format_s == "json") config.output_format = OutputFormat::Json;
  else if (format_s == "csv") config.output_format = OutputFormat::Csv;
  else {
    emit_record(err, 1, "usage", "unknown --format '" + format_s + "'");
    return 1;
  }

  if (!out_path.empty()) config.output_path = out_path;
  if (!graph_path.empty()) config.graph_file = graph_path;

  return run(config, out, err);
}

}  // namespace latdist
