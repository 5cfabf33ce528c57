// apxkit command line: exact oracles, approximation algorithms, reductions,
// and the experiment harness behind one binary.
//
// Exit codes: 0 = success, 1 = a guarantee violation was found,
// 2 = usage or input error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apxkit/approx.hpp"
#include "apxkit/harness.hpp"
#include "apxkit/io.hpp"
#include "apxkit/lp.hpp"
#include "apxkit/oracles.hpp"
#include "apxkit/reductions.hpp"

namespace {

using Json = nlohmann::ordered_json;

double sig12(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json bits_json(const std::vector<bool>& bits) {
  std::string text;
  for (bool bit : bits) text.push_back(bit ? '1' : '0');
  return Json(text);
}

struct Options {
  std::uint64_t seed = 1;
  std::string format = "json";
  int trials = 100;
  int d = 2;
};

void print_result(const Json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    std::vector<std::string> keys, values;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_array() || it.value().is_object()) continue;
      keys.push_back(it.key());
      values.push_back(it.value().is_string() ? it.value().get<std::string>()
                                              : it.value().dump());
    }
    for (std::size_t i = 0; i < keys.size(); ++i) std::cout << (i ? "," : "") << keys[i];
    std::cout << "\n";
    for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? "," : "") << values[i];
    std::cout << "\n";
    return;
  }
  throw std::runtime_error("unknown format '" + format + "'");
}

int run_solve(const std::string& problem, const std::string& algorithm, const std::string& path,
              const Options& opt) {
  const std::string text = read_file(path);
  Json j;
  j["command"] = "solve";
  j["problem"] = problem;
  j["algorithm"] = algorithm;

  if (problem == "max3sat" && algorithm == "two-assignments") {
    auto outcome = apx::max3sat_two_assignments(apx::parse_dimacs_cnf(text));
    j["value"] = outcome.value;
    j["guarantee"] = outcome.guarantee;
    j["witness"] = bits_json(outcome.witness.values);
  } else if (problem == "maxcut" && algorithm == "derandomized") {
    auto outcome = apx::maxcut_derandomized(apx::parse_multigraph(text));
    j["value"] = sig12(apx::to_double(outcome.value));
    j["value_exact"] = apx::format_rational(outcome.value);
    j["guarantee"] = outcome.guarantee;
    j["witness"] = bits_json(outcome.witness.side);
  } else if (problem == "maxcut" && algorithm == "random") {
    auto outcome = apx::maxcut_random(apx::parse_multigraph(text), opt.trials, opt.seed);
    j["trials"] = opt.trials;
    j["seed"] = opt.seed;
    j["value"] = sig12(apx::to_double(outcome.value));
    j["value_exact"] = apx::format_rational(outcome.value);
    j["witness"] = bits_json(outcome.witness.side);
  } else if (problem == "vertexcover" && algorithm == "matching") {
    auto outcome = apx::vertexcover_matching(apx::parse_multigraph(text));
    j["value"] = outcome.value;
    j["guarantee"] = outcome.guarantee;
    j["witness"] = outcome.witness;
  } else if (problem == "setcover" && algorithm == "greedy") {
    auto outcome = apx::setcover_greedy(apx::parse_set_cover(text));
    j["value"] = sig12(apx::to_double(outcome.value));
    j["value_exact"] = apx::format_rational(outcome.value);
    j["guarantee"] = sig12(outcome.guarantee);
    j["witness"] = outcome.witness;
  } else if (problem == "setcover" && algorithm == "lp-rounding") {
    apx::RoundingParams params{opt.d, opt.trials, opt.seed};
    auto result = apx::setcover_lp_rounding(apx::parse_set_cover(text), params);
    j["seed"] = opt.seed;
    j["d"] = opt.d;
    j["rounds"] = result.rounds;
    j["repair_used"] = result.repair_used;
    j["lp_objective"] = sig12(result.lp_objective);
    j["value"] = sig12(apx::to_double(result.outcome.value));
    j["value_exact"] = apx::format_rational(result.outcome.value);
    j["witness"] = result.outcome.witness;
  } else if (problem == "tsp" && (algorithm == "double-tree" || algorithm == "christofides")) {
    auto metric = apx::parse_metric(text);
    auto outcome =
        algorithm == "christofides" ? apx::tsp_christofides(metric) : apx::tsp_double_tree(metric);
    j["value"] = sig12(outcome.value);
    j["guarantee"] = outcome.guarantee;
    j["witness"] = outcome.witness;
  } else if (problem == "congestion" && algorithm == "round") {
    apx::RoundingParams params{opt.d, opt.trials, opt.seed};
    auto net = apx::parse_network(text);
    auto result = apx::congestion_round(net, params);
    j["seed"] = opt.seed;
    j["trials"] = opt.trials;
    j["value"] = sig12(apx::to_double(result.outcome.value));
    j["value_exact"] = apx::format_rational(result.outcome.value);
    j["r_lp"] = sig12(result.lp_bound);
    j["alpha"] = sig12(result.alpha);
    Json paths = Json::array();
    for (const auto& path : result.outcome.witness)
      paths.push_back(apx::path_vertices(net, path));
    j["witness"] = std::move(paths);
  } else {
    throw std::runtime_error("unknown problem/algorithm pair '" + problem + "/" + algorithm + "'");
  }
  print_result(j, opt.format);
  return 0;
}

int run_oracle(const std::string& problem, const std::string& path, const Options& opt) {
  const std::string text = read_file(path);
  Json j;
  j["command"] = "oracle";
  j["problem"] = problem;

  if (problem == "max3sat") {
    auto result = apx::opt_maxsat(apx::parse_dimacs_cnf(text));
    j["value"] = result.value;
    j["witness"] = bits_json(result.witness.values);
  } else if (problem == "nae3sat") {
    auto result = apx::opt_nae3sat(apx::parse_dimacs_cnf(text));
    j["value"] = result.value;
    j["witness"] = bits_json(result.witness.values);
  } else if (problem == "maxcut") {
    auto result = apx::opt_maxcut(apx::parse_multigraph(text));
    j["value"] = sig12(apx::to_double(result.value));
    j["value_exact"] = apx::format_rational(result.value);
    j["witness"] = bits_json(result.witness.side);
  } else if (problem == "vertexcover") {
    auto result = apx::opt_vertexcover(apx::parse_multigraph(text));
    j["value"] = result.value;
    j["witness"] = result.witness;
  } else if (problem == "setcover") {
    auto result = apx::opt_setcover(apx::parse_set_cover(text));
    j["value"] = sig12(apx::to_double(result.value));
    j["value_exact"] = apx::format_rational(result.value);
    j["witness"] = result.witness;
  } else if (problem == "tsp") {
    auto result = apx::opt_tsp(apx::parse_metric(text));
    j["value"] = sig12(result.value);
    j["witness"] = result.witness;
  } else if (problem == "congestion") {
    auto net = apx::parse_network(text);
    auto result = apx::opt_congestion(net);
    j["value"] = sig12(apx::to_double(result.value));
    j["value_exact"] = apx::format_rational(result.value);
    Json paths = Json::array();
    for (const auto& path : result.witness) paths.push_back(apx::path_vertices(net, path));
    j["witness"] = std::move(paths);
  } else {
    throw std::runtime_error("unknown problem '" + problem + "'");
  }
  print_result(j, opt.format);
  return 0;
}

int run_reduce(const std::string& reduction, const std::string& path) {
  const std::string text = read_file(path);
  if (reduction == "3sat-to-2sat") {
    std::cout << apx::serialize_dimacs_cnf(apx::reduce_3sat_to_2sat(apx::parse_dimacs_cnf(text)));
  } else if (reduction == "2sat-to-nae3sat") {
    std::cout << apx::serialize_dimacs_cnf(
        apx::reduce_2sat_to_nae3sat(apx::parse_dimacs_cnf(text)));
  } else if (reduction == "nae3sat-to-maxcut") {
    std::cout << apx::serialize_multigraph(
        apx::reduce_nae3sat_to_maxcut(apx::parse_dimacs_cnf(text)));
  } else if (reduction == "ksat-to-3sat") {
    std::cout << apx::serialize_dimacs_cnf(apx::ksat_to_3sat(apx::parse_dimacs_cnf(text)));
  } else {
    throw std::runtime_error("unknown reduction '" + reduction + "'");
  }
  return 0;
}

int run_verify(const std::string& reduction, const std::string& corpus_text, const Options& opt) {
  apx::CorpusSpec spec = apx::parse_corpus_spec(corpus_text, opt.seed);
  apx::VerificationReport report;
  if (reduction == "3sat-to-2sat") {
    spec.width = 3;
    report = apx::verify_lreduction(apx::lreduction_3sat_to_2sat(), apx::gen_random_cnf(spec));
  } else if (reduction == "2sat-to-nae3sat") {
    spec.width = 2;
    report = apx::verify_lreduction(apx::lreduction_2sat_to_nae3sat(), apx::gen_random_cnf(spec));
  } else if (reduction == "nae3sat-to-maxcut") {
    spec.width = 3;
    report =
        apx::verify_lreduction(apx::lreduction_nae3sat_to_maxcut(), apx::gen_random_cnf(spec));
  } else {
    throw std::runtime_error("unknown reduction '" + reduction + "'");
  }
  std::cout << apx::emit_report(report, opt.format);
  return report.pass_a() && report.pass_b() ? 0 : 1;
}

int run_bench(const std::string& algorithm, const std::string& corpus_text, const Options& opt) {
  apx::CorpusSpec spec = apx::parse_corpus_spec(corpus_text, opt.seed);
  apx::RoundingParams params{opt.d, opt.trials, opt.seed};
  apx::RatioReport report = apx::run_ratio_experiment(algorithm, spec, params);
  std::cout << apx::emit_report(report, opt.format);
  return report.violations == 0 ? 0 : 1;
}

int run_congestion_experiment(const std::string& corpus_text, const Options& opt) {
  apx::CorpusSpec spec = apx::parse_corpus_spec(corpus_text, opt.seed);
  apx::RoundingParams params{opt.d, opt.trials, opt.seed};
  apx::CongestionReport report = apx::run_congestion_experiment(spec, params);
  std::cout << apx::emit_report(report, opt.format);
  return report.pooled_success_fraction >= 0.5 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximation algorithms, L-reductions, and exact oracles"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
  app.add_option("--format", opt.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--trials", opt.trials, "trials for randomized algorithms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--d", opt.d, "rounds multiplier for randomized rounding")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string problem, algorithm, file, reduction, corpus;

  CLI::App* solve = app.add_subcommand("solve", "run an approximation algorithm on an instance");
  solve->add_option("problem", problem)->required();
  solve->add_option("algorithm", algorithm)->required();
  solve->add_option("instance-file", file)->required();

  CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by brute force");
  oracle->add_option("problem", problem)->required();
  oracle->add_option("instance-file", file)->required();

  CLI::App* reduce = app.add_subcommand("reduce", "apply a reduction, print the image instance");
  reduce->add_option("reduction", reduction)->required();
  reduce->add_option("instance-file", file)->required();

  CLI::App* verify = app.add_subcommand("verify", "certify L-reduction constants on a corpus");
  verify->add_option("reduction", reduction)->required();
  verify->add_option("--corpus-spec", corpus, "key=value,... corpus description")->required();

  CLI::App* bench = app.add_subcommand("bench", "measure ratios against the exact oracle");
  bench->add_option("algorithm", algorithm)->required();
  bench->add_option("--corpus-spec", corpus, "key=value,... corpus description")->required();

  CLI::App* congestion =
      app.add_subcommand("congestion-experiment", "LP + rounding pipeline success rates");
  congestion->add_option("--corpus-spec", corpus, "key=value,... corpus description")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(problem, algorithm, file, opt);
    if (oracle->parsed()) return run_oracle(problem, file, opt);
    if (reduce->parsed()) return run_reduce(reduction, file);
    if (verify->parsed()) return run_verify(reduction, corpus, opt);
    if (bench->parsed()) return run_bench(algorithm, corpus, opt);
    if (congestion->parsed()) return run_congestion_experiment(corpus, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
