#include "apxkit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "apxkit/io.hpp"
#include "apxkit/lp.hpp"
#include "apxkit/oracles.hpp"
#include "apxkit/rng.hpp"

namespace apx {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

using Json = nlohmann::ordered_json;

// Reports round numeric fields to 12 significant digits.
double sig12(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string csv12(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

Json json_number(double value) {
  if (!std::isfinite(value)) return Json(nullptr);
  return Json(sig12(value));
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpus specs and generators
// ---------------------------------------------------------------------------

CorpusSpec parse_corpus_spec(const std::string& text, std::uint64_t default_seed) {
  CorpusSpec spec;
  spec.seed = default_seed;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) fail("corpus spec: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    long long number = 0;
    try {
      std::size_t used = 0;
      number = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
      fail("corpus spec: bad value '" + value + "' for key '" + key + "'");
    }
    if (key == "count") spec.count = static_cast<int>(number);
    else if (key == "seed") spec.seed = static_cast<std::uint64_t>(number);
    else if (key == "n") spec.num_vars = static_cast<int>(number);
    else if (key == "m") spec.num_clauses = static_cast<int>(number);
    else if (key == "width") spec.width = static_cast<int>(number);
    else if (key == "v") spec.num_vertices = static_cast<int>(number);
    else if (key == "e") spec.num_edges = static_cast<int>(number);
    else if (key == "points") spec.num_points = static_cast<int>(number);
    else if (key == "universe") spec.universe = static_cast<int>(number);
    else if (key == "sets") spec.num_sets = static_cast<int>(number);
    else if (key == "netv") spec.net_vertices = static_cast<int>(number);
    else if (key == "nete") spec.net_edges = static_cast<int>(number);
    else if (key == "k") spec.commodities = static_cast<int>(number);
    else if (key == "cap") spec.max_capacity = static_cast<int>(number);
    else fail("corpus spec: unknown key '" + key + "'");
  }
  if (spec.count < 1) fail("corpus spec: count must be positive");
  return spec;
}

std::vector<CnfFormula> gen_random_cnf(const CorpusSpec& spec) {
  if (spec.width > spec.num_vars) fail("gen_random_cnf: width exceeds variable count");
  if (spec.width < 1 || spec.num_clauses < 1) fail("gen_random_cnf: sizes must be positive");
  std::vector<CnfFormula> corpus;
  for (int index = 0; index < spec.count; ++index) {
    SplitMix64 rng = stream_for_trial(spec.seed, static_cast<std::uint64_t>(index));
    std::vector<Clause> clauses;
    for (int c = 0; c < spec.num_clauses; ++c) {
      std::vector<int> vars;
      while (static_cast<int>(vars.size()) < spec.width) {
        int var = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.num_vars))) + 1;
        if (std::find(vars.begin(), vars.end(), var) == vars.end()) vars.push_back(var);
      }
      Clause clause;
      for (int var : vars) clause.push_back(rng.coin() ? var : -var);
      clauses.push_back(std::move(clause));
    }
    corpus.push_back(make_cnf(spec.num_vars, std::move(clauses)));
  }
  return corpus;
}

std::vector<MultiGraph> gen_random_graph(const CorpusSpec& spec) {
  const int v = spec.num_vertices;
  const std::int64_t max_pairs = static_cast<std::int64_t>(v) * (v - 1) / 2;
  if (v < 2) fail("gen_random_graph: need at least 2 vertices");
  if (spec.num_edges < 1 || spec.num_edges > max_pairs)
    fail("gen_random_graph: edge count outside [1, V(V-1)/2]");
  std::vector<MultiGraph> corpus;
  for (int index = 0; index < spec.count; ++index) {
    SplitMix64 rng = stream_for_trial(spec.seed, static_cast<std::uint64_t>(index));
    std::vector<std::pair<int, int>> chosen;
    while (static_cast<int>(chosen.size()) < spec.num_edges) {
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
      if (a == b) continue;
      std::pair<int, int> pair{std::min(a, b), std::max(a, b)};
      if (std::find(chosen.begin(), chosen.end(), pair) == chosen.end()) chosen.push_back(pair);
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<MultiGraphEdge> edges;
    for (const auto& [a, b] : chosen) edges.push_back({a, b, 1, Rational(1)});
    corpus.push_back(make_multigraph(v, std::move(edges)));
  }
  return corpus;
}

std::vector<MetricInstance> gen_random_metric(const CorpusSpec& spec) {
  if (spec.num_points < 2) fail("gen_random_metric: need at least 2 points");
  std::vector<MetricInstance> corpus;
  for (int index = 0; index < spec.count; ++index) {
    SplitMix64 rng = stream_for_trial(spec.seed, static_cast<std::uint64_t>(index));
    std::vector<std::pair<double, double>> points;
    for (int p = 0; p < spec.num_points; ++p)
      points.emplace_back(rng.next_double(), rng.next_double());
    std::vector<std::vector<double>> dist(spec.num_points,
                                          std::vector<double>(spec.num_points, 0.0));
    for (int i = 0; i < spec.num_points; ++i) {
      for (int j = i + 1; j < spec.num_points; ++j) {
        double dx = points[i].first - points[j].first;
        double dy = points[i].second - points[j].second;
        double d = std::sqrt(dx * dx + dy * dy);
        dist[i][j] = dist[j][i] = d;
      }
    }
    corpus.push_back(make_metric(std::move(dist)));
  }
  return corpus;
}

std::vector<SetCoverInstance> gen_random_setcover(const CorpusSpec& spec) {
  if (spec.universe < 1 || spec.num_sets < 1) fail("gen_random_setcover: sizes must be positive");
  std::vector<SetCoverInstance> corpus;
  for (int index = 0; index < spec.count; ++index) {
    SplitMix64 rng = stream_for_trial(spec.seed, static_cast<std::uint64_t>(index));
    std::vector<std::vector<int>> sets(spec.num_sets);
    for (std::vector<int>& set : sets) {
      for (int element = 1; element <= spec.universe; ++element)
        if (rng.next_double() < 0.4) set.push_back(element);
      if (set.empty())
        set.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.universe))) + 1);
    }
    // Patch uncovered elements into random sets so every instance is coverable.
    std::vector<bool> covered(static_cast<std::size_t>(spec.universe), false);
    for (const std::vector<int>& set : sets)
      for (int element : set) covered[element - 1] = true;
    for (int element = 1; element <= spec.universe; ++element) {
      if (covered[element - 1]) continue;
      int target = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.num_sets)));
      sets[target].push_back(element);
      std::sort(sets[target].begin(), sets[target].end());
    }
    std::vector<Rational> costs;
    for (int s = 0; s < spec.num_sets; ++s) {
      std::int64_t numerator = static_cast<std::int64_t>(rng.below(8)) + 1;
      std::int64_t denominator = std::int64_t{1} << rng.below(3);  // 1, 2, or 4
      costs.emplace_back(numerator, denominator);
    }
    corpus.push_back(make_set_cover(spec.universe, std::move(sets), std::move(costs)));
  }
  return corpus;
}

std::vector<FlowNetwork> gen_random_network(const CorpusSpec& spec) {
  const int v = spec.net_vertices;
  const std::int64_t max_pairs = static_cast<std::int64_t>(v) * (v - 1);
  if (v < 2) fail("gen_random_network: need at least 2 vertices");
  if (spec.net_edges < 1 || spec.net_edges > max_pairs)
    fail("gen_random_network: edge count outside [1, V(V-1)]");
  if (spec.commodities < 1) fail("gen_random_network: need at least one commodity");
  if (spec.max_capacity < 1) fail("gen_random_network: max capacity must be positive");

  std::vector<FlowNetwork> corpus;
  for (int index = 0; index < spec.count; ++index) {
    SplitMix64 rng = stream_for_trial(spec.seed, static_cast<std::uint64_t>(index));
    FlowNetwork net;
    bool done = false;
    for (int graph_attempt = 0; graph_attempt < 64 && !done; ++graph_attempt) {
      std::vector<std::pair<int, int>> chosen;
      while (static_cast<int>(chosen.size()) < spec.net_edges) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
        if (a == b) continue;
        std::pair<int, int> pair{a, b};
        if (std::find(chosen.begin(), chosen.end(), pair) == chosen.end()) chosen.push_back(pair);
      }
      std::sort(chosen.begin(), chosen.end());
      net = FlowNetwork{};
      net.num_vertices = v;
      for (const auto& [a, b] : chosen)
        net.edges.push_back(
            {a, b, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(spec.max_capacity))) + 1});
      // Reject-and-resample until every commodity is routable.
      bool ok = true;
      for (int c = 0; c < spec.commodities && ok; ++c) {
        bool found = false;
        for (int attempt = 0; attempt < 100; ++attempt) {
          int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
          int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
          if (s == t || !path_exists(net, s, t)) continue;
          net.commodities.push_back({s, t});
          found = true;
          break;
        }
        ok = found;
      }
      if (ok) done = true;
    }
    if (!done) fail("gen_random_network: could not satisfy the spec");
    validate_network(net);
    corpus.push_back(std::move(net));
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Ratio experiments
// ---------------------------------------------------------------------------

namespace {

struct ExperimentAccumulator {
  RatioReport report;

  void add(double alg, double opt, double ratio, double bound, bool violation,
           const std::string& serialized_instance) {
    RatioEntry entry{alg, opt, ratio, bound, violation};
    report.entries.push_back(entry);
    if (violation) {
      ++report.violations;
      if (report.first_violation_instance.empty())
        report.first_violation_instance = serialized_instance;
    }
  }

  void finish() {
    double sum = 0.0;
    double best = 0.0;
    double bound = 0.0;
    for (const RatioEntry& entry : report.entries) {
      sum += entry.ratio;
      best = std::max(best, entry.ratio);
      bound = std::max(bound, entry.bound);
    }
    report.max_ratio = best;
    report.mean_ratio = report.entries.empty() ? 0.0 : sum / report.entries.size();
    report.guarantee_bound = bound;
  }
};

// Exact ratio for maximization problems with rational values: OPT/ALG.
Rational max_ratio_exact(const Rational& opt, const Rational& alg) {
  if (alg == 0) return opt == 0 ? Rational(1) : Rational(-1);  // -1 flags an undefined ratio
  return opt / alg;
}

Rational min_ratio_exact(const Rational& alg, const Rational& opt) {
  if (opt == 0) return alg == 0 ? Rational(1) : Rational(-1);
  return alg / opt;
}

}  // namespace

RatioReport run_ratio_experiment(const std::string& algorithm, const CorpusSpec& spec,
                                 const RoundingParams& params) {
  ExperimentAccumulator acc;
  acc.report.algorithm = algorithm;
  acc.report.seed = spec.seed;
  const double inf = std::numeric_limits<double>::infinity();

  if (algorithm == "max3sat-two") {
    acc.report.problem = "max3sat";
    for (const CnfFormula& formula : gen_random_cnf(spec)) {
      auto outcome = max3sat_two_assignments(formula);
      auto opt = opt_maxsat(formula);
      Rational ratio = max_ratio_exact(Rational(opt.value), Rational(outcome.value));
      bool violation = ratio < 0 || ratio > 2;
      acc.add(outcome.value, opt.value, to_double(ratio), 2.0, violation,
              serialize_dimacs_cnf(formula));
    }
  } else if (algorithm == "vertexcover-matching") {
    acc.report.problem = "vertexcover";
    for (const MultiGraph& graph : gen_random_graph(spec)) {
      auto outcome = vertexcover_matching(graph);
      auto opt = opt_vertexcover(graph);
      Rational ratio = min_ratio_exact(Rational(outcome.value), Rational(opt.value));
      bool violation = ratio < 0 || ratio > 2;
      acc.add(outcome.value, opt.value, to_double(ratio), 2.0, violation,
              serialize_multigraph(graph));
    }
  } else if (algorithm == "maxcut-derandomized") {
    acc.report.problem = "maxcut";
    for (const MultiGraph& graph : gen_random_graph(spec)) {
      auto outcome = maxcut_derandomized(graph);
      auto opt = opt_maxcut(graph);
      Rational ratio = max_ratio_exact(opt.value, outcome.value);
      bool violation = ratio < 0 || ratio > 2;
      acc.add(to_double(outcome.value), to_double(opt.value), to_double(ratio), 2.0, violation,
              serialize_multigraph(graph));
    }
  } else if (algorithm == "maxcut-random") {
    acc.report.problem = "maxcut";
    for (const MultiGraph& graph : gen_random_graph(spec)) {
      auto outcome = maxcut_random(graph, params.trials, params.seed);
      auto opt = opt_maxcut(graph);
      Rational ratio = max_ratio_exact(opt.value, outcome.value);
      // Expectation-only guarantee: no per-instance bound to violate.
      acc.add(to_double(outcome.value), to_double(opt.value), to_double(ratio), inf, false,
              serialize_multigraph(graph));
    }
  } else if (algorithm == "setcover-greedy") {
    acc.report.problem = "setcover";
    for (const SetCoverInstance& instance : gen_random_setcover(spec)) {
      auto outcome = setcover_greedy(instance);
      auto opt = opt_setcover(instance);
      Rational ratio = min_ratio_exact(outcome.value, opt.value);
      Rational harmonic = 0;
      for (int i = 1; i <= instance.universe_size; ++i) harmonic += Rational(1, i);
      bool violation = ratio < 0 || ratio > harmonic;
      acc.add(to_double(outcome.value), to_double(opt.value), to_double(ratio),
              to_double(harmonic), violation, serialize_set_cover(instance));
    }
  } else if (algorithm == "setcover-lp-rounding") {
    acc.report.problem = "setcover";
    for (const SetCoverInstance& instance : gen_random_setcover(spec)) {
      auto result = setcover_lp_rounding(instance, params);
      auto opt = opt_setcover(instance);
      Rational ratio = min_ratio_exact(result.outcome.value, opt.value);
      if (result.repair_used) ++acc.report.repair_count;
      acc.add(to_double(result.outcome.value), to_double(opt.value), to_double(ratio), inf, false,
              serialize_set_cover(instance));
    }
  } else if (algorithm == "tsp-double-tree" || algorithm == "tsp-christofides") {
    acc.report.problem = "tsp";
    const bool christofides = algorithm == "tsp-christofides";
    const double bound = christofides ? 1.5 : 2.0;
    for (const MetricInstance& metric : gen_random_metric(spec)) {
      auto outcome = christofides ? tsp_christofides(metric) : tsp_double_tree(metric);
      auto opt = opt_tsp(metric);
      double ratio = outcome.value / opt.value;
      // Floating arithmetic: tolerate rounding at the bound itself.
      bool violation = ratio > bound * (1.0 + 1e-9);
      acc.add(outcome.value, opt.value, ratio, bound, violation, serialize_metric(metric));
    }
  } else {
    fail("run_ratio_experiment: unknown algorithm '" + algorithm + "'");
  }
  acc.finish();
  return acc.report;
}

CongestionReport run_congestion_experiment(const CorpusSpec& spec, const RoundingParams& params) {
  validate_rounding_params(params);
  CongestionReport report;
  report.seed = spec.seed;
  report.trials_per_instance = params.trials;
  std::int64_t successes = 0;
  std::int64_t total = 0;
  for (const FlowNetwork& net : gen_random_network(spec)) {
    CongestionInstanceReport entry;
    try {
      RoundingParams per_instance = params;
      per_instance.seed = params.seed + report.instances.size();
      CongestionRoundResult result = congestion_round(net, per_instance);
      entry.r_lp = result.lp_bound;
      entry.alpha = result.alpha;
      entry.min_congestion = to_double(result.outcome.value);
      int instance_successes = 0;
      for (const Rational& congestion : result.trial_congestions) {
        double value = to_double(congestion);
        entry.trial_congestions.push_back(value);
        if (value <= entry.alpha * entry.r_lp + 1e-9) ++instance_successes;
      }
      entry.success_fraction =
          static_cast<double>(instance_successes) / result.trial_congestions.size();
      successes += instance_successes;
      total += static_cast<std::int64_t>(result.trial_congestions.size());
    } catch (const LpError&) {
      entry.lp_failed = true;
    }
    report.instances.push_back(std::move(entry));
  }
  report.pooled_success_fraction = total == 0 ? 0.0 : static_cast<double>(successes) / total;
  return report;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

std::string emit_report(const RatioReport& report, const std::string& format) {
  if (format == "json") {
    Json j;
    j["algorithm"] = report.algorithm;
    j["problem"] = report.problem;
    j["seed"] = report.seed;
    j["count"] = report.entries.size();
    j["max_ratio"] = json_number(report.max_ratio);
    j["mean_ratio"] = json_number(report.mean_ratio);
    j["guarantee_bound"] = json_number(report.guarantee_bound);
    j["violations"] = report.violations;
    j["repair_count"] = report.repair_count;
    Json entries = Json::array();
    for (const RatioEntry& entry : report.entries) {
      Json e;
      e["alg"] = json_number(entry.alg);
      e["opt"] = json_number(entry.opt);
      e["ratio"] = json_number(entry.ratio);
      e["bound"] = json_number(entry.bound);
      e["violation"] = entry.violation;
      entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    if (!report.first_violation_instance.empty())
      j["first_violation_instance"] = report.first_violation_instance;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "index,alg,opt,ratio,bound,violation\n";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
      const RatioEntry& entry = report.entries[i];
      out << i << "," << csv12(entry.alg) << "," << csv12(entry.opt) << "," << csv12(entry.ratio)
          << "," << csv12(entry.bound) << "," << (entry.violation ? 1 : 0) << "\n";
    }
    return out.str();
  }
  fail("emit_report: unknown format '" + format + "'");
}

std::string emit_report(const CongestionReport& report, const std::string& format) {
  if (format == "json") {
    Json j;
    j["seed"] = report.seed;
    j["trials_per_instance"] = report.trials_per_instance;
    j["pooled_success_fraction"] = json_number(report.pooled_success_fraction);
    Json instances = Json::array();
    for (const CongestionInstanceReport& entry : report.instances) {
      Json e;
      e["r_lp"] = json_number(entry.r_lp);
      e["alpha"] = json_number(entry.alpha);
      e["min_congestion"] = json_number(entry.min_congestion);
      e["success_fraction"] = json_number(entry.success_fraction);
      e["lp_failed"] = entry.lp_failed;
      Json trials = Json::array();
      for (double value : entry.trial_congestions) trials.push_back(json_number(value));
      e["trial_congestions"] = std::move(trials);
      instances.push_back(std::move(e));
    }
    j["instances"] = std::move(instances);
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "instance,trial,congestion,r_lp,alpha,success\n";
    for (std::size_t i = 0; i < report.instances.size(); ++i) {
      const CongestionInstanceReport& entry = report.instances[i];
      for (std::size_t t = 0; t < entry.trial_congestions.size(); ++t) {
        double congestion = entry.trial_congestions[t];
        bool success = congestion <= entry.alpha * entry.r_lp + 1e-9;
        out << i << "," << t << "," << csv12(congestion) << "," << csv12(entry.r_lp) << ","
            << csv12(entry.alpha) << "," << (success ? 1 : 0) << "\n";
      }
    }
    return out.str();
  }
  fail("emit_report: unknown format '" + format + "'");
}

std::string emit_report(const VerificationReport& report, const std::string& format) {
  if (format == "json") {
    Json j;
    j["reduction"] = report.reduction;
    j["instances_checked"] = report.instances_checked;
    j["instances_skipped"] = report.instances_skipped;
    j["condition3_max_ratio"] = json_number(to_double(report.condition3_max_ratio));
    j["condition3_max_ratio_exact"] = format_rational(report.condition3_max_ratio);
    j["condition4_max_ratio"] = json_number(to_double(report.condition4_max_ratio));
    j["condition4_max_ratio_exact"] = format_rational(report.condition4_max_ratio);
    j["condition4_unbounded"] = report.condition4_unbounded;
    j["claimed_a"] = format_rational(report.claimed_a);
    j["claimed_b"] = format_rational(report.claimed_b);
    j["pass_a"] = report.pass_a();
    j["pass_b"] = report.pass_b();
    j["exhaustive"] = report.exhaustive;
    j["solutions_sampled"] = report.solutions_sampled;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "reduction,instances_checked,instances_skipped,condition3_max_ratio,"
           "condition4_max_ratio,condition4_unbounded,claimed_a,claimed_b,pass_a,pass_b,"
           "exhaustive,solutions_sampled\n";
    out << report.reduction << "," << report.instances_checked << "," << report.instances_skipped
        << "," << csv12(to_double(report.condition3_max_ratio)) << ","
        << csv12(to_double(report.condition4_max_ratio)) << ","
        << (report.condition4_unbounded ? 1 : 0) << "," << format_rational(report.claimed_a) << ","
        << format_rational(report.claimed_b) << "," << (report.pass_a() ? 1 : 0) << ","
        << (report.pass_b() ? 1 : 0) << "," << (report.exhaustive ? 1 : 0) << ","
        << report.solutions_sampled << "\n";
    return out.str();
  }
  fail("emit_report: unknown format '" + format + "'");
}

}  // namespace apx
