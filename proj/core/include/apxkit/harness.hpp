#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apxkit/approx.hpp"
#include "apxkit/instances.hpp"
#include "apxkit/reductions.hpp"

namespace apx {

// One spec drives every generator; each generator reads the fields it needs.
// Identical specs produce identical corpora.
struct CorpusSpec {
  std::string problem;
  int count = 10;
  std::uint64_t seed = 1;

  // CNF
  int num_vars = 6;
  int num_clauses = 8;
  int width = 3;

  // Graphs
  int num_vertices = 8;
  int num_edges = 12;

  // Metrics
  int num_points = 8;

  // Set cover
  int universe = 8;
  int num_sets = 6;

  // Networks
  int net_vertices = 10;
  int net_edges = 24;
  int commodities = 3;
  int max_capacity = 3;
};

// "key=value,key=value" with the keys count, seed, n, m, width, v, e, points,
// universe, sets, netv, nete, k, cap. Throws std::invalid_argument on unknown
// keys or malformed input.
CorpusSpec parse_corpus_spec(const std::string& text, std::uint64_t default_seed = 1);

std::vector<CnfFormula> gen_random_cnf(const CorpusSpec& spec);
std::vector<MultiGraph> gen_random_graph(const CorpusSpec& spec);
std::vector<MetricInstance> gen_random_metric(const CorpusSpec& spec);
std::vector<SetCoverInstance> gen_random_setcover(const CorpusSpec& spec);
std::vector<FlowNetwork> gen_random_network(const CorpusSpec& spec);

// ---------------------------------------------------------------------------
// Ratio experiments: algorithm versus exact oracle over a generated corpus
// ---------------------------------------------------------------------------

struct RatioEntry {
  double alg = 0.0;
  double opt = 0.0;
  double ratio = 1.0;  // OPT/ALG for maximization, ALG/OPT for minimization
  double bound = 1.0;
  bool violation = false;
};

struct RatioReport {
  std::string algorithm;
  std::string problem;
  std::uint64_t seed = 0;
  std::vector<RatioEntry> entries;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double guarantee_bound = 0.0;  // +inf for expectation-only algorithms
  int violations = 0;
  int repair_count = 0;                  // LP rounding only
  std::string first_violation_instance;  // serialized offender for replay
};

// Algorithm tags: max3sat-two, vertexcover-matching, maxcut-derandomized,
// maxcut-random, setcover-greedy, setcover-lp-rounding, tsp-double-tree,
// tsp-christofides.
RatioReport run_ratio_experiment(const std::string& algorithm, const CorpusSpec& spec,
                                 const RoundingParams& params = {});

// ---------------------------------------------------------------------------
// Congestion experiment
// ---------------------------------------------------------------------------

struct CongestionInstanceReport {
  double r_lp = 0.0;
  double alpha = 0.0;
  std::vector<double> trial_congestions;
  double min_congestion = 0.0;
  double success_fraction = 0.0;  // congestion <= alpha * r_lp
  bool lp_failed = false;
};

struct CongestionReport {
  std::uint64_t seed = 0;
  int trials_per_instance = 0;
  std::vector<CongestionInstanceReport> instances;
  double pooled_success_fraction = 0.0;
};

CongestionReport run_congestion_experiment(const CorpusSpec& spec, const RoundingParams& params);

// ---------------------------------------------------------------------------
// Report emission: format is "json" or "csv"; numeric report fields carry 12
// significant digits and field order is stable, so equal runs emit equal
// bytes.
// ---------------------------------------------------------------------------

std::string emit_report(const RatioReport& report, const std::string& format);
std::string emit_report(const CongestionReport& report, const std::string& format);
std::string emit_report(const VerificationReport& report, const std::string& format);

}  // namespace apx
