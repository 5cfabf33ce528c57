#pragma once

#include <cstdint>
#include <vector>

#include "apxkit/instances.hpp"
#include "apxkit/lp.hpp"
#include "apxkit/rational.hpp"

namespace apx {

// Algorithm output: a witness, its value, and the ratio bound the algorithm
// declares for itself. The witness always re-evaluates to `value`.
template <typename Solution, typename Value = Rational>
struct ApproxOutcome {
  Value value{};
  Solution witness{};
  double guarantee = 1.0;
};

struct RoundingParams {
  int d = 2;               // rounds multiplier for randomized rounding
  int trials = 100;        // independent samples for randomized algorithms
  std::uint64_t seed = 1;
};

void validate_rounding_params(const RoundingParams& params);

// Best of the all-true and all-false assignments; at least ceil(m/2) clauses.
ApproxOutcome<Assignment, int> max3sat_two_assignments(const CnfFormula& formula);

// Both endpoints of a greedily built maximal matching.
ApproxOutcome<std::vector<int>, int> vertexcover_matching(const MultiGraph& graph);

struct MaxCutRandomRun {
  ApproxOutcome<Partition> best;
  std::vector<Rational> trial_values;
};

// Independent uniform partitions; single-trial expectation is half the total
// edge mass.
MaxCutRandomRun maxcut_random_run(const MultiGraph& graph, int trials, std::uint64_t seed);
ApproxOutcome<Partition> maxcut_random(const MultiGraph& graph, int trials, std::uint64_t seed);

// Conditional-expectation placement in vertex index order, ties toward S.
// Always at least half the total edge mass.
ApproxOutcome<Partition> maxcut_derandomized(const MultiGraph& graph);

// Repeatedly picks the set with the best cost per newly covered element.
ApproxOutcome<std::vector<int>> setcover_greedy(const SetCoverInstance& instance);

struct SetCoverRoundingResult {
  ApproxOutcome<std::vector<int>> outcome;
  int rounds = 0;
  bool repair_used = false;
  double lp_objective = 0.0;
};

// LP relaxation + ceil(d ln(n+1)) rounds of independent inclusion, then a
// deterministic greedy repair if the rounds missed elements. The guarantee
// field carries the rounds count: the expected-cost multiplier, not a
// per-instance bound.
SetCoverRoundingResult setcover_lp_rounding(const SetCoverInstance& instance,
                                            const RoundingParams& params);

// Minimum spanning tree doubled and shortcut in preorder.
ApproxOutcome<std::vector<int>, double> tsp_double_tree(const MetricInstance& metric);

// MST + exact minimum perfect matching on the odd-degree vertices + Euler
// tour + shortcutting. The matching DP handles at most max_odd_vertices odd
// vertices.
ApproxOutcome<std::vector<int>, double> tsp_christofides(const MetricInstance& metric,
                                                         int max_odd_vertices = 18);

// min r subject to per-commodity unit flow conservation and
// sum_i x_{i,e} <= r * c_e. Variable x_{i,e} sits at index i*m + e and r is
// the last variable.
LpProblem build_congestion_lp(const FlowNetwork& net);
int congestion_lp_flow_var(const FlowNetwork& net, int commodity, int edge);
int congestion_lp_r_var(const FlowNetwork& net);

// Cycle cancellation: subtracts the minimum flow around each positive-flow
// directed cycle until none remain. Exact; value and conservation preserved.
FractionalFlow make_acyclic(const FractionalFlow& flow, const FlowNetwork& net);

// Exact path distribution of an acyclic unit flow: probabilities sum to
// exactly 1, per-edge marginals equal the flow values exactly, and at most m
// paths are emitted. Paths are picked lexicographically smallest first.
PathDistribution path_decompose(const FractionalFlow& flow, const FlowNetwork& net, int commodity);

// Bridge from the LP's floating-point solution to exact rational unit flows:
// cancels cycles, extracts paths, snaps the path weights to a common dyadic
// denominator and renormalizes so the result is an exact acyclic unit flow.
FractionalFlow rationalize_unit_flow(const FlowNetwork& net, const std::vector<double>& lp_values,
                                     double drop_tol = 1e-9);

// alpha = 2 log(2m) / log log(2m), natural logarithms.
double congestion_alpha(int num_edges);

// Draws one path from the distribution: a uniform 64-bit draw is compared
// against the exact cumulative probabilities.
const PathEntry& sample_path(const PathDistribution& dist, std::uint64_t uniform_bits);

struct CongestionRoundResult {
  ApproxOutcome<std::vector<std::vector<int>>> outcome;  // edge-index path per commodity
  double lp_bound = 0.0;                                 // optimal LP value r
  double alpha = 0.0;
  std::vector<Rational> trial_congestions;
  std::vector<PathDistribution> distributions;
};

// Full pipeline: congestion LP, cycle cancellation, path distributions, one
// independent path sample per commodity per trial; returns the best trial.
CongestionRoundResult congestion_round(const FlowNetwork& net, const RoundingParams& params);

}  // namespace apx
