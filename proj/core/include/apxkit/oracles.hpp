#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "apxkit/instances.hpp"

namespace apx {

// Thrown when an instance exceeds the configured enumeration limits.
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& message) : std::runtime_error(message) {}
};

struct OracleLimits {
  int max_sat_vars = 24;
  int max_cut_vertices = 20;
  int max_cover_sets = 24;
  int max_vc_vertices = 24;
  int max_tsp_points = 15;
  std::int64_t max_paths_per_commodity = 10000;
  std::int64_t max_path_tuples = 1000000;
};

// Exact optimum plus a witness that re-evaluates to exactly this value.
// Witness ties break toward the smallest encoding, so oracle output is
// deterministic.
template <typename Solution, typename Value = Rational>
struct OptResult {
  Value value{};
  Solution witness{};
};

OptResult<Assignment, int> opt_maxsat(const CnfFormula& formula, const OracleLimits& limits = {});
OptResult<Assignment, int> opt_nae3sat(const CnfFormula& formula, const OracleLimits& limits = {});

// Vertex 0 is fixed on side S; the remaining 2^(V-1) partitions are scanned.
OptResult<Partition, Rational> opt_maxcut(const MultiGraph& graph, const OracleLimits& limits = {});

OptResult<std::vector<int>, Rational> opt_setcover(const SetCoverInstance& instance,
                                                   const OracleLimits& limits = {});

OptResult<std::vector<int>, int> opt_vertexcover(const MultiGraph& graph,
                                                 const OracleLimits& limits = {});

// Minimum Hamiltonian cycle via Held-Karp subset DP; the witness tour starts
// at point 0.
OptResult<std::vector<int>, double> opt_tsp(const MetricInstance& metric,
                                            const OracleLimits& limits = {});

// Minimum over integral path tuples of the max edge congestion. The witness
// holds one edge-index path per commodity.
OptResult<std::vector<std::vector<int>>, Rational> opt_congestion(
    const FlowNetwork& net, const OracleLimits& limits = {});

// All simple source->sink paths as edge-index sequences, in lexicographic
// order of their vertex sequences. Used by the congestion oracle and tests.
std::vector<std::vector<int>> enumerate_simple_paths(const FlowNetwork& net, int source, int sink,
                                                     std::int64_t limit);

}  // namespace apx
