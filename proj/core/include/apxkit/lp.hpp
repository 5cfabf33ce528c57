#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace apx {

enum class Relation { LessEq, GreaterEq, Equal };

struct LpConstraint {
  std::vector<double> coeffs;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

// Minimization problem over x with per-variable bounds [lower, upper],
// lower >= 0, upper possibly infinite. Empty bound vectors mean [0, inf).
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  std::vector<double> dual;         // one multiplier per input constraint
  double dual_objective = 0.0;      // certified to match objective_value
};

// Signals a numerical failure: the solver refuses to return an uncertified
// answer.
class LpError : public std::runtime_error {
 public:
  explicit LpError(const std::string& message) : std::runtime_error(message) {}
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double reduced_cost_tol = 1e-9;
  double pivot_tol = 1e-9;
  double duality_tol = 1e-6;
  int max_iterations = 0;  // 0 = derive from problem size
};

// Two-phase primal simplex on a dense tableau. Dantzig pricing with a
// permanent switch to Bland's rule once the objective stalls, so cycling
// terminates. Every optimal answer is certified: primal feasibility,
// complementary slackness, and strong duality against the returned dual.
LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace apx
