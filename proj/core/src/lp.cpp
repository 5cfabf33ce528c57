#include "apxkit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Row {
  std::vector<double> coeffs;  // over the shifted user variables
  Relation rel;
  double rhs;
  bool from_bound;  // internal upper-bound row, not part of the public dual
};

class SimplexTableau {
 public:
  SimplexTableau(const std::vector<Row>& rows, int num_vars, const SimplexOptions& opt)
      : opt_(opt), n_(num_vars), m_(static_cast<int>(rows.size())) {
    // Column layout: [user vars][slack/surplus][artificials][rhs]. Relations
    // are normalized to nonnegative right-hand sides first, since that flips
    // the inequality direction and with it the column count.
    std::vector<Relation> normalized(m_);
    row_sign_.assign(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      row_sign_[i] = rows[i].rhs < 0 ? -1.0 : 1.0;
      Relation rel = rows[i].rel;
      if (row_sign_[i] < 0) {
        if (rel == Relation::LessEq) rel = Relation::GreaterEq;
        else if (rel == Relation::GreaterEq) rel = Relation::LessEq;
      }
      normalized[i] = rel;
    }
    int extra = 0;
    for (Relation rel : normalized) extra += rel == Relation::GreaterEq ? 2 : 1;
    cols_ = n_ + extra;
    tableau_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, -1);
    dead_.assign(m_, false);
    ident_col_.assign(m_, -1);

    int next = n_;
    for (int i = 0; i < m_; ++i) {
      const double sign = row_sign_[i];
      const Relation rel = normalized[i];
      for (int j = 0; j < n_; ++j) tableau_[i][j] = sign * rows[i].coeffs[j];
      tableau_[i][cols_] = sign * rows[i].rhs;
      switch (rel) {
        case Relation::LessEq:
          tableau_[i][next] = 1.0;
          ident_col_[i] = next;
          basis_[i] = next;
          ++next;
          break;
        case Relation::GreaterEq:
          tableau_[i][next] = -1.0;  // surplus
          ++next;
          tableau_[i][next] = 1.0;  // artificial
          ident_col_[i] = next;
          basis_[i] = next;
          artificial_.push_back(next);
          ++next;
          break;
        case Relation::Equal:
          tableau_[i][next] = 1.0;  // artificial
          ident_col_[i] = next;
          basis_[i] = next;
          artificial_.push_back(next);
          ++next;
          break;
      }
    }
    is_artificial_.assign(cols_, false);
    for (int j : artificial_) is_artificial_[j] = true;
    max_iterations_ = opt_.max_iterations > 0 ? opt_.max_iterations : 5000 + 200 * (m_ + cols_);
  }

  // Returns false when phase 1 proves infeasibility.
  bool phase1(double scale) {
    std::vector<double> cost(cols_, 0.0);
    for (int j : artificial_) cost[j] = 1.0;
    load_objective(cost);
    if (!iterate(/*allow_artificial_entering=*/false))
      throw LpError("simplex: phase 1 reported unbounded");
    double infeasibility = -obj_rhs_;
    if (infeasibility > opt_.feasibility_tol * scale) return false;
    drive_out_artificials();
    return true;
  }

  // Returns false when the problem is unbounded.
  bool phase2(const std::vector<double>& user_cost) {
    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = user_cost[j];
    phase2_cost_ = cost;
    load_objective(cost);
    return iterate(/*allow_artificial_entering=*/false);
  }

  std::vector<double> primal_values() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (!dead_[i] && basis_[i] >= 0 && basis_[i] < n_) x[basis_[i]] = tableau_[i][cols_];
    return x;
  }

  // y = c_B B^{-1}, read off the identity columns, mapped back through the
  // row sign normalization. Dead (redundant) rows get multiplier 0.
  std::vector<double> duals() const {
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (dead_[i]) continue;
      double value = 0.0;
      for (int r = 0; r < m_; ++r) {
        if (dead_[r] || basis_[r] < 0) continue;
        value += phase2_cost_[basis_[r]] * tableau_[r][ident_col_[i]];
      }
      y[i] = row_sign_[i] * value;
    }
    return y;
  }

 private:
  void load_objective(const std::vector<double>& cost) {
    obj_.assign(cols_, 0.0);
    obj_rhs_ = 0.0;
    for (int j = 0; j < cols_; ++j) obj_[j] = cost[j];
    for (int i = 0; i < m_; ++i) {
      if (dead_[i] || basis_[i] < 0) continue;
      double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols_; ++j) obj_[j] -= cb * tableau_[i][j];
      obj_rhs_ -= cb * tableau_[i][cols_];
    }
  }

  void pivot(int row, int col) {
    double inv = 1.0 / tableau_[row][col];
    for (int j = 0; j <= cols_; ++j) tableau_[row][j] *= inv;
    tableau_[row][col] = 1.0;  // counter accumulated rounding
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double factor = tableau_[i][col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) tableau_[i][j] -= factor * tableau_[row][j];
      tableau_[i][col] = 0.0;
    }
    double factor = obj_[col];
    if (factor != 0.0) {
      for (int j = 0; j < cols_; ++j) obj_[j] -= factor * tableau_[row][j];
      obj_rhs_ -= factor * tableau_[row][cols_];
      obj_[col] = 0.0;
    }
    basis_[row] = col;
  }

  bool iterate(bool allow_artificial_entering) {
    bool bland = false;
    int stall = 0;
    double last_objective = -obj_rhs_;
    const int stall_limit = 3 * (m_ + 5);
    for (int iter = 0; iter < max_iterations_; ++iter) {
      int entering = -1;
      if (bland) {
        for (int j = 0; j < cols_; ++j) {
          if (!allow_artificial_entering && is_artificial_[j]) continue;
          if (obj_[j] < -opt_.reduced_cost_tol) {
            entering = j;
            break;
          }
        }
      } else {
        double best = -opt_.reduced_cost_tol;
        for (int j = 0; j < cols_; ++j) {
          if (!allow_artificial_entering && is_artificial_[j]) continue;
          if (obj_[j] < best) {
            best = obj_[j];
            entering = j;
          }
        }
      }
      if (entering < 0) return true;  // optimal

      int leaving = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        if (dead_[i]) continue;
        double coef = tableau_[i][entering];
        if (coef <= opt_.pivot_tol) continue;
        double ratio = tableau_[i][cols_] / coef;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leaving < 0 || basis_[i] < basis_[leaving]))) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) return false;  // unbounded direction

      pivot(leaving, entering);

      double objective = -obj_rhs_;
      if (objective < last_objective - 1e-12) {
        stall = 0;
        last_objective = objective;
      } else if (++stall >= stall_limit) {
        bland = true;
      }
    }
    throw LpError("simplex: iteration limit exceeded");
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (dead_[i] || basis_[i] < 0 || !is_artificial_[basis_[i]]) continue;
      int col = -1;
      for (int j = 0; j < cols_; ++j) {
        if (is_artificial_[j]) continue;
        if (std::abs(tableau_[i][j]) > opt_.pivot_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        dead_[i] = true;  // redundant constraint
        basis_[i] = -1;
      }
    }
  }

  SimplexOptions opt_;
  int n_;
  int m_;
  int cols_ = 0;
  int max_iterations_ = 0;
  std::vector<std::vector<double>> tableau_;
  std::vector<double> obj_;
  double obj_rhs_ = 0.0;
  std::vector<int> basis_;
  std::vector<bool> dead_;
  std::vector<int> ident_col_;
  std::vector<double> row_sign_;
  std::vector<int> artificial_;
  std::vector<bool> is_artificial_;
  std::vector<double> phase2_cost_;
};

void validate_problem(const LpProblem& problem) {
  const int n = problem.num_vars();
  if (n < 1) throw std::invalid_argument("lp: at least one variable required");
  for (const LpConstraint& c : problem.constraints)
    if (static_cast<int>(c.coeffs.size()) != n)
      throw std::invalid_argument("lp: constraint dimension mismatch");
  if (!problem.lower.empty() && static_cast<int>(problem.lower.size()) != n)
    throw std::invalid_argument("lp: lower bound dimension mismatch");
  if (!problem.upper.empty() && static_cast<int>(problem.upper.size()) != n)
    throw std::invalid_argument("lp: upper bound dimension mismatch");
  for (double l : problem.lower)
    if (l < 0 || !std::isfinite(l)) throw std::invalid_argument("lp: lower bounds must be finite and >= 0");
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options) {
  validate_problem(problem);
  const int n = problem.num_vars();
  std::vector<double> lower = problem.lower.empty() ? std::vector<double>(n, 0.0) : problem.lower;
  std::vector<double> upper = problem.upper.empty() ? std::vector<double>(n, kInf) : problem.upper;

  for (int j = 0; j < n; ++j)
    if (upper[j] < lower[j]) return LpSolution{LpStatus::Infeasible, {}, 0.0, {}, 0.0};

  // Shift out lower bounds, then realize finite upper bounds as rows.
  std::vector<Row> rows;
  const int user_rows = static_cast<int>(problem.constraints.size());
  for (const LpConstraint& c : problem.constraints) {
    Row row;
    row.coeffs = c.coeffs;
    row.rel = c.rel;
    row.rhs = c.rhs;
    for (int j = 0; j < n; ++j) row.rhs -= c.coeffs[j] * lower[j];
    row.from_bound = false;
    rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(upper[j])) continue;
    Row row;
    row.coeffs.assign(n, 0.0);
    row.coeffs[j] = 1.0;
    row.rel = Relation::LessEq;
    row.rhs = upper[j] - lower[j];
    row.from_bound = true;
    rows.push_back(std::move(row));
  }

  double scale = 1.0;
  for (const Row& row : rows) scale = std::max(scale, std::abs(row.rhs));

  SimplexTableau tableau(rows, n, options);
  if (!tableau.phase1(scale)) return LpSolution{LpStatus::Infeasible, {}, 0.0, {}, 0.0};
  if (!tableau.phase2(problem.objective))
    return LpSolution{LpStatus::Unbounded, {}, -kInf, {}, -kInf};

  const std::vector<double> shifted = tableau.primal_values();
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = shifted[j] + lower[j];

  double objective = 0.0;
  for (int j = 0; j < n; ++j) objective += problem.objective[j] * x[j];

  const std::vector<double> y = tableau.duals();

  // --- certification: refuse to return an uncertified optimum ---
  const double feas_tol = options.feasibility_tol * std::max(1.0, scale);
  const double cert_tol = options.duality_tol * std::max(1.0, std::abs(objective));

  for (std::size_t i = 0; i < rows.size(); ++i) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += rows[i].coeffs[j] * shifted[j];
    double violation = 0.0;
    if (rows[i].rel == Relation::LessEq) violation = lhs - rows[i].rhs;
    else if (rows[i].rel == Relation::GreaterEq) violation = rows[i].rhs - lhs;
    else violation = std::abs(lhs - rows[i].rhs);
    if (violation > feas_tol) throw LpError("simplex: primal feasibility check failed");
  }
  for (int j = 0; j < n; ++j)
    if (shifted[j] < -feas_tol) throw LpError("simplex: negative variable");

  // Strong duality over the shifted problem plus the bound-shift constant.
  double dual_objective = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) dual_objective += y[i] * rows[i].rhs;
  for (int j = 0; j < n; ++j) dual_objective += problem.objective[j] * lower[j];
  if (std::abs(dual_objective - objective) > cert_tol)
    throw LpError("simplex: strong duality check failed");

  // Complementary slackness and dual feasibility.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += rows[i].coeffs[j] * shifted[j];
    double slack = lhs - rows[i].rhs;
    if (std::abs(y[i] * slack) > cert_tol * std::max(1.0, scale))
      throw LpError("simplex: complementary slackness check failed");
    if (rows[i].rel == Relation::LessEq && y[i] > options.duality_tol)
      throw LpError("simplex: dual sign check failed");
    if (rows[i].rel == Relation::GreaterEq && y[i] < -options.duality_tol)
      throw LpError("simplex: dual sign check failed");
  }
  for (int j = 0; j < n; ++j) {
    double reduced = problem.objective[j];
    for (std::size_t i = 0; i < rows.size(); ++i) reduced -= y[i] * rows[i].coeffs[j];
    if (reduced < -options.duality_tol * std::max(1.0, scale))
      throw LpError("simplex: dual feasibility check failed");
    if (std::abs(reduced * shifted[j]) > cert_tol * std::max(1.0, scale))
      throw LpError("simplex: complementary slackness check failed");
  }

  LpSolution solution;
  solution.status = LpStatus::Optimal;
  solution.values = x;
  solution.objective_value = objective;
  solution.dual.assign(y.begin(), y.begin() + user_rows);
  solution.dual_objective = dual_objective;
  return solution;
}

}  // namespace apx
