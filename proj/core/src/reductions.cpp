#include "apxkit/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace apx {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

void require_widths(const CnfFormula& formula, int min_width, int max_width, const char* who) {
  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci) {
    int width = static_cast<int>(formula.clauses[ci].size());
    if (width < min_width || width > max_width)
      fail(std::string(who) + ": clause " + std::to_string(ci + 1) + " has width " +
           std::to_string(width));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Max-3SAT -> Max-2SAT clause gadget
// ---------------------------------------------------------------------------

CnfFormula reduce_3sat_to_2sat(const CnfFormula& formula) {
  validate_cnf(formula);
  require_widths(formula, 3, 3, "reduce_3sat_to_2sat");
  std::vector<Clause> clauses;
  clauses.reserve(formula.clauses.size() * 10);
  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci) {
    const Clause& clause = formula.clauses[ci];
    Literal x = clause[0], y = clause[1], z = clause[2];
    Literal v = formula.num_vars + 1 + static_cast<int>(ci);
    clauses.push_back({x});
    clauses.push_back({y});
    clauses.push_back({z});
    clauses.push_back({v});
    clauses.push_back({-x, -y});
    clauses.push_back({-x, -z});
    clauses.push_back({-y, -z});
    clauses.push_back({x, -v});
    clauses.push_back({y, -v});
    clauses.push_back({z, -v});
  }
  return make_cnf(formula.num_vars + formula.num_clauses(), std::move(clauses), 2);
}

Assignment pull_back_3sat_to_2sat(const CnfFormula& source, const Assignment& target_solution) {
  if (target_solution.size() < source.num_vars)
    fail("pull_back_3sat_to_2sat: target assignment too short");
  Assignment out;
  out.values.assign(target_solution.values.begin(),
                    target_solution.values.begin() + source.num_vars);
  return out;
}

// ---------------------------------------------------------------------------
// Max-2SAT -> Max-NAE3SAT via a shared fresh variable
// ---------------------------------------------------------------------------

CnfFormula reduce_2sat_to_nae3sat(const CnfFormula& formula) {
  validate_cnf(formula);
  require_widths(formula, 2, 2, "reduce_2sat_to_nae3sat");
  Literal shared = formula.num_vars + 1;
  std::vector<Clause> clauses;
  clauses.reserve(formula.clauses.size());
  for (const Clause& clause : formula.clauses)
    clauses.push_back({clause[0], clause[1], shared});
  return make_cnf(formula.num_vars + 1, std::move(clauses), 3);
}

Assignment pull_back_2sat_to_nae3sat(const CnfFormula& source, const Assignment& target_solution) {
  if (target_solution.size() != source.num_vars + 1)
    fail("pull_back_2sat_to_nae3sat: target assignment has wrong length");
  Assignment working = target_solution;
  if (working.values.back()) working = complement(working);
  Assignment out;
  out.values.assign(working.values.begin(), working.values.begin() + source.num_vars);
  return out;
}

// ---------------------------------------------------------------------------
// Max-NAE3SAT -> MAX-CUT on a literal-vertex multigraph
// ---------------------------------------------------------------------------

int literal_vertex(Literal lit) {
  int var = std::abs(lit);
  return 2 * (var - 1) + (lit < 0 ? 1 : 0);
}

MultiGraph reduce_nae3sat_to_maxcut(const CnfFormula& formula) {
  validate_cnf(formula);
  require_widths(formula, 2, 3, "reduce_nae3sat_to_maxcut");

  std::vector<MultiGraphEdge> edges;
  std::vector<std::int64_t> occurrences(static_cast<std::size_t>(formula.num_vars), 0);
  auto add_edge = [&](Literal a, Literal b, std::int64_t multiplicity) {
    int u = literal_vertex(a);
    int v = literal_vertex(b);
    edges.push_back({std::min(u, v), std::max(u, v), multiplicity, Rational(1)});
  };
  for (const Clause& clause : formula.clauses) {
    for (Literal lit : clause) ++occurrences[std::abs(lit) - 1];
    if (clause.size() == 3) {
      add_edge(clause[0], clause[1], 1);
      add_edge(clause[1], clause[2], 1);
      add_edge(clause[0], clause[2], 1);
    } else {
      add_edge(clause[0], clause[1], 2);
    }
  }
  for (int var = 1; var <= formula.num_vars; ++var) {
    std::int64_t k = occurrences[var - 1];
    if (k > 0) edges.push_back({literal_vertex(var), literal_vertex(-var), 2 * k, Rational(1)});
  }
  std::map<int, Literal> labels;
  for (int var = 1; var <= formula.num_vars; ++var) {
    labels[literal_vertex(var)] = var;
    labels[literal_vertex(-var)] = -var;
  }
  return make_multigraph(2 * formula.num_vars, std::move(edges), std::move(labels));
}

Assignment pull_back_nae3sat_to_maxcut(const CnfFormula& source, const Partition& partition) {
  if (partition.size() != 2 * source.num_vars)
    fail("pull_back_nae3sat_to_maxcut: partition has wrong length");
  // Repair pass: a variable whose two literal vertices share a side has the
  // negated vertex moved across, which never decreases the cut.
  Partition repaired = partition;
  for (int var = 1; var <= source.num_vars; ++var) {
    int pos = literal_vertex(var);
    int neg = literal_vertex(-var);
    if (repaired.side[pos] == repaired.side[neg]) repaired.side[neg] = !repaired.side[neg];
  }
  // Side S carries the true literals.
  Assignment out;
  out.values.resize(static_cast<std::size_t>(source.num_vars));
  for (int var = 1; var <= source.num_vars; ++var)
    out.values[var - 1] = !repaired.side[literal_vertex(var)];
  return out;
}

// ---------------------------------------------------------------------------
// Chain splitting: k-SAT -> 3-SAT
// ---------------------------------------------------------------------------

CnfFormula ksat_to_3sat(const CnfFormula& formula) {
  validate_cnf(formula);
  std::vector<Clause> clauses;
  int next_fresh = formula.num_vars + 1;
  for (const Clause& clause : formula.clauses) {
    const int width = static_cast<int>(clause.size());
    if (width <= 3) {
      clauses.push_back(clause);
      continue;
    }
    Literal carry = next_fresh++;
    clauses.push_back({clause[0], clause[1], carry});
    for (int i = 2; i < width - 2; ++i) {
      Literal next_carry = next_fresh++;
      clauses.push_back({-carry, clause[i], next_carry});
      carry = next_carry;
    }
    clauses.push_back({-carry, clause[width - 2], clause[width - 1]});
  }
  return make_cnf(next_fresh - 1, std::move(clauses));
}

// ---------------------------------------------------------------------------
// Packaged reductions
// ---------------------------------------------------------------------------

LReduction<MaxSatProblem, MaxSatProblem> lreduction_3sat_to_2sat() {
  LReduction<MaxSatProblem, MaxSatProblem> red;
  red.name = "3sat-to-2sat";
  red.claimed_a = 13;
  red.claimed_b = 1;
  red.transform = [](const CnfFormula& formula) { return reduce_3sat_to_2sat(formula); };
  red.pull_back = [](const CnfFormula& source, const Assignment& y) {
    return pull_back_3sat_to_2sat(source, y);
  };
  return red;
}

LReduction<MaxSatProblem, NaeSatProblem> lreduction_2sat_to_nae3sat() {
  LReduction<MaxSatProblem, NaeSatProblem> red;
  red.name = "2sat-to-nae3sat";
  red.claimed_a = 1;
  red.claimed_b = 1;
  red.transform = [](const CnfFormula& formula) { return reduce_2sat_to_nae3sat(formula); };
  red.pull_back = [](const CnfFormula& source, const Assignment& y) {
    return pull_back_2sat_to_nae3sat(source, y);
  };
  return red;
}

LReduction<NaeSatProblem, MaxCutProblem> lreduction_nae3sat_to_maxcut() {
  LReduction<NaeSatProblem, MaxCutProblem> red;
  red.name = "nae3sat-to-maxcut";
  red.claimed_a = 8;
  red.claimed_b = 2;
  red.transform = [](const CnfFormula& formula) { return reduce_nae3sat_to_maxcut(formula); };
  red.pull_back = [](const CnfFormula& source, const Partition& y) {
    return pull_back_nae3sat_to_maxcut(source, y);
  };
  return red;
}

}  // namespace apx
