#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apxkit/instances.hpp"
#include "apxkit/oracles.hpp"
#include "apxkit/rng.hpp"

namespace apx {

// ---------------------------------------------------------------------------
// Gadget transforms
// ---------------------------------------------------------------------------

// Per source clause (x v y v z), emits the ten clauses
//   (x)(y)(z)(v)(!x v !y)(!x v !z)(!y v !z)(x v !v)(y v !v)(z v !v)
// with one fresh auxiliary variable v. The best choice of v satisfies 7 of
// the 10 exactly when the source clause is satisfied, 6 otherwise, so
// OPT2(f(phi)) = 6m + OPT1(phi). Requires every clause to have exactly 3
// distinct variables.
CnfFormula reduce_3sat_to_2sat(const CnfFormula& formula);
Assignment pull_back_3sat_to_2sat(const CnfFormula& source, const Assignment& target_solution);

// Per clause (a v b), emits the NAE clause (a v b v c) with one globally
// shared fresh variable c. OPT_NAE(f(phi)) = OPT_2SAT(phi). The pull-back
// complements the assignment when c is true (NAE counts are invariant under
// complement), then restricts to the original variables.
CnfFormula reduce_2sat_to_nae3sat(const CnfFormula& formula);
Assignment pull_back_2sat_to_nae3sat(const CnfFormula& source, const Assignment& target_solution);

// Vertices for every literal; triangles for width-3 clauses, doubled edges
// for width-2 clauses, and 2k parallel edges between a and !a where k counts
// the occurrences of the variable. OPT_cut = 2l + 2 * OPT_NAE with l the
// total literal occurrences.
MultiGraph reduce_nae3sat_to_maxcut(const CnfFormula& formula);
Assignment pull_back_nae3sat_to_maxcut(const CnfFormula& source, const Partition& partition);

int literal_vertex(Literal lit);  // vertex id carrying literal `lit` in the image graph

// Standard chain splitting: clauses of width <= 3 pass through; a wider
// clause (l1 v ... v lk) becomes (l1 v l2 v w1)(!w1 v l3 v w2)...(!w_{k-3} v
// l_{k-1} v lk) with fresh variables.
CnfFormula ksat_to_3sat(const CnfFormula& formula);

// ---------------------------------------------------------------------------
// Problem traits for the generic machinery
// ---------------------------------------------------------------------------

struct MaxSatProblem {
  using Instance = CnfFormula;
  using Solution = Assignment;
  static Rational value(const Instance& instance, const Solution& solution) {
    return Rational(count_satisfied(instance, solution));
  }
  static Rational optimum(const Instance& instance, const OracleLimits& limits) {
    return Rational(opt_maxsat(instance, limits).value);
  }
  static std::uint64_t solution_space(const Instance& instance) {
    return std::uint64_t{1} << instance.num_vars;
  }
  static Solution solution_at(const Instance& instance, std::uint64_t index) {
    return Assignment::from_mask(instance.num_vars, index);
  }
};

struct NaeSatProblem {
  using Instance = CnfFormula;
  using Solution = Assignment;
  static Rational value(const Instance& instance, const Solution& solution) {
    return Rational(count_nae_satisfied(instance, solution));
  }
  static Rational optimum(const Instance& instance, const OracleLimits& limits) {
    return Rational(opt_nae3sat(instance, limits).value);
  }
  static std::uint64_t solution_space(const Instance& instance) {
    return std::uint64_t{1} << instance.num_vars;
  }
  static Solution solution_at(const Instance& instance, std::uint64_t index) {
    return Assignment::from_mask(instance.num_vars, index);
  }
};

struct MaxCutProblem {
  using Instance = MultiGraph;
  using Solution = Partition;
  static Rational value(const Instance& instance, const Solution& solution) {
    return cut_weight(instance, solution);
  }
  static Rational optimum(const Instance& instance, const OracleLimits& limits) {
    return opt_maxcut(instance, limits).value;
  }
  static std::uint64_t solution_space(const Instance& instance) {
    return std::uint64_t{1} << instance.num_vertices;
  }
  static Solution solution_at(const Instance& instance, std::uint64_t index) {
    return Partition::from_mask(instance.num_vertices, index);
  }
};

// ---------------------------------------------------------------------------
// L-reductions: (f, g) with claimed constants a, b
// ---------------------------------------------------------------------------

template <typename Src, typename Tgt>
struct LReduction {
  std::string name;
  Rational claimed_a = 1;
  Rational claimed_b = 1;
  std::function<typename Tgt::Instance(const typename Src::Instance&)> transform;
  std::function<typename Src::Solution(const typename Src::Instance&,
                                       const typename Tgt::Solution&)>
      pull_back;
};

LReduction<MaxSatProblem, MaxSatProblem> lreduction_3sat_to_2sat();      // a = 13, b = 1
LReduction<MaxSatProblem, NaeSatProblem> lreduction_2sat_to_nae3sat();   // a = b = 1
LReduction<NaeSatProblem, MaxCutProblem> lreduction_nae3sat_to_maxcut(); // claims a = 8, b = 2

// ---------------------------------------------------------------------------
// Empirical certification against exact oracles
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
  int sample_count = 2048;  // target solutions sampled above the limit
  std::uint64_t seed = 1;
  OracleLimits limits{};
};

struct VerificationReport {
  std::string reduction;
  int instances_checked = 0;
  int instances_skipped = 0;  // oracle limit exceeded
  Rational condition3_max_ratio = 0;  // max OPT2(f(x)) / OPT1(x)
  Rational condition4_max_ratio = 0;  // max |OPT1 - VAL1(g(y))| / |OPT2 - VAL2(y)|
  bool condition4_unbounded = false;  // nonzero source error with zero target error
  bool exhaustive = true;
  std::int64_t solutions_sampled = 0;
  Rational claimed_a = 1;
  Rational claimed_b = 1;

  bool pass_a() const { return condition3_max_ratio <= claimed_a; }
  bool pass_b() const { return !condition4_unbounded && condition4_max_ratio <= claimed_b; }
};

template <typename Src, typename Tgt>
VerificationReport verify_lreduction(const LReduction<Src, Tgt>& reduction,
                                     const std::vector<typename Src::Instance>& corpus,
                                     const VerifyOptions& options = {}) {
  VerificationReport report;
  report.reduction = reduction.name;
  report.claimed_a = reduction.claimed_a;
  report.claimed_b = reduction.claimed_b;

  for (const auto& instance : corpus) {
    Rational opt1, opt2;
    typename Tgt::Instance image = reduction.transform(instance);
    try {
      opt1 = Src::optimum(instance, options.limits);
      opt2 = Tgt::optimum(image, options.limits);
    } catch (const LimitError&) {
      ++report.instances_skipped;
      continue;
    }
    ++report.instances_checked;

    if (opt1 > 0) {
      Rational ratio = opt2 / opt1;
      if (ratio > report.condition3_max_ratio) report.condition3_max_ratio = ratio;
    }

    const std::uint64_t space = Tgt::solution_space(image);
    const bool exhaustive_here = space <= options.exhaustive_limit;
    SplitMix64 rng = stream_for_trial(options.seed, report.instances_checked);
    const std::uint64_t draws =
        exhaustive_here ? space : static_cast<std::uint64_t>(options.sample_count);
    if (!exhaustive_here) {
      report.exhaustive = false;
      report.solutions_sampled += static_cast<std::int64_t>(draws);
    }
    for (std::uint64_t d = 0; d < draws; ++d) {
      std::uint64_t index = exhaustive_here ? d : rng.next() % space;
      typename Tgt::Solution y = Tgt::solution_at(image, index);
      Rational val2 = Tgt::value(image, y);
      typename Src::Solution pulled = reduction.pull_back(instance, y);
      Rational val1 = Src::value(instance, pulled);
      Rational err1 = abs(opt1 - val1);
      Rational err2 = abs(opt2 - val2);
      if (err2 == 0) {
        if (err1 != 0) report.condition4_unbounded = true;
        continue;  // 0/0 counts as satisfied
      }
      Rational ratio = err1 / err2;
      if (ratio > report.condition4_max_ratio) report.condition4_max_ratio = ratio;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// PTAS composition: x -> g(scheme(f(x), delta)) with delta = eps / (a * b)
// ---------------------------------------------------------------------------

template <typename Src, typename Tgt>
struct ComposedScheme {
  LReduction<Src, Tgt> reduction;
  std::function<typename Tgt::Solution(const typename Tgt::Instance&, double)> target_scheme;
  double epsilon = 0.0;

  double delta() const {
    return epsilon / to_double(reduction.claimed_a * reduction.claimed_b);
  }

  typename Src::Solution operator()(const typename Src::Instance& instance) const {
    typename Tgt::Instance image = reduction.transform(instance);
    typename Tgt::Solution solved = target_scheme(image, delta());
    return reduction.pull_back(instance, solved);
  }
};

template <typename Src, typename Tgt>
ComposedScheme<Src, Tgt> compose_ptas(
    LReduction<Src, Tgt> reduction,
    std::function<typename Tgt::Solution(const typename Tgt::Instance&, double)> target_scheme,
    double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("compose_ptas: epsilon must be positive");
  return ComposedScheme<Src, Tgt>{std::move(reduction), std::move(target_scheme), epsilon};
}

}  // namespace apx
