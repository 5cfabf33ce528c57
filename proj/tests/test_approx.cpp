#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "apxkit/approx.hpp"
#include "apxkit/harness.hpp"
#include "apxkit/oracles.hpp"
#include "apxkit/rng.hpp"

using namespace apx;

namespace {

MultiGraph unit_triangle() {
  return make_multigraph(3,
                         {{0, 1, 1, Rational(1)}, {1, 2, 1, Rational(1)}, {0, 2, 1, Rational(1)}});
}

bool covers_all_edges(const MultiGraph& graph, const std::vector<int>& cover) {
  for (const MultiGraphEdge& e : graph.edges)
    if (std::find(cover.begin(), cover.end(), e.u) == cover.end() &&
        std::find(cover.begin(), cover.end(), e.v) == cover.end())
      return false;
  return true;
}

}  // namespace

TEST_CASE("two assignments: examples and the counting bound") {
  CHECK(max3sat_two_assignments(make_cnf(1, {{1}})).value == 1);

  CnfFormula tight = make_cnf(3, {{1, 2, 3}, {-1, -2, -3}});
  auto outcome = max3sat_two_assignments(tight);
  CHECK(outcome.value == 1);
  CHECK(opt_maxsat(tight).value == 2);  // ratio exactly 2, tight

  CorpusSpec spec;
  spec.count = 30;
  spec.num_vars = 8;
  spec.num_clauses = 30;
  spec.width = 3;
  spec.seed = 2;
  for (const CnfFormula& f : gen_random_cnf(spec)) {
    auto result = max3sat_two_assignments(f);
    CHECK(2 * result.value >= f.num_clauses());
    CHECK(count_satisfied(f, result.witness) == result.value);
    int sum = count_satisfied(f, Assignment::constant(f.num_vars, true)) +
              count_satisfied(f, Assignment::constant(f.num_vars, false));
    CHECK(sum >= f.num_clauses());
  }
}

TEST_CASE("vertex cover via maximal matching") {
  MultiGraph single = make_multigraph(2, {{0, 1, 1, Rational(1)}});
  auto one = vertexcover_matching(single);
  CHECK(one.value == 2);
  CHECK(opt_vertexcover(single).value == 1);  // tight case

  MultiGraph path = make_multigraph(3, {{0, 1, 1, Rational(1)}, {1, 2, 1, Rational(1)}});
  CHECK(vertexcover_matching(path).value == 2);
  CHECK(opt_vertexcover(path).value == 1);

  CHECK(vertexcover_matching(unit_triangle()).value == 2);
  CHECK(opt_vertexcover(unit_triangle()).value == 2);

  CorpusSpec spec;
  spec.count = 40;
  spec.num_vertices = 9;
  spec.num_edges = 14;
  spec.seed = 5;
  for (const MultiGraph& g : gen_random_graph(spec)) {
    auto outcome = vertexcover_matching(g);
    CHECK(covers_all_edges(g, outcome.witness));
    CHECK(outcome.value % 2 == 0);
    CHECK(outcome.value <= 2 * opt_vertexcover(g).value);
  }
}

TEST_CASE("randomized max-cut: expectation and determinism") {
  MultiGraph single = make_multigraph(2, {{0, 1, 1, Rational(1)}});
  MaxCutRandomRun run = maxcut_random_run(single, 4000, 7);
  Rational sum = 0;
  for (const Rational& value : run.trial_values) sum += value;
  double mean = to_double(sum) / 4000.0;
  // Bernoulli(1/2) mean with sigma = 1/(2 sqrt(n)); allow 4 sigma.
  CHECK(std::abs(mean - 0.5) < 4.0 * 0.5 / std::sqrt(4000.0));

  auto triangle_run = maxcut_random_run(unit_triangle(), 64, 3);
  CHECK(triangle_run.best.value == 2);  // optimum found within a seeded run
  for (const Rational& value : triangle_run.trial_values)
    CHECK((value == 0 || value == 2));  // triangle cuts are 0 or 2

  CHECK(maxcut_random(make_multigraph(0, {}), 3, 1).value == 0);
  CHECK_THROWS_AS(maxcut_random(single, 0, 1), std::invalid_argument);

  // same seed, same run
  auto again = maxcut_random_run(unit_triangle(), 64, 3);
  CHECK(again.trial_values == triangle_run.trial_values);
}

TEST_CASE("derandomized max-cut: examples and the half-mass bound") {
  MultiGraph single = make_multigraph(2, {{0, 1, 1, Rational(1)}});
  CHECK(maxcut_derandomized(single).value == 1);
  CHECK(maxcut_derandomized(unit_triangle()).value == 2);

  // complete bipartite 2x3, unit weights
  std::vector<MultiGraphEdge> edges;
  for (int left : {0, 1})
    for (int right : {2, 3, 4}) edges.push_back({left, right, 1, Rational(1)});
  MultiGraph bipartite = make_multigraph(5, edges);
  CHECK(maxcut_derandomized(bipartite).value == 6);
  CHECK(opt_maxcut(bipartite).value == 6);

  CorpusSpec spec;
  spec.count = 40;
  spec.num_vertices = 10;
  spec.num_edges = 18;
  spec.seed = 11;
  for (const MultiGraph& g : gen_random_graph(spec)) {
    auto outcome = maxcut_derandomized(g);
    CHECK(2 * outcome.value >= g.total_edge_mass());  // exact rational comparison
    CHECK(cut_weight(g, outcome.witness) == outcome.value);
  }
}

TEST_CASE("greedy set cover: examples and the harmonic bound") {
  SetCoverInstance whole = make_set_cover(4, {{1, 2, 3, 4}}, {5});
  auto picked = setcover_greedy(whole);
  CHECK(picked.value == 5);
  CHECK(picked.witness == std::vector<int>{0});

  SetCoverInstance triple = make_set_cover(3, {{1, 2}, {2, 3}, {1, 3}}, {1, 1, 1});
  CHECK(setcover_greedy(triple).value == 2);
  CHECK(opt_setcover(triple).value == 2);

  SetCoverInstance halves = make_set_cover(
      4, {{1, 2, 3, 4}, {1, 2}, {3, 4}}, {Rational(11, 10), Rational(1, 2), Rational(1, 2)});
  auto greedy = setcover_greedy(halves);
  CHECK(greedy.value == 1);
  CHECK(opt_setcover(halves).value == 1);

  CorpusSpec spec;
  spec.count = 40;
  spec.universe = 8;
  spec.num_sets = 7;
  spec.seed = 13;
  for (const SetCoverInstance& instance : gen_random_setcover(spec)) {
    auto outcome = setcover_greedy(instance);
    CHECK(is_cover(instance, outcome.witness));
    Rational harmonic = 0;
    for (int i = 1; i <= instance.universe_size; ++i) harmonic += Rational(1, i);
    CHECK(outcome.value <= harmonic * opt_setcover(instance).value);
  }
}

TEST_CASE("randomized rounding for set cover") {
  RoundingParams params;
  params.d = 2;
  params.seed = 17;

  SetCoverInstance whole = make_set_cover(3, {{1, 2, 3}}, {Rational(7, 2)});
  auto certain = setcover_lp_rounding(whole, params);
  CHECK(certain.outcome.value == Rational(7, 2));
  CHECK_FALSE(certain.repair_used);  // LP gives probability 1

  SetCoverInstance triple = make_set_cover(3, {{1, 2}, {2, 3}, {1, 3}}, {1, 1, 1});
  auto rounded = setcover_lp_rounding(triple, params);
  CHECK(rounded.lp_objective == doctest::Approx(1.5));
  CHECK(is_cover(triple, rounded.outcome.witness));
  CHECK(rounded.rounds == static_cast<int>(std::ceil(2 * std::log(4))));

  SetCoverInstance tiny = make_set_cover(1, {{1}}, {Rational(2, 3)});
  CHECK(setcover_lp_rounding(tiny, params).outcome.value == Rational(2, 3));

  RoundingParams bad;
  bad.d = 0;
  CHECK_THROWS_AS(setcover_lp_rounding(tiny, bad), std::invalid_argument);
}

TEST_CASE("double-tree TSP") {
  MetricInstance triangle = make_metric({{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}});
  CHECK(tsp_double_tree(triangle).value == doctest::Approx(4.5));

  MetricInstance square = make_metric({{0, 1, 1.4142135623730951, 1},
                                       {1, 0, 1, 1.4142135623730951},
                                       {1.4142135623730951, 1, 0, 1},
                                       {1, 1.4142135623730951, 1, 0}});
  CHECK(tsp_double_tree(square).value == doctest::Approx(4.0));

  MetricInstance line = make_metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(tsp_double_tree(line).value == doctest::Approx(4.0));

  CHECK_THROWS_AS(tsp_double_tree(make_metric({{0, 1}, {1, 0}})), std::invalid_argument);

  CorpusSpec spec;
  spec.count = 25;
  spec.num_points = 9;
  spec.seed = 19;
  for (const MetricInstance& metric : gen_random_metric(spec)) {
    auto outcome = tsp_double_tree(metric);
    double opt = opt_tsp(metric).value;
    CHECK(outcome.value <= 2.0 * opt * (1 + 1e-12));
    CHECK(tour_length(metric, outcome.witness) == outcome.value);
  }
}

TEST_CASE("christofides") {
  MetricInstance triangle = make_metric({{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}});
  CHECK(tsp_christofides(triangle).value == doctest::Approx(4.5));

  MetricInstance square = make_metric({{0, 1, 1.4142135623730951, 1},
                                       {1, 0, 1, 1.4142135623730951},
                                       {1.4142135623730951, 1, 0, 1},
                                       {1, 1.4142135623730951, 1, 0}});
  CHECK(tsp_christofides(square).value == doctest::Approx(4.0));

  CorpusSpec spec;
  spec.count = 25;
  spec.num_points = 10;
  spec.seed = 23;
  for (const MetricInstance& metric : gen_random_metric(spec)) {
    auto outcome = tsp_christofides(metric);
    double opt = opt_tsp(metric).value;
    CHECK(outcome.value <= 1.5 * opt * (1 + 1e-12));
    CHECK(tour_length(metric, outcome.witness) == outcome.value);
  }

  MetricInstance big = gen_random_metric([] {
    CorpusSpec s;
    s.count = 1;
    s.num_points = 8;
    s.seed = 29;
    return s;
  }()).front();
  CHECK_THROWS_AS(tsp_christofides(big, 0), LimitError);
}
