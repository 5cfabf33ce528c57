#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apxkit/approx.hpp"
#include "apxkit/harness.hpp"
#include "apxkit/oracles.hpp"

using namespace apx;

namespace {

FlowNetwork diamond() {
  return make_network(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}}, {{0, 3}, {0, 3}});
}

// Per-edge marginals of a distribution, as exact rationals.
std::vector<Rational> marginals(const FlowNetwork& net, const PathDistribution& dist) {
  std::vector<Rational> out(net.num_edges(), Rational(0));
  for (const PathEntry& entry : dist.entries)
    for (int e : entry.edges) out[e] += entry.probability;
  return out;
}

}  // namespace

TEST_CASE("congestion LP on the worked networks") {
  FlowNetwork line = make_network(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2}});
  LpSolution forced = solve_lp(build_congestion_lp(line));
  REQUIRE(forced.status == LpStatus::Optimal);
  CHECK(forced.objective_value == doctest::Approx(1.0));

  FlowNetwork shared = make_network(2, {{0, 1, 1}}, {{0, 1}, {0, 1}});
  LpSolution two = solve_lp(build_congestion_lp(shared));
  REQUIRE(two.status == LpStatus::Optimal);
  CHECK(two.objective_value == doctest::Approx(2.0));

  LpProblem lp = build_congestion_lp(diamond());
  CHECK(lp.num_vars() == 9);  // 2 commodities x 4 edges + r
  LpSolution split = solve_lp(lp);
  REQUIRE(split.status == LpStatus::Optimal);
  CHECK(split.objective_value == doctest::Approx(1.0));
}

TEST_CASE("make_acyclic removes positive-flow cycles and nothing else") {
  // path 0->1->2 with flow 1 plus a disjoint 3-cycle 3->4->5->3 of flow 3/10
  FlowNetwork net = make_network(
      6, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}}, {{0, 2}});
  FractionalFlow flow;
  flow.values = {{Rational(1), Rational(1), Rational(3, 10), Rational(3, 10), Rational(3, 10)}};

  FractionalFlow cleaned = make_acyclic(flow, net);
  CHECK(cleaned.values[0][0] == 1);
  CHECK(cleaned.values[0][1] == 1);
  CHECK(cleaned.values[0][2] == 0);
  CHECK(cleaned.values[0][3] == 0);
  CHECK(cleaned.values[0][4] == 0);

  // acyclic input comes back unchanged
  FractionalFlow fixed = make_acyclic(cleaned, net);
  CHECK(fixed.values == cleaned.values);
}

TEST_CASE("make_acyclic clears a figure-eight of cycles") {
  // two cycles sharing vertex 0: 0->1->2->0 and 0->3->4->0
  FlowNetwork net = make_network(
      5, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 3, 1}, {3, 4, 1}, {4, 0, 1}, {0, 2, 1}},
      {{0, 2}});
  FractionalFlow flow;
  flow.values = {{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 2), Rational(1, 2),
                  Rational(1, 2), Rational(1)}};
  FractionalFlow cleaned = make_acyclic(flow, net);
  for (int e = 0; e < 6; ++e) CHECK(cleaned.values[0][e] == 0);
  CHECK(cleaned.values[0][6] == 1);  // the direct s->t edge is untouched
}

TEST_CASE("path_decompose: single path") {
  FlowNetwork net = make_network(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2}});
  FractionalFlow flow{{{Rational(1), Rational(1)}}};
  PathDistribution dist = path_decompose(flow, net, 0);
  REQUIRE(dist.entries.size() == 1);
  CHECK(dist.entries[0].probability == 1);
  CHECK(dist.entries[0].vertices == std::vector<int>{0, 1, 2});
}

TEST_CASE("path_decompose: even split over disjoint paths") {
  FractionalFlow flow{{{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}}};
  FlowNetwork net =
      make_network(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}}, {{0, 3}});
  PathDistribution dist = path_decompose(flow, net, 0);
  REQUIRE(dist.entries.size() == 2);
  CHECK(dist.entries[0].probability == Rational(1, 2));
  CHECK(dist.entries[1].probability == Rational(1, 2));
  Rational total = dist.entries[0].probability + dist.entries[1].probability;
  CHECK(total == 1);
}

TEST_CASE("path_decompose: 3/4 and 1/4 sharing the final edge") {
  // P1 = 0->1->2->3 with 3/4, P2 = 0->2->3 with 1/4; edge 2->3 carries 1.
  FlowNetwork net =
      make_network(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 2, 1}}, {{0, 3}});
  FractionalFlow flow{{{Rational(3, 4), Rational(3, 4), Rational(1), Rational(1, 4)}}};
  PathDistribution dist = path_decompose(flow, net, 0);
  REQUIRE(dist.entries.size() == 2);
  Rational total = 0;
  for (const PathEntry& entry : dist.entries) total += entry.probability;
  CHECK(total == 1);
  CHECK(marginals(net, dist) == flow.values[0]);  // exact per-edge marginals
  CHECK(dist.entries.size() <= static_cast<std::size_t>(net.num_edges()));
}

TEST_CASE("path_decompose rejects cyclic and non-unit input") {
  FlowNetwork net = make_network(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2}});
  FractionalFlow half{{{Rational(1, 2), Rational(1, 2)}}};
  CHECK_THROWS_AS(path_decompose(half, net, 0), std::invalid_argument);

  FlowNetwork loop = make_network(
      4, {{0, 1, 1}, {1, 2, 1}, {2, 1, 1}, {1, 3, 1}}, {{0, 3}});
  // unit path 0->1->3 plus the 2-cycle 1->2->1 with flow 1/3
  FractionalFlow cyclic{{{Rational(1), Rational(1, 3), Rational(1, 3), Rational(1)}}};
  CHECK_THROWS_AS(path_decompose(cyclic, loop, 0), std::invalid_argument);
  CHECK_THROWS_AS(path_decompose(cyclic, loop, 2), std::invalid_argument);
}

TEST_CASE("rationalize_unit_flow turns LP output into exact acyclic unit flows") {
  CorpusSpec spec;
  spec.count = 12;
  spec.net_vertices = 8;
  spec.net_edges = 18;
  spec.commodities = 3;
  spec.seed = 31;
  for (const FlowNetwork& net : gen_random_network(spec)) {
    LpSolution sol = solve_lp(build_congestion_lp(net));
    REQUIRE(sol.status == LpStatus::Optimal);
    FractionalFlow flow = rationalize_unit_flow(net, sol.values);
    CHECK_NOTHROW(validate_unit_flow(net, flow));
    // fixpoint of cycle cancellation = acyclic
    CHECK(make_acyclic(flow, net).values == flow.values);
    for (int i = 0; i < net.num_commodities(); ++i) {
      PathDistribution dist = path_decompose(flow, net, i);
      Rational total = 0;
      for (const PathEntry& entry : dist.entries) total += entry.probability;
      CHECK(total == 1);
      CHECK(marginals(net, dist) == flow.values[i]);
      CHECK(dist.entries.size() <= static_cast<std::size_t>(net.num_edges()));
    }
  }
}

TEST_CASE("congestion_round on forced routings") {
  RoundingParams params;
  params.trials = 16;
  params.seed = 37;

  // unique paths: randomness is irrelevant, result matches the oracle exactly
  FlowNetwork line = make_network(3, {{0, 1, 1}, {1, 2, 2}}, {{0, 2}, {0, 2}});
  CongestionRoundResult forced = congestion_round(line, params);
  CHECK(forced.outcome.value == opt_congestion(line).value);

  // two commodities forced through one capacity-1 edge: congestion 2 = r
  FlowNetwork shared = make_network(2, {{0, 1, 1}}, {{0, 1}, {0, 1}});
  CongestionRoundResult jam = congestion_round(shared, params);
  CHECK(jam.outcome.value == 2);
  CHECK(jam.lp_bound == doctest::Approx(2.0));
}

TEST_CASE("congestion_round on the diamond") {
  RoundingParams params;
  params.trials = 200;
  params.seed = 41;
  CongestionRoundResult result = congestion_round(diamond(), params);
  CHECK(result.lp_bound == doctest::Approx(1.0));
  for (const Rational& congestion : result.trial_congestions)
    CHECK((congestion == 1 || congestion == 2));
  CHECK(result.outcome.value == 1);
  CHECK(congestion_value(diamond(), result.outcome.witness) == result.outcome.value);
}

TEST_CASE("sampling the half/half diamond split hits all four joint outcomes") {
  // The LP may route the diamond integrally, so build the split flow by hand:
  // each commodity carries 1/2 on both disjoint paths. Every tuple outcome
  // then has probability 1/4 and the expected max congestion is 3/2.
  FlowNetwork net = diamond();
  FractionalFlow split;
  split.values.assign(2, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  validate_unit_flow(net, split);

  std::vector<PathDistribution> dists{path_decompose(split, net, 0),
                                      path_decompose(split, net, 1)};
  REQUIRE(dists[0].entries.size() == 2);
  CHECK(dists[0].entries[0].probability == Rational(1, 2));

  SplitMix64 rng(4141);
  int ones = 0, twos = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<int>> tuple{sample_path(dists[0], rng.next()).edges,
                                        sample_path(dists[1], rng.next()).edges};
    Rational congestion = congestion_value(net, tuple);
    REQUIRE((congestion == 1 || congestion == 2));
    (congestion == 1 ? ones : twos) += 1;
  }
  CHECK(ones > 0);
  CHECK(twos > 0);
  // E[max congestion] = 3/2: each of the four joint outcomes has probability
  // 1/4 and two of them collide. 4 sigma band around the mean.
  double mean = (ones + 2.0 * twos) / trials;
  CHECK(std::abs(mean - 1.5) < 4.0 * 0.5 / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("trial congestion never beats the LP bound") {
  CorpusSpec spec;
  spec.count = 10;
  spec.net_vertices = 7;
  spec.net_edges = 16;
  spec.commodities = 3;
  spec.seed = 43;
  RoundingParams params;
  params.trials = 20;
  params.seed = 47;
  for (const FlowNetwork& net : gen_random_network(spec)) {
    CongestionRoundResult result = congestion_round(net, params);
    for (const Rational& congestion : result.trial_congestions)
      CHECK(to_double(congestion) >= result.lp_bound - 1e-6);
  }
}

TEST_CASE("alpha follows the stated formula") {
  int m = 25;
  double expected = 2.0 * std::log(2.0 * m) / std::log(std::log(2.0 * m));
  CHECK(congestion_alpha(m) == doctest::Approx(expected));
}

namespace {

// Test-side cycle finder over positive-flow edges.
bool has_positive_cycle(const FlowNetwork& net, const std::vector<Rational>& x) {
  std::vector<int> color(net.num_vertices, 0);
  auto dfs = [&](auto&& self, int v) -> bool {
    color[v] = 1;
    for (int e = 0; e < net.num_edges(); ++e) {
      if (net.edges[e].from != v || x[e] <= 0) continue;
      int to = net.edges[e].to;
      if (color[to] == 1) return true;
      if (color[to] == 0 && self(self, to)) return true;
    }
    color[v] = 2;
    return false;
  };
  for (int v = 0; v < net.num_vertices; ++v)
    if (color[v] == 0 && dfs(dfs, v)) return true;
  return false;
}

// Some directed cycle of the network as edge indices, or empty.
std::vector<int> find_any_cycle(const FlowNetwork& net) {
  std::vector<int> color(net.num_vertices, 0);
  std::vector<int> stack_edges;
  std::vector<int> stack_vertices;
  std::vector<int> cycle;
  auto dfs = [&](auto&& self, int v) -> bool {
    color[v] = 1;
    stack_vertices.push_back(v);
    for (int e = 0; e < net.num_edges(); ++e) {
      if (net.edges[e].from != v) continue;
      int to = net.edges[e].to;
      if (color[to] == 1) {
        stack_edges.push_back(e);
        auto start = std::find(stack_vertices.begin(), stack_vertices.end(), to);
        cycle.assign(stack_edges.begin() + (start - stack_vertices.begin()), stack_edges.end());
        return true;
      }
      if (color[to] == 0) {
        stack_edges.push_back(e);
        if (self(self, to)) return true;
        stack_edges.pop_back();
      }
    }
    color[v] = 2;
    stack_vertices.pop_back();
    return false;
  };
  for (int v = 0; v < net.num_vertices; ++v)
    if (color[v] == 0 && dfs(dfs, v)) return cycle;
  return {};
}

}  // namespace

TEST_CASE("make_acyclic property: random flows with injected cycles") {
  CorpusSpec spec;
  spec.count = 30;
  spec.net_vertices = 7;
  spec.net_edges = 18;
  spec.commodities = 1;
  spec.seed = 53;
  int injected = 0;
  for (const FlowNetwork& net : gen_random_network(spec)) {
    // Route a unit flow over up to three simple paths with rational weights.
    auto paths = enumerate_simple_paths(net, net.commodities[0].source,
                                        net.commodities[0].sink, 10000);
    REQUIRE_FALSE(paths.empty());
    FractionalFlow flow;
    flow.values.assign(1, std::vector<Rational>(net.num_edges(), Rational(0)));
    std::vector<Rational> weights;
    if (paths.size() >= 3)
      weights = {Rational(1, 2), Rational(1, 3), Rational(1, 6)};
    else if (paths.size() == 2)
      weights = {Rational(3, 4), Rational(1, 4)};
    else
      weights = {Rational(1)};
    for (std::size_t p = 0; p < weights.size(); ++p)
      for (int e : paths[p]) flow.values[0][e] += weights[p];
    validate_unit_flow(net, flow);

    // Inject flow around a directed cycle when the network has one.
    std::vector<int> cycle = find_any_cycle(net);
    FractionalFlow dirty = flow;
    if (!cycle.empty()) {
      ++injected;
      for (int e : cycle) dirty.values[0][e] += Rational(2, 7);
      CHECK(has_positive_cycle(net, dirty.values[0]));
    }
    validate_unit_flow(net, dirty);  // cycles do not disturb conservation

    FractionalFlow cleaned = make_acyclic(dirty, net);
    validate_unit_flow(net, cleaned);
    CHECK_FALSE(has_positive_cycle(net, cleaned.values[0]));
    if (!cycle.empty()) {
      int dirty_nonzero = 0, clean_nonzero = 0;
      for (const Rational& v : dirty.values[0]) dirty_nonzero += v != 0;
      for (const Rational& v : cleaned.values[0]) clean_nonzero += v != 0;
      CHECK(clean_nonzero < dirty_nonzero);
    }
    // The cleaned flow decomposes exactly.
    PathDistribution dist = path_decompose(cleaned, net, 0);
    Rational total = 0;
    for (const PathEntry& entry : dist.entries) total += entry.probability;
    CHECK(total == 1);
  }
  CHECK(injected > 5);  // the corpus actually exercised cycle cancellation
}

TEST_CASE("congestion_round is deterministic per seed") {
  CorpusSpec spec;
  spec.count = 2;
  spec.net_vertices = 8;
  spec.net_edges = 20;
  spec.commodities = 3;
  spec.seed = 61;
  RoundingParams params;
  params.trials = 12;
  params.seed = 67;
  for (const FlowNetwork& net : gen_random_network(spec)) {
    CongestionRoundResult a = congestion_round(net, params);
    CongestionRoundResult b = congestion_round(net, params);
    CHECK(a.trial_congestions == b.trial_congestions);
    CHECK(a.outcome.value == b.outcome.value);
    CHECK(a.outcome.witness == b.outcome.witness);
  }
}

TEST_CASE("path_decompose rejects negative flow values") {
  FlowNetwork net = make_network(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2}});
  FractionalFlow negative{{{Rational(1), Rational(-1)}}};
  CHECK_THROWS_AS(path_decompose(negative, net, 0), std::invalid_argument);
}
