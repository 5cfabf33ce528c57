#include "apxkit/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "apxkit/oracles.hpp"
#include "apxkit/rng.hpp"

namespace apx {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

}  // namespace

void validate_rounding_params(const RoundingParams& params) {
  if (params.d < 1) fail("rounding params: d must be positive");
  if (params.trials < 1) fail("rounding params: trials must be positive");
}

// ---------------------------------------------------------------------------
// SAT and vertex cover
// ---------------------------------------------------------------------------

ApproxOutcome<Assignment, int> max3sat_two_assignments(const CnfFormula& formula) {
  validate_cnf(formula);
  Assignment all_true = Assignment::constant(formula.num_vars, true);
  Assignment all_false = Assignment::constant(formula.num_vars, false);
  int count_true = count_satisfied(formula, all_true);
  int count_false = count_satisfied(formula, all_false);
  if (count_true >= count_false) return {count_true, all_true, 2.0};
  return {count_false, all_false, 2.0};
}

ApproxOutcome<std::vector<int>, int> vertexcover_matching(const MultiGraph& graph) {
  validate_multigraph(graph);
  std::vector<bool> matched(static_cast<std::size_t>(graph.num_vertices), false);
  std::vector<int> cover;
  for (const MultiGraphEdge& e : graph.edges) {
    if (matched[e.u] || matched[e.v]) continue;
    matched[e.u] = matched[e.v] = true;
    cover.push_back(e.u);
    cover.push_back(e.v);
  }
  std::sort(cover.begin(), cover.end());
  return {static_cast<int>(cover.size()), cover, 2.0};
}

// ---------------------------------------------------------------------------
// Max-Cut
// ---------------------------------------------------------------------------

MaxCutRandomRun maxcut_random_run(const MultiGraph& graph, int trials, std::uint64_t seed) {
  validate_multigraph(graph);
  if (trials < 1) fail("maxcut_random: trials must be positive");
  MaxCutRandomRun run;
  run.trial_values.reserve(static_cast<std::size_t>(trials));
  Rational best = -1;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng = stream_for_trial(seed, static_cast<std::uint64_t>(t));
    Partition p;
    p.side.resize(static_cast<std::size_t>(graph.num_vertices));
    for (int v = 0; v < graph.num_vertices; ++v) p.side[v] = rng.coin();
    Rational value = cut_weight(graph, p);
    run.trial_values.push_back(value);
    if (value > best) {
      best = value;
      run.best.witness = std::move(p);
    }
  }
  run.best.value = best;
  run.best.guarantee = 2.0;
  return run;
}

ApproxOutcome<Partition> maxcut_random(const MultiGraph& graph, int trials, std::uint64_t seed) {
  return maxcut_random_run(graph, trials, seed).best;
}

ApproxOutcome<Partition> maxcut_derandomized(const MultiGraph& graph) {
  validate_multigraph(graph);
  std::vector<std::vector<std::pair<int, Rational>>> incident(graph.num_vertices);
  for (const MultiGraphEdge& e : graph.edges) {
    Rational mass = Rational(e.multiplicity) * e.weight;
    incident[e.u].emplace_back(e.v, mass);
    incident[e.v].emplace_back(e.u, mass);
  }
  Partition p;
  p.side.resize(static_cast<std::size_t>(graph.num_vertices), false);
  // Placing v to maximize the cut against already placed vertices keeps the
  // conditional expectation of the final cut non-decreasing; unplaced edges
  // contribute half their mass either way.
  for (int v = 0; v < graph.num_vertices; ++v) {
    Rational to_s = 0, to_t = 0;
    for (const auto& [other, mass] : incident[v]) {
      if (other >= v) continue;
      (p.side[other] ? to_t : to_s) += mass;
    }
    p.side[v] = to_s > to_t;  // tie goes to S
  }
  return {cut_weight(graph, p), p, 2.0};
}

// ---------------------------------------------------------------------------
// Set cover
// ---------------------------------------------------------------------------

namespace {

// Index of the set with minimum cost per newly covered element, or -1 when no
// set covers anything new. Ties break toward the smallest index.
int best_effectiveness(const SetCoverInstance& instance, const std::vector<bool>& covered) {
  int best = -1;
  Rational best_cost = 0;
  std::int64_t best_new = 0;
  for (int i = 0; i < instance.num_sets(); ++i) {
    std::int64_t fresh = 0;
    for (int element : instance.sets[i])
      if (!covered[element - 1]) ++fresh;
    if (fresh == 0) continue;
    if (best < 0 || instance.costs[i] * best_new < best_cost * fresh) {
      best = i;
      best_cost = instance.costs[i];
      best_new = fresh;
    }
  }
  return best;
}

}  // namespace

ApproxOutcome<std::vector<int>> setcover_greedy(const SetCoverInstance& instance) {
  validate_set_cover(instance);
  std::vector<bool> covered(static_cast<std::size_t>(instance.universe_size), false);
  int remaining = instance.universe_size;
  std::vector<int> chosen;
  while (remaining > 0) {
    int pick = best_effectiveness(instance, covered);
    if (pick < 0) fail("setcover_greedy: instance does not cover the universe");
    chosen.push_back(pick);
    for (int element : instance.sets[pick]) {
      if (!covered[element - 1]) {
        covered[element - 1] = true;
        --remaining;
      }
    }
  }
  double harmonic = 0.0;
  for (int i = 1; i <= instance.universe_size; ++i) harmonic += 1.0 / i;
  return {cover_cost(instance, chosen), chosen, harmonic};
}

SetCoverRoundingResult setcover_lp_rounding(const SetCoverInstance& instance,
                                            const RoundingParams& params) {
  validate_set_cover(instance);
  validate_rounding_params(params);
  const int k = instance.num_sets();
  const int n = instance.universe_size;

  LpProblem lp;
  lp.objective.resize(k);
  for (int i = 0; i < k; ++i) lp.objective[i] = to_double(instance.costs[i]);
  lp.lower.assign(k, 0.0);
  lp.upper.assign(k, 1.0);
  for (int element = 1; element <= n; ++element) {
    LpConstraint row;
    row.coeffs.assign(k, 0.0);
    for (int i = 0; i < k; ++i)
      if (std::find(instance.sets[i].begin(), instance.sets[i].end(), element) !=
          instance.sets[i].end())
        row.coeffs[i] = 1.0;
    row.rel = Relation::GreaterEq;
    row.rhs = 1.0;
    lp.constraints.push_back(std::move(row));
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw LpError("setcover_lp_rounding: relaxation did not solve to optimality");

  SetCoverRoundingResult result;
  result.lp_objective = sol.objective_value;
  result.rounds = std::max(1, static_cast<int>(std::ceil(params.d * std::log(n + 1))));

  std::vector<bool> selected(static_cast<std::size_t>(k), false);
  for (int round = 0; round < result.rounds; ++round) {
    SplitMix64 rng = stream_for_trial(params.seed, static_cast<std::uint64_t>(round));
    for (int i = 0; i < k; ++i) {
      double p = std::clamp(sol.values[i], 0.0, 1.0);
      if (rng.next_double() < p) selected[i] = true;
    }
  }

  std::vector<int> chosen;
  for (int i = 0; i < k; ++i)
    if (selected[i]) chosen.push_back(i);
  if (!is_cover(instance, chosen)) {
    result.repair_used = true;
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (int i : chosen)
      for (int element : instance.sets[i]) covered[element - 1] = true;
    while (std::find(covered.begin(), covered.end(), false) != covered.end()) {
      int pick = best_effectiveness(instance, covered);
      if (pick < 0) fail("setcover_lp_rounding: repair cannot complete a cover");
      chosen.push_back(pick);
      for (int element : instance.sets[pick]) covered[element - 1] = true;
    }
  }

  result.outcome.value = cover_cost(instance, chosen);
  result.outcome.witness = std::move(chosen);
  result.outcome.guarantee = result.rounds;
  return result;
}

// ---------------------------------------------------------------------------
// Metric TSP
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// MST with deterministic tie-break on (distance, u, v).
std::vector<std::pair<int, int>> minimum_spanning_tree(const MetricInstance& metric) {
  const int n = metric.num_points;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    double da = metric.dist[a.first][a.second];
    double db = metric.dist[b.first][b.second];
    if (da != db) return da < db;
    return a < b;
  });
  UnionFind uf(n);
  std::vector<std::pair<int, int>> tree;
  for (const auto& [u, v] : pairs)
    if (uf.unite(u, v)) {
      tree.emplace_back(u, v);
      if (static_cast<int>(tree.size()) == n - 1) break;
    }
  return tree;
}

std::vector<int> shortcut_first_occurrences(const std::vector<int>& walk, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> tour;
  for (int v : walk) {
    if (!seen[v]) {
      seen[v] = true;
      tour.push_back(v);
    }
  }
  return tour;
}

}  // namespace

ApproxOutcome<std::vector<int>, double> tsp_double_tree(const MetricInstance& metric) {
  validate_metric(metric);
  if (metric.num_points < 3) fail("tsp_double_tree: needs at least 3 points");
  const auto tree = minimum_spanning_tree(metric);
  std::vector<std::vector<int>> children(metric.num_points);
  for (const auto& [u, v] : tree) {
    children[u].push_back(v);
    children[v].push_back(u);
  }
  for (auto& list : children) std::sort(list.begin(), list.end());

  std::vector<int> preorder;
  std::vector<bool> visited(static_cast<std::size_t>(metric.num_points), false);
  auto dfs = [&](auto&& self, int v) -> void {
    visited[v] = true;
    preorder.push_back(v);
    for (int next : children[v])
      if (!visited[next]) self(self, next);
  };
  dfs(dfs, 0);
  return {tour_length(metric, preorder), preorder, 2.0};
}

ApproxOutcome<std::vector<int>, double> tsp_christofides(const MetricInstance& metric,
                                                         int max_odd_vertices) {
  validate_metric(metric);
  if (metric.num_points < 3) fail("tsp_christofides: needs at least 3 points");
  const auto tree = minimum_spanning_tree(metric);

  std::vector<int> degree(metric.num_points, 0);
  for (const auto& [u, v] : tree) {
    ++degree[u];
    ++degree[v];
  }
  std::vector<int> odd;
  for (int v = 0; v < metric.num_points; ++v)
    if (degree[v] % 2 == 1) odd.push_back(v);
  const int o = static_cast<int>(odd.size());
  if (o > max_odd_vertices)
    throw LimitError("tsp_christofides: " + std::to_string(o) +
                     " odd-degree vertices exceeds limit " + std::to_string(max_odd_vertices));

  // Exact minimum perfect matching over the odd vertices by subset DP.
  std::vector<std::pair<int, int>> matching;
  if (o > 0) {
    const std::uint32_t full = (std::uint32_t{1} << o) - 1;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(full + 1, inf);
    std::vector<std::pair<int, int>> choice(full + 1, {-1, -1});
    dp[0] = 0.0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      int i = std::countr_zero(mask);
      if (!((mask >> i) & 1)) continue;
      for (int j = i + 1; j < o; ++j) {
        if (!((mask >> j) & 1)) continue;
        std::uint32_t rest = mask ^ (std::uint32_t{1} << i) ^ (std::uint32_t{1} << j);
        if (dp[rest] == inf) continue;
        double cand = dp[rest] + metric.dist[odd[i]][odd[j]];
        if (cand < dp[mask]) {
          dp[mask] = cand;
          choice[mask] = {i, j};
        }
      }
    }
    std::uint32_t mask = full;
    while (mask != 0) {
      auto [i, j] = choice[mask];
      matching.emplace_back(odd[i], odd[j]);
      mask ^= (std::uint32_t{1} << i) ^ (std::uint32_t{1} << j);
    }
  }

  // Eulerian multigraph: MST edges plus matching edges.
  struct EulerEdge {
    int to;
    int id;
  };
  std::vector<std::vector<EulerEdge>> adjacency(metric.num_points);
  int edge_id = 0;
  auto add_edge = [&](int u, int v) {
    adjacency[u].push_back({v, edge_id});
    adjacency[v].push_back({u, edge_id});
    ++edge_id;
  };
  for (const auto& [u, v] : tree) add_edge(u, v);
  for (const auto& [u, v] : matching) add_edge(u, v);
  for (auto& list : adjacency)
    std::sort(list.begin(), list.end(),
              [](const EulerEdge& a, const EulerEdge& b) { return std::pair(a.to, a.id) < std::pair(b.to, b.id); });

  std::vector<bool> used(static_cast<std::size_t>(edge_id), false);
  std::vector<std::size_t> next_arc(metric.num_points, 0);
  std::vector<int> stack{0};
  std::vector<int> circuit;
  while (!stack.empty()) {
    int v = stack.back();
    std::size_t& ptr = next_arc[v];
    while (ptr < adjacency[v].size() && used[adjacency[v][ptr].id]) ++ptr;
    if (ptr == adjacency[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      used[adjacency[v][ptr].id] = true;
      stack.push_back(adjacency[v][ptr].to);
    }
  }
  std::reverse(circuit.begin(), circuit.end());

  std::vector<int> tour = shortcut_first_occurrences(circuit, metric.num_points);
  return {tour_length(metric, tour), tour, 1.5};
}

// ---------------------------------------------------------------------------
// Congestion LP and the rounding pipeline
// ---------------------------------------------------------------------------

int congestion_lp_flow_var(const FlowNetwork& net, int commodity, int edge) {
  return commodity * net.num_edges() + edge;
}

int congestion_lp_r_var(const FlowNetwork& net) {
  return net.num_commodities() * net.num_edges();
}

LpProblem build_congestion_lp(const FlowNetwork& net) {
  validate_network(net);
  const int m = net.num_edges();
  const int k = net.num_commodities();
  const int num_vars = k * m + 1;
  const int r = congestion_lp_r_var(net);

  LpProblem lp;
  lp.objective.assign(num_vars, 0.0);
  lp.objective[r] = 1.0;

  for (int i = 0; i < k; ++i) {
    const Commodity& c = net.commodities[i];
    // Source first, then conservation for the remaining vertices in order.
    for (int pass = 0; pass < 2; ++pass) {
      for (int v = 0; v < net.num_vertices; ++v) {
        bool is_source = v == c.source;
        if (pass == 0 && !is_source) continue;
        if (pass == 1 && (is_source || v == c.sink)) continue;
        LpConstraint row;
        row.coeffs.assign(num_vars, 0.0);
        for (int e = 0; e < m; ++e) {
          if (net.edges[e].from == v) row.coeffs[congestion_lp_flow_var(net, i, e)] += 1.0;
          if (net.edges[e].to == v) row.coeffs[congestion_lp_flow_var(net, i, e)] -= 1.0;
        }
        row.rel = Relation::Equal;
        row.rhs = is_source ? 1.0 : 0.0;
        lp.constraints.push_back(std::move(row));
      }
    }
  }
  for (int e = 0; e < m; ++e) {
    LpConstraint row;
    row.coeffs.assign(num_vars, 0.0);
    for (int i = 0; i < k; ++i) row.coeffs[congestion_lp_flow_var(net, i, e)] = 1.0;
    row.coeffs[r] = -static_cast<double>(net.edges[e].capacity);
    row.rel = Relation::LessEq;
    row.rhs = 0.0;
    lp.constraints.push_back(std::move(row));
  }
  return lp;
}

namespace {

// Sorted adjacency so walks and cycle searches are deterministic.
std::vector<std::vector<int>> sorted_out_edges(const FlowNetwork& net) {
  std::vector<std::vector<int>> adjacency(net.num_vertices);
  for (int e = 0; e < net.num_edges(); ++e) adjacency[net.edges[e].from].push_back(e);
  for (std::vector<int>& list : adjacency)
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      return std::pair(net.edges[a].to, a) < std::pair(net.edges[b].to, b);
    });
  return adjacency;
}

// Finds a directed cycle whose edges all satisfy `positive`, as edge indices;
// empty when none exists.
template <typename Positive>
std::vector<int> find_positive_cycle(const FlowNetwork& net,
                                     const std::vector<std::vector<int>>& adjacency,
                                     Positive&& positive) {
  enum class Color { White, Gray, Black };
  std::vector<Color> color(net.num_vertices, Color::White);
  std::vector<int> cycle;
  std::vector<int> path_edges;
  std::vector<int> path_vertices;

  auto dfs = [&](auto&& self, int v) -> bool {
    color[v] = Color::Gray;
    path_vertices.push_back(v);
    for (int e : adjacency[v]) {
      if (!positive(e)) continue;
      int to = net.edges[e].to;
      if (color[to] == Color::Gray) {
        path_edges.push_back(e);
        auto start = std::find(path_vertices.begin(), path_vertices.end(), to);
        std::size_t offset = static_cast<std::size_t>(start - path_vertices.begin());
        cycle.assign(path_edges.begin() + offset, path_edges.end());
        return true;
      }
      if (color[to] == Color::White) {
        path_edges.push_back(e);
        if (self(self, to)) return true;
        path_edges.pop_back();
      }
    }
    color[v] = Color::Black;
    path_vertices.pop_back();
    return false;
  };

  for (int v = 0; v < net.num_vertices; ++v) {
    if (color[v] != Color::White) continue;
    if (dfs(dfs, v)) return cycle;
  }
  return {};
}

}  // namespace

FractionalFlow make_acyclic(const FractionalFlow& flow, const FlowNetwork& net) {
  if (flow.values.size() != net.commodities.size())
    fail("make_acyclic: commodity count mismatch");
  FractionalFlow out = flow;
  const auto adjacency = sorted_out_edges(net);
  for (std::vector<Rational>& x : out.values) {
    if (x.size() != net.edges.size()) fail("make_acyclic: edge count mismatch");
    for (;;) {
      std::vector<int> cycle =
          find_positive_cycle(net, adjacency, [&](int e) { return x[e] > 0; });
      if (cycle.empty()) break;
      Rational delta = x[cycle.front()];
      for (int e : cycle) delta = std::min(delta, x[e]);
      for (int e : cycle) x[e] -= delta;
    }
  }
  return out;
}

PathDistribution path_decompose(const FractionalFlow& flow, const FlowNetwork& net,
                                int commodity) {
  if (commodity < 0 || commodity >= net.num_commodities())
    fail("path_decompose: commodity index out of range");
  if (flow.values.size() != net.commodities.size() ||
      flow.values[commodity].size() != net.edges.size())
    fail("path_decompose: flow shape mismatch");

  std::vector<Rational> x = flow.values[commodity];
  for (const Rational& value : x)
    if (value < 0) fail("path_decompose: negative flow value");

  const Commodity& c = net.commodities[commodity];
  auto net_out = [&](int v) {
    Rational total = 0;
    for (int e = 0; e < net.num_edges(); ++e) {
      if (net.edges[e].from == v) total += x[e];
      if (net.edges[e].to == v) total -= x[e];
    }
    return total;
  };
  for (int v = 0; v < net.num_vertices; ++v) {
    if (v == c.source || v == c.sink) continue;
    if (net_out(v) != 0) fail("path_decompose: flow violates conservation");
  }
  if (net_out(c.source) != 1) fail("path_decompose: flow value is not 1");

  const auto adjacency = sorted_out_edges(net);
  if (!find_positive_cycle(net, adjacency, [&](int e) { return x[e] > 0; }).empty())
    fail("path_decompose: flow contains a positive cycle");

  PathDistribution dist;
  dist.commodity = commodity;
  Rational remaining = 1;
  while (remaining > 0) {
    // Walk the lexicographically smallest positive path; conservation plus
    // acyclicity guarantee it reaches the sink without backtracking.
    PathEntry entry;
    int v = c.source;
    entry.vertices.push_back(v);
    while (v != c.sink) {
      int chosen = -1;
      for (int e : adjacency[v]) {
        if (x[e] > 0) {
          chosen = e;
          break;
        }
      }
      if (chosen < 0) throw std::logic_error("path_decompose: walk stuck before the sink");
      entry.edges.push_back(chosen);
      v = net.edges[chosen].to;
      entry.vertices.push_back(v);
      if (entry.vertices.size() > static_cast<std::size_t>(net.num_vertices) + 1)
        throw std::logic_error("path_decompose: walk revisits a vertex");
    }
    Rational pi = x[entry.edges.front()];
    for (int e : entry.edges) pi = std::min(pi, x[e]);
    for (int e : entry.edges) x[e] -= pi;
    entry.probability = pi;
    remaining -= pi;
    dist.entries.push_back(std::move(entry));
    if (dist.entries.size() > static_cast<std::size_t>(net.num_edges()))
      throw std::logic_error("path_decompose: emitted more paths than edges");
  }
  return dist;
}

FractionalFlow rationalize_unit_flow(const FlowNetwork& net, const std::vector<double>& lp_values,
                                     double drop_tol) {
  const int m = net.num_edges();
  const int k = net.num_commodities();
  if (static_cast<int>(lp_values.size()) < k * m)
    fail("rationalize_unit_flow: value vector too short");

  const auto adjacency = sorted_out_edges(net);
  FractionalFlow out;
  out.values.assign(k, std::vector<Rational>(m, Rational(0)));

  for (int i = 0; i < k; ++i) {
    std::vector<double> x(m);
    for (int e = 0; e < m; ++e) {
      double value = lp_values[congestion_lp_flow_var(net, i, e)];
      x[e] = value > drop_tol ? value : 0.0;
    }
    // Cancel floating-point cycles so extracted paths live in an acyclic
    // support.
    for (;;) {
      std::vector<int> cycle =
          find_positive_cycle(net, adjacency, [&](int e) { return x[e] > drop_tol; });
      if (cycle.empty()) break;
      double delta = x[cycle.front()];
      for (int e : cycle) delta = std::min(delta, x[e]);
      for (int e : cycle) x[e] = x[e] == delta ? 0.0 : x[e] - delta;
    }

    // Greedy path extraction with backtracking: conservation only holds
    // approximately here.
    const Commodity& c = net.commodities[i];
    std::vector<std::pair<std::vector<int>, double>> paths;
    for (;;) {
      std::vector<int> path;
      std::vector<bool> on_path(net.num_vertices, false);
      auto dfs = [&](auto&& self, int v) -> bool {
        if (v == c.sink) return true;
        on_path[v] = true;
        for (int e : adjacency[v]) {
          if (x[e] <= drop_tol || on_path[net.edges[e].to]) continue;
          path.push_back(e);
          if (self(self, net.edges[e].to)) return true;
          path.pop_back();
        }
        on_path[v] = false;
        return false;
      };
      if (!dfs(dfs, c.source)) break;
      double w = x[path.front()];
      for (int e : path) w = std::min(w, x[e]);
      for (int e : path) x[e] = x[e] == w ? 0.0 : x[e] - w;
      paths.emplace_back(std::move(path), w);
    }

    // Snap the weights to a common dyadic denominator and renormalize; the
    // result is an exact unit flow supported on the extracted paths.
    const double denom = 0x1p40;
    std::vector<std::pair<std::vector<int>, std::int64_t>> snapped;
    BigInt total = 0;
    double extracted = 0.0;
    for (auto& [path, w] : paths) {
      extracted += w;
      auto units = static_cast<std::int64_t>(std::llround(w * denom));
      if (units <= 0) continue;
      total += units;
      snapped.emplace_back(std::move(path), units);
    }
    if (snapped.empty() || extracted < 0.5)
      throw LpError("rationalize_unit_flow: could not extract a unit flow for commodity " +
                    std::to_string(i));
    for (const auto& [path, units] : snapped) {
      Rational pi(BigInt(units), total);
      for (int e : path) out.values[i][e] += pi;
    }
  }
  return out;
}

double congestion_alpha(int num_edges) {
  double two_m = 2.0 * num_edges;
  return 2.0 * std::log(two_m) / std::log(std::log(two_m));
}

const PathEntry& sample_path(const PathDistribution& dist, std::uint64_t uniform_bits) {
  if (dist.entries.empty()) throw std::invalid_argument("sample_path: empty distribution");
  static const Rational kOne64 = Rational(BigInt(1) << 64);
  Rational u = Rational(BigInt(uniform_bits)) / kOne64;
  Rational cumulative = 0;
  for (const PathEntry& entry : dist.entries) {
    cumulative += entry.probability;
    if (u < cumulative) return entry;
  }
  return dist.entries.back();
}

CongestionRoundResult congestion_round(const FlowNetwork& net, const RoundingParams& params) {
  validate_network(net);
  validate_rounding_params(params);

  LpSolution sol = solve_lp(build_congestion_lp(net));
  if (sol.status != LpStatus::Optimal)
    throw LpError("congestion_round: congestion LP did not solve to optimality");

  FractionalFlow flow = make_acyclic(rationalize_unit_flow(net, sol.values), net);

  CongestionRoundResult result;
  result.lp_bound = sol.objective_value;
  result.alpha = congestion_alpha(net.num_edges());
  for (int i = 0; i < net.num_commodities(); ++i)
    result.distributions.push_back(path_decompose(flow, net, i));

  Rational best = -1;
  for (int t = 0; t < params.trials; ++t) {
    SplitMix64 rng = stream_for_trial(params.seed, static_cast<std::uint64_t>(t));
    std::vector<std::vector<int>> tuple;
    for (const PathDistribution& dist : result.distributions)
      tuple.push_back(sample_path(dist, rng.next()).edges);
    Rational congestion = congestion_value(net, tuple);
    result.trial_congestions.push_back(congestion);
    if (best < 0 || congestion < best) {
      best = congestion;
      result.outcome.witness = std::move(tuple);
    }
  }
  result.outcome.value = best;
  result.outcome.guarantee = result.alpha;
  return result;
}

}  // namespace apx
