#include "apxkit/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>

namespace apx {

namespace {

[[noreturn]] void limit(const std::string& message) { throw LimitError(message); }

struct ClauseMasks {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

std::vector<ClauseMasks> clause_masks(const CnfFormula& formula) {
  std::vector<ClauseMasks> masks;
  masks.reserve(formula.clauses.size());
  for (const Clause& clause : formula.clauses) {
    ClauseMasks m;
    for (Literal lit : clause) {
      std::uint32_t bit = std::uint32_t{1} << (std::abs(lit) - 1);
      (lit > 0 ? m.pos : m.neg) |= bit;
    }
    masks.push_back(m);
  }
  return masks;
}

}  // namespace

OptResult<Assignment, int> opt_maxsat(const CnfFormula& formula, const OracleLimits& limits) {
  validate_cnf(formula);
  if (formula.num_vars > limits.max_sat_vars)
    limit("opt_maxsat: " + std::to_string(formula.num_vars) + " variables exceeds limit " +
          std::to_string(limits.max_sat_vars));
  const std::vector<ClauseMasks> masks = clause_masks(formula);
  int best = -1;
  std::uint32_t best_mask = 0;
  const std::uint32_t space = std::uint32_t{1} << formula.num_vars;
  for (std::uint32_t a = 0; a < space; ++a) {
    int satisfied = 0;
    for (const ClauseMasks& m : masks)
      if ((a & m.pos) | (~a & m.neg)) ++satisfied;
    if (satisfied > best) {
      best = satisfied;
      best_mask = a;
    }
  }
  return {best, Assignment::from_mask(formula.num_vars, best_mask)};
}

OptResult<Assignment, int> opt_nae3sat(const CnfFormula& formula, const OracleLimits& limits) {
  validate_cnf(formula);
  if (formula.num_vars > limits.max_sat_vars)
    limit("opt_nae3sat: " + std::to_string(formula.num_vars) + " variables exceeds limit " +
          std::to_string(limits.max_sat_vars));
  const std::vector<ClauseMasks> masks = clause_masks(formula);
  for (const Clause& clause : formula.clauses)
    if (clause.size() < 2) throw std::invalid_argument("opt_nae3sat: clause of width 1");
  int best = -1;
  std::uint32_t best_mask = 0;
  const std::uint32_t space = std::uint32_t{1} << formula.num_vars;
  for (std::uint32_t a = 0; a < space; ++a) {
    int satisfied = 0;
    for (const ClauseMasks& m : masks) {
      bool some_true = ((a & m.pos) | (~a & m.neg)) != 0;
      bool some_false = ((~a & m.pos) | (a & m.neg)) != 0;
      if (some_true && some_false) ++satisfied;
    }
    if (satisfied > best) {
      best = satisfied;
      best_mask = a;
    }
  }
  return {best, Assignment::from_mask(formula.num_vars, best_mask)};
}

OptResult<Partition, Rational> opt_maxcut(const MultiGraph& graph, const OracleLimits& limits) {
  validate_multigraph(graph);
  if (graph.num_vertices > limits.max_cut_vertices)
    limit("opt_maxcut: " + std::to_string(graph.num_vertices) + " vertices exceeds limit " +
          std::to_string(limits.max_cut_vertices));
  if (graph.num_vertices == 0) return {Rational(0), Partition{}};

  // Integer fast path when every edge mass is integral.
  bool integral = true;
  std::vector<std::int64_t> int_mass(graph.edges.size(), 0);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    Rational mass = Rational(graph.edges[e].multiplicity) * graph.edges[e].weight;
    if (denominator(mass) != 1 || numerator(mass) > std::numeric_limits<std::int32_t>::max()) {
      integral = false;
      break;
    }
    int_mass[e] = numerator(mass).convert_to<std::int64_t>();
  }

  const std::uint64_t space = std::uint64_t{1} << (graph.num_vertices - 1);
  std::uint64_t best_mask = 0;
  if (integral) {
    std::int64_t best = -1;
    for (std::uint64_t mask = 0; mask < space; ++mask) {
      std::int64_t cut = 0;
      for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const MultiGraphEdge& edge = graph.edges[e];
        bool su = edge.u != 0 && ((mask >> (edge.u - 1)) & 1);
        bool sv = edge.v != 0 && ((mask >> (edge.v - 1)) & 1);
        if (su != sv) cut += int_mass[e];
      }
      if (cut > best) {
        best = cut;
        best_mask = mask;
      }
    }
  } else {
    Rational best = -1;
    for (std::uint64_t mask = 0; mask < space; ++mask) {
      Rational cut = 0;
      for (const MultiGraphEdge& edge : graph.edges) {
        bool su = edge.u != 0 && ((mask >> (edge.u - 1)) & 1);
        bool sv = edge.v != 0 && ((mask >> (edge.v - 1)) & 1);
        if (su != sv) cut += Rational(edge.multiplicity) * edge.weight;
      }
      if (cut > best) {
        best = cut;
        best_mask = mask;
      }
    }
  }
  Partition witness = Partition::from_mask(graph.num_vertices, best_mask << 1);
  return {cut_weight(graph, witness), witness};
}

OptResult<std::vector<int>, Rational> opt_setcover(const SetCoverInstance& instance,
                                                   const OracleLimits& limits) {
  validate_set_cover(instance);
  const int k = instance.num_sets();
  if (k > limits.max_cover_sets)
    limit("opt_setcover: " + std::to_string(k) + " sets exceeds limit " +
          std::to_string(limits.max_cover_sets));

  const int blocks = (instance.universe_size + 63) / 64;
  std::vector<std::vector<std::uint64_t>> set_bits(k, std::vector<std::uint64_t>(blocks, 0));
  for (int i = 0; i < k; ++i)
    for (int element : instance.sets[i])
      set_bits[i][(element - 1) / 64] |= std::uint64_t{1} << ((element - 1) % 64);
  std::vector<std::uint64_t> full(blocks, 0);
  for (int e = 0; e < instance.universe_size; ++e) full[e / 64] |= std::uint64_t{1} << (e % 64);

  bool found = false;
  Rational best_cost = 0;
  std::uint32_t best_mask = 0;
  std::vector<std::uint64_t> covered(blocks);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    std::fill(covered.begin(), covered.end(), 0);
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1)
        for (int b = 0; b < blocks; ++b) covered[b] |= set_bits[i][b];
    if (covered != full) continue;
    Rational cost = 0;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1) cost += instance.costs[i];
    if (!found || cost < best_cost) {
      found = true;
      best_cost = cost;
      best_mask = mask;
    }
  }
  std::vector<int> witness;
  for (int i = 0; i < k; ++i)
    if ((best_mask >> i) & 1) witness.push_back(i);
  return {best_cost, witness};
}

OptResult<std::vector<int>, int> opt_vertexcover(const MultiGraph& graph,
                                                 const OracleLimits& limits) {
  validate_multigraph(graph);
  if (graph.num_vertices > limits.max_vc_vertices)
    limit("opt_vertexcover: " + std::to_string(graph.num_vertices) + " vertices exceeds limit " +
          std::to_string(limits.max_vc_vertices));
  int best = graph.num_vertices + 1;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (std::uint64_t{1} << graph.num_vertices); ++mask) {
    int size = std::popcount(mask);
    if (size >= best) continue;
    bool covers = true;
    for (const MultiGraphEdge& e : graph.edges) {
      if (!((mask >> e.u) & 1) && !((mask >> e.v) & 1)) {
        covers = false;
        break;
      }
    }
    if (covers) {
      best = size;
      best_mask = mask;
    }
  }
  std::vector<int> witness;
  for (int v = 0; v < graph.num_vertices; ++v)
    if ((best_mask >> v) & 1) witness.push_back(v);
  return {best, witness};
}

OptResult<std::vector<int>, double> opt_tsp(const MetricInstance& metric,
                                            const OracleLimits& limits) {
  validate_metric(metric);
  const int n = metric.num_points;
  if (n > limits.max_tsp_points)
    limit("opt_tsp: " + std::to_string(n) + " points exceeds limit " +
          std::to_string(limits.max_tsp_points));
  if (n == 1) return {0.0, {0}};
  if (n == 2) {
    std::vector<int> tour{0, 1};
    return {tour_length(metric, tour), tour};
  }

  const double inf = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  // dp[mask][j]: shortest path 0 -> ... -> j visiting exactly `mask`.
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, inf));
  std::vector<std::vector<int>> parent(full + 1, std::vector<int>(n, -1));
  dp[1][0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1)) continue;
    for (int j = 0; j < n; ++j) {
      if (!((mask >> j) & 1) || dp[mask][j] == inf) continue;
      for (int next = 1; next < n; ++next) {
        if ((mask >> next) & 1) continue;
        std::uint32_t next_mask = mask | (std::uint32_t{1} << next);
        double cand = dp[mask][j] + metric.dist[j][next];
        if (cand < dp[next_mask][next]) {
          dp[next_mask][next] = cand;
          parent[next_mask][next] = j;
        }
      }
    }
  }
  double best = inf;
  int best_last = -1;
  for (int j = 1; j < n; ++j) {
    double cand = dp[full][j] + metric.dist[j][0];
    if (cand < best) {
      best = cand;
      best_last = j;
    }
  }
  std::vector<int> tour;
  std::uint32_t mask = full;
  int at = best_last;
  while (at != -1) {
    tour.push_back(at);
    int prev = parent[mask][at];
    mask ^= (std::uint32_t{1} << at);
    at = prev;
  }
  std::reverse(tour.begin(), tour.end());
  // Recompute from the witness so value and witness agree exactly.
  return {tour_length(metric, tour), tour};
}

std::vector<std::vector<int>> enumerate_simple_paths(const FlowNetwork& net, int source, int sink,
                                                     std::int64_t limit_count) {
  // Adjacency sorted by (target, edge index) so DFS emits paths in
  // lexicographic order of their vertex sequences.
  std::vector<std::vector<int>> adjacency(net.num_vertices);
  for (int e = 0; e < net.num_edges(); ++e) adjacency[net.edges[e].from].push_back(e);
  for (std::vector<int>& out : adjacency)
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      return std::pair(net.edges[a].to, a) < std::pair(net.edges[b].to, b);
    });

  std::vector<std::vector<int>> paths;
  std::vector<int> stack;
  std::vector<bool> on_path(net.num_vertices, false);

  auto dfs = [&](auto&& self, int v) -> void {
    if (v == sink) {
      paths.push_back(stack);
      if (static_cast<std::int64_t>(paths.size()) > limit_count)
        limit("enumerate_simple_paths: more than " + std::to_string(limit_count) + " paths");
      return;
    }
    on_path[v] = true;
    for (int e : adjacency[v]) {
      int to = net.edges[e].to;
      if (on_path[to]) continue;
      stack.push_back(e);
      self(self, to);
      stack.pop_back();
    }
    on_path[v] = false;
  };
  dfs(dfs, source);
  return paths;
}

OptResult<std::vector<std::vector<int>>, Rational> opt_congestion(const FlowNetwork& net,
                                                                  const OracleLimits& limits) {
  validate_network(net);
  const int k = net.num_commodities();
  std::vector<std::vector<std::vector<int>>> paths;
  std::int64_t tuples = 1;
  for (const Commodity& c : net.commodities) {
    paths.push_back(enumerate_simple_paths(net, c.source, c.sink, limits.max_paths_per_commodity));
    tuples *= static_cast<std::int64_t>(paths.back().size());
    if (tuples > limits.max_path_tuples)
      limit("opt_congestion: path tuple count exceeds " + std::to_string(limits.max_path_tuples));
  }

  std::vector<std::int64_t> load(net.edges.size(), 0);
  std::vector<int> choice(k, 0);
  std::vector<std::vector<int>> best_tuple;
  // Compare load/capacity fractions by cross-multiplication.
  std::int64_t best_num = -1, best_den = 1;

  auto evaluate = [&]() {
    std::int64_t num = 0, den = 1;
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      if (load[e] == 0) continue;
      if (load[e] * den > num * net.edges[e].capacity) {
        num = load[e];
        den = net.edges[e].capacity;
      }
    }
    if (best_num < 0 || num * best_den < best_num * den) {
      best_num = num;
      best_den = den;
      best_tuple.clear();
      for (int i = 0; i < k; ++i) best_tuple.push_back(paths[i][choice[i]]);
    }
  };

  auto recurse = [&](auto&& self, int i) -> void {
    if (i == k) {
      evaluate();
      return;
    }
    for (std::size_t p = 0; p < paths[i].size(); ++p) {
      choice[i] = static_cast<int>(p);
      for (int e : paths[i][p]) ++load[e];
      self(self, i + 1);
      for (int e : paths[i][p]) --load[e];
    }
  };
  recurse(recurse, 0);

  if (k == 0) return {Rational(0), {}};
  return {Rational(best_num, best_den), best_tuple};
}

}  // namespace apx
