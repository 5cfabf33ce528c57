#include "apxkit/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace apx {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

}  // namespace

// ---------------------------------------------------------------------------
// CNF
// ---------------------------------------------------------------------------

CnfFormula make_cnf(int num_vars, std::vector<Clause> clauses, int max_clause_width) {
  CnfFormula formula;
  formula.num_vars = num_vars;
  formula.clauses = std::move(clauses);
  int widest = 1;
  for (const Clause& clause : formula.clauses)
    widest = std::max(widest, static_cast<int>(clause.size()));
  formula.max_clause_width = max_clause_width > 0 ? max_clause_width : widest;
  validate_cnf(formula);
  return formula;
}

void validate_cnf(const CnfFormula& formula) {
  if (formula.num_vars <= 0) fail("cnf: num_vars must be positive");
  if (formula.max_clause_width <= 0) fail("cnf: max_clause_width must be positive");
  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci) {
    const Clause& clause = formula.clauses[ci];
    if (clause.empty()) fail("cnf: clause " + std::to_string(ci + 1) + " is empty");
    if (static_cast<int>(clause.size()) > formula.max_clause_width)
      fail("cnf: clause " + std::to_string(ci + 1) + " exceeds max width");
    std::vector<int> vars;
    for (Literal lit : clause) {
      int var = std::abs(lit);
      if (var < 1 || var > formula.num_vars)
        fail("cnf: clause " + std::to_string(ci + 1) + " references variable " +
             std::to_string(var) + " outside [1, " + std::to_string(formula.num_vars) + "]");
      vars.push_back(var);
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      fail("cnf: clause " + std::to_string(ci + 1) + " repeats a variable");
  }
}

Assignment Assignment::constant(int num_vars, bool value) {
  return Assignment{std::vector<bool>(static_cast<std::size_t>(num_vars), value)};
}

Assignment Assignment::from_mask(int num_vars, std::uint64_t mask) {
  Assignment a;
  a.values.resize(static_cast<std::size_t>(num_vars));
  for (int i = 0; i < num_vars; ++i) a.values[i] = (mask >> i) & 1;
  return a;
}

std::uint64_t Assignment::to_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i]) mask |= (std::uint64_t{1} << i);
  return mask;
}

Assignment complement(const Assignment& a) {
  Assignment out = a;
  out.values.flip();
  return out;
}

bool literal_value(const Assignment& a, Literal lit) {
  int var = std::abs(lit);
  if (var < 1 || var > a.size()) fail("literal_value: variable out of range");
  bool value = a.values[var - 1];
  return lit > 0 ? value : !value;
}

namespace {

void require_matching_length(const CnfFormula& formula, const Assignment& a) {
  if (a.size() != formula.num_vars)
    fail("assignment length " + std::to_string(a.size()) + " does not match num_vars " +
         std::to_string(formula.num_vars));
}

}  // namespace

int count_satisfied(const CnfFormula& formula, const Assignment& a) {
  require_matching_length(formula, a);
  int satisfied = 0;
  for (const Clause& clause : formula.clauses) {
    for (Literal lit : clause) {
      if (literal_value(a, lit)) {
        ++satisfied;
        break;
      }
    }
  }
  return satisfied;
}

int count_nae_satisfied(const CnfFormula& formula, const Assignment& a) {
  require_matching_length(formula, a);
  int satisfied = 0;
  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci) {
    const Clause& clause = formula.clauses[ci];
    if (clause.size() < 2)
      fail("count_nae_satisfied: clause " + std::to_string(ci + 1) + " has width 1");
    bool seen_true = false;
    bool seen_false = false;
    for (Literal lit : clause) (literal_value(a, lit) ? seen_true : seen_false) = true;
    if (seen_true && seen_false) ++satisfied;
  }
  return satisfied;
}

int total_literal_occurrences(const CnfFormula& formula) {
  int total = 0;
  for (const Clause& clause : formula.clauses) total += static_cast<int>(clause.size());
  return total;
}

// ---------------------------------------------------------------------------
// Multigraphs
// ---------------------------------------------------------------------------

MultiGraph make_multigraph(int num_vertices, std::vector<MultiGraphEdge> edges,
                           std::map<int, Literal> labels) {
  MultiGraph graph;
  graph.num_vertices = num_vertices;
  graph.edges = std::move(edges);
  graph.labels = std::move(labels);
  validate_multigraph(graph);
  return graph;
}

void validate_multigraph(const MultiGraph& graph) {
  if (graph.num_vertices < 0) fail("multigraph: negative vertex count");
  for (std::size_t ei = 0; ei < graph.edges.size(); ++ei) {
    const MultiGraphEdge& e = graph.edges[ei];
    if (e.u == e.v) fail("multigraph: edge " + std::to_string(ei + 1) + " is a self-loop");
    if (e.u < 0 || e.u >= graph.num_vertices || e.v < 0 || e.v >= graph.num_vertices)
      fail("multigraph: edge " + std::to_string(ei + 1) + " endpoint out of range");
    if (e.multiplicity < 1)
      fail("multigraph: edge " + std::to_string(ei + 1) + " multiplicity must be >= 1");
    if (e.weight <= 0)
      fail("multigraph: edge " + std::to_string(ei + 1) + " weight must be positive");
  }
  for (const auto& [vertex, label] : graph.labels) {
    if (vertex < 0 || vertex >= graph.num_vertices) fail("multigraph: label vertex out of range");
    if (label == 0) fail("multigraph: label literal must be nonzero");
  }
}

Rational MultiGraph::total_edge_mass() const {
  Rational total = 0;
  for (const MultiGraphEdge& e : edges) total += Rational(e.multiplicity) * e.weight;
  return total;
}

Partition Partition::from_mask(int num_vertices, std::uint64_t mask) {
  Partition p;
  p.side.resize(static_cast<std::size_t>(num_vertices));
  for (int i = 0; i < num_vertices; ++i) p.side[i] = (mask >> i) & 1;
  return p;
}

Partition Partition::complement() const {
  Partition out = *this;
  out.side.flip();
  return out;
}

Rational cut_weight(const MultiGraph& graph, const Partition& partition) {
  if (partition.size() != graph.num_vertices)
    fail("cut_weight: partition length " + std::to_string(partition.size()) +
         " does not match vertex count " + std::to_string(graph.num_vertices));
  Rational total = 0;
  for (const MultiGraphEdge& e : graph.edges)
    if (partition.side[e.u] != partition.side[e.v]) total += Rational(e.multiplicity) * e.weight;
  return total;
}

// ---------------------------------------------------------------------------
// Set cover
// ---------------------------------------------------------------------------

SetCoverInstance make_set_cover(int universe_size, std::vector<std::vector<int>> sets,
                                std::vector<Rational> costs) {
  SetCoverInstance instance;
  instance.universe_size = universe_size;
  instance.sets = std::move(sets);
  instance.costs = std::move(costs);
  validate_set_cover(instance);
  return instance;
}

void validate_set_cover(const SetCoverInstance& instance) {
  if (instance.universe_size <= 0) fail("setcover: universe size must be positive");
  if (instance.sets.size() != instance.costs.size())
    fail("setcover: set and cost counts differ");
  std::vector<bool> covered(static_cast<std::size_t>(instance.universe_size), false);
  for (std::size_t si = 0; si < instance.sets.size(); ++si) {
    const std::vector<int>& set = instance.sets[si];
    if (set.empty()) fail("setcover: set " + std::to_string(si + 1) + " is empty");
    for (int element : set) {
      if (element < 1 || element > instance.universe_size)
        fail("setcover: set " + std::to_string(si + 1) + " element out of range");
      covered[element - 1] = true;
    }
    if (instance.costs[si] <= 0)
      fail("setcover: set " + std::to_string(si + 1) + " cost must be positive");
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    fail("setcover: union of sets does not cover the universe");
}

bool is_cover(const SetCoverInstance& instance, const std::vector<int>& chosen) {
  std::vector<bool> covered(static_cast<std::size_t>(instance.universe_size), false);
  for (int index : chosen) {
    if (index < 0 || index >= instance.num_sets()) fail("is_cover: set index out of range");
    for (int element : instance.sets[index]) covered[element - 1] = true;
  }
  return std::find(covered.begin(), covered.end(), false) == covered.end();
}

Rational cover_cost(const SetCoverInstance& instance, const std::vector<int>& chosen) {
  std::vector<bool> used(instance.sets.size(), false);
  Rational total = 0;
  for (int index : chosen) {
    if (index < 0 || index >= instance.num_sets()) fail("cover_cost: set index out of range");
    if (!used[index]) {
      used[index] = true;
      total += instance.costs[index];
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Flow networks
// ---------------------------------------------------------------------------

FlowNetwork make_network(int num_vertices, std::vector<FlowEdge> edges,
                         std::vector<Commodity> commodities) {
  FlowNetwork net;
  net.num_vertices = num_vertices;
  net.edges = std::move(edges);
  net.commodities = std::move(commodities);
  validate_network(net);
  return net;
}

void validate_network(const FlowNetwork& net) {
  if (net.num_vertices <= 0) fail("network: vertex count must be positive");
  for (std::size_t ei = 0; ei < net.edges.size(); ++ei) {
    const FlowEdge& e = net.edges[ei];
    if (e.from == e.to) fail("network: edge " + std::to_string(ei + 1) + " is a self-loop");
    if (e.from < 0 || e.from >= net.num_vertices || e.to < 0 || e.to >= net.num_vertices)
      fail("network: edge " + std::to_string(ei + 1) + " endpoint out of range");
    if (e.capacity < 1)
      fail("network: edge " + std::to_string(ei + 1) + " capacity must be >= 1");
  }
  for (std::size_t ki = 0; ki < net.commodities.size(); ++ki) {
    const Commodity& c = net.commodities[ki];
    if (c.source < 0 || c.source >= net.num_vertices || c.sink < 0 || c.sink >= net.num_vertices)
      fail("network: commodity " + std::to_string(ki + 1) + " endpoint out of range");
    if (c.source == c.sink)
      fail("network: commodity " + std::to_string(ki + 1) + " has equal endpoints");
    if (!path_exists(net, c.source, c.sink))
      fail("network: commodity " + std::to_string(ki + 1) + " has no source-sink path");
  }
}

bool path_exists(const FlowNetwork& net, int source, int sink) {
  std::vector<bool> seen(static_cast<std::size_t>(net.num_vertices), false);
  std::deque<int> queue{source};
  seen[source] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == sink) return true;
    for (const FlowEdge& e : net.edges) {
      if (e.from == v && !seen[e.to]) {
        seen[e.to] = true;
        queue.push_back(e.to);
      }
    }
  }
  return false;
}

void validate_unit_flow(const FlowNetwork& net, const FractionalFlow& flow) {
  if (flow.values.size() != net.commodities.size())
    fail("flow: commodity count mismatch");
  for (std::size_t i = 0; i < flow.values.size(); ++i) {
    const std::vector<Rational>& x = flow.values[i];
    if (x.size() != net.edges.size()) fail("flow: edge count mismatch");
    for (const Rational& value : x)
      if (value < 0) fail("flow: negative value");
    const Commodity& c = net.commodities[i];
    for (int v = 0; v < net.num_vertices; ++v) {
      Rational net_out = 0;
      for (std::size_t e = 0; e < net.edges.size(); ++e) {
        if (net.edges[e].from == v) net_out += x[e];
        if (net.edges[e].to == v) net_out -= x[e];
      }
      if (v == c.source) {
        if (net_out != 1) fail("flow: commodity " + std::to_string(i + 1) + " source value != 1");
      } else if (v != c.sink) {
        if (net_out != 0)
          fail("flow: commodity " + std::to_string(i + 1) + " violates conservation at vertex " +
               std::to_string(v));
      }
    }
  }
}

Rational congestion_value(const FlowNetwork& net,
                          const std::vector<std::vector<int>>& edge_paths) {
  std::vector<std::int64_t> load(net.edges.size(), 0);
  for (const std::vector<int>& path : edge_paths) {
    for (int e : path) {
      if (e < 0 || e >= net.num_edges()) fail("congestion_value: edge index out of range");
      ++load[e];
    }
  }
  Rational best = 0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    if (load[e] == 0) continue;
    Rational ratio(load[e], net.edges[e].capacity);
    if (ratio > best) best = ratio;
  }
  return best;
}

std::vector<int> path_vertices(const FlowNetwork& net, const std::vector<int>& edge_path) {
  std::vector<int> vertices;
  if (edge_path.empty()) return vertices;
  vertices.push_back(net.edges[edge_path.front()].from);
  for (int e : edge_path) {
    if (net.edges[e].from != vertices.back()) fail("path_vertices: edges do not chain");
    vertices.push_back(net.edges[e].to);
  }
  return vertices;
}

// ---------------------------------------------------------------------------
// Metric instances
// ---------------------------------------------------------------------------

MetricInstance make_metric(std::vector<std::vector<double>> dist, double tolerance) {
  MetricInstance metric;
  metric.num_points = static_cast<int>(dist.size());
  metric.dist = std::move(dist);
  validate_metric(metric, tolerance);
  return metric;
}

void validate_metric(const MetricInstance& metric, double tolerance) {
  int n = metric.num_points;
  if (n <= 0) fail("metric: needs at least one point");
  if (static_cast<int>(metric.dist.size()) != n) fail("metric: matrix row count mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(metric.dist[i].size()) != n) fail("metric: matrix is not square");
    if (std::abs(metric.dist[i][i]) > tolerance) fail("metric: nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (metric.dist[i][j] < 0) fail("metric: negative distance");
      if (std::abs(metric.dist[i][j] - metric.dist[j][i]) > tolerance)
        fail("metric: asymmetric matrix");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (metric.dist[i][j] > metric.dist[i][k] + metric.dist[k][j] + tolerance)
          fail("metric: triangle inequality fails at (" + std::to_string(i) + ", " +
               std::to_string(j) + ", " + std::to_string(k) + ")");
}

double tour_length(const MetricInstance& metric, const std::vector<int>& tour) {
  if (static_cast<int>(tour.size()) != metric.num_points)
    fail("tour_length: tour does not visit every point exactly once");
  std::vector<bool> seen(static_cast<std::size_t>(metric.num_points), false);
  for (int v : tour) {
    if (v < 0 || v >= metric.num_points || seen[v]) fail("tour_length: invalid tour");
    seen[v] = true;
  }
  double total = 0;
  for (std::size_t i = 0; i < tour.size(); ++i)
    total += metric.dist[tour[i]][tour[(i + 1) % tour.size()]];
  return total;
}

}  // namespace apx
