#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "apxkit/rational.hpp"

namespace apx {

// ---------------------------------------------------------------------------
// CNF formulas and assignments (carrier for Max-SAT / Max-2SAT / Max-NAE3SAT)
// ---------------------------------------------------------------------------

// Signed 1-based variable index: +v is the plain literal, -v the negation.
using Literal = int;
using Clause = std::vector<Literal>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;
  int max_clause_width = 0;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
  bool operator==(const CnfFormula&) const = default;
};

// Validates and returns the formula; max_clause_width defaults to the widest
// clause. Throws std::invalid_argument on any invariant violation:
// out-of-range variables, empty clauses, duplicated variables in a clause.
CnfFormula make_cnf(int num_vars, std::vector<Clause> clauses, int max_clause_width = 0);
void validate_cnf(const CnfFormula& formula);

struct Assignment {
  std::vector<bool> values;  // values[i] is the truth value of variable i+1

  static Assignment constant(int num_vars, bool value);
  // Variable i lives at bit i-1.
  static Assignment from_mask(int num_vars, std::uint64_t mask);
  std::uint64_t to_mask() const;

  int size() const { return static_cast<int>(values.size()); }
  bool operator==(const Assignment&) const = default;
};

Assignment complement(const Assignment& a);
bool literal_value(const Assignment& a, Literal lit);

// Number of clauses with at least one true literal.
int count_satisfied(const CnfFormula& formula, const Assignment& a);

// Number of clauses whose literal values are not all equal. Requires every
// clause to have width >= 2.
int count_nae_satisfied(const CnfFormula& formula, const Assignment& a);

int total_literal_occurrences(const CnfFormula& formula);

// ---------------------------------------------------------------------------
// Weighted multigraphs and vertex partitions (Max-Cut, vertex cover)
// ---------------------------------------------------------------------------

struct MultiGraphEdge {
  int u = 0;
  int v = 0;
  std::int64_t multiplicity = 1;
  Rational weight = 1;

  bool operator==(const MultiGraphEdge&) const = default;
};

struct MultiGraph {
  int num_vertices = 0;
  std::vector<MultiGraphEdge> edges;
  std::map<int, Literal> labels;  // optional vertex -> literal tags

  Rational total_edge_mass() const;  // sum of multiplicity * weight
  bool operator==(const MultiGraph&) const = default;
};

MultiGraph make_multigraph(int num_vertices, std::vector<MultiGraphEdge> edges,
                           std::map<int, Literal> labels = {});
void validate_multigraph(const MultiGraph& graph);

struct Partition {
  std::vector<bool> side;  // false = S, true = T

  static Partition from_mask(int num_vertices, std::uint64_t mask);
  Partition complement() const;

  int size() const { return static_cast<int>(side.size()); }
  bool operator==(const Partition&) const = default;
};

// Sum of multiplicity * weight over edges whose endpoints lie on opposite
// sides. Throws on length mismatch.
Rational cut_weight(const MultiGraph& graph, const Partition& partition);

// ---------------------------------------------------------------------------
// Set cover
// ---------------------------------------------------------------------------

struct SetCoverInstance {
  int universe_size = 0;
  std::vector<std::vector<int>> sets;  // elements are in [1, universe_size]
  std::vector<Rational> costs;

  int num_sets() const { return static_cast<int>(sets.size()); }
  bool operator==(const SetCoverInstance&) const = default;
};

SetCoverInstance make_set_cover(int universe_size, std::vector<std::vector<int>> sets,
                                std::vector<Rational> costs);
void validate_set_cover(const SetCoverInstance& instance);

bool is_cover(const SetCoverInstance& instance, const std::vector<int>& chosen);
Rational cover_cost(const SetCoverInstance& instance, const std::vector<int>& chosen);

// ---------------------------------------------------------------------------
// Flow networks, fractional flows, path distributions
// ---------------------------------------------------------------------------

struct FlowEdge {
  int from = 0;
  int to = 0;
  std::int64_t capacity = 1;

  bool operator==(const FlowEdge&) const = default;
};

struct Commodity {
  int source = 0;
  int sink = 0;

  bool operator==(const Commodity&) const = default;
};

struct FlowNetwork {
  int num_vertices = 0;
  std::vector<FlowEdge> edges;
  std::vector<Commodity> commodities;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_commodities() const { return static_cast<int>(commodities.size()); }
  bool operator==(const FlowNetwork&) const = default;
};

FlowNetwork make_network(int num_vertices, std::vector<FlowEdge> edges,
                         std::vector<Commodity> commodities);
void validate_network(const FlowNetwork& net);
bool path_exists(const FlowNetwork& net, int source, int sink);

// Per-commodity edge flows, exact rationals.
struct FractionalFlow {
  std::vector<std::vector<Rational>> values;  // values[commodity][edge]
};

// Checks nonnegativity, exact conservation away from the endpoints, and net
// out-flow exactly 1 at each source. Throws std::invalid_argument otherwise.
void validate_unit_flow(const FlowNetwork& net, const FractionalFlow& flow);

struct PathEntry {
  std::vector<int> vertices;      // source .. sink
  std::vector<int> edges;         // edge indices into the network
  Rational probability;
};

struct PathDistribution {
  int commodity = 0;
  std::vector<PathEntry> entries;
};

// max over edges of load / capacity for one routed path per commodity;
// paths are given as edge-index sequences.
Rational congestion_value(const FlowNetwork& net,
                          const std::vector<std::vector<int>>& edge_paths);

std::vector<int> path_vertices(const FlowNetwork& net, const std::vector<int>& edge_path);

// ---------------------------------------------------------------------------
// Metric instances (TSP)
// ---------------------------------------------------------------------------

struct MetricInstance {
  int num_points = 0;
  std::vector<std::vector<double>> dist;

  bool operator==(const MetricInstance&) const = default;
};

MetricInstance make_metric(std::vector<std::vector<double>> dist, double tolerance = 1e-9);
void validate_metric(const MetricInstance& metric, double tolerance = 1e-9);

// Length of the closed tour visiting tour[0], tour[1], ..., tour.back(),
// tour[0]. The tour must be a permutation of all points.
double tour_length(const MetricInstance& metric, const std::vector<int>& tour);

}  // namespace apx
