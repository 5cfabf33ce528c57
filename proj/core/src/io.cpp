#include "apxkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <vector>

namespace apx {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    Line line;
    line.number = number;
    std::istringstream stream(raw);
    std::string token;
    while (stream >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long long parse_int_token(const Line& line, const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    long long value = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing junk");
    return value;
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string("expected ") + what + ", got '" + token + "'");
  }
}

Rational parse_rational_token(const Line& line, const std::string& token, const char* what) {
  try {
    return parse_rational(token);
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string("expected ") + what + ", got '" + token + "'");
  }
}

double parse_double_token(const Line& line, const std::string& token, const char* what) {
  char* end = nullptr;
  double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || !std::isfinite(value))
    throw ParseError(line.number, std::string("expected ") + what + ", got '" + token + "'");
  return value;
}

std::string format_double(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

// ---------------------------------------------------------------------------
// DIMACS CNF
// ---------------------------------------------------------------------------

CnfFormula parse_dimacs_cnf(std::istream& in) {
  std::string raw;
  int line_number = 0;
  int num_vars = -1;
  int num_clauses = -1;
  int header_line = 0;
  std::vector<Clause> clauses;
  Clause current;
  int clause_start_line = 0;

  while (std::getline(in, raw)) {
    ++line_number;
    std::istringstream stream(raw);
    std::string token;
    if (!(stream >> token)) continue;
    if (token == "c") continue;
    if (token == "p") {
      if (num_vars >= 0) throw ParseError(line_number, "duplicate header");
      std::string kind;
      if (!(stream >> kind) || kind != "cnf")
        throw ParseError(line_number, "malformed header: expected 'p cnf <vars> <clauses>'");
      long long n = 0, m = 0;
      if (!(stream >> n >> m) || n < 1 || m < 0)
        throw ParseError(line_number, "malformed header: expected 'p cnf <vars> <clauses>'");
      std::string extra;
      if (stream >> extra) throw ParseError(line_number, "malformed header: trailing tokens");
      num_vars = static_cast<int>(n);
      num_clauses = static_cast<int>(m);
      header_line = line_number;
      continue;
    }
    if (num_vars < 0) throw ParseError(line_number, "clause data before 'p cnf' header");
    // Token already read is the first literal of the line.
    do {
      long long lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument("junk");
      } catch (const std::exception&) {
        throw ParseError(line_number, "expected literal, got '" + token + "'");
      }
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_number, "empty clause");
        std::vector<int> vars;
        for (Literal l : current) vars.push_back(std::abs(l));
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
          throw ParseError(line_number, "duplicated variable in clause");
        clauses.push_back(current);
        current.clear();
      } else {
        if (std::llabs(lit) > num_vars)
          throw ParseError(line_number, "literal " + std::to_string(lit) +
                                            " references variable beyond " +
                                            std::to_string(num_vars));
        if (current.empty()) clause_start_line = line_number;
        current.push_back(static_cast<Literal>(lit));
      }
    } while (stream >> token);
  }

  if (num_vars < 0) throw ParseError(line_number == 0 ? 1 : line_number, "missing 'p cnf' header");
  if (!current.empty())
    throw ParseError(clause_start_line, "clause not terminated by 0");
  if (static_cast<int>(clauses.size()) != num_clauses)
    throw ParseError(header_line, "header declares " + std::to_string(num_clauses) +
                                      " clauses but " + std::to_string(clauses.size()) +
                                      " were found");
  return make_cnf(num_vars, std::move(clauses));
}

std::string serialize_dimacs_cnf(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << " " << formula.num_clauses() << "\n";
  for (const Clause& clause : formula.clauses) {
    for (Literal lit : clause) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Multigraph
// ---------------------------------------------------------------------------

MultiGraph parse_multigraph(std::istream& in) {
  std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw ParseError(1, "empty multigraph input");
  const Line& header = lines[0];
  if (header.tokens[0] != "graph" || header.tokens.size() != 3)
    throw ParseError(header.number, "malformed header: expected 'graph <V> <E>'");
  int num_vertices = static_cast<int>(parse_int_token(header, header.tokens[1], "vertex count"));
  int num_edges = static_cast<int>(parse_int_token(header, header.tokens[2], "edge count"));
  if (num_vertices < 0 || num_edges < 0) throw ParseError(header.number, "negative header counts");

  std::vector<MultiGraphEdge> edges;
  std::map<int, Literal> labels;
  std::size_t li = 1;
  for (int e = 0; e < num_edges; ++e, ++li) {
    if (li >= lines.size()) throw ParseError(lines.back().number, "fewer edge lines than declared");
    const Line& line = lines[li];
    if (line.tokens.size() != 4)
      throw ParseError(line.number, "expected 'u v multiplicity weight'");
    MultiGraphEdge edge;
    edge.u = static_cast<int>(parse_int_token(line, line.tokens[0], "vertex id"));
    edge.v = static_cast<int>(parse_int_token(line, line.tokens[1], "vertex id"));
    edge.multiplicity = parse_int_token(line, line.tokens[2], "multiplicity");
    edge.weight = parse_rational_token(line, line.tokens[3], "weight");
    if (edge.u == edge.v) throw ParseError(line.number, "self-loop edge");
    if (edge.u < 0 || edge.u >= num_vertices || edge.v < 0 || edge.v >= num_vertices)
      throw ParseError(line.number, "vertex id out of range");
    if (edge.multiplicity < 1) throw ParseError(line.number, "multiplicity must be >= 1");
    if (edge.weight <= 0) throw ParseError(line.number, "weight must be positive");
    edges.push_back(std::move(edge));
  }
  for (; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.tokens[0] != "label" || line.tokens.size() != 3)
      throw ParseError(line.number, "expected 'label <vertex> <literal>'");
    int vertex = static_cast<int>(parse_int_token(line, line.tokens[1], "vertex id"));
    Literal literal = static_cast<Literal>(parse_int_token(line, line.tokens[2], "literal"));
    if (vertex < 0 || vertex >= num_vertices) throw ParseError(line.number, "label vertex out of range");
    if (literal == 0) throw ParseError(line.number, "label literal must be nonzero");
    labels[vertex] = literal;
  }
  return make_multigraph(num_vertices, std::move(edges), std::move(labels));
}

std::string serialize_multigraph(const MultiGraph& graph) {
  std::ostringstream out;
  out << "graph " << graph.num_vertices << " " << graph.edges.size() << "\n";
  for (const MultiGraphEdge& e : graph.edges)
    out << e.u << " " << e.v << " " << e.multiplicity << " " << format_rational(e.weight) << "\n";
  for (const auto& [vertex, literal] : graph.labels)
    out << "label " << vertex << " " << literal << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Set cover
// ---------------------------------------------------------------------------

SetCoverInstance parse_set_cover(std::istream& in) {
  std::string raw;
  int line_number = 0;
  int universe = -1;
  int num_sets = -1;
  std::vector<std::vector<int>> sets;
  std::vector<Rational> costs;

  while (std::getline(in, raw)) {
    ++line_number;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream stream(raw);
    std::string keyword;
    stream >> keyword;
    if (universe < 0) {
      if (keyword != "setcover")
        throw ParseError(line_number, "malformed header: expected 'setcover <n> <k>'");
      long long n = 0, k = 0;
      if (!(stream >> n >> k) || n < 1 || k < 0)
        throw ParseError(line_number, "malformed header: expected 'setcover <n> <k>'");
      universe = static_cast<int>(n);
      num_sets = static_cast<int>(k);
      continue;
    }
    if (keyword != "cost") throw ParseError(line_number, "expected 'cost <c>: e1 e2 ...'");
    auto colon = raw.find(':');
    if (colon == std::string::npos) throw ParseError(line_number, "missing ':' in set line");
    std::istringstream left(raw.substr(0, colon));
    std::string kw, cost_token;
    left >> kw >> cost_token;
    std::string extra;
    if (cost_token.empty() || (left >> extra))
      throw ParseError(line_number, "expected 'cost <c>: e1 e2 ...'");
    Rational cost;
    try {
      cost = parse_rational(cost_token);
    } catch (const std::exception&) {
      throw ParseError(line_number, "bad cost '" + cost_token + "'");
    }
    if (cost <= 0) throw ParseError(line_number, "cost must be positive");
    std::istringstream right(raw.substr(colon + 1));
    std::vector<int> elements;
    long long element = 0;
    while (right >> element) {
      if (element < 1 || element > universe)
        throw ParseError(line_number, "element " + std::to_string(element) + " out of range");
      elements.push_back(static_cast<int>(element));
    }
    if (!right.eof()) throw ParseError(line_number, "bad element token");
    if (elements.empty()) throw ParseError(line_number, "empty set");
    sets.push_back(std::move(elements));
    costs.push_back(std::move(cost));
  }
  if (universe < 0) throw ParseError(line_number == 0 ? 1 : line_number, "missing 'setcover' header");
  if (static_cast<int>(sets.size()) != num_sets)
    throw ParseError(line_number, "header declares " + std::to_string(num_sets) + " sets but " +
                                      std::to_string(sets.size()) + " were found");
  return make_set_cover(universe, std::move(sets), std::move(costs));
}

std::string serialize_set_cover(const SetCoverInstance& instance) {
  std::ostringstream out;
  out << "setcover " << instance.universe_size << " " << instance.num_sets() << "\n";
  for (int i = 0; i < instance.num_sets(); ++i) {
    out << "cost " << format_rational(instance.costs[i]) << ":";
    for (int element : instance.sets[i]) out << " " << element;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Flow network
// ---------------------------------------------------------------------------

FlowNetwork parse_network(std::istream& in) {
  std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw ParseError(1, "empty network input");
  const Line& header = lines[0];
  if (header.tokens[0] != "network" || header.tokens.size() != 4)
    throw ParseError(header.number, "malformed header: expected 'network <V> <E> <K>'");
  int num_vertices = static_cast<int>(parse_int_token(header, header.tokens[1], "vertex count"));
  int num_edges = static_cast<int>(parse_int_token(header, header.tokens[2], "edge count"));
  int num_commodities = static_cast<int>(parse_int_token(header, header.tokens[3], "commodity count"));
  if (num_vertices < 1 || num_edges < 0 || num_commodities < 0)
    throw ParseError(header.number, "bad header counts");

  std::vector<FlowEdge> edges;
  std::vector<Commodity> commodities;
  std::size_t li = 1;
  for (int e = 0; e < num_edges; ++e, ++li) {
    if (li >= lines.size()) throw ParseError(lines.back().number, "fewer edge lines than declared");
    const Line& line = lines[li];
    if (line.tokens.size() != 3) throw ParseError(line.number, "expected 'u v capacity'");
    FlowEdge edge;
    edge.from = static_cast<int>(parse_int_token(line, line.tokens[0], "vertex id"));
    edge.to = static_cast<int>(parse_int_token(line, line.tokens[1], "vertex id"));
    edge.capacity = parse_int_token(line, line.tokens[2], "capacity");
    if (edge.from == edge.to) throw ParseError(line.number, "self-loop edge");
    if (edge.from < 0 || edge.from >= num_vertices || edge.to < 0 || edge.to >= num_vertices)
      throw ParseError(line.number, "vertex id out of range");
    if (edge.capacity < 1) throw ParseError(line.number, "capacity must be >= 1");
    edges.push_back(edge);
  }
  for (int k = 0; k < num_commodities; ++k, ++li) {
    if (li >= lines.size())
      throw ParseError(lines.back().number, "fewer commodity lines than declared");
    const Line& line = lines[li];
    if (line.tokens[0] != "commodity" || line.tokens.size() != 3)
      throw ParseError(line.number, "expected 'commodity <s> <t>'");
    Commodity c;
    c.source = static_cast<int>(parse_int_token(line, line.tokens[1], "vertex id"));
    c.sink = static_cast<int>(parse_int_token(line, line.tokens[2], "vertex id"));
    if (c.source < 0 || c.source >= num_vertices || c.sink < 0 || c.sink >= num_vertices)
      throw ParseError(line.number, "vertex id out of range");
    commodities.push_back(c);
  }
  if (li != lines.size()) throw ParseError(lines[li].number, "unexpected trailing line");
  try {
    return make_network(num_vertices, std::move(edges), std::move(commodities));
  } catch (const std::invalid_argument& err) {
    throw ParseError(header.number, err.what());
  }
}

std::string serialize_network(const FlowNetwork& net) {
  std::ostringstream out;
  out << "network " << net.num_vertices << " " << net.num_edges() << " " << net.num_commodities()
      << "\n";
  for (const FlowEdge& e : net.edges) out << e.from << " " << e.to << " " << e.capacity << "\n";
  for (const Commodity& c : net.commodities) out << "commodity " << c.source << " " << c.sink << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Metric
// ---------------------------------------------------------------------------

MetricInstance parse_metric(std::istream& in) {
  std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw ParseError(1, "empty metric input");
  const Line& header = lines[0];
  if (header.tokens[0] != "metric" || header.tokens.size() != 2)
    throw ParseError(header.number, "malformed header: expected 'metric <n>'");
  int n = static_cast<int>(parse_int_token(header, header.tokens[1], "point count"));
  if (n < 1) throw ParseError(header.number, "point count must be positive");
  if (static_cast<int>(lines.size()) != n + 1)
    throw ParseError(lines.back().number, "expected " + std::to_string(n) + " matrix rows");
  std::vector<std::vector<double>> dist;
  for (int i = 0; i < n; ++i) {
    const Line& line = lines[i + 1];
    if (static_cast<int>(line.tokens.size()) != n)
      throw ParseError(line.number, "expected " + std::to_string(n) + " distances");
    std::vector<double> row;
    for (const std::string& token : line.tokens)
      row.push_back(parse_double_token(line, token, "distance"));
    dist.push_back(std::move(row));
  }
  try {
    return make_metric(std::move(dist));
  } catch (const std::invalid_argument& err) {
    throw ParseError(header.number, err.what());
  }
}

std::string serialize_metric(const MetricInstance& metric) {
  std::ostringstream out;
  out << "metric " << metric.num_points << "\n";
  for (const std::vector<double>& row : metric.dist) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << " ";
      out << format_double(row[j]);
    }
    out << "\n";
  }
  return out.str();
}

// String convenience wrappers.

namespace {

template <typename F>
auto from_string(const std::string& text, F&& parser) {
  std::istringstream in(text);
  return parser(in);
}

}  // namespace

CnfFormula parse_dimacs_cnf(const std::string& text) {
  return from_string(text, [](std::istream& in) { return parse_dimacs_cnf(in); });
}
MultiGraph parse_multigraph(const std::string& text) {
  return from_string(text, [](std::istream& in) { return parse_multigraph(in); });
}
SetCoverInstance parse_set_cover(const std::string& text) {
  return from_string(text, [](std::istream& in) { return parse_set_cover(in); });
}
FlowNetwork parse_network(const std::string& text) {
  return from_string(text, [](std::istream& in) { return parse_network(in); });
}
MetricInstance parse_metric(const std::string& text) {
  return from_string(text, [](std::istream& in) { return parse_metric(in); });
}

}  // namespace apx
