#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "apxkit/instances.hpp"

namespace apx {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// DIMACS CNF: "p cnf <vars> <clauses>" header, 'c' comment lines, clauses as
// whitespace-separated literals terminated by 0.
CnfFormula parse_dimacs_cnf(std::istream& in);
CnfFormula parse_dimacs_cnf(const std::string& text);
std::string serialize_dimacs_cnf(const CnfFormula& formula);

// "graph <V> <E>" followed by E lines "u v multiplicity weight" and optional
// "label <v> <literal>" lines.
MultiGraph parse_multigraph(std::istream& in);
MultiGraph parse_multigraph(const std::string& text);
std::string serialize_multigraph(const MultiGraph& graph);

// "setcover <n> <k>" followed by k lines "cost <c>: e1 e2 ...".
SetCoverInstance parse_set_cover(std::istream& in);
SetCoverInstance parse_set_cover(const std::string& text);
std::string serialize_set_cover(const SetCoverInstance& instance);

// "network <V> <E> <K>" followed by E lines "u v capacity" and K lines
// "commodity s t".
FlowNetwork parse_network(std::istream& in);
FlowNetwork parse_network(const std::string& text);
std::string serialize_network(const FlowNetwork& net);

// "metric <n>" followed by n rows of n distances.
MetricInstance parse_metric(std::istream& in);
MetricInstance parse_metric(const std::string& text);
std::string serialize_metric(const MetricInstance& metric);

}  // namespace apx
