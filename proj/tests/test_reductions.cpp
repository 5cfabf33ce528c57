#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apxkit/harness.hpp"
#include "apxkit/oracles.hpp"
#include "apxkit/reductions.hpp"

using namespace apx;

namespace {

// Max over the auxiliary variables of the satisfied-clause count when the
// first `fixed` variables are pinned to `mask`.
int best_completion(const CnfFormula& formula, int fixed, std::uint64_t mask) {
  int best = -1;
  int aux = formula.num_vars - fixed;
  for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << aux); ++tail) {
    Assignment a = Assignment::from_mask(formula.num_vars, mask | (tail << fixed));
    best = std::max(best, count_satisfied(formula, a));
  }
  return best;
}

std::vector<CnfFormula> all_single_clause_3cnf() {
  std::vector<CnfFormula> corpus;
  for (int signs = 0; signs < 8; ++signs) {
    Clause clause;
    for (int i = 0; i < 3; ++i) clause.push_back((signs >> i) & 1 ? -(i + 1) : i + 1);
    corpus.push_back(make_cnf(3, {clause}));
  }
  return corpus;
}

std::vector<CnfFormula> all_single_clause_2cnf() {
  std::vector<CnfFormula> corpus;
  for (int signs = 0; signs < 4; ++signs) {
    Clause clause{(signs & 1) ? -1 : 1, (signs & 2) ? -2 : 2};
    corpus.push_back(make_cnf(2, {clause}));
  }
  return corpus;
}

}  // namespace

TEST_CASE("3sat-to-2sat gadget truth table, exhaustively") {
  // For every sign pattern of the source clause and all 8 assignments to its
  // variables: the best auxiliary choice satisfies 7 gadget clauses when the
  // clause is satisfied, 6 otherwise.
  for (const CnfFormula& source : all_single_clause_3cnf()) {
    CnfFormula image = reduce_3sat_to_2sat(source);
    REQUIRE(image.num_clauses() == 10);
    REQUIRE(image.num_vars == 4);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      bool satisfied =
          count_satisfied(source, Assignment::from_mask(3, mask)) == 1;
      CHECK(best_completion(image, 3, mask) == (satisfied ? 7 : 6));
    }
  }
}

TEST_CASE("3sat-to-2sat gadget worked assignments") {
  CnfFormula source = make_cnf(3, {{1, 2, 3}});
  CnfFormula image = reduce_3sat_to_2sat(source);
  // x=T, y=F, z=F satisfies the clause: 7 of 10 with the right v
  CHECK(best_completion(image, 3, 0b001) == 7);
  // all false: 6 of 10
  CHECK(best_completion(image, 3, 0b000) == 6);
}

TEST_CASE("3sat-to-2sat exact identity on the worked pair and random corpora") {
  CnfFormula pair = make_cnf(3, {{1, 2, 3}, {-1, 2, 3}});
  CnfFormula image = reduce_3sat_to_2sat(pair);
  CHECK(image.num_clauses() == 20);
  CHECK(opt_maxsat(pair).value == 2);
  CHECK(opt_maxsat(image).value == 14);  // 6m + OPT

  CorpusSpec spec;
  spec.count = 30;
  spec.num_vars = 5;
  spec.num_clauses = 4;
  spec.width = 3;
  spec.seed = 53;
  for (const CnfFormula& source : gen_random_cnf(spec)) {
    CnfFormula mapped = reduce_3sat_to_2sat(source);
    CHECK(opt_maxsat(mapped).value == 6 * source.num_clauses() + opt_maxsat(source).value);
  }

  CHECK_THROWS_AS(reduce_3sat_to_2sat(make_cnf(3, {{1, 2}})), std::invalid_argument);
}

TEST_CASE("2sat-to-nae3sat reduction and its pull-back") {
  CnfFormula single = make_cnf(2, {{1, 2}});
  CnfFormula image = reduce_2sat_to_nae3sat(single);
  REQUIRE(image.num_clauses() == 1);
  CHECK(image.num_vars == 3);  // one shared fresh variable
  CHECK(opt_nae3sat(image).value == 1);
  CHECK(opt_maxsat(single).value == 1);

  CnfFormula both = make_cnf(2, {{1, 2}, {-1, -2}});
  CHECK(opt_nae3sat(reduce_2sat_to_nae3sat(both)).value == 2);
  CHECK(opt_maxsat(both).value == 2);

  // the pulled-back 2SAT count equals the NAE count for every target solution
  CnfFormula nae = reduce_2sat_to_nae3sat(both);
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    Assignment y = Assignment::from_mask(3, mask);
    Assignment pulled = pull_back_2sat_to_nae3sat(both, y);
    CHECK(count_satisfied(both, pulled) == count_nae_satisfied(nae, y));
  }

  CHECK_THROWS_AS(reduce_2sat_to_nae3sat(make_cnf(3, {{1, 2, 3}})), std::invalid_argument);
}

TEST_CASE("2sat-to-nae3sat exact identity on random 2-cnf corpora") {
  CorpusSpec spec;
  spec.count = 40;
  spec.num_vars = 6;
  spec.num_clauses = 9;
  spec.width = 2;
  spec.seed = 59;
  for (const CnfFormula& source : gen_random_cnf(spec)) {
    CnfFormula mapped = reduce_2sat_to_nae3sat(source);
    CHECK(opt_nae3sat(mapped).value == opt_maxsat(source).value);
  }
}

TEST_CASE("nae3sat-to-maxcut image graph layout") {
  CnfFormula source = make_cnf(4, {{1, 2, 3}, {-1, 2, 4}});  // (a v b v c)(!a v b v d)
  MultiGraph image = reduce_nae3sat_to_maxcut(source);
  CHECK(image.num_vertices == 8);

  int triangle_edges = 0;
  std::map<std::pair<int, int>, std::int64_t> bundles;
  for (const MultiGraphEdge& e : image.edges) {
    if (e.multiplicity == 1) ++triangle_edges;
    else bundles[{e.u, e.v}] = e.multiplicity;
  }
  CHECK(triangle_edges == 6);
  CHECK(bundles[{literal_vertex(1), literal_vertex(-1)}] == 4);   // a occurs twice
  CHECK(bundles[{literal_vertex(2), literal_vertex(-2)}] == 4);   // b occurs twice
  CHECK(bundles[{literal_vertex(3), literal_vertex(-3)}] == 2);   // c once
  CHECK(bundles[{literal_vertex(4), literal_vertex(-4)}] == 2);   // d once
  CHECK(total_literal_occurrences(source) == 6);

  CHECK(image.labels.at(literal_vertex(1)) == 1);
  CHECK(image.labels.at(literal_vertex(-1)) == -1);

  // OPT_cut = 2l + 2 OPT_NAE = 12 + 4
  CHECK(opt_nae3sat(source).value == 2);
  CHECK(opt_maxcut(image).value == 16);
}

TEST_CASE("nae3sat-to-maxcut identity on a single clause and random corpora") {
  CnfFormula single = make_cnf(3, {{1, 2, 3}});
  CHECK(opt_maxcut(reduce_nae3sat_to_maxcut(single)).value == 8);  // 2*3 + 2*1

  CorpusSpec spec;
  spec.count = 25;
  spec.num_vars = 5;
  spec.num_clauses = 5;
  spec.width = 3;
  spec.seed = 61;
  for (const CnfFormula& source : gen_random_cnf(spec)) {
    MultiGraph image = reduce_nae3sat_to_maxcut(source);
    Rational expected =
        Rational(2 * total_literal_occurrences(source) + 2 * opt_nae3sat(source).value);
    CHECK(opt_maxcut(image).value == expected);
  }

  // width-2 clauses arrive as doubled edges
  CnfFormula narrow = make_cnf(2, {{1, -2}});
  MultiGraph image = reduce_nae3sat_to_maxcut(narrow);
  bool found_double = false;
  for (const MultiGraphEdge& e : image.edges)
    found_double = found_double || (e.multiplicity == 2 &&
                                    ((e.u == literal_vertex(1) && e.v == literal_vertex(-2)) ||
                                     (e.u == literal_vertex(-2) && e.v == literal_vertex(1))));
  CHECK(found_double);
  CHECK(opt_maxcut(image).value == 2 * 2 + 2 * 1);

  CHECK_THROWS_AS(reduce_nae3sat_to_maxcut(make_cnf(1, {{1}})), std::invalid_argument);
}

TEST_CASE("nae3sat-to-maxcut pull-back is total and sound") {
  CnfFormula source = make_cnf(3, {{1, 2, 3}, {-1, -2, 3}});
  MultiGraph image = reduce_nae3sat_to_maxcut(source);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << image.num_vertices); ++mask) {
    Partition p = Partition::from_mask(image.num_vertices, mask);
    Assignment pulled = pull_back_nae3sat_to_maxcut(source, p);
    CHECK(pulled.size() == source.num_vars);
    CHECK_NOTHROW(count_nae_satisfied(source, pulled));
  }
  // an optimal cut pulls back to an optimal NAE assignment
  auto best_cut = opt_maxcut(image);
  Assignment pulled = pull_back_nae3sat_to_maxcut(source, best_cut.witness);
  CHECK(count_nae_satisfied(source, pulled) == opt_nae3sat(source).value);
}

TEST_CASE("ksat_to_3sat splits wide clauses as a chain") {
  CnfFormula narrow = make_cnf(3, {{1, 2, 3}});
  CHECK(ksat_to_3sat(narrow) == narrow);

  CnfFormula wide = make_cnf(5, {{1, 2, 3, 4, 5}});
  CnfFormula split = ksat_to_3sat(wide);
  REQUIRE(split.num_clauses() == 3);
  CHECK(split.num_vars == 7);
  CHECK(split.clauses[0] == Clause{1, 2, 6});
  CHECK(split.clauses[1] == Clause{-6, 3, 7});
  CHECK(split.clauses[2] == Clause{-7, 4, 5});

  // Satisfiability equivalence per original assignment, by enumeration.
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    bool original = count_satisfied(wide, Assignment::from_mask(5, mask)) == 1;
    bool chain = best_completion(split, 5, mask) == split.num_clauses();
    CHECK(original == chain);
  }
  // all-false has no auxiliary completion
  CHECK(best_completion(split, 5, 0) < split.num_clauses());
}

TEST_CASE("ksat_to_3sat equivalence for width up to 6") {
  for (int k : {4, 5, 6}) {
    Clause clause;
    for (int i = 1; i <= k; ++i) clause.push_back(i % 2 == 0 ? -i : i);
    CnfFormula wide = make_cnf(k, {clause});
    CnfFormula split = ksat_to_3sat(wide);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      bool original = count_satisfied(wide, Assignment::from_mask(k, mask)) == 1;
      bool chain = best_completion(split, k, mask) == split.num_clauses();
      CHECK(original == chain);
    }
  }
}

TEST_CASE("verifier certifies the claimed constants") {
  VerifyOptions options;

  auto gadget = verify_lreduction(lreduction_3sat_to_2sat(), all_single_clause_3cnf(), options);
  CHECK(gadget.instances_checked == 8);
  CHECK(gadget.exhaustive);
  CHECK(gadget.condition3_max_ratio <= 13);
  CHECK(gadget.condition4_max_ratio <= 1);
  CHECK(gadget.pass_a());
  CHECK(gadget.pass_b());

  std::vector<CnfFormula> two_cnf = all_single_clause_2cnf();
  CorpusSpec spec;
  spec.count = 25;
  spec.num_vars = 6;
  spec.num_clauses = 8;
  spec.width = 2;
  spec.seed = 67;
  for (const CnfFormula& f : gen_random_cnf(spec)) two_cnf.push_back(f);
  auto nae = verify_lreduction(lreduction_2sat_to_nae3sat(), two_cnf, options);
  CHECK(nae.condition3_max_ratio <= 1);
  CHECK(nae.condition4_max_ratio <= 1);
  CHECK(nae.pass_a());
  CHECK(nae.pass_b());

  spec.width = 3;
  spec.num_vars = 5;
  spec.num_clauses = 4;
  auto cut = verify_lreduction(lreduction_nae3sat_to_maxcut(), gen_random_cnf(spec), options);
  CHECK(cut.instances_checked == 25);
  CHECK(cut.condition3_max_ratio > 0);  // measured and reported
  CHECK_FALSE(cut.condition4_unbounded);
  CHECK(cut.condition4_max_ratio <= 2);  // the b = 2 claim holds empirically
}

TEST_CASE("verifier samples when the target space is too large") {
  VerifyOptions options;
  options.exhaustive_limit = 1 << 3;  // image space is 2^4
  options.sample_count = 64;
  auto report =
      verify_lreduction(lreduction_3sat_to_2sat(), all_single_clause_3cnf(), options);
  CHECK_FALSE(report.exhaustive);
  CHECK(report.solutions_sampled == 8 * 64);
}

TEST_CASE("compose_ptas: delta = eps/(ab) arithmetic") {
  auto gadget13 = lreduction_3sat_to_2sat();  // a = 13, b = 1
  auto composed = compose_ptas<MaxSatProblem, MaxSatProblem>(
      gadget13, [](const CnfFormula& f, double) { return opt_maxsat(f).witness; }, 0.13);
  CHECK(composed.delta() == doctest::Approx(0.01));

  auto identity = gadget13;
  identity.claimed_a = 1;
  identity.claimed_b = 1;
  auto unit = compose_ptas<MaxSatProblem, MaxSatProblem>(
      identity, [](const CnfFormula& f, double) { return opt_maxsat(f).witness; }, 0.25);
  CHECK(unit.delta() == doctest::Approx(0.25));

  auto make_bad = [&] {
    return compose_ptas<MaxSatProblem, MaxSatProblem>(
        gadget13, [](const CnfFormula& f, double) { return opt_maxsat(f).witness; }, 0.0);
  };
  CHECK_THROWS_AS(make_bad(), std::invalid_argument);
}

TEST_CASE("compose_ptas with an exact target oracle recovers exact optima") {
  CorpusSpec spec;
  spec.count = 20;
  spec.num_vars = 5;
  spec.num_clauses = 7;
  spec.width = 2;
  spec.seed = 71;

  auto scheme = compose_ptas<MaxSatProblem, NaeSatProblem>(
      lreduction_2sat_to_nae3sat(),
      [](const CnfFormula& f, double) { return opt_nae3sat(f).witness; }, 0.5);
  for (const CnfFormula& source : gen_random_cnf(spec)) {
    Assignment pulled = scheme(source);
    CHECK(count_satisfied(source, pulled) == opt_maxsat(source).value);
  }

  spec.width = 3;
  spec.num_clauses = 4;
  auto cut_scheme = compose_ptas<NaeSatProblem, MaxCutProblem>(
      lreduction_nae3sat_to_maxcut(),
      [](const MultiGraph& g, double) { return opt_maxcut(g).witness; }, 0.5);
  for (const CnfFormula& source : gen_random_cnf(spec)) {
    Assignment pulled = cut_scheme(source);
    CHECK(count_nae_satisfied(source, pulled) == opt_nae3sat(source).value);
  }
}
