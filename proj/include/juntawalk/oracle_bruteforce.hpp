#pragma once

// Exact ground truth for small cubes: the optimal k-junta distance, a search
// for the restricted junta promised by the heavy-coefficient lemma, and the
// AND-function counterexample checks.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "juntawalk/hypercube.hpp"

namespace juntawalk {

inline constexpr int kMaxOptDim = 16;
inline constexpr int kMaxLemmaDim = 12;

// Majority J-junta over the whole cube (ties give +1) and its disagreement
// count with f.
std::pair<JuntaHypothesis, std::uint64_t> best_junta_on(const TruthTable& f,
                                                        const IndexSet& relevant);

struct OptResult {
  int n = 1;
  std::uint64_t disagreements = 0;  // opt = disagreements / 2^n exactly
  JuntaHypothesis witness = JuntaHypothesis::constant(1, 1);
  // Best disagreement count for every k-subset, by increasing mask.
  std::vector<std::pair<IndexSet, std::uint64_t>> per_subset;

  double opt() const;
};

// Minimum over all k-subsets J, ties broken by smallest mask.
OptResult exact_opt(const TruthTable& f, int k, bool keep_per_subset = false);

std::vector<int> relevant_variables(const TruthTable& g);

// g with x_i fixed to `value`, as a function on the same cube.
TruthTable restrict_variable(const TruthTable& g, int i, Sign value);

// C 2^{-(k-1)/2} eps with C = 1 - 1/sqrt 2.
double heavy_coefficient_bound(int k, double epsilon);

struct LemmaWitness {
  int variable;
  IndexSet set;
  double coefficient;
};

struct LemmaCertificate {
  bool found = false;
  std::optional<TruthTable> restricted;  // g', when found
  std::vector<std::pair<int, Sign>> fixed;  // variables fixed to obtain g'
  double correlation = 0.0;             // <f, g>
  double restricted_correlation = 0.0;  // <f, g'>
  double bound = 0.0;
  std::vector<LemmaWitness> witnesses;  // one per relevant variable of g'
  std::size_t candidates_examined = 0;
};

// Searches the restrictions of g obtained by fixing each of its relevant
// variables to free, +1 or -1, fewest fixed first, for a g' with
// <f,g'> >= <f,g> - eps whose every relevant variable lies in some S with
// |S| <= k and |f^(S)| >= heavy_coefficient_bound(k, eps).
LemmaCertificate verify_spectrum_lemma(const TruthTable& f, const TruthTable& g,
                                       int k, double epsilon);

struct FixtureCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct FixtureReport {
  int k = 1;
  std::vector<FixtureCheck> checks;

  bool passed() const;
};

// On n = k + 1 with f = AND of x_1..x_k and g = AND of x_2..x_{k+1}, checks in
// integer arithmetic: |f^(S)| = 2^{1-k} for nonempty S within the first k
// coordinates, <f,g> = 1 - 2^{1-k}, and f^(S) = 0 whenever S contains k+1.
FixtureReport counterexample_fixtures(int k);

}  // namespace juntawalk
