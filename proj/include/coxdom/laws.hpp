#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coxdom/datum.hpp"
#include "coxdom/dominance.hpp"
#include "coxdom/oracle.hpp"

namespace coxdom {

struct LawOutcome {
  std::string name;
  std::string statement;
  bool passed = true;
  std::size_t checked = 0;
  // First counterexample, empty when passed.
  std::string witness;
  // Measurements that are reported but not asserted.
  std::string detail;
};

struct LawReport {
  std::vector<LawOutcome> laws;

  bool all_passed() const;
  const LawOutcome* find(std::string_view name) const;
};

struct LawOptions {
  // Roots of depth <= depth_cap are sampled for the per-root laws.
  std::size_t depth_cap = 8;
  // Budget of (y, x) candidate pairs tried for the multi-step precedence law.
  std::size_t precedence_pairs = 4000;
  // Longest word length enumerated for the short-word disjointness law.
  std::size_t short_word_cap = 6;
  std::size_t layer_cap = 100000;
};

// Evaluates the structural laws of the dominance hierarchy against computed
// levels. Failures are reported with a witness, never thrown.
LawReport check_laws(const CoxeterDatum& d, const Hierarchy& h, const LawOptions& opts = {});

struct OracleCheckOptions {
  // Positive roots of depth <= pair_depth are compared pairwise.
  std::size_t pair_depth = 6;
  // Ball elements of length <= nset_length get their inversion sets compared.
  std::size_t nset_length = 8;
};

// Compares the fast paths with brute force over the oracle's ball: dominance
// verdicts, depths, inversion sets and elementarity of the given D_0.
std::vector<LawOutcome> check_oracle_agreement(const CoxeterDatum& d, BallOracle& oracle,
                                               const std::vector<Root>& elementary,
                                               const OracleCheckOptions& opts = {});

}  // namespace coxdom
