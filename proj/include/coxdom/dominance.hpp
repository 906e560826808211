#pragma once

#include <cstddef>
#include <vector>

#include "coxdom/datum.hpp"
#include "coxdom/roots.hpp"

namespace coxdom {

// x dominates y: every w sending x negative sends y negative.
bool dominates(const CoxeterDatum& d, const Root& x, const Root& y);

// D(x): the positive roots other than x that x dominates.
struct DominanceRecord {
  Root root;
  std::vector<Root> dominated;

  std::size_t n() const { return dominated.size(); }
};

// D(x) read off the inversion set of a minimal descent word: the members b
// of N(w^{-1}) with (x, b) >= 1.
DominanceRecord dominated_set(const CoxeterDatum& d, const Root& x);
// #D(x) alone; skips ordering the dominated roots.
std::size_t dominated_count(const CoxeterDatum& d, const Root& x);
// Same computation along a caller-chosen descent (any w in S(x)).
DominanceRecord dominated_set(const CoxeterDatum& d, const Root& x, const Descent& descent);

// D_0, by closure from the simple roots along edges with (x, e_a) in (-1, 0).
// Every member is checked to dominate nothing (InvariantError otherwise).
std::vector<Root> elementary_roots(const CoxeterDatum& d, std::size_t size_cap = 100000);

struct HierarchyLevel {
  std::size_t n = 0;
  std::vector<DominanceRecord> roots;
};

struct HierarchyOptions {
  std::size_t level_cap = 100000;
  // Depth bound for recognizing finite W by exhaustive enumeration.
  std::size_t depth_cap = 30;
};

struct Hierarchy {
  std::vector<HierarchyLevel> levels;
  // W finite: D_0 is all of Phi+ and every higher level is empty.
  bool finite = false;
};

// Levels D_0 .. D_{n_max}, each D_n grown from D_{n-1} by one reflection
// with (e_a, x) <= -1 followed by closure along (e_a, x') in (-1, 0).
// Every emitted root is cross-checked against dominated_set; a mismatch
// raises InvariantError.
Hierarchy hierarchy(const CoxeterDatum& d, std::size_t n_max, const HierarchyOptions& opts = {});

// Phi+ when W is finite, nullopt otherwise.
std::optional<std::vector<Root>> finite_positive_roots(const CoxeterDatum& d, std::size_t depth_cap = 30,
                                                       std::size_t layer_cap = 100000);

}  // namespace coxdom
