#pragma once

#include <string_view>
#include <vector>

#include "coxdom/datum.hpp"
#include "coxdom/roots.hpp"
#include "coxdom/scalar.hpp"

namespace coxdom {

// Canonical roots of an infinite dihedral reflection subgroup, with
// q = -(alpha, beta) >= 1. alpha is the lexicographically larger vector.
struct DihedralFrame {
  Root alpha;
  Root beta;
  Scalar q;
};

// alpha_side: c_i alpha + c_{i-1} beta (positive for i >= 1).
// beta_side:  c_i alpha + c_{i+1} beta (positive for i >= 0).
enum class Family { alpha_side, beta_side };

std::string_view to_string(Family f);

struct ChainPosition {
  long index = 0;
  Family family = Family::alpha_side;

  friend bool operator==(const ChainPosition&, const ChainPosition&) = default;
};

// Canonical pair of <r_x, r_y> by repeated depth reduction. Both roots must
// be positive and distinct; FiniteDihedralError when |(x, y)| < 1.
DihedralFrame canonical_pair(const CoxeterDatum& d, const Root& x, const Root& y);

// Frame spanned by two roots already known to be canonical ((a, b) <= -1).
DihedralFrame make_frame(const CoxeterDatum& d, const Root& a, const Root& b);

// Coordinates of z in the frame as a chain position. NotInPlaneError when z is
// outside span(alpha, beta), NotInSubsystemError when the coordinates are not
// a consecutive c-window.
ChainPosition chain_position(const CoxeterDatum& d, const DihedralFrame& frame, const Root& z);

// The root at a chain position (any index in Z; non-positive windows give
// negative roots).
Root chain_root(const CoxeterDatum& d, const DihedralFrame& frame, const ChainPosition& pos);

struct DihedralRoot {
  ChainPosition position;
  Root root;
};

// Both families for indices i_min..i_max, alpha side first.
std::vector<DihedralRoot> dihedral_roots(const CoxeterDatum& d, const DihedralFrame& frame, long i_min,
                                         long i_max);

// Canonical pair of the subgroup generated by the reflections at two chain
// positions of a frame, by residue arithmetic on the indices. The result is
// (alpha', beta') as positions of the same frame.
std::pair<ChainPosition, ChainPosition> canonical_pair_by_index(const ChainPosition& x, const ChainPosition& y);

struct DominancePairReport {
  DihedralFrame frame;
  ChainPosition x_position;
  ChainPosition y_position;
  Scalar inner_xy;
  // (alpha, beta) = -(x, y).
  bool inner_matches = false;
  // Same family, x one step above y.
  bool consecutive = false;

  bool passed() const { return inner_matches && consecutive; }
};

// Requires dominates(x, y) with x != y (DomainError otherwise).
DominancePairReport verify_dominance_pair(const CoxeterDatum& d, const Root& x, const Root& y);

}  // namespace coxdom
