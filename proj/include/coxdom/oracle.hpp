#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "coxdom/datum.hpp"
#include "coxdom/roots.hpp"

namespace coxdom {

// Row-major rank x rank matrix acting on coefficient vectors.
using Matrix = std::vector<Scalar>;

Matrix identity_matrix(const CoxeterDatum& d);
Matrix word_matrix(const CoxeterDatum& d, const Word& w);
Matrix multiply(const CoxeterDatum& d, const Matrix& a, const Matrix& b);
Root apply_matrix(const CoxeterDatum& d, const Matrix& m, const Root& x);
std::string matrix_key(const CoxeterDatum& d, const Matrix& m);
// M^T B M = B within tolerance.
bool preserves_form(const CoxeterDatum& d, const Matrix& m);

struct GroupElement {
  Matrix matrix;
  // Shortest word found by the breadth-first search.
  Word witness;
  std::size_t length = 0;
};

inline constexpr std::size_t kDefaultBallCap = 200000;

// All elements of length <= max_len, in breadth-first order.
struct CayleyBall {
  std::vector<GroupElement> elements;
  // layer_sizes[k] = number of elements of length exactly k.
  std::vector<std::size_t> layer_sizes;
  std::unordered_map<std::string, std::size_t> index;

  std::optional<std::size_t> find(const CoxeterDatum& d, const Matrix& m) const;
};

CayleyBall cayley_ball(const CoxeterDatum& d, std::size_t max_len, std::size_t cap = kDefaultBallCap);

struct Verdict {
  bool refuted = false;
  // A shortest ball element sending x negative and y positive.
  std::optional<GroupElement> witness;
};

// Brute-force queries over a fixed ball. Negative sets are cached per root.
class BallOracle {
 public:
  BallOracle(const CoxeterDatum& d, std::size_t max_len, std::size_t cap = kDefaultBallCap);

  const CayleyBall& ball() const { return ball_; }
  std::size_t radius() const { return radius_; }

  // Bit i is set when ball element i sends x negative.
  const boost::dynamic_bitset<>& sends_negative(const Root& x);

  Verdict dominance(const Root& x, const Root& y);
  // Least length of a ball element sending x negative.
  std::optional<std::size_t> depth(const Root& x);

 private:
  const CoxeterDatum& d_;
  std::size_t radius_;
  CayleyBall ball_;
  std::unordered_map<RootKey, boost::dynamic_bitset<>> negative_;
};

Verdict dominance_oracle(const CoxeterDatum& d, const Root& x, const Root& y, std::size_t max_len);
std::optional<std::size_t> depth_oracle(const CoxeterDatum& d, const Root& x, std::size_t max_len);

// N(w) = { x in Phi+ : w x in Phi- }, filtered from enumerate(d, depth_cap).
std::vector<Root> nset_oracle(const CoxeterDatum& d, const GroupElement& w, std::size_t depth_cap);
// Same filter over caller-supplied positive roots, which must include every
// root of depth <= l(w).
std::vector<Root> nset_oracle(const CoxeterDatum& d, const GroupElement& w, const std::vector<Root>& candidates);

}  // namespace coxdom
