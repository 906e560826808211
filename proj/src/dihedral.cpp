#include "coxdom/dihedral.hpp"

#include <cmath>

#include "coxdom/dominance.hpp"
#include "coxdom/errors.hpp"

namespace coxdom {

std::string_view to_string(Family f) { return f == Family::alpha_side ? "alpha-side" : "beta-side"; }

namespace {

bool lex_greater(const Root& a, const Root& b) {
  for (std::size_t i = 0; i < a.rank(); ++i) {
    auto c = a[i] <=> b[i];
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

Root abs_root(const CoxeterDatum& d, Root x) { return sign_of(d, x) == Sign::negative ? -x : x; }

Root combine(const Scalar& s, const Root& a, const Scalar& t, const Root& b) {
  std::vector<Scalar> out(a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) out[i] = s * a[i] + t * b[i];
  return Root(std::move(out));
}

// Smallest i >= 0 with c_i = v, or nullopt when v falls strictly between two
// consecutive terms.
std::optional<long> c_index_of_nonnegative(const Scalar& q, const Scalar& v, double eps) {
  constexpr long kSearchCap = 1000000;
  Scalar two_q = q * Scalar(2);
  Scalar cur(0);
  Scalar next(1);
  for (long i = 0; i <= kSearchCap; ++i) {
    if (nearly_equal(cur, v, eps)) return i;
    if (cur > v) return std::nullopt;
    Scalar after = two_q * next - cur;
    cur = next;
    next = after;
  }
  throw NotInSubsystemError("chain index search exceeded " + std::to_string(kSearchCap) + " steps");
}

}  // namespace

DihedralFrame make_frame(const CoxeterDatum& d, const Root& a, const Root& b) {
  Scalar ip = inner(d, a, b);
  if (!is_at_most_minus_one(classify(ip, d.eps())))
    throw DomainError("frame roots need (a, b) <= -1, got " + ip.str());
  DihedralFrame f;
  f.alpha = lex_greater(a, b) ? a : b;
  f.beta = lex_greater(a, b) ? b : a;
  f.q = -ip;
  return f;
}

DihedralFrame canonical_pair(const CoxeterDatum& d, const Root& x_in, const Root& y_in) {
  if (!is_positive(d, x_in) || !is_positive(d, y_in)) throw DomainError("canonical_pair needs positive roots");
  if (root_key(d, x_in) == root_key(d, y_in)) throw DomainError("canonical_pair needs distinct roots");
  Root x = x_in, y = y_in;
  Scalar ip = inner(d, x, y);
  ScalarClass c = classify(ip, d.eps());
  if (!is_at_least_one(c) && !is_at_most_minus_one(c))
    throw FiniteDihedralError("|(x, y)| = |" + ip.str() + "| < 1: finite dihedral subgroup");
  std::size_t dx = depth(d, x), dy = depth(d, y);
  while (is_at_least_one(classify(inner(d, x, y), d.eps()))) {
    if (dx == dy) throw InvariantError("roots " + root_string(x) + " and " + root_string(y) + " share depth");
    if (dx < dy) {
      std::swap(x, y);
      std::swap(dx, dy);
    }
    Root z = abs_root(d, reflect_root(d, y, x));
    std::size_t dz = depth(d, z);
    if (dz >= dx)
      throw InvariantError("reflecting " + root_string(x) + " in " + root_string(y) + " did not reduce depth");
    x = std::move(z);
    dx = dz;
  }
  return make_frame(d, x, y);
}

Root chain_root(const CoxeterDatum& d, const DihedralFrame& frame, const ChainPosition& pos) {
  long other = pos.family == Family::alpha_side ? pos.index - 1 : pos.index + 1;
  Scalar s = c_sequence(frame.q, pos.index, d.eps());
  Scalar t = c_sequence(frame.q, other, d.eps());
  return combine(s, frame.alpha, t, frame.beta);
}

ChainPosition chain_position(const CoxeterDatum& d, const DihedralFrame& frame, const Root& z) {
  const Root& a = frame.alpha;
  const Root& b = frame.beta;
  if (z.rank() != a.rank()) throw DimensionError("root rank does not match the frame");
  // Solve on the pair of coordinates with the best-conditioned minor.
  std::size_t bj = 0, bk = 0;
  double best = -1;
  for (std::size_t j = 0; j < a.rank(); ++j)
    for (std::size_t k = j + 1; k < a.rank(); ++k) {
      double m = std::fabs((a[j] * b[k] - a[k] * b[j]).to_double());
      if (m > best) best = m, bj = j, bk = k;
    }
  if (best <= 0) throw DomainError("frame roots are linearly dependent");
  Scalar det = a[bj] * b[bk] - a[bk] * b[bj];
  Scalar s = (z[bj] * b[bk] - z[bk] * b[bj]) / det;
  Scalar t = (a[bj] * z[bk] - a[bk] * z[bj]) / det;
  double eps = d.tolerance();
  for (std::size_t l = 0; l < z.rank(); ++l)
    if (!nearly_equal(z[l], s * a[l] + t * b[l], eps))
      throw NotInPlaneError(root_string(z) + " is not in the span of the frame");

  std::optional<long> i;
  if (s.sign() >= 0) {
    i = c_index_of_nonnegative(frame.q, s, eps);
  } else if (auto j = c_index_of_nonnegative(frame.q, -s, eps)) {
    i = -*j;
  }
  if (!i) throw NotInSubsystemError(root_string(z) + ": alpha coordinate " + s.str() + " is not a c-value");
  if (nearly_equal(t, c_sequence(frame.q, *i + 1, d.eps()), eps)) return {*i, Family::beta_side};
  if (nearly_equal(t, c_sequence(frame.q, *i - 1, d.eps()), eps)) return {*i, Family::alpha_side};
  throw NotInSubsystemError(root_string(z) + ": coordinates (" + s.str() + ", " + t.str() +
                            ") are not a consecutive c-window");
}

std::vector<DihedralRoot> dihedral_roots(const CoxeterDatum& d, const DihedralFrame& frame, long i_min,
                                         long i_max) {
  if (i_min > i_max) throw DomainError("empty index range");
  std::vector<DihedralRoot> out;
  for (Family f : {Family::alpha_side, Family::beta_side})
    for (long i = i_min; i <= i_max; ++i) {
      ChainPosition pos{i, f};
      out.push_back({pos, chain_root(d, frame, pos)});
    }
  return out;
}

namespace {

// Alpha-side index p names c_p alpha + c_{p-1} beta for every p in Z; the
// beta-side window at i is its negative at p = -i.
long unified_index(const ChainPosition& p) { return p.family == Family::alpha_side ? p.index : -p.index; }

long floor_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::pair<ChainPosition, ChainPosition> canonical_pair_by_index(const ChainPosition& x, const ChainPosition& y) {
  long px = unified_index(x);
  long py = unified_index(y);
  if (px == py) throw DomainError("chain positions name the same reflection");
  // The subgroup's reflections sit at indices p = py (mod |px - py|); its
  // canonical roots are the ones nearest the sign change between 0 and 1.
  long step = std::labs(px - py);
  long first_positive = floor_mod(py - 1, step) + 1;
  return {ChainPosition{first_positive, Family::alpha_side}, ChainPosition{step - first_positive, Family::beta_side}};
}

DominancePairReport verify_dominance_pair(const CoxeterDatum& d, const Root& x, const Root& y) {
  if (root_key(d, x) == root_key(d, y) || !dominates(d, x, y))
    throw DomainError(root_string(x) + " does not strictly dominate " + root_string(y));
  DominancePairReport r;
  r.frame = canonical_pair(d, x, y);
  r.x_position = chain_position(d, r.frame, x);
  r.y_position = chain_position(d, r.frame, y);
  r.inner_xy = inner(d, x, y);
  r.inner_matches = nearly_equal(r.frame.q, r.inner_xy, d.tolerance());
  r.consecutive = r.x_position.family == r.y_position.family && r.x_position.index == r.y_position.index + 1;
  return r;
}

}  // namespace coxdom
