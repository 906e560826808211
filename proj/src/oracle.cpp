#include "coxdom/oracle.hpp"

#include "coxdom/errors.hpp"
#include "coxdom/parallel.hpp"

namespace coxdom {

Matrix identity_matrix(const CoxeterDatum& d) {
  std::size_t n = d.rank();
  Backend b = d.backend();
  Matrix m(n * n, Scalar(0).as(b));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = Scalar(1).as(b);
  return m;
}

namespace {

// M r_a: column a of M, times -2 B[a, :], added to M.
Matrix right_reflect(const CoxeterDatum& d, const Matrix& m, std::size_t a) {
  std::size_t n = d.rank();
  Matrix out = m;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar f = Scalar(2) * m[i * n + a];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] -= f * d.gram(a, j);
  }
  return out;
}

int root_sign(const CoxeterDatum& d, const Root& x) {
  bool pos = false, neg = false;
  for (const auto& c : x.coeffs()) {
    int s = sign(c, d.eps());
    pos |= s > 0;
    neg |= s < 0;
  }
  if (pos == neg) throw InvariantError("ball element maps a root to non-root " + root_string(x));
  return pos ? 1 : -1;
}

// w x is a root, so its first nonzero coordinate carries its sign.
bool maps_negative(const CoxeterDatum& d, const Matrix& m, const Root& x) {
  const std::size_t n = d.rank();
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s = Scalar(0).as(d.backend());
    for (std::size_t k = 0; k < n; ++k)
      if (!x[k].is_zero()) s += m[i * n + k] * x[k];
    if (int sg = sign(s, d.eps()); sg != 0) return sg < 0;
  }
  throw InvariantError("group element annihilates " + root_string(x));
}

}  // namespace

Matrix word_matrix(const CoxeterDatum& d, const Word& w) {
  Matrix m = identity_matrix(d);
  for (std::size_t a : w.letters) {
    if (a >= d.rank()) throw IndexError("generator index " + std::to_string(a) + " out of range");
    m = right_reflect(d, m, a);
  }
  return m;
}

Matrix multiply(const CoxeterDatum& d, const Matrix& a, const Matrix& b) {
  std::size_t n = d.rank();
  Matrix out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar s = Scalar(0).as(d.backend());
      for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      out[i * n + j] = std::move(s);
    }
  return out;
}

Root apply_matrix(const CoxeterDatum& d, const Matrix& m, const Root& x) {
  std::size_t n = d.rank();
  if (x.rank() != n) throw DimensionError("vector rank does not match the datum");
  std::vector<Scalar> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s = Scalar(0).as(d.backend());
    for (std::size_t k = 0; k < n; ++k) s += m[i * n + k] * x[k];
    out[i] = std::move(s);
  }
  return Root(std::move(out));
}

std::string matrix_key(const CoxeterDatum& d, const Matrix& m) {
  std::string key;
  int digits = d.key_digits();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) key += ',';
    key += m[i].key(digits);
  }
  return key;
}

bool preserves_form(const CoxeterDatum& d, const Matrix& m) {
  std::size_t n = d.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar s = Scalar(0).as(d.backend());
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) s += m[k * n + i] * d.gram(k, l) * m[l * n + j];
      if (!nearly_equal(s, d.gram(i, j), d.tolerance() * 100)) return false;
    }
  return true;
}

std::optional<std::size_t> CayleyBall::find(const CoxeterDatum& d, const Matrix& m) const {
  auto it = index.find(matrix_key(d, m));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

CayleyBall cayley_ball(const CoxeterDatum& d, std::size_t max_len, std::size_t cap) {
  CayleyBall ball;
  GroupElement id{identity_matrix(d), Word{{}, true}, 0};
  ball.index.emplace(matrix_key(d, id.matrix), 0);
  ball.elements.push_back(std::move(id));
  ball.layer_sizes.push_back(1);
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = ball.elements.size();
    std::size_t n = d.rank();
    struct Candidate {
      std::size_t letter;
      std::string key;
      Matrix matrix;
    };
    std::vector<std::vector<Candidate>> candidates(end - begin);
    parallel_for(end - begin, [&](std::size_t k) {
      const GroupElement& g = ball.elements[begin + k];
      for (std::size_t a = 0; a < n; ++a) {
        if (!g.witness.letters.empty() && g.witness.letters.back() == a) continue;
        Matrix m = right_reflect(d, g.matrix, a);
        std::string key = matrix_key(d, m);
        candidates[k].push_back({a, std::move(key), std::move(m)});
      }
    });
    std::size_t added = 0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      for (auto& c : candidates[k]) {
        if (!ball.index.emplace(std::move(c.key), ball.elements.size()).second) continue;
        Word w = ball.elements[begin + k].witness;
        w.letters.push_back(c.letter);
        w.reduced = true;
        ball.elements.push_back(GroupElement{std::move(c.matrix), std::move(w), len});
        ++added;
        if (ball.elements.size() > cap)
          throw LimitError("Cayley ball exceeds " + std::to_string(cap) + " elements at length " +
                           std::to_string(len));
      }
    }
    ball.layer_sizes.push_back(added);
    begin = end;
    if (added == 0) break;
  }
  return ball;
}

BallOracle::BallOracle(const CoxeterDatum& d, std::size_t max_len, std::size_t cap)
    : d_(d), radius_(max_len), ball_(cayley_ball(d, max_len, cap)) {}

const boost::dynamic_bitset<>& BallOracle::sends_negative(const Root& x) {
  RootKey key = root_key(d_, x);
  if (auto it = negative_.find(key); it != negative_.end()) return it->second;
  std::vector<char> flags(ball_.elements.size());
  if (x.rank() != d_.rank()) throw DimensionError("vector rank does not match the datum");
  parallel_for(flags.size(), [&](std::size_t e) { flags[e] = maps_negative(d_, ball_.elements[e].matrix, x); });
  boost::dynamic_bitset<> bits(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) bits[i] = flags[i] != 0;
  return negative_.emplace(key, std::move(bits)).first->second;
}

Verdict BallOracle::dominance(const Root& x, const Root& y) {
  boost::dynamic_bitset<> diff = sends_negative(x);
  diff -= sends_negative(y);
  Verdict v;
  if (auto i = diff.find_first(); i != boost::dynamic_bitset<>::npos) {
    v.refuted = true;
    v.witness = ball_.elements[i];
  }
  return v;
}

std::optional<std::size_t> BallOracle::depth(const Root& x) {
  auto i = sends_negative(x).find_first();
  if (i == boost::dynamic_bitset<>::npos) return std::nullopt;
  return ball_.elements[i].length;
}

Verdict dominance_oracle(const CoxeterDatum& d, const Root& x, const Root& y, std::size_t max_len) {
  BallOracle o(d, max_len);
  return o.dominance(x, y);
}

std::optional<std::size_t> depth_oracle(const CoxeterDatum& d, const Root& x, std::size_t max_len) {
  if (root_sign(d, x) < 0) throw DomainError("depth_oracle needs a positive root");
  BallOracle o(d, max_len);
  return o.depth(x);
}

std::vector<Root> nset_oracle(const CoxeterDatum& d, const GroupElement& w, const std::vector<Root>& candidates) {
  std::vector<Root> out;
  if (w.length == 0) return out;
  for (const auto& x : candidates)
    if (maps_negative(d, w.matrix, x)) out.push_back(x);
  return out;
}

std::vector<Root> nset_oracle(const CoxeterDatum& d, const GroupElement& w, std::size_t depth_cap) {
  if (depth_cap < w.length)
    throw DomainError("depth cap " + std::to_string(depth_cap) + " is below the element length " +
                      std::to_string(w.length));
  if (w.length == 0) return {};
  return nset_oracle(d, w, enumerate(d, depth_cap).flatten());
}

}  // namespace coxdom
