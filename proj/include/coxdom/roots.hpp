#pragma once

#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coxdom/datum.hpp"
#include "coxdom/scalar.hpp"

namespace coxdom {

enum class Sign { positive, negative };

// Coordinates of a vector of E over the simple roots e_a.
class Root {
 public:
  Root() = default;
  explicit Root(std::vector<Scalar> coeffs, std::optional<std::size_t> depth = std::nullopt)
      : coeffs_(std::move(coeffs)), depth_(depth) {}

  static Root simple(const CoxeterDatum& d, std::size_t index);

  std::size_t rank() const { return coeffs_.size(); }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
  Scalar& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  // Depth recorded by whoever produced this root (enumeration, descent).
  std::optional<std::size_t> cached_depth() const { return depth_; }
  void set_depth(std::optional<std::size_t> depth) { depth_ = depth; }

  Root operator-() const;

  // Coefficient equality; the cached depth is ignored.
  friend bool operator==(const Root& a, const Root& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Scalar> coeffs_;
  std::optional<std::size_t> depth_;
};

// Element of W as a product r_{l0} r_{l1} ... of simple reflections.
struct Word {
  std::vector<std::size_t> letters;
  bool reduced = false;

  std::size_t length() const { return letters.size(); }
  Word inverse() const;
  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
};

std::string word_string(const CoxeterDatum& d, const Word& w);

// Hash key for deduplication: exact coefficients, or rounded decimals in
// approximate mode.
using RootKey = std::string;
RootKey root_key(const CoxeterDatum& d, const Root& x);

// Insertion-ordered set of roots keyed by root_key.
class RootSet {
 public:
  explicit RootSet(const CoxeterDatum& d) : datum_(&d) {}

  // False when an equal root is already present.
  bool insert(Root x);
  bool contains(const Root& x) const { return index_.contains(root_key(*datum_, x)); }
  std::optional<std::size_t> index_of(const Root& x) const;

  std::size_t size() const { return roots_.size(); }
  bool empty() const { return roots_.empty(); }
  const Root& operator[](std::size_t i) const { return roots_[i]; }
  auto begin() const { return roots_.begin(); }
  auto end() const { return roots_.end(); }
  const std::vector<Root>& roots() const { return roots_; }
  std::vector<Root> release() && { return std::move(roots_); }

 private:
  const CoxeterDatum* datum_;
  std::vector<Root> roots_;
  std::unordered_map<RootKey, std::size_t> index_;
};

// (x, y) = x^T B y.
Scalar inner(const CoxeterDatum& d, const Root& x, const Root& y);
// (x, e_a).
Scalar inner_simple(const CoxeterDatum& d, const Root& x, std::size_t a);

// x - 2 (x, e_a) e_a.
Root reflect_simple(const CoxeterDatum& d, std::size_t a, const Root& x);
// x - 2 (x, t) t; t must have unit norm.
Root reflect_root(const CoxeterDatum& d, const Root& t, const Root& x);
// Applies w = r_{l0} r_{l1} ... r_{lk} to x (rightmost letter first).
Root apply_word(const CoxeterDatum& d, const Word& w, const Root& x);

// Throws NotARootError for mixed-sign or zero vectors.
Sign sign_of(const CoxeterDatum& d, const Root& x);
bool is_positive(const CoxeterDatum& d, const Root& x);
// Index of the simple root x equals, if any.
std::optional<std::size_t> simple_index(const CoxeterDatum& d, const Root& x);
std::vector<std::size_t> support(const CoxeterDatum& d, const Root& x);
bool has_unit_norm(const CoxeterDatum& d, const Root& x);

inline constexpr std::size_t kDefaultDescentCap = 100000;

// Depth via greedy descent; LimitError after max_steps reflections.
std::size_t depth(const CoxeterDatum& d, const Root& x, std::size_t max_steps = kDefaultDescentCap);

// w in S(x) with w^{-1} x = e_simple. The word lists descent letters in the
// order they were applied, so x = r_{l0} ... r_{lk} e_simple.
struct Descent {
  Word word;
  std::size_t simple = 0;
};

Descent minimal_word(const CoxeterDatum& d, const Root& x, std::size_t max_steps = kDefaultDescentCap);

// Every descent obtainable by choosing any positive-inner-product letter at
// every step (all of S(x) reachable by simple descents). LimitError past cap.
std::vector<Descent> all_minimal_words(const CoxeterDatum& d, const Root& x, std::size_t cap = 100000);

// N(w^{-1}) = { r_{a1} ... r_{a(i-1)} e_{ai} } for a reduced w = r_{a1} ... r_{al}.
std::vector<Root> inversion_set(const CoxeterDatum& d, const Word& w);

// Positive roots layered by depth; layers[k] holds depth k + 1.
struct RootLayers {
  std::vector<std::vector<Root>> layers;
  // Enumeration ran out of roots: Phi+ is finite and fully listed.
  bool exhausted = false;

  std::size_t total() const;
  std::vector<Root> flatten() const;
};

inline constexpr std::size_t kDefaultLayerCap = 100000;

RootLayers enumerate(const CoxeterDatum& d, std::size_t max_depth, std::size_t layer_cap = kDefaultLayerCap);

// Ordering used for every emitted root list: depth, then coefficients.
bool root_less(const Root& a, const Root& b);
void sort_roots(const CoxeterDatum& d, std::vector<Root>& roots);

// Run-local memo for precedence queries. Thread-safe.
class PrecedenceMemo {
 public:
  std::optional<bool> find(const RootKey& y, const RootKey& x) const;
  void store(const RootKey& y, const RootKey& x, bool value);

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, bool> table_;
};

// y precedes (or equals) x: x = w y with dep(x) = l(w) + dep(y).
bool precedes(const CoxeterDatum& d, const Root& y, const Root& x, PrecedenceMemo* memo = nullptr);

// A word w with x = w y and dep(x) = l(w) + dep(y), if y precedes x.
std::optional<Word> precedence_path(const CoxeterDatum& d, const Root& y, const Root& x);

// Parses "3/2,1" into a root of the datum's rank and backend.
Root parse_root(const CoxeterDatum& d, std::string_view text);
std::string root_string(const Root& x);

}  // namespace coxdom
