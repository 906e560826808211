#include "coxdom/roots.hpp"

#include <algorithm>
#include <sstream>

#include "coxdom/errors.hpp"
#include "coxdom/parallel.hpp"

namespace coxdom {

Root Root::simple(const CoxeterDatum& d, std::size_t index) {
  if (index >= d.rank()) throw IndexError("simple root index " + std::to_string(index) + " out of range");
  std::vector<Scalar> c(d.rank(), Scalar(0).as(d.backend()));
  c[index] = Scalar(1).as(d.backend());
  return Root(std::move(c), 1);
}

Root Root::operator-() const {
  std::vector<Scalar> c;
  c.reserve(coeffs_.size());
  for (const auto& v : coeffs_) c.push_back(-v);
  return Root(std::move(c));
}

Word Word::inverse() const {
  Word w{letters, reduced};
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

std::string word_string(const CoxeterDatum& d, const Word& w) {
  if (w.letters.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (k) s += ' ';
    s += "r_" + d.label(w.letters[k]);
  }
  return s;
}

RootKey root_key(const CoxeterDatum& d, const Root& x) {
  RootKey key;
  const int digits = d.key_digits();
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (i) key += ',';
    key += x[i].key(digits);
  }
  return key;
}

bool RootSet::insert(Root x) {
  auto [it, fresh] = index_.try_emplace(root_key(*datum_, x), roots_.size());
  if (!fresh) return false;
  roots_.push_back(std::move(x));
  return true;
}

std::optional<std::size_t> RootSet::index_of(const Root& x) const {
  auto it = index_.find(root_key(*datum_, x));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_rank(const CoxeterDatum& d, const Root& x) {
  if (x.rank() != d.rank())
    throw DimensionError("vector has " + std::to_string(x.rank()) + " coefficients, datum has rank " +
                         std::to_string(d.rank()));
}

}  // namespace

Scalar inner_simple(const CoxeterDatum& d, const Root& x, std::size_t a) {
  check_rank(d, x);
  Scalar s = Scalar(0).as(d.backend());
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (x[i].is_zero()) continue;
    const Scalar& g = d.gram(i, a);
    if (g.is_zero()) continue;
    s += x[i] * g;
  }
  return s;
}

Scalar inner(const CoxeterDatum& d, const Root& x, const Root& y) {
  check_rank(d, x);
  check_rank(d, y);
  Scalar s = Scalar(0).as(d.backend());
  for (std::size_t j = 0; j < y.rank(); ++j) {
    if (y[j].is_zero()) continue;
    s += inner_simple(d, x, j) * y[j];
  }
  return s;
}

Root reflect_simple(const CoxeterDatum& d, std::size_t a, const Root& x) {
  if (a >= d.rank()) throw IndexError("generator index " + std::to_string(a) + " out of range");
  Scalar ip = inner_simple(d, x, a);
  Root y = x;
  y.set_depth(std::nullopt);
  y[a] -= Scalar(2) * ip;
  return y;
}

Root reflect_root(const CoxeterDatum& d, const Root& t, const Root& x) {
  if (!has_unit_norm(d, t)) throw NotUnitError("reflecting vector " + root_string(t) + " does not have (t,t) = 1");
  Scalar f = Scalar(2) * inner(d, x, t);
  std::vector<Scalar> c = x.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!t[i].is_zero()) c[i] -= f * t[i];
  return Root(std::move(c));
}

Root apply_word(const CoxeterDatum& d, const Word& w, const Root& x) {
  Root y = x;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) y = reflect_simple(d, *it, y);
  return y;
}

Sign sign_of(const CoxeterDatum& d, const Root& x) {
  check_rank(d, x);
  bool pos = false, neg = false;
  for (const auto& c : x.coeffs()) {
    int s = sign(c, d.eps());
    pos |= s > 0;
    neg |= s < 0;
  }
  if (pos && neg) throw NotARootError("mixed-sign vector " + root_string(x) + " is not a root");
  if (!pos && !neg) throw NotARootError("zero vector is not a root");
  return pos ? Sign::positive : Sign::negative;
}

bool is_positive(const CoxeterDatum& d, const Root& x) { return sign_of(d, x) == Sign::positive; }

std::optional<std::size_t> simple_index(const CoxeterDatum& d, const Root& x) {
  check_rank(d, x);
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (sign(x[i], d.eps()) == 0) continue;
    if (found) return std::nullopt;
    found = i;
  }
  if (found && nearly_equal(x[*found], Scalar(1), d.eps())) return found;
  return std::nullopt;
}

std::vector<std::size_t> support(const CoxeterDatum& d, const Root& x) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < x.rank(); ++i)
    if (sign(x[i], d.eps()) != 0) s.push_back(i);
  return s;
}

bool has_unit_norm(const CoxeterDatum& d, const Root& x) { return nearly_equal(inner(d, x, x), Scalar(1), d.eps()); }

namespace {

std::optional<std::size_t> first_descent_letter(const CoxeterDatum& d, const Root& x) {
  for (std::size_t a = 0; a < d.rank(); ++a)
    if (is_positive(classify(inner_simple(d, x, a), d.eps()))) return a;
  return std::nullopt;
}

void require_positive(const CoxeterDatum& d, const Root& x, const char* what) {
  if (sign_of(d, x) != Sign::positive)
    throw DomainError(std::string(what) + " requires a positive root, got " + root_string(x));
}

}  // namespace

Descent minimal_word(const CoxeterDatum& d, const Root& x, std::size_t max_steps) {
  require_positive(d, x, "minimal_word");
  Descent out;
  Root cur = x;
  for (std::size_t steps = 0;; ++steps) {
    if (auto s = simple_index(d, cur)) {
      out.simple = *s;
      out.word.reduced = true;
      return out;
    }
    if (steps >= max_steps)
      throw LimitError("descent of " + root_string(x) + " exceeded " + std::to_string(max_steps) + " steps");
    auto a = first_descent_letter(d, cur);
    if (!a) throw NotARootError(root_string(x) + " has no descent letter; not a root");
    cur = reflect_simple(d, *a, cur);
    if (sign_of(d, cur) != Sign::positive) throw NotARootError(root_string(x) + " descends to a non-positive vector");
    out.word.letters.push_back(*a);
  }
}

std::size_t depth(const CoxeterDatum& d, const Root& x, std::size_t max_steps) {
  if (auto cached = x.cached_depth()) return *cached;
  return minimal_word(d, x, max_steps).word.length() + 1;
}

std::vector<Descent> all_minimal_words(const CoxeterDatum& d, const Root& x, std::size_t cap) {
  require_positive(d, x, "all_minimal_words");
  std::vector<Descent> out;
  Word prefix;
  prefix.reduced = true;
  std::function<void(const Root&)> walk = [&](const Root& cur) {
    if (auto s = simple_index(d, cur)) {
      if (out.size() >= cap) throw LimitError("more than " + std::to_string(cap) + " descent branches");
      out.push_back(Descent{prefix, *s});
      return;
    }
    bool any = false;
    for (std::size_t a = 0; a < d.rank(); ++a) {
      if (!is_positive(classify(inner_simple(d, cur, a), d.eps()))) continue;
      any = true;
      prefix.letters.push_back(a);
      walk(reflect_simple(d, a, cur));
      prefix.letters.pop_back();
    }
    if (!any) throw NotARootError(root_string(x) + " has no descent letter; not a root");
  };
  walk(x);
  return out;
}

std::vector<Root> inversion_set(const CoxeterDatum& d, const Word& w) {
  const std::size_t n = d.rank();
  // Columns of the prefix product r_{a1} ... r_{a(i-1)}; w is reduced iff
  // every image of the next letter's simple root is positive.
  std::vector<Scalar> m(n * n, Scalar(0).as(d.backend()));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = Scalar(1).as(d.backend());
  std::vector<Root> out;
  out.reserve(w.length());
  for (std::size_t a : w.letters) {
    if (a >= n) throw IndexError("generator index " + std::to_string(a) + " out of range");
    std::vector<Scalar> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = m[i * n + a];
    Root v(std::move(col));
    if (sign_of(d, v) != Sign::positive) throw NotReducedError("word " + word_string(d, w) + " is not reduced");
    out.push_back(std::move(v));
    for (std::size_t i = 0; i < n; ++i) {
      Scalar f = Scalar(2) * m[i * n + a];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!d.gram(a, j).is_zero()) m[i * n + j] -= f * d.gram(a, j);
    }
  }
  return out;
}

std::size_t RootLayers::total() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

std::vector<Root> RootLayers::flatten() const {
  std::vector<Root> out;
  out.reserve(total());
  for (const auto& l : layers) out.insert(out.end(), l.begin(), l.end());
  return out;
}

bool root_less(const Root& a, const Root& b) {
  auto da = a.cached_depth().value_or(0), db = b.cached_depth().value_or(0);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.rank() && i < b.rank(); ++i) {
    auto c = a[i] <=> b[i];
    if (c < 0) return true;
    if (c > 0) return false;
  }
  return a.rank() < b.rank();
}

void sort_roots(const CoxeterDatum& d, std::vector<Root>& roots) {
  for (auto& r : roots)
    if (!r.cached_depth() && sign_of(d, r) == Sign::positive) r.set_depth(depth(d, r));
  std::sort(roots.begin(), roots.end(), root_less);
}

RootLayers enumerate(const CoxeterDatum& d, std::size_t max_depth, std::size_t layer_cap) {
  if (max_depth < 1) throw DomainError("enumerate needs max_depth >= 1");
  RootLayers out;
  RootSet seen(d);
  std::vector<Root> layer;
  for (std::size_t a = 0; a < d.rank(); ++a) {
    layer.push_back(Root::simple(d, a));
    seen.insert(layer.back());
  }
  out.layers.push_back(layer);

  for (std::size_t depth_k = 1;; ++depth_k) {
    const auto& cur = out.layers.back();
    std::vector<std::vector<Root>> candidates(cur.size());
    parallel_for(cur.size(), [&](std::size_t i) {
      for (std::size_t a = 0; a < d.rank(); ++a)
        if (is_negative(classify(inner_simple(d, cur[i], a), d.eps())))
          candidates[i].push_back(reflect_simple(d, a, cur[i]));
    });
    bool has_edges = std::any_of(candidates.begin(), candidates.end(), [](const auto& c) { return !c.empty(); });
    if (!has_edges) {
      out.exhausted = true;
      break;
    }
    if (depth_k >= max_depth) break;
    std::vector<Root> next;
    for (auto& cs : candidates) {
      for (auto& y : cs) {
        if (!seen.insert(y)) continue;
        y.set_depth(depth_k + 1);
        next.push_back(std::move(y));
        if (next.size() > layer_cap)
          throw LimitError("depth layer " + std::to_string(depth_k + 1) + " exceeds " + std::to_string(layer_cap) +
                           " roots");
      }
    }
    std::sort(next.begin(), next.end(), root_less);
    out.layers.push_back(std::move(next));
  }
  return out;
}

std::optional<bool> PrecedenceMemo::find(const RootKey& y, const RootKey& x) const {
  std::lock_guard lock(mutex_);
  auto it = table_.find(y + "|" + x);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void PrecedenceMemo::store(const RootKey& y, const RootKey& x, bool value) {
  std::lock_guard lock(mutex_);
  table_[y + "|" + x] = value;
}

namespace {

// Depth-first search down depth-decreasing simple reflections from x to y.
bool descend_to(const CoxeterDatum& d, const Root& y, const RootKey& ykey, std::size_t ydepth, const Root& x,
                std::size_t xdepth, Word* path, PrecedenceMemo* memo, std::unordered_set<RootKey>& dead) {
  RootKey xkey = root_key(d, x);
  if (xkey == ykey) return true;
  if (xdepth <= ydepth) return false;
  if (dead.contains(xkey)) return false;
  if (memo && !path) {
    if (auto hit = memo->find(ykey, xkey)) return *hit;
  }
  bool found = false;
  for (std::size_t a = 0; a < d.rank() && !found; ++a) {
    if (!is_positive(classify(inner_simple(d, x, a), d.eps()))) continue;
    Root down = reflect_simple(d, a, x);
    if (path) path->letters.push_back(a);
    found = descend_to(d, y, ykey, ydepth, down, xdepth - 1, path, memo, dead);
    if (!found && path) path->letters.pop_back();
  }
  if (!found) dead.insert(xkey);
  if (memo) memo->store(ykey, xkey, found);
  return found;
}

}  // namespace

bool precedes(const CoxeterDatum& d, const Root& y, const Root& x, PrecedenceMemo* memo) {
  require_positive(d, y, "precedes");
  require_positive(d, x, "precedes");
  std::unordered_set<RootKey> dead;
  return descend_to(d, y, root_key(d, y), depth(d, y), x, depth(d, x), nullptr, memo, dead);
}

std::optional<Word> precedence_path(const CoxeterDatum& d, const Root& y, const Root& x) {
  require_positive(d, y, "precedence_path");
  require_positive(d, x, "precedence_path");
  Word w;
  w.reduced = true;
  std::unordered_set<RootKey> dead;
  if (descend_to(d, y, root_key(d, y), depth(d, y), x, depth(d, x), &w, nullptr, dead)) return w;
  return std::nullopt;
}

Root parse_root(const CoxeterDatum& d, std::string_view text) {
  std::vector<Scalar> c;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    c.push_back(parse_scalar(piece, d.backend()));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (c.size() != d.rank())
    throw DimensionError("root '" + std::string(text) + "' has " + std::to_string(c.size()) +
                         " coefficients, expected " + std::to_string(d.rank()));
  return Root(std::move(c));
}

std::string root_string(const Root& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (i) s += ',';
    s += x[i].str();
  }
  return s + ")";
}

}  // namespace coxdom
