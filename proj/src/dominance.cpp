#include "coxdom/dominance.hpp"

#include <algorithm>

#include "coxdom/errors.hpp"
#include "coxdom/parallel.hpp"

namespace coxdom {

bool dominates(const CoxeterDatum& d, const Root& x, const Root& y) {
  Sign sx = sign_of(d, x);
  Sign sy = sign_of(d, y);
  if (root_key(d, x) == root_key(d, y)) return true;
  if (sx == Sign::negative && sy == Sign::negative) return dominates(d, -y, -x);
  // The identity sends x negative-to-negative while keeping y positive.
  if (sx == Sign::negative) return false;
  bool ip_at_least_one = is_at_least_one(classify(inner(d, x, y), d.eps()));
  if (sy == Sign::negative) return ip_at_least_one;
  return ip_at_least_one && depth(d, x) > depth(d, y);
}

DominanceRecord dominated_set(const CoxeterDatum& d, const Root& x, const Descent& descent) {
  DominanceRecord rec;
  rec.root = x;
  rec.root.set_depth(descent.word.length() + 1);
  for (auto& b : inversion_set(d, descent.word)) {
    if (is_at_least_one(classify(inner(d, x, b), d.eps()))) rec.dominated.push_back(std::move(b));
  }
  sort_roots(d, rec.dominated);
  return rec;
}

std::size_t dominated_count(const CoxeterDatum& d, const Root& x) {
  std::size_t n = 0;
  for (const auto& b : inversion_set(d, minimal_word(d, x).word))
    if (is_at_least_one(classify(inner(d, x, b), d.eps()))) ++n;
  return n;
}

DominanceRecord dominated_set(const CoxeterDatum& d, const Root& x) {
  return dominated_set(d, x, minimal_word(d, x));
}

std::vector<Root> elementary_roots(const CoxeterDatum& d, std::size_t size_cap) {
  if (size_cap < d.rank()) throw DomainError("size cap must be at least the rank");
  RootSet closure(d);
  for (std::size_t a = 0; a < d.rank(); ++a) closure.insert(Root::simple(d, a));
  // (x, e_a) <= -1 edges are excluded: then (r_a x, e_a) >= 1 and r_a x dominates e_a.
  for (std::size_t i = 0; i < closure.size(); ++i) {
    Root x = closure[i];
    for (std::size_t a = 0; a < d.rank(); ++a) {
      if (classify(inner_simple(d, x, a), d.eps()) != ScalarClass::OpenNegative) continue;
      closure.insert(reflect_simple(d, a, x));
      if (closure.size() > size_cap)
        throw LimitError("elementary root closure exceeds " + std::to_string(size_cap) + " roots");
    }
  }
  std::vector<Root> out = std::move(closure).release();
  std::vector<std::size_t> bad(out.size(), 0);
  parallel_for(out.size(), [&](std::size_t i) {
    auto rec = dominated_set(d, out[i]);
    out[i].set_depth(rec.root.cached_depth());
    bad[i] = rec.n();
  });
  for (std::size_t i = 0; i < out.size(); ++i)
    if (bad[i] != 0)
      throw InvariantError("closure member " + root_string(out[i]) + " dominates " + std::to_string(bad[i]) +
                           " positive roots");
  sort_roots(d, out);
  return out;
}

std::optional<std::vector<Root>> finite_positive_roots(const CoxeterDatum& d, std::size_t depth_cap,
                                                       std::size_t layer_cap) {
  if (!gram_positive_definite(d)) return std::nullopt;
  RootLayers layers = enumerate(d, depth_cap, layer_cap);
  if (!layers.exhausted)
    throw LimitError("finite root system not exhausted within depth " + std::to_string(depth_cap));
  return layers.flatten();
}

namespace {

HierarchyLevel make_level(const CoxeterDatum& d, std::size_t n, std::vector<Root> roots) {
  HierarchyLevel level;
  level.n = n;
  level.roots.resize(roots.size());
  parallel_for(roots.size(), [&](std::size_t i) { level.roots[i] = dominated_set(d, roots[i]); });
  for (const auto& rec : level.roots)
    if (rec.n() != n)
      throw InvariantError("root " + root_string(rec.root) + " emitted in D_" + std::to_string(n) + " dominates " +
                           std::to_string(rec.n()) + " positive roots");
  std::sort(level.roots.begin(), level.roots.end(),
            [](const DominanceRecord& a, const DominanceRecord& b) { return root_less(a.root, b.root); });
  return level;
}

}  // namespace

Hierarchy hierarchy(const CoxeterDatum& d, std::size_t n_max, const HierarchyOptions& opts) {
  Hierarchy h;
  if (auto all = finite_positive_roots(d, opts.depth_cap, opts.level_cap)) {
    h.finite = true;
    h.levels.push_back(make_level(d, 0, std::move(*all)));
    for (std::size_t n = 1; n <= n_max; ++n) h.levels.push_back(HierarchyLevel{n, {}});
    return h;
  }

  h.levels.push_back(make_level(d, 0, elementary_roots(d, opts.level_cap)));
  for (std::size_t n = 1; n <= n_max; ++n) {
    RootSet next(d);
    auto check_cap = [&] {
      if (next.size() > opts.level_cap)
        throw LimitError("level D_" + std::to_string(n) + " exceeds " + std::to_string(opts.level_cap) + " roots");
    };
    for (const auto& rec : h.levels.back().roots) {
      for (std::size_t a = 0; a < d.rank(); ++a) {
        if (is_at_most_minus_one(classify(inner_simple(d, rec.root, a), d.eps()))) {
          next.insert(reflect_simple(d, a, rec.root));
          check_cap();
        }
      }
    }
    // Index-based sweep reaches the fixed point: appended roots are visited too.
    for (std::size_t i = 0; i < next.size(); ++i) {
      Root x = next[i];
      for (std::size_t a = 0; a < d.rank(); ++a) {
        if (classify(inner_simple(d, x, a), d.eps()) != ScalarClass::OpenNegative) continue;
        next.insert(reflect_simple(d, a, x));
        check_cap();
      }
    }
    h.levels.push_back(make_level(d, n, std::move(next).release()));
  }
  return h;
}

}  // namespace coxdom
