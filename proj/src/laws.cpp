#include "coxdom/laws.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <gmpxx.h>

#include "coxdom/errors.hpp"
#include "coxdom/parallel.hpp"

namespace coxdom {

bool LawReport::all_passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawOutcome& l) { return l.passed; });
}

const LawOutcome* LawReport::find(std::string_view name) const {
  for (const auto& l : laws)
    if (l.name == name) return &l;
  return nullptr;
}

namespace {

class Tally {
 public:
  Tally(std::string name, std::string statement) {
    out_.name = std::move(name);
    out_.statement = std::move(statement);
  }

  template <typename WitnessFn>
  void expect(bool ok, WitnessFn&& witness) {
    ++out_.checked;
    if (!ok && out_.passed) {
      out_.passed = false;
      out_.witness = witness();
    }
  }

  LawOutcome take() { return std::move(out_); }

 private:
  LawOutcome out_;
};

class LawContext {
 public:
  LawContext(const CoxeterDatum& d, const Hierarchy& h, const LawOptions& opts) : d_(d), h_(h), opts_(opts) {
    for (const auto& level : h.levels) {
      for (const auto& rec : level.roots) {
        RootKey k = root_key(d, rec.root);
        level_of_.emplace(k, level.n);
        records_.emplace(k, rec);
      }
    }
    RootLayers layers = enumerate(d, opts.depth_cap, opts.layer_cap);
    sample_ = layers.flatten();
    std::vector<DominanceRecord> recs(sample_.size());
    parallel_for(sample_.size(), [&](std::size_t i) { recs[i] = dominated_set(d, sample_[i]); });
    for (auto& rec : recs) records_.try_emplace(root_key(d, rec.root), std::move(rec));
  }

  std::size_t n_max() const { return h_.levels.empty() ? 0 : h_.levels.size() - 1; }
  const std::vector<Root>& sample() const { return sample_; }
  const HierarchyLevel& level(std::size_t n) const { return h_.levels[n]; }

  std::optional<std::size_t> emitted_level(const Root& x) const {
    auto it = level_of_.find(root_key(d_, x));
    if (it == level_of_.end()) return std::nullopt;
    return it->second;
  }

  const DominanceRecord& record(const Root& x) {
    RootKey k = root_key(d_, x);
    auto it = records_.find(k);
    if (it == records_.end()) it = records_.emplace(k, dominated_set(d_, x)).first;
    return it->second;
  }

  // #D(x) for a positive root: the emitted level when present, else computed.
  std::size_t count(const Root& x) {
    if (auto n = emitted_level(x)) return *n;
    RootKey k = root_key(d_, x);
    if (auto it = records_.find(k); it != records_.end()) return it->second.n();
    auto [it, fresh] = counts_.try_emplace(k, 0);
    if (fresh) it->second = dominated_count(d_, x);
    return it->second;
  }

  std::set<RootKey> keys(const std::vector<Root>& roots) const {
    std::set<RootKey> s;
    for (const auto& r : roots) s.insert(root_key(d_, r));
    return s;
  }

 private:
  const CoxeterDatum& d_;
  const Hierarchy& h_;
  const LawOptions& opts_;
  std::unordered_map<RootKey, std::size_t> level_of_;
  std::unordered_map<RootKey, DominanceRecord> records_;
  std::unordered_map<RootKey, std::size_t> counts_;
  std::vector<Root> sample_;
};

std::string show(const Root& x) { return root_string(x); }

LawOutcome law_partition(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("hierarchy_partition", "levels are disjoint and contain every sampled root with #D(x) <= n_max");
  std::unordered_map<RootKey, std::size_t> seen;
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) {
    for (const auto& rec : ctx.level(n).roots) {
      auto [it, fresh] = seen.emplace(root_key(d, rec.root), n);
      t.expect(fresh, [&] { return show(rec.root) + " appears in D_" + std::to_string(it->second) + " and D_" + std::to_string(n); });
    }
  }
  for (const auto& x : ctx.sample()) {
    std::size_t n = ctx.record(x).n();
    if (n > ctx.n_max()) continue;
    auto emitted = ctx.emitted_level(x);
    t.expect(emitted && *emitted == n, [&] {
      return show(x) + " has #D(x) = " + std::to_string(n) + " but " +
             (emitted ? "was emitted in D_" + std::to_string(*emitted) : std::string("was not emitted"));
    });
  }
  return t.take();
}

LawOutcome law_records(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("dominated_set_records", "every y in D(x) has (x,y) >= 1 and dep(y) < dep(x)");
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) {
    for (const auto& rec : ctx.level(n).roots) {
      std::size_t dx = depth(d, rec.root);
      for (const auto& y : rec.dominated) {
        bool ok = is_at_least_one(classify(inner(d, rec.root, y), d.eps())) && depth(d, y) < dx;
        t.expect(ok, [&] { return "x=" + show(rec.root) + " y=" + show(y); });
      }
    }
  }
  return t.take();
}

LawOutcome law_level_one_products(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("level_one_products", "D_1 is contained in { r_a b : a, b in D_0 } and #D_1 <= #D_0^2 - #D_0");
  if (ctx.n_max() < 1) return t.take();
  const auto& d0 = ctx.level(0).roots;
  RootSet products(d);
  for (const auto& a : d0)
    for (const auto& b : d0) products.insert(reflect_root(d, a.root, b.root));
  for (const auto& rec : ctx.level(1).roots)
    t.expect(products.contains(rec.root), [&] { return show(rec.root) + " is not r_a b with a, b elementary"; });
  std::size_t k = d0.size();
  t.expect(ctx.level(1).roots.size() + k <= k * k,
           [&] { return "#D_1 = " + std::to_string(ctx.level(1).roots.size()) + " exceeds the bound"; });
  return t.take();
}

LawOutcome law_level_products(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("level_products", "D_n is contained in { r_a b : a in D_0, b in D_m, m <= n-1 }");
  const auto& d0 = ctx.level(0).roots;
  RootSet products(d);
  for (std::size_t n = 1; n <= ctx.n_max(); ++n) {
    for (const auto& a : d0)
      for (const auto& b : ctx.level(n - 1).roots) products.insert(reflect_root(d, a.root, b.root));
    for (const auto& rec : ctx.level(n).roots)
      t.expect(products.contains(rec.root), [&] {
        return show(rec.root) + " in D_" + std::to_string(n) + " is not r_a b with a elementary and b in a lower level";
      });
  }
  return t.take();
}

LawOutcome law_level_size_bound(LawContext& ctx) {
  Tally t("level_size_bound", "#D_n <= #D_0^(n+1) - #D_0^n for n >= 1");
  mpz_class k = static_cast<unsigned long>(ctx.level(0).roots.size());
  for (std::size_t n = 1; n <= ctx.n_max(); ++n) {
    mpz_class pn, pn1;
    mpz_pow_ui(pn.get_mpz_t(), k.get_mpz_t(), n);
    mpz_pow_ui(pn1.get_mpz_t(), k.get_mpz_t(), n + 1);
    mpz_class bound = pn1 - pn;
    mpz_class size = static_cast<unsigned long>(ctx.level(n).roots.size());
    t.expect(size <= bound, [&] {
      return "#D_" + std::to_string(n) + " = " + size.get_str() + " exceeds " + bound.get_str();
    });
  }
  return t.take();
}

LawOutcome law_elementary_reflections(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("elementary_reflections", "r_s D_0 is contained in -D_0, D_0 and D_1");
  for (const auto& rec : ctx.level(0).roots) {
    for (std::size_t s = 0; s < d.rank(); ++s) {
      Root y = reflect_simple(d, s, rec.root);
      bool ok;
      if (sign_of(d, y) == Sign::negative) {
        auto lvl = ctx.emitted_level(-y);
        ok = lvl && *lvl == 0;
      } else {
        ok = ctx.count(y) <= 1;
      }
      t.expect(ok, [&] { return "r_" + d.label(s) + " " + show(rec.root) + " = " + show(y); });
    }
  }
  return t.take();
}

LawOutcome law_level_reflections(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("level_reflections", "r_s D_n is contained in D_(n-1), D_n and D_(n+1) for n >= 1");
  for (std::size_t n = 1; n <= ctx.n_max(); ++n) {
    for (const auto& rec : ctx.level(n).roots) {
      for (std::size_t s = 0; s < d.rank(); ++s) {
        Root y = reflect_simple(d, s, rec.root);
        std::size_t m = ctx.count(y);
        t.expect(m + 1 >= n && m <= n + 1, [&] {
          return "r_" + d.label(s) + " " + show(rec.root) + " lies in D_" + std::to_string(m);
        });
      }
    }
  }
  return t.take();
}

LawOutcome law_short_word_disjoint(const CoxeterDatum& d, LawContext& ctx, const LawOptions& opts) {
  Tally t("short_word_disjoint", "{ w a : a in D_0, l(w) < n } is disjoint from D_n");
  RootSet orbit(d);
  for (const auto& rec : ctx.level(0).roots) orbit.insert(rec.root);
  std::size_t radius = 0;
  std::size_t frontier_begin = 0;
  for (std::size_t n = 1; n <= ctx.n_max(); ++n) {
    while (radius + 1 < n && radius < opts.short_word_cap) {
      std::size_t frontier_end = orbit.size();
      for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
        Root x = orbit[i];
        for (std::size_t s = 0; s < d.rank(); ++s) orbit.insert(reflect_simple(d, s, x));
      }
      frontier_begin = frontier_end;
      ++radius;
    }
    for (const auto& x : orbit) {
      if (sign_of(d, x) != Sign::positive) continue;
      auto lvl = ctx.emitted_level(x);
      t.expect(!(lvl && *lvl == n), [&] {
        return show(x) + " = w a with l(w) <= " + std::to_string(radius) + " lies in D_" + std::to_string(n);
      });
    }
  }
  return t.take();
}

LawOutcome law_reflection_trichotomy(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("reflection_trichotomy", "for x in D_n (n >= 1): r_s x in D_(n-1), D_(n+1), D_n iff (x,e_s) >= 1, <= -1, in (-1,1)");
  for (std::size_t n = 1; n <= ctx.n_max(); ++n) {
    for (const auto& rec : ctx.level(n).roots) {
      for (std::size_t s = 0; s < d.rank(); ++s) {
        ScalarClass c = classify(inner_simple(d, rec.root, s), d.eps());
        std::size_t expected = is_at_least_one(c) ? n - 1 : is_at_most_minus_one(c) ? n + 1 : n;
        Root y = reflect_simple(d, s, rec.root);
        std::size_t m = ctx.count(y);
        t.expect(m == expected, [&] {
          return "x=" + show(rec.root) + " in D_" + std::to_string(n) + ", s=" + d.label(s) + " (" +
                 std::string(to_string(c)) + "): r_s x in D_" + std::to_string(m);
        });
      }
    }
  }
  return t.take();
}

LawOutcome law_precedence_transport(const CoxeterDatum& d, LawContext& ctx, const LawOptions& opts) {
  Tally t("precedence_transport", "y preceding x via w implies w D(y) is contained in D(x)");
  const auto& sample = ctx.sample();
  for (const auto& x : sample) {
    if (simple_index(d, x)) continue;
    const auto& dx = ctx.record(x);
    auto dx_keys = ctx.keys(dx.dominated);
    for (std::size_t s = 0; s < d.rank(); ++s) {
      if (!is_positive(classify(inner_simple(d, x, s), d.eps()))) continue;
      Root y = reflect_simple(d, s, x);
      const auto& dy = ctx.record(y);
      bool ok = dy.n() <= dx.n();
      for (const auto& z : dy.dominated) ok = ok && dx_keys.contains(root_key(d, reflect_simple(d, s, z)));
      t.expect(ok, [&] { return "y=" + show(y) + " x=" + show(x) + " via r_" + d.label(s); });
    }
  }
  std::size_t budget = opts.precedence_pairs;
  for (auto xi = sample.rbegin(); xi != sample.rend() && budget > 0; ++xi) {
    const Root& x = *xi;
    const auto& dx = ctx.record(x);
    auto dx_keys = ctx.keys(dx.dominated);
    std::size_t dep_x = depth(d, x);
    for (const auto& y : sample) {
      if (budget == 0) break;
      if (depth(d, y) + 2 > dep_x) continue;
      --budget;
      auto w = precedence_path(d, y, x);
      if (!w) continue;
      const auto& dy = ctx.record(y);
      bool ok = dy.n() <= dx.n();
      for (const auto& z : dy.dominated) ok = ok && dx_keys.contains(root_key(d, apply_word(d, *w, z)));
      t.expect(ok, [&] { return "y=" + show(y) + " x=" + show(x) + " via " + word_string(d, *w); });
    }
  }
  return t.take();
}

LawOutcome law_predecessor_exists(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("predecessor_exists", "every x in D_n (n >= 1) is preceded by some y in D_(n-1)");
  for (std::size_t n = 1; n <= ctx.n_max(); ++n) {
    for (const auto& rec : ctx.level(n).roots) {
      bool found = false;
      std::unordered_set<RootKey> visited;
      std::deque<Root> queue{rec.root};
      while (!queue.empty() && !found) {
        Root cur = std::move(queue.front());
        queue.pop_front();
        if (simple_index(d, cur)) continue;
        for (std::size_t s = 0; s < d.rank() && !found; ++s) {
          if (!is_positive(classify(inner_simple(d, cur, s), d.eps()))) continue;
          Root below = reflect_simple(d, s, cur);
          if (!visited.insert(root_key(d, below)).second) continue;
          if (ctx.count(below) == n - 1) found = true;
          queue.push_back(std::move(below));
        }
      }
      t.expect(found, [&] { return show(rec.root) + " has no predecessor in D_" + std::to_string(n - 1); });
    }
  }
  return t.take();
}

LawOutcome law_root_reflection_shift(const CoxeterDatum& d, LawContext& ctx) {
  Tally t("root_reflection_shift",
          "for x in D_n (n >= 1) and positive a: #D(r_a x) < n if (x,a) >= 1, > n if (x,a) <= -1");
  std::vector<Root> reflecting;
  for (const auto& a : ctx.sample())
    if (!simple_index(d, a)) reflecting.push_back(a);
  for (std::size_t n = 1; n <= ctx.n_max(); ++n) {
    for (const auto& rec : ctx.level(n).roots) {
      for (const auto& a : reflecting) {
        ScalarClass c = classify(inner(d, rec.root, a), d.eps());
        if (!is_at_least_one(c) && !is_at_most_minus_one(c)) continue;
        Root y = reflect_root(d, a, rec.root);
        // #D is only defined on positive roots; r_a x can be negative when x dominates a.
        if (sign_of(d, y) != Sign::positive) continue;
        std::size_t m = ctx.count(y);
        bool ok = is_at_least_one(c) ? m < n : m > n;
        t.expect(ok, [&] {
          return "x=" + show(rec.root) + " in D_" + std::to_string(n) + ", a=" + show(a) + ": r_a x in D_" +
                 std::to_string(m);
        });
      }
    }
  }
  return t.take();
}

void law_descents(const CoxeterDatum& d, LawContext& ctx, std::vector<LawOutcome>& out) {
  Tally ts("descent_inversions_positive", "(b, x) > 0 for every b in N(w^{-1}), w in S(x)");
  Tally tt("full_descent_inversions_positive", "(b, x) > 0 for every b in N(w^{-1}), w in T(x)");
  Tally tp("descent_independence", "every w in S(x) yields the same D(x)");
  for (const auto& x : ctx.sample()) {
    auto expected = ctx.keys(ctx.record(x).dominated);
    for (const auto& desc : all_minimal_words(d, x)) {
      for (const auto& b : inversion_set(d, desc.word))
        ts.expect(is_positive(classify(inner(d, b, x), d.eps())),
                  [&] { return "x=" + show(x) + " w=" + word_string(d, desc.word) + " b=" + show(b); });
      Word full = desc.word;
      full.letters.push_back(desc.simple);
      for (const auto& b : inversion_set(d, full))
        tt.expect(is_positive(classify(inner(d, b, x), d.eps())),
                  [&] { return "x=" + show(x) + " w=" + word_string(d, full) + " b=" + show(b); });
      auto got = ctx.keys(dominated_set(d, x, desc).dominated);
      tp.expect(got == expected, [&] { return "x=" + show(x) + " w=" + word_string(d, desc.word); });
    }
  }
  out.push_back(ts.take());
  out.push_back(tt.take());
  out.push_back(tp.take());
}

LawOutcome law_empty_level_stable(LawContext& ctx) {
  Tally t("empty_level_stable", "an empty level is followed only by empty levels");
  bool seen_empty = false;
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) {
    bool empty = ctx.level(n).roots.empty();
    t.expect(!(seen_empty && !empty), [&] { return "D_" + std::to_string(n) + " is non-empty after an empty level"; });
    seen_empty |= empty;
  }
  return t.take();
}

LawOutcome law_levels_nonempty(LawContext& ctx, bool finite) {
  Tally t("levels_nonempty", "D_n is non-empty for every n when W is infinite");
  if (finite) return t.take();
  for (std::size_t n = 0; n <= ctx.n_max(); ++n)
    t.expect(!ctx.level(n).roots.empty(), [&] { return "D_" + std::to_string(n) + " is empty"; });
  return t.take();
}

}  // namespace

LawReport check_laws(const CoxeterDatum& d, const Hierarchy& h, const LawOptions& opts) {
  if (h.levels.empty()) throw DomainError("check_laws needs at least D_0");
  LawContext ctx(d, h, opts);
  LawReport report;
  auto& laws = report.laws;
  laws.push_back(law_partition(d, ctx));
  laws.push_back(law_records(d, ctx));
  laws.push_back(law_level_one_products(d, ctx));
  laws.push_back(law_level_products(d, ctx));
  laws.push_back(law_level_size_bound(ctx));
  laws.push_back(law_short_word_disjoint(d, ctx, opts));
  laws.push_back(law_elementary_reflections(d, ctx));
  laws.push_back(law_level_reflections(d, ctx));
  laws.push_back(law_precedence_transport(d, ctx, opts));
  laws.push_back(law_reflection_trichotomy(d, ctx));
  laws.push_back(law_empty_level_stable(ctx));
  laws.push_back(law_levels_nonempty(ctx, h.finite));
  laws.push_back(law_predecessor_exists(d, ctx));
  laws.push_back(law_root_reflection_shift(d, ctx));
  law_descents(d, ctx, laws);
  return report;
}

std::vector<LawOutcome> check_oracle_agreement(const CoxeterDatum& d, BallOracle& oracle,
                                               const std::vector<Root>& elementary,
                                               const OracleCheckOptions& opts) {
  std::vector<Root> sample = enumerate(d, opts.pair_depth).flatten();
  std::vector<std::size_t> depths(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) depths[i] = depth(d, sample[i]);
  std::vector<LawOutcome> out;

  Tally dom("oracle_dominance", "fast dominance is never refuted and every fast false has a ball witness");
  std::size_t widest = 0, beyond_sum = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (i == j) continue;
      bool fast = dominates(d, sample[i], sample[j]);
      Verdict v = oracle.dominance(sample[i], sample[j]);
      dom.expect(fast != v.refuted, [&] {
        return "x=" + show(sample[i]) + " y=" + show(sample[j]) + (fast ? ": refuted by " + word_string(d, v.witness->witness)
                                                                       : ": no refuting element in the ball");
      });
      if (v.refuted) {
        widest = std::max(widest, v.witness->length);
        if (v.witness->length > depths[i] + depths[j]) ++beyond_sum;
      }
    }
  }
  LawOutcome dom_out = dom.take();
  dom_out.detail = "longest shortest witness " + std::to_string(widest) + "; witnesses longer than dep(x)+dep(y): " +
                   std::to_string(beyond_sum);
  out.push_back(std::move(dom_out));

  Tally dep("oracle_depth", "ball depth equals greedy-descent depth");
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (depths[i] > oracle.radius()) continue;
    auto found = oracle.depth(sample[i]);
    dep.expect(found && *found == depths[i], [&] {
      return show(sample[i]) + ": descent depth " + std::to_string(depths[i]) + ", ball depth " +
             (found ? std::to_string(*found) : std::string("not found"));
    });
  }
  out.push_back(dep.take());

  Tally ns("oracle_inversion_sets", "N(w) by direct action equals the inversion set of a shortest word");
  std::vector<Root> candidates = enumerate(d, std::max<std::size_t>(opts.nset_length, 1)).flatten();
  for (const auto& g : oracle.ball().elements) {
    if (g.length > opts.nset_length) break;
    auto direct = nset_oracle(d, g, candidates);
    std::set<RootKey> direct_keys, word_keys;
    for (const auto& r : direct) direct_keys.insert(root_key(d, r));
    for (const auto& r : inversion_set(d, g.witness.inverse())) word_keys.insert(root_key(d, r));
    ns.expect(direct_keys == word_keys && direct.size() == g.length,
              [&] { return "w=" + word_string(d, g.witness); });
  }
  out.push_back(ns.take());

  Tally el("oracle_elementary", "every member of D_0 is refuted as dominating each other sampled positive root");
  for (const auto& x : elementary) {
    RootKey xk = root_key(d, x);
    for (const auto& y : sample) {
      if (root_key(d, y) == xk) continue;
      el.expect(oracle.dominance(x, y).refuted, [&] { return "x=" + show(x) + " y=" + show(y); });
    }
  }
  out.push_back(el.take());
  return out;
}

}  // namespace coxdom
