#include <doctest.h>

#include <string>

#include "coxdom/dominance.hpp"
#include "coxdom/errors.hpp"
#include "coxdom/laws.hpp"
#include "coxdom/oracle.hpp"
#include "coxdom/roots.hpp"
#include "support.hpp"

using namespace coxdom;
using testing::keys;
using testing::load;
using testing::R;

namespace {

std::set<RootKey> level_keys(const CoxeterDatum& d, const HierarchyLevel& level) {
  std::set<RootKey> out;
  for (const auto& rec : level.roots) out.insert(root_key(d, rec.root));
  return out;
}

std::string pair_text(long a, long b) { return std::to_string(a) + "," + std::to_string(b); }

}  // namespace

TEST_CASE("dominates on affine A1") {
  auto d = load("tilde_a1");
  CHECK(dominates(d, R(d, "2,1"), R(d, "1,0")));
  CHECK_FALSE(dominates(d, R(d, "1,2"), R(d, "1,0")));
  CHECK_FALSE(dominates(d, R(d, "1,0"), R(d, "2,1")));
  CHECK(dominates(d, R(d, "3,2"), R(d, "3,2")));
  // Mixed signs.
  CHECK_FALSE(dominates(d, R(d, "2,1"), R(d, "-1,0")));
  CHECK(dominates(d, R(d, "1,2"), R(d, "-1,0")));
  CHECK_FALSE(dominates(d, R(d, "-1,0"), R(d, "0,1")));
  // Both negative: -y dom -x.
  CHECK(dominates(d, R(d, "-1,0"), R(d, "-2,-1")));
  CHECK_FALSE(dominates(d, R(d, "-2,-1"), R(d, "-1,0")));
  CHECK_THROWS_AS(dominates(d, R(d, "1,-1"), R(d, "1,0")), NotARootError);
}

TEST_CASE("dominated sets on affine A1") {
  auto d = load("tilde_a1");
  for (std::size_t a = 0; a < d.rank(); ++a) {
    auto rec = dominated_set(d, Root::simple(d, a));
    CHECK(rec.n() == 0);
  }
  auto rec = dominated_set(d, R(d, "3,2"));
  CHECK(rec.n() == 2);
  CHECK(keys(d, rec.dominated) == keys(d, std::vector<std::string>{"1,0", "2,1"}));
  auto rec2 = dominated_set(d, R(d, "1,2"));
  CHECK(keys(d, rec2.dominated) == keys(d, std::vector<std::string>{"0,1"}));
  CHECK(dominated_count(d, R(d, "3,2")) == 2);
  CHECK_THROWS_AS(dominated_set(d, R(d, "-1,0")), DomainError);
}

TEST_CASE("dominated set closed form on affine A1") {
  auto d = load("tilde_a1");
  for (long n = 0; n <= 15; ++n) {
    auto rec = dominated_set(d, R(d, pair_text(n + 1, n)));
    CHECK(rec.n() == static_cast<std::size_t>(n));
    std::vector<std::string> expected;
    for (long k = 0; k < n; ++k) expected.push_back(pair_text(k + 1, k));
    CHECK(keys(d, rec.dominated) == keys(d, expected));
  }
}

TEST_CASE("dominated set records satisfy the basic bounds") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    for (const auto& x : enumerate(d, 6).flatten()) {
      auto rec = dominated_set(d, x);
      auto inv = keys(d, inversion_set(d, minimal_word(d, x).word));
      std::size_t dx = depth(d, x);
      for (const auto& y : rec.dominated) {
        CHECK(is_at_least_one(classify(inner(d, x, y), d.eps())));
        CHECK(depth(d, y) < dx);
        CHECK(inv.contains(root_key(d, y)));
        CHECK(dominates(d, x, y));
      }
      CHECK(rec.n() == dominated_count(d, x));
    }
  }
}

TEST_CASE("dominance is a partial order on sampled positive roots") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    auto roots = enumerate(d, name == "universal3" ? 4 : 6).flatten();
    std::size_t n = roots.size();
    std::vector<std::vector<bool>> dom(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dom[i][j] = dominates(d, roots[i], roots[j]);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(dom[i][i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && dom[i][j]) CHECK_FALSE(dom[j][i]);
        if (!dom[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (dom[j][k]) CHECK(dom[i][k]);
      }
    }
  }
}

TEST_CASE("elementary roots") {
  auto a1 = load("tilde_a1");
  CHECK(keys(a1, elementary_roots(a1)) == keys(a1, std::vector<std::string>{"1,0", "0,1"}));

  auto a2 = load("tilde_a2");
  auto e2 = elementary_roots(a2);
  CHECK(e2.size() == 6);
  CHECK(keys(a2, e2) == keys(a2, std::vector<std::string>{"1,0,0", "0,1,0", "0,0,1", "1,1,0", "0,1,1", "1,0,1"}));

  auto a3 = load("a3");
  auto e3 = elementary_roots(a3);
  CHECK(e3.size() == 6);
  auto all = finite_positive_roots(a3);
  REQUIRE(all);
  CHECK(keys(a3, e3) == keys(a3, *all));

  CHECK(elementary_roots(load("universal3")).size() == 3);
  CHECK_THROWS_AS(elementary_roots(a2, 4), LimitError);
}

TEST_CASE("elementary roots are exactly the roots dominating nothing") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    auto elem = keys(d, elementary_roots(d));
    for (const auto& x : enumerate(d, 8).flatten()) {
      bool member = elem.contains(root_key(d, x));
      CHECK(member == (dominated_count(d, x) == 0));
    }
  }
}

TEST_CASE("hierarchy closed form on affine A1") {
  auto d = load("tilde_a1");
  auto h = hierarchy(d, 3);
  REQUIRE(h.levels.size() == 4);
  CHECK_FALSE(h.finite);
  for (long n = 0; n <= 3; ++n) {
    const auto& level = h.levels[n];
    CHECK(level.n == static_cast<std::size_t>(n));
    CHECK(level_keys(d, level) == keys(d, std::vector<std::string>{pair_text(n + 1, n), pair_text(n, n + 1)}));
    for (const auto& rec : level.roots) CHECK(rec.n() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("hierarchy on finite groups") {
  auto d = load("a3");
  auto h = hierarchy(d, 2);
  CHECK(h.finite);
  REQUIRE(h.levels.size() == 3);
  CHECK(h.levels[0].roots.size() == 6);
  CHECK(h.levels[1].roots.empty());
  CHECK(h.levels[2].roots.empty());
  auto a2 = load("a2");
  auto h2 = hierarchy(a2, 1);
  CHECK(h2.finite);
  CHECK(h2.levels[0].roots.size() == 3);
  CHECK(finite_positive_roots(a2)->size() == 3);
  CHECK_FALSE(finite_positive_roots(load("tilde_a1"), 12).has_value());
}

TEST_CASE("universal rank 3 saturates the first level bound") {
  auto d = load("universal3");
  auto h = hierarchy(d, 1);
  CHECK(h.levels[0].roots.size() == 3);
  std::vector<Root> expected;
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v)
      if (u != v) expected.push_back(reflect_simple(d, u, Root::simple(d, v)));
  CHECK(level_keys(d, h.levels[1]) == keys(d, expected));
  for (const auto& rec : h.levels[1].roots) {
    REQUIRE(rec.n() == 1);
    CHECK(simple_index(d, rec.dominated[0]).has_value());
  }
}

TEST_CASE("reflecting a level one root down lands in the elementary roots") {
  auto d = load("universal3");
  std::size_t a = d.index_of("a");
  Root x = R(d, "2,1,0");
  CHECK(inner_simple(d, x, a) == Scalar(1));
  Root y = reflect_simple(d, a, x);
  CHECK(y == Root::simple(d, d.index_of("b")));
  CHECK(dominated_count(d, x) == 1);
  CHECK(dominated_count(d, y) == 0);
}

TEST_CASE("hierarchy level membership matches per-root classification") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    auto h = hierarchy(d, 3);
    for (const auto& level : h.levels)
      for (const auto& rec : level.roots) CHECK(dominated_count(d, rec.root) == level.n);
  }
}

TEST_CASE("affine A2 level sizes respect the power bound and stay non-empty") {
  auto d = load("tilde_a2");
  auto h = hierarchy(d, 5);
  std::size_t k = h.levels[0].roots.size();
  CHECK(k == 6);
  std::size_t pow = k;
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK_FALSE(h.levels[n].roots.empty());
    if (n <= 3) CHECK(h.levels[n].roots.size() <= pow * k - pow);
    pow *= k;
  }
}

TEST_CASE("law suite passes on the infinite test systems") {
  for (const auto& name : testing::infinite_systems()) {
    CAPTURE(name);
    auto d = load(name);
    auto h = hierarchy(d, 3);
    LawOptions opts;
    opts.depth_cap = name == "universal3" ? 6 : 8;
    auto report = check_laws(d, h, opts);
    for (const auto& law : report.laws) {
      CAPTURE(law.name);
      CAPTURE(law.witness);
      CHECK(law.passed);
    }
    CHECK(report.all_passed());
    REQUIRE(report.find("descent_independence") != nullptr);
    CHECK(report.find("descent_independence")->checked > 0);
  }
}

TEST_CASE("law suite on a finite group") {
  auto d = load("a3");
  auto report = check_laws(d, hierarchy(d, 2));
  CHECK(report.all_passed());
  CHECK(report.find("elementary_reflections")->passed);
}

TEST_CASE("dominated sets do not depend on the descent chosen") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    for (const auto& x : enumerate(d, name == "universal3" ? 6 : 8).flatten()) {
      auto expected = keys(d, dominated_set(d, x).dominated);
      for (const auto& desc : all_minimal_words(d, x)) CHECK(keys(d, dominated_set(d, x, desc).dominated) == expected);
    }
  }
}

TEST_CASE("dominance agrees with the ball oracle") {
  for (const char* name : {"tilde_a1", "hyperbolic_q32"}) {
    auto d = load(name);
    BallOracle oracle(d, 12);
    auto roots = enumerate(d, 6).flatten();
    for (const auto& x : roots)
      for (const auto& y : roots) {
        auto v = oracle.dominance(x, y);
        if (dominates(d, x, y))
          CHECK_FALSE(v.refuted);
        else
          CHECK(v.refuted);
      }
  }
}
