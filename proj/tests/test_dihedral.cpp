#include <doctest.h>

#include "coxdom/dihedral.hpp"
#include "coxdom/dominance.hpp"
#include "coxdom/errors.hpp"
#include "coxdom/roots.hpp"
#include "support.hpp"

using namespace coxdom;
using testing::keys;
using testing::load;
using testing::R;

namespace {

std::set<RootKey> frame_keys(const CoxeterDatum& d, const DihedralFrame& f) { return keys(d, std::vector{f.alpha, f.beta}); }

DihedralFrame simple_frame(const CoxeterDatum& d) { return make_frame(d, Root::simple(d, 0), Root::simple(d, 1)); }

// Positive chain positions with window index up to bound.
std::vector<ChainPosition> positive_positions(long bound) {
  std::vector<ChainPosition> out;
  for (long i = 1; i <= bound; ++i) out.push_back({i, Family::alpha_side});
  for (long i = 0; i <= bound; ++i) out.push_back({i, Family::beta_side});
  return out;
}

}  // namespace

TEST_CASE("canonical pair examples") {
  auto d = load("tilde_a1");
  auto f = canonical_pair(d, R(d, "3,2"), R(d, "2,1"));
  CHECK(f.alpha == R(d, "1,0"));
  CHECK(f.beta == R(d, "0,1"));
  CHECK(f.q == Scalar(1));

  auto g = canonical_pair(d, R(d, "1,0"), R(d, "0,1"));
  CHECK(frame_keys(d, g) == keys(d, std::vector<std::string>{"1,0", "0,1"}));

  auto h = load("hyperbolic_q32");
  Root rba = reflect_simple(h, 1, Root::simple(h, 0));
  CHECK(rba == R(h, "1,3"));
  auto fh = canonical_pair(h, rba, Root::simple(h, 1));
  CHECK(frame_keys(h, fh) == keys(h, std::vector<std::string>{"1,0", "0,1"}));
  CHECK(fh.q == Scalar::ratio(3, 2));
}

TEST_CASE("canonical pair errors") {
  auto d = load("tilde_a2");
  CHECK_THROWS_AS(canonical_pair(d, R(d, "1,0,0"), R(d, "0,1,0")), FiniteDihedralError);
  auto a1 = load("tilde_a1");
  CHECK_THROWS_AS(canonical_pair(a1, R(a1, "1,0"), R(a1, "1,0")), DomainError);
  CHECK_THROWS_AS(canonical_pair(a1, R(a1, "-1,0"), R(a1, "0,1")), DomainError);
}

TEST_CASE("chain positions") {
  auto d = load("tilde_a1");
  auto f = simple_frame(d);
  CHECK(chain_position(d, f, f.alpha) == ChainPosition{1, Family::alpha_side});
  CHECK(chain_position(d, f, f.beta) == ChainPosition{0, Family::beta_side});
  CHECK(chain_position(d, f, R(d, "3,2")) == ChainPosition{3, Family::alpha_side});
  CHECK(chain_position(d, f, R(d, "2,3")) == ChainPosition{2, Family::beta_side});

  auto h = load("hyperbolic_q32");
  auto fh = simple_frame(h);
  CHECK(chain_position(h, fh, R(h, "3,1")) == ChainPosition{2, Family::alpha_side});
  CHECK_THROWS_AS(chain_position(h, fh, R(h, "2,1")), NotInSubsystemError);

  auto u = load("universal3");
  auto fu = make_frame(u, R(u, "1,0,0"), R(u, "0,1,0"));
  CHECK_THROWS_AS(chain_position(u, fu, R(u, "0,0,1")), NotInPlaneError);
  CHECK(chain_position(u, fu, R(u, "2,1,0")) == ChainPosition{2, Family::alpha_side});
}

TEST_CASE("chain roots reproduce their positions") {
  for (const char* name : {"tilde_a1", "hyperbolic_q32"}) {
    auto d = load(name);
    auto f = simple_frame(d);
    for (const auto& r : dihedral_roots(d, f, -10, 10)) CHECK(chain_position(d, f, r.root) == r.position);
  }
}

TEST_CASE("dihedral roots") {
  auto d = load("tilde_a1");
  auto f = simple_frame(d);
  auto roots = dihedral_roots(d, f, 0, 3);
  REQUIRE(roots.size() == 8);
  for (const auto& r : roots) {
    long i = r.position.index;
    if (r.position.family == Family::alpha_side)
      CHECK(r.root == R(d, std::to_string(i) + "," + std::to_string(i - 1)));
    else
      CHECK(r.root == R(d, std::to_string(i) + "," + std::to_string(i + 1)));
  }
  CHECK(chain_root(d, f, {0, Family::beta_side}) == f.beta);

  auto h = load("hyperbolic_q32");
  auto fh = simple_frame(h);
  CHECK(chain_root(h, fh, {3, Family::alpha_side}) == R(h, "8,3"));
  CHECK_THROWS_AS(dihedral_roots(h, fh, 2, 1), DomainError);
}

TEST_CASE("verify dominance pair examples") {
  auto d = load("tilde_a1");
  auto r = verify_dominance_pair(d, R(d, "3,2"), R(d, "2,1"));
  CHECK(r.passed());
  CHECK(r.inner_xy == Scalar(1));
  CHECK(r.x_position == ChainPosition{3, Family::alpha_side});
  CHECK(r.y_position == ChainPosition{2, Family::alpha_side});

  auto r2 = verify_dominance_pair(d, R(d, "2,1"), R(d, "1,0"));
  CHECK(r2.passed());
  CHECK(r2.x_position.index == 2);
  CHECK(r2.y_position.index == 1);

  auto h = load("hyperbolic_q32");
  Root x = R(h, "8,3");
  Root y = R(h, "3,1");
  REQUIRE(dominates(h, x, y));
  auto rh = verify_dominance_pair(h, x, y);
  CHECK(rh.passed());
  CHECK(rh.inner_xy == Scalar::ratio(3, 2));
  CHECK(rh.x_position == ChainPosition{3, Family::alpha_side});
  CHECK(rh.y_position == ChainPosition{2, Family::alpha_side});

  CHECK_THROWS_AS(verify_dominance_pair(d, R(d, "1,2"), R(d, "2,1")), DomainError);
  CHECK_THROWS_AS(verify_dominance_pair(d, R(d, "1,0"), R(d, "1,0")), DomainError);
}

TEST_CASE("canonical pair is idempotent on its output") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    auto roots = enumerate(d, 5).flatten();
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        ScalarClass c = classify(inner(d, roots[i], roots[j]), d.eps());
        if (!is_at_most_minus_one(c) && !is_at_least_one(c)) continue;
        auto f = canonical_pair(d, roots[i], roots[j]);
        CHECK(is_at_most_minus_one(classify(inner(d, f.alpha, f.beta), d.eps())));
        auto again = canonical_pair(d, f.alpha, f.beta);
        CHECK(again.alpha == f.alpha);
        CHECK(again.beta == f.beta);
      }
  }
}

TEST_CASE("reflections stay inside the dihedral subsystem") {
  for (const char* name : {"tilde_a1", "hyperbolic_q32"}) {
    auto d = load(name);
    auto f = simple_frame(d);
    auto roots = dihedral_roots(d, f, -10, 10);
    for (const auto& t : roots)
      for (const auto& z : roots) {
        Root image = reflect_root(d, t.root, z.root);
        CHECK_NOTHROW(chain_position(d, f, image));
      }
  }
}

TEST_CASE("dominance along chains") {
  for (const char* name : {"tilde_a1", "hyperbolic_q32"}) {
    auto d = load(name);
    auto f = simple_frame(d);
    auto positions = positive_positions(8);
    for (const auto& px : positions)
      for (const auto& py : positions) {
        bool got = dominates(d, chain_root(d, f, px), chain_root(d, f, py));
        bool expected = px.family == py.family ? px.index >= py.index : false;
        CAPTURE(px.index);
        CAPTURE(py.index);
        CHECK(got == expected);
      }
  }
}

TEST_CASE("a rank two subsystem has no three pairwise canonical roots") {
  for (const char* name : {"tilde_a1", "hyperbolic_q32"}) {
    auto d = load(name);
    auto f = simple_frame(d);
    std::vector<Root> roots;
    for (const auto& p : positive_positions(6)) roots.push_back(chain_root(d, f, p));
    auto canonical = [&](const Root& x, const Root& y) { return inner(d, x, y).sign() <= 0; };
    std::size_t triples = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        for (std::size_t k = j + 1; k < roots.size(); ++k)
          if (canonical(roots[i], roots[j]) && canonical(roots[i], roots[k]) && canonical(roots[j], roots[k]))
            ++triples;
    CHECK(triples == 0);
  }
}

TEST_CASE("index arithmetic agrees with iterative canonicalization") {
  for (const char* name : {"tilde_a1", "hyperbolic_q32"}) {
    auto d = load(name);
    auto f = simple_frame(d);
    auto positions = positive_positions(6);
    for (const auto& px : positions)
      for (const auto& py : positions) {
        if (px == py) continue;
        auto [a, b] = canonical_pair_by_index(px, py);
        auto iterative = canonical_pair(d, chain_root(d, f, px), chain_root(d, f, py));
        CHECK(frame_keys(d, iterative) ==
              keys(d, std::vector{chain_root(d, f, a), chain_root(d, f, b)}));
      }
  }
  CHECK_THROWS_AS(canonical_pair_by_index({2, Family::alpha_side}, {2, Family::alpha_side}), DomainError);
}

TEST_CASE("every sampled dominance pair has the consecutive window form") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    std::size_t pairs = 0;
    for (const auto& x : enumerate(d, name == "universal3" ? 5 : 6).flatten())
      for (const auto& y : dominated_set(d, x).dominated) {
        auto r = verify_dominance_pair(d, x, y);
        CHECK(r.inner_matches);
        CHECK(r.consecutive);
        ++pairs;
      }
    CHECK(pairs > 0);
  }
}
