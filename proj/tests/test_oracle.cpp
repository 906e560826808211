#include <doctest.h>

#include <algorithm>

#include "coxdom/errors.hpp"
#include "coxdom/oracle.hpp"
#include "coxdom/roots.hpp"
#include "support.hpp"

using namespace coxdom;
using testing::keys;
using testing::load;
using testing::R;

TEST_CASE("ball of radius zero is the identity") {
  auto d = load("tilde_a1");
  auto ball = cayley_ball(d, 0);
  REQUIRE(ball.elements.size() == 1);
  CHECK(ball.elements[0].matrix == identity_matrix(d));
  CHECK(ball.elements[0].length == 0);
}

TEST_CASE("affine A1 ball grows by two per length") {
  auto d = load("tilde_a1");
  auto ball = cayley_ball(d, 5);
  REQUIRE(ball.layer_sizes.size() == 6);
  std::size_t total = 0;
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(ball.layer_sizes[k] == (k == 0 ? 1u : 2u));
    total += ball.layer_sizes[k];
    CHECK(total == 2 * k + 1);
  }
  CHECK(ball.elements.size() == 11);
}

TEST_CASE("finite A2 has six elements") {
  auto d = load("a2");
  auto ball = cayley_ball(d, 10);
  CHECK(ball.elements.size() == 6);
  auto b3 = load("b3");
  CHECK(cayley_ball(b3, 12).elements.size() == 48);
}

TEST_CASE("ball elements preserve the form and match their witnesses") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    auto ball = cayley_ball(d, 6);
    for (const auto& g : ball.elements) {
      CHECK(preserves_form(d, g.matrix));
      CHECK(g.witness.length() == g.length);
      CHECK(matrix_key(d, word_matrix(d, g.witness)) == matrix_key(d, g.matrix));
      CHECK(ball.find(d, g.matrix).has_value());
    }
  }
}

TEST_CASE("universal rank 3 growth is free product growth") {
  auto d = load("universal3");
  auto ball = cayley_ball(d, 6);
  for (std::size_t k = 1; k <= 6; ++k) CHECK(ball.layer_sizes[k] == 3u << (k - 1));
  CHECK_THROWS_AS(cayley_ball(d, 12, 1000), LimitError);
}

TEST_CASE("dominance oracle examples") {
  auto d = load("tilde_a1");
  CHECK_FALSE(dominance_oracle(d, R(d, "3,2"), R(d, "3,2"), 6).refuted);
  CHECK_FALSE(dominance_oracle(d, R(d, "3,2"), R(d, "2,1"), 12).refuted);
  auto v = dominance_oracle(d, R(d, "1,2"), R(d, "2,1"), 12);
  REQUIRE(v.refuted);
  REQUIRE(v.witness);
  CHECK(v.witness->length <= 3);
  Matrix m = v.witness->matrix;
  CHECK(sign_of(d, apply_matrix(d, m, R(d, "1,2"))) == Sign::negative);
  CHECK(sign_of(d, apply_matrix(d, m, R(d, "2,1"))) == Sign::positive);
}

TEST_CASE("depth oracle examples") {
  auto d = load("tilde_a1");
  CHECK(depth_oracle(d, R(d, "1,0"), 4) == 1u);
  CHECK(depth_oracle(d, R(d, "3,2"), 6) == 3u);
  // (n+1, n) has depth n+1; n = 7 needs radius 8.
  CHECK_FALSE(depth_oracle(d, R(d, "8,7"), 7).has_value());
  CHECK(depth_oracle(d, R(d, "8,7"), 8) == 8u);
}

TEST_CASE("depth oracle agrees with greedy descent") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    BallOracle oracle(d, 8);
    for (const auto& x : enumerate(d, 8).flatten()) CHECK(oracle.depth(x) == depth(d, x));
  }
}

TEST_CASE("nset oracle examples") {
  auto d = load("tilde_a1");
  auto ball = cayley_ball(d, 4);
  CHECK(nset_oracle(d, ball.elements[0], 3).empty());
  Word w{{1, 0}, false};
  auto idx = ball.find(d, word_matrix(d, w));
  REQUIRE(idx);
  CHECK(keys(d, nset_oracle(d, ball.elements[*idx], 4)) == keys(d, std::vector<std::string>{"1,0", "2,1"}));
  for (const char* name : {"tilde_a1", "a3", "universal3"}) {
    auto e = load(name);
    for (std::size_t a = 0; a < e.rank(); ++a) {
      GroupElement g{word_matrix(e, Word{{a}, true}), Word{{a}, true}, 1};
      auto n = nset_oracle(e, g, 2);
      REQUIRE(n.size() == 1);
      CHECK(n[0] == Root::simple(e, a));
    }
  }
}

TEST_CASE("nset oracle matches inversion sets") {
  for (const auto& name : testing::infinite_systems()) {
    auto d = load(name);
    std::size_t len = name == "universal3" ? 6 : 8;
    auto ball = cayley_ball(d, len);
    auto candidates = enumerate(d, std::max<std::size_t>(len, 1)).flatten();
    for (const auto& g : ball.elements) {
      auto direct = nset_oracle(d, g, candidates);
      CHECK(direct.size() == g.length);
      // N(w) = N((w^{-1})^{-1}), the inversion set of the reversed witness.
      CHECK(keys(d, direct) == keys(d, inversion_set(d, g.witness.inverse())));
    }
  }
}

TEST_CASE("prefix criterion for inversion sets") {
  for (const char* name : {"tilde_a1", "tilde_a2", "universal3"}) {
    auto d = load(name);
    std::size_t len = std::string(name) == "universal3" ? 5 : 6;
    auto ball = cayley_ball(d, len);
    auto candidates = enumerate(d, len).flatten();
    std::vector<std::set<RootKey>> nsets;
    for (const auto& g : ball.elements) nsets.push_back(keys(d, nset_oracle(d, g, candidates)));
    for (std::size_t i = 0; i < ball.elements.size(); ++i) {
      const auto& w = ball.elements[i];
      for (std::size_t j = 0; j < ball.elements.size(); ++j) {
        const auto& v = ball.elements[j];
        if (v.length > w.length) continue;
        // l(w v^{-1}) from the ball; w v^{-1} has length <= l(w) + l(v), which
        // may exceed the radius, in which case the lengths cannot add up.
        Matrix wvinv = multiply(d, w.matrix, word_matrix(d, v.witness.inverse()));
        auto k = ball.find(d, wvinv);
        bool additive = k && ball.elements[*k].length + v.length == w.length;
        bool subset = std::includes(nsets[i].begin(), nsets[i].end(), nsets[j].begin(), nsets[j].end());
        CHECK(additive == subset);
      }
    }
  }
}

TEST_CASE("ball oracle caches negative sets") {
  auto d = load("tilde_a1");
  BallOracle oracle(d, 6);
  const auto& first = oracle.sends_negative(R(d, "2,1"));
  CHECK(first.size() == oracle.ball().elements.size());
  CHECK(first.count() > 0);
  CHECK(&oracle.sends_negative(R(d, "2,1")) == &first);
  CHECK(oracle.radius() == 6);
}
