#include <doctest.h>

#include <cmath>

#include "coxdom/errors.hpp"
#include "coxdom/scalar.hpp"

using namespace coxdom;

TEST_CASE("classify on the threshold boundaries") {
  CHECK(classify(Scalar(1)) == ScalarClass::One);
  CHECK(classify(Scalar::ratio(-3, 2)) == ScalarClass::BelowMinusOne);
  CHECK(classify(Scalar::approx(-0.5000000001), 1e-9) == ScalarClass::OpenNegative);
  CHECK(classify(Scalar(-1)) == ScalarClass::MinusOne);
  CHECK(classify(Scalar(0)) == ScalarClass::Zero);
  CHECK(classify(Scalar::ratio(1, 3)) == ScalarClass::OpenPositive);
  CHECK(classify(Scalar::ratio(-1, 3)) == ScalarClass::OpenNegative);
  CHECK(classify(Scalar(7)) == ScalarClass::AboveOne);
}

TEST_CASE("approximate classification snaps to boundaries within eps") {
  CHECK(classify(Scalar::approx(1 + 5e-10), 1e-9) == ScalarClass::One);
  CHECK(classify(Scalar::approx(-1 - 5e-10), 1e-9) == ScalarClass::MinusOne);
  CHECK(classify(Scalar::approx(3e-10), 1e-9) == ScalarClass::Zero);
  CHECK(classify(Scalar::approx(1 + 2e-9), 1e-9) == ScalarClass::AboveOne);
  // Exact values ignore eps entirely.
  CHECK(classify(Scalar::ratio(1000000001, 1000000000), 1e-3) == ScalarClass::AboveOne);
}

TEST_CASE("class predicates") {
  CHECK(is_at_least_one(ScalarClass::One));
  CHECK(is_at_least_one(ScalarClass::AboveOne));
  CHECK_FALSE(is_at_least_one(ScalarClass::OpenPositive));
  CHECK(is_at_most_minus_one(ScalarClass::MinusOne));
  CHECK(is_at_most_minus_one(ScalarClass::BelowMinusOne));
  CHECK_FALSE(is_at_most_minus_one(ScalarClass::OpenNegative));
  CHECK(is_negative(ScalarClass::OpenNegative));
  CHECK_FALSE(is_negative(ScalarClass::Zero));
  CHECK(is_positive(ScalarClass::One));
}

TEST_CASE("exact arithmetic is error free") {
  Scalar third = Scalar::ratio(1, 3);
  CHECK(third + third + third == Scalar(1));
  CHECK(third * Scalar(3) == Scalar(1));
  CHECK((Scalar(1) - third) / third == Scalar(2));
  CHECK(-third == Scalar::ratio(-1, 3));
  CHECK(third < Scalar::ratio(1, 2));
  CHECK((third + third).is_exact());
  CHECK_THROWS_AS(third / Scalar(0), DomainError);
}

TEST_CASE("mixing backends yields approximate results") {
  Scalar s = Scalar::ratio(1, 2) + Scalar::approx(0.25);
  CHECK_FALSE(s.is_exact());
  CHECK(s.to_double() == doctest::Approx(0.75));
  CHECK_THROWS_AS(s.rational(), DomainError);
  CHECK(Scalar::ratio(3, 4).as(Backend::approx).to_double() == 0.75);
}

TEST_CASE("parse_scalar accepts rationals, integers and decimals") {
  CHECK(parse_scalar("-3/2") == Scalar::ratio(-3, 2));
  CHECK(parse_scalar("7") == Scalar(7));
  CHECK(parse_scalar("-1.25") == Scalar::ratio(-5, 4));
  CHECK(parse_scalar("3e-2") == Scalar::ratio(3, 100));
  CHECK(parse_scalar("−1/2") == Scalar::ratio(-1, 2));
  CHECK_FALSE(parse_scalar("0.1", Backend::approx).is_exact());
  CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar(""), ParseError);
}

TEST_CASE("text forms") {
  CHECK(Scalar::ratio(6, 4).str() == "3/2");
  CHECK(Scalar(-2).str() == "-2");
  CHECK(Scalar::approx(0.5).str() == "0.5");
  CHECK(Scalar::approx(-1e-12).key(6) == Scalar::approx(1e-12).key(6));
  CHECK(parse_scalar(Scalar::approx(0.1 + 0.2).str(), Backend::approx) == Scalar::approx(0.1 + 0.2));
}

TEST_CASE("nearly_equal is relative to magnitude") {
  CHECK(nearly_equal(Scalar::approx(1e12), Scalar::approx(1e12 + 1), 1e-9));
  CHECK_FALSE(nearly_equal(Scalar::approx(1.0), Scalar::approx(1.0 + 1e-6), 1e-9));
  CHECK(nearly_equal(Scalar::ratio(1, 2), Scalar::ratio(2, 4), 0));
}

TEST_CASE("c-sequence exact values") {
  for (long i = -10; i <= 10; ++i) CHECK(c_sequence(Scalar(1), i) == Scalar(i));
  auto table = c_sequence_table(Scalar::ratio(3, 2), 5);
  std::vector<Scalar> expected{0, 1, 3, 8, 21, 55};
  CHECK(table == expected);
  CHECK(c_sequence(Scalar::ratio(3, 2), 4) == Scalar(21));
  CHECK(c_sequence(Scalar::ratio(3, 2), -3) == Scalar(-8));
  CHECK(c_sequence(Scalar(5), 0) == Scalar(0));
  CHECK_THROWS_AS(c_sequence(Scalar::ratio(1, 2), 3), DomainError);
  CHECK_THROWS_AS(c_sequence(Scalar::approx(0.99), 3, 1e-9), DomainError);
}

TEST_CASE("c-sequence recurrence identity over a range of q") {
  for (Scalar q : {Scalar(1), Scalar::ratio(3, 2), Scalar(2), Scalar::ratio(7, 3), Scalar(10)}) {
    for (long i = -64; i <= 64; ++i) {
      Scalar lhs = c_sequence(q, i + 1) + c_sequence(q, i - 1);
      CHECK(lhs == Scalar(2) * q * c_sequence(q, i));
    }
  }
  for (double qv : {1.0, 1.5, 2.0, 10.0}) {
    Scalar q = Scalar::approx(qv);
    for (long i = -64; i <= 64; ++i) {
      double lhs = (c_sequence(q, i + 1, 1e-9) + c_sequence(q, i - 1, 1e-9)).to_double();
      double rhs = 2 * qv * c_sequence(q, i, 1e-9).to_double();
      CHECK(std::fabs(lhs - rhs) <= 1e-6 * std::max(1.0, std::fabs(rhs)));
    }
  }
}

TEST_CASE("c-sequence matches the hyperbolic closed form") {
  for (double qv : {1.5, 2.0, 10.0}) {
    double theta = std::acosh(qv);
    auto table = c_sequence_table(Scalar::approx(qv), 20, 1e-9);
    for (int i = 0; i <= 20; ++i) {
      double expected = std::sinh(i * theta) / std::sinh(theta);
      double got = table[i].to_double();
      CHECK(std::fabs(got - expected) <= 1e-6 * std::max(1.0, std::fabs(expected)));
    }
  }
}

TEST_CASE("c-sequence is strictly increasing and injective for i >= 0") {
  for (Scalar q : {Scalar(1), Scalar::ratio(3, 2), Scalar::ratio(11, 10)}) {
    auto t = c_sequence_table(q, 30);
    for (std::size_t i = 1; i < t.size(); ++i) {
      CHECK(t[i] > t[i - 1]);
      CHECK(t[i] > Scalar(0));
    }
  }
}
