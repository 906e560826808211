#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace coxdom {

enum class Backend { exact, approx };

// Position of a real number relative to the thresholds -1, 0 and 1.
enum class ScalarClass {
  BelowMinusOne,
  MinusOne,
  OpenNegative,
  Zero,
  OpenPositive,
  One,
  AboveOne,
};

std::string_view to_string(ScalarClass c);
std::string_view to_string(Backend b);

// A real number held either as an exact rational (GMP) or as a double.
// Arithmetic between two exact values stays exact; any approximate operand
// makes the result approximate.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}

  template <std::integral T>
  Scalar(T v) : value_(mpq_class(static_cast<long>(v))) {}

  static Scalar exact(mpq_class v);
  static Scalar approx(double v);
  static Scalar ratio(long num, long den);

  Backend backend() const { return is_exact() ? Backend::exact : Backend::approx; }
  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }

  // Throws DomainError on an approximate value.
  const mpq_class& rational() const;
  double to_double() const;

  // Same value carried by the requested backend.
  Scalar as(Backend b) const;

  bool is_zero() const;
  int sign() const;
  Scalar abs() const;

  // "p/q" or "p" in exact mode, shortest round-tripping decimal otherwise.
  std::string str() const;

  // Canonical text used for hashing. Exact values print exactly; approximate
  // values are rounded to `digits` places after the decimal point.
  std::string key(int digits) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  explicit Scalar(mpq_class v) : value_(std::move(v)) {}
  explicit Scalar(double v) : value_(v) {}

  std::variant<mpq_class, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Parses "p/q", integers and decimal literals ("-1.25", "3e-2"). Decimals are
// converted to the exact rational they denote before the backend is applied.
Scalar parse_scalar(std::string_view text, Backend backend = Backend::exact);

// Threshold classification. Exact values ignore eps; approximate values
// within eps of -1, 0 or 1 receive the boundary label.
ScalarClass classify(const Scalar& t, double eps = 0.0);

bool is_at_least_one(ScalarClass c);       // One, AboveOne
bool is_at_most_minus_one(ScalarClass c);  // MinusOne, BelowMinusOne
bool is_negative(ScalarClass c);           // strictly below zero
bool is_positive(ScalarClass c);           // strictly above zero

// Sign with a dead zone of width eps (exact values use their true sign).
int sign(const Scalar& t, double eps);

// Equality up to eps relative to max(1, |a|, |b|); exact when both are exact.
bool nearly_equal(const Scalar& a, const Scalar& b, double eps);

// c_0 = 0, c_1 = 1, c_{i+1} = 2q c_i - c_{i-1}; c_{-i} = -c_i.
// Throws DomainError unless q classifies as One or AboveOne.
Scalar c_sequence(const Scalar& q, long i, double eps = 0.0);

// c_0 .. c_n in one pass.
std::vector<Scalar> c_sequence_table(const Scalar& q, std::size_t n, double eps = 0.0);

}  // namespace coxdom
