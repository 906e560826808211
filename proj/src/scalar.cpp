#include "coxdom/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "coxdom/errors.hpp"

namespace coxdom {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed number '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

mpq_class parse_rational(std::string_view text) {
  std::string normalized;
  normalized.reserve(text.size());
  // Accept the typographic minus sign U+2212.
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (k + 2 < text.size() + 0 && static_cast<unsigned char>(text[k]) == 0xE2 &&
        static_cast<unsigned char>(text[k + 1]) == 0x88 && static_cast<unsigned char>(text[k + 2]) == 0x92) {
      normalized.push_back('-');
      k += 2;
    } else {
      normalized.push_back(text[k]);
    }
  }
  std::string_view s = trim(normalized);
  if (s.empty()) throw ParseError("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), s);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  bool negative = false;
  std::string_view rest = s;
  if (rest.front() == '+' || rest.front() == '-') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = rest.substr(e + 1);
    rest = rest.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw ParseError("malformed exponent in '" + std::string(s) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = rest.substr(0, dot);
    std::string_view frac_part = rest.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw ParseError("malformed number '" + std::string(s) + "'");
    digits.append(int_part).append(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(rest)) throw ParseError("malformed number '" + std::string(s) + "'");
    digits.assign(rest);
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class q = exponent >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace

std::string_view to_string(ScalarClass c) {
  switch (c) {
    case ScalarClass::BelowMinusOne: return "BelowMinusOne";
    case ScalarClass::MinusOne: return "MinusOne";
    case ScalarClass::OpenNegative: return "OpenNegative";
    case ScalarClass::Zero: return "Zero";
    case ScalarClass::OpenPositive: return "OpenPositive";
    case ScalarClass::One: return "One";
    case ScalarClass::AboveOne: return "AboveOne";
  }
  return "?";
}

std::string_view to_string(Backend b) { return b == Backend::exact ? "exact" : "approx"; }

Scalar Scalar::exact(mpq_class v) {
  v.canonicalize();
  return Scalar(std::move(v));
}

Scalar Scalar::approx(double v) { return Scalar(v); }

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

const mpq_class& Scalar::rational() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw DomainError("approximate scalar has no exact rational value");
}

namespace {

// Nearest double; mpq_get_d alone truncates toward zero.
double nearest_double(const mpq_class& q) {
  double d = q.get_d();
  if (!std::isfinite(d) || mpq_class(d) == q) return d;
  double away = std::nextafter(d, sgn(q) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return d;
  mpq_class gap_d = abs(q - mpq_class(d));
  mpq_class gap_away = abs(q - mpq_class(away));
  return gap_away < gap_d ? away : d;
}

}  // namespace

double Scalar::to_double() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return nearest_double(*q);
  return std::get<double>(value_);
}

Scalar Scalar::as(Backend b) const {
  if (b == backend()) return *this;
  if (b == Backend::approx) return Scalar(to_double());
  mpq_class q(std::get<double>(value_));
  return Scalar(std::move(q));
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q);
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

std::string Scalar::str() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str(10);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, res.ptr);
}

std::string Scalar::key(int digits) const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str(10);
  char buf[512];
  int len = std::snprintf(buf, sizeof buf, "%.*f", digits, std::get<double>(value_));
  std::string s(buf, static_cast<std::size_t>(len > 0 ? len : 0));
  if (!s.empty() && s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  else
    value_ = to_double() + o.to_double();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  else
    value_ = to_double() - o.to_double();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  else
    value_ = to_double() * o.to_double();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  else
    value_ = to_double() / o.to_double();
  return *this;
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }
  return a.to_double() <=> b.to_double();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar parse_scalar(std::string_view text, Backend backend) {
  return Scalar::exact(parse_rational(text)).as(backend);
}

ScalarClass classify(const Scalar& t, double eps) {
  if (t.is_exact()) {
    const mpq_class& q = t.rational();
    int vs_minus_one = cmp(q, -1);
    if (vs_minus_one < 0) return ScalarClass::BelowMinusOne;
    if (vs_minus_one == 0) return ScalarClass::MinusOne;
    int s = sgn(q);
    if (s < 0) return ScalarClass::OpenNegative;
    if (s == 0) return ScalarClass::Zero;
    int vs_one = cmp(q, 1);
    if (vs_one < 0) return ScalarClass::OpenPositive;
    if (vs_one == 0) return ScalarClass::One;
    return ScalarClass::AboveOne;
  }
  double v = t.to_double();
  if (std::fabs(v + 1.0) <= eps) return ScalarClass::MinusOne;
  if (std::fabs(v) <= eps) return ScalarClass::Zero;
  if (std::fabs(v - 1.0) <= eps) return ScalarClass::One;
  if (v < -1.0) return ScalarClass::BelowMinusOne;
  if (v < 0.0) return ScalarClass::OpenNegative;
  if (v < 1.0) return ScalarClass::OpenPositive;
  return ScalarClass::AboveOne;
}

bool is_at_least_one(ScalarClass c) { return c == ScalarClass::One || c == ScalarClass::AboveOne; }

bool is_at_most_minus_one(ScalarClass c) { return c == ScalarClass::MinusOne || c == ScalarClass::BelowMinusOne; }

bool is_negative(ScalarClass c) {
  return c == ScalarClass::BelowMinusOne || c == ScalarClass::MinusOne || c == ScalarClass::OpenNegative;
}

bool is_positive(ScalarClass c) {
  return c == ScalarClass::OpenPositive || c == ScalarClass::One || c == ScalarClass::AboveOne;
}

int sign(const Scalar& t, double eps) {
  if (t.is_exact()) return t.sign();
  double v = t.to_double();
  if (std::fabs(v) <= eps) return 0;
  return v > 0 ? 1 : -1;
}

bool nearly_equal(const Scalar& a, const Scalar& b, double eps) {
  if (a.is_exact() && b.is_exact()) return a == b;
  double x = a.to_double();
  double y = b.to_double();
  double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= eps * scale;
}

std::vector<Scalar> c_sequence_table(const Scalar& q, std::size_t n, double eps) {
  if (!is_at_least_one(classify(q, eps)))
    throw DomainError("c-sequence parameter q = " + q.str() + " must satisfy q >= 1");
  std::vector<Scalar> c;
  c.reserve(n + 1);
  c.emplace_back(0);
  if (n >= 1) c.emplace_back(1);
  Scalar two_q = q * Scalar(2);
  while (c.size() <= n) {
    std::size_t k = c.size();
    c.push_back(two_q * c[k - 1] - c[k - 2]);
  }
  if (c.front().backend() != q.backend())
    for (auto& v : c) v = v.as(q.backend());
  return c;
}

Scalar c_sequence(const Scalar& q, long i, double eps) {
  auto table = c_sequence_table(q, static_cast<std::size_t>(std::labs(i)), eps);
  Scalar v = table.back();
  return i < 0 ? -v : v;
}

}  // namespace coxdom
