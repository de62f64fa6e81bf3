#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace harmony {

/// Exact rational number. GMP requires canonical (reduced) operands: build
/// fractions with rational(num, den) or parse_rational, not mpq_class(num, den).
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", integers, and decimals with optional exponent ("-1.25", "1e-4").
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_exact_string(const Rational& q);

/// Decimal rendering rounded half away from zero to `digits` fractional
/// digits, with trailing zeros trimmed.
std::string to_decimal_string(const Rational& q, int digits = 10);

double to_double(const Rational& q);

/// Exact conversion of a finite double.
Rational from_double(double value);

/// num/den in canonical form.
Rational rational(std::int64_t num, std::int64_t den = 1);

Rational abs(const Rational& q);

/// Rational extended with +infinity and -infinity.
///
/// Prices use +infinity on the reciprocal map boundary; utilities use
/// -infinity for rooms that cannot be afforded at an infinite price.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational value) : value_(std::move(value)) {}  // NOLINT
  ExtRational(std::int64_t value) : value_(value) {}         // NOLINT

  static ExtRational pos_infinity() { return ExtRational(Inf::pos); }
  static ExtRational neg_infinity() { return ExtRational(Inf::neg); }

  bool is_finite() const noexcept { return inf_ == Inf::none; }
  bool is_pos_infinity() const noexcept { return inf_ == Inf::pos; }
  bool is_neg_infinity() const noexcept { return inf_ == Inf::neg; }

  /// Throws std::domain_error for infinite values.
  const Rational& value() const;

  std::string to_string(int digits = 10) const;
  std::string to_exact_string() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  enum class Inf : std::uint8_t { none, pos, neg };
  explicit ExtRational(Inf inf) : inf_(inf) {}

  Rational value_{0};
  Inf inf_ = Inf::none;
};

/// Parses a rational or "inf"/"+inf"/"-inf".
ExtRational parse_ext_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const ExtRational& x);

}  // namespace harmony
