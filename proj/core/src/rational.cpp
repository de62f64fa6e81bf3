#include "harmony/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace harmony {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_integer_ratio(std::string_view text, std::string_view original) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("malformed rational '" + std::string(original) + "'");
  const mpz_class n{std::string(num), 10}, d{std::string(den), 10};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(original) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view raw) {
  const auto text = trim(raw);
  if (text.empty()) throw ParseError("empty number");
  if (text.find('/') != std::string_view::npos) return parse_integer_ratio(text, raw);

  std::string_view s = text;
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
      throw ParseError("malformed exponent in '" + std::string(raw) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  long scale = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto whole = s.substr(0, dot);
    const auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw ParseError("malformed decimal '" + std::string(raw) + "'");
    digits = std::string(whole) + std::string(frac);
    scale = static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw ParseError("malformed number '" + std::string(raw) + "'");
    digits = std::string(s);
  }
  Rational q{mpz_class(digits, 10)};
  const long shift = exponent - scale;
  if (shift > 0) q *= Rational(pow10(static_cast<unsigned long>(shift)));
  if (shift < 0) q /= Rational(pow10(static_cast<unsigned long>(-shift)));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_exact_string(const Rational& q) { return q.get_str(); }

std::string to_decimal_string(const Rational& q, int digits) {
  const bool negative = sgn(q) < 0;
  const Rational a = negative ? Rational(-q) : q;
  const mpz_class scale = pow10(static_cast<unsigned long>(digits));
  // round half away from zero
  mpz_class scaled = (a.get_num() * scale * 2 + a.get_den()) / (a.get_den() * 2);
  std::string s = scaled.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (negative && s != "0") s.insert(0, "-");
  return s;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite double has no rational value");
  return Rational(value);
}

Rational rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q{mpz_class(std::to_string(num), 10), mpz_class(std::to_string(den), 10)};
  q.canonicalize();
  return q;
}

Rational abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

const Rational& ExtRational::value() const {
  if (!is_finite()) throw std::domain_error("infinite value has no finite part");
  return value_;
}

std::string ExtRational::to_string(int digits) const {
  if (is_pos_infinity()) return "inf";
  if (is_neg_infinity()) return "-inf";
  return to_decimal_string(value_, digits);
}

std::string ExtRational::to_exact_string() const {
  if (is_pos_infinity()) return "inf";
  if (is_neg_infinity()) return "-inf";
  return harmony::to_exact_string(value_);
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.inf_ != b.inf_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  auto rank = [](const ExtRational& x) {
    return x.is_neg_infinity() ? -1 : (x.is_pos_infinity() ? 1 : 0);
  };
  if (rank(a) != rank(b)) return rank(a) <=> rank(b);
  if (!a.is_finite()) return std::strong_ordering::equal;
  const int c = cmp(a.value_, b.value_);
  return c <=> 0;
}

ExtRational parse_ext_rational(std::string_view raw) {
  const auto text = trim(raw);
  if (text == "inf" || text == "+inf" || text == "infinity") return ExtRational::pos_infinity();
  if (text == "-inf" || text == "-infinity") return ExtRational::neg_infinity();
  return parse_rational(text);
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) {
  return os << x.to_exact_string();
}

}  // namespace harmony
