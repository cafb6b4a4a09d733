#include "medr/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include "medr/errors.hpp"

namespace medr {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr i128 kInt64Min = std::numeric_limits<std::int64_t>::min();
constexpr i128 kInt64Max = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational Rational::make(i128 num, i128 den) {
  if (den == 0) throw ValidationError("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational{};
  i128 g = gcd128(num, den);
  num /= g;
  den /= g;
  if (num < kInt64Min || num > kInt64Max || den > kInt64Max) {
    throw ResourceError("rational: value exceeds 64-bit range after reduction");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw ParseError("not a number: '" + std::string(text) + "'"); };

  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos >= text.size()) fail();

  i128 num = 0;
  i128 den = 1;
  bool any_digit = false;
  bool seen_dot = false;
  bool seen_slash = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch == '.') {
      if (seen_dot || seen_slash) fail();
      seen_dot = true;
      continue;
    }
    if (ch == '/') {
      if (seen_slash || seen_dot || !any_digit) fail();
      seen_slash = true;
      any_digit = false;
      den = 0;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail();
    any_digit = true;
    if (seen_slash) {
      den = den * 10 + (ch - '0');
    } else {
      num = num * 10 + (ch - '0');
      if (seen_dot) den *= 10;
    }
    if (num > kInt64Max || den > kInt64Max) throw ParseError("number out of range: '" + std::string(text) + "'");
  }
  if (!any_digit) fail();
  if (seen_slash && den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return make(negative ? -num : num, den);
}

std::int64_t Rational::floor() const {
  if (num_ >= 0) return num_ / den_;
  return -((-static_cast<i128>(num_) + den_ - 1) / den_);
}

std::int64_t Rational::ceil() const { return -(-*this).floor(); }

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);

  // Terminating decimal iff the denominator is 2^a * 5^b.
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  int digits = twos > fives ? twos : fives;
  if (d != 1 || digits > 30) {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  i128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  i128 scaled = static_cast<i128>(num_) * (scale / den_);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  i128 whole = scaled / scale;
  i128 frac = scaled % scale;

  std::string frac_digits(digits, '0');
  for (int i = digits - 1; i >= 0; --i) {
    frac_digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
    frac /= 10;
  }
  while (!frac_digits.empty() && frac_digits.back() == '0') frac_digits.pop_back();

  std::string out;
  if (negative) out += '-';
  out += std::to_string(static_cast<std::int64_t>(whole));
  if (!frac_digits.empty()) {
    out += '.';
    out += frac_digits;
  }
  return out;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = make(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
               static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  *this = make(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw ValidationError("rational: division by zero");
  *this = make(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  i128 left = static_cast<i128>(lhs.num_) * rhs.den_;
  i128 right = static_cast<i128>(rhs.num_) * lhs.den_;
  if (left < right) return std::strong_ordering::less;
  if (left > right) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace medr
