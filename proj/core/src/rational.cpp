#include "saddle/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace saddle {

namespace {

__extension__ using Wide = __int128;

std::int64_t checked(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    const Wide r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked(num), checked(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || first == s.data() + s.size()) {
    throw std::invalid_argument("invalid rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), text),
                    parse_int(text.substr(slash + 1), text));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 17) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
    std::string digits(text.substr(0, dot));
    const bool negative = !digits.empty() && digits.front() == '-';
    if (digits.empty() || digits == "-" || digits == "+") digits += '0';
    const std::int64_t whole = parse_int(digits, text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t part = frac.empty() ? 0 : parse_int(frac, text);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) {
      throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
    }
    const Wide num = static_cast<Wide>(whole) * den + (negative ? -part : part);
    return make(num, den);
  }
  return Rational(parse_int(text, text));
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
  return make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
              static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(Rational a, Rational b) { return a + (-b); }

Rational operator*(Rational a, Rational b) {
  return make(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(Rational a, Rational b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return make(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  if (num_ == INT64_MIN) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  return lhs <=> rhs;
}

}  // namespace saddle
