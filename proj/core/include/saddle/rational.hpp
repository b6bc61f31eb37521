#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace saddle {

// Exact rational with a normalized int64 representation (den > 0,
// gcd(num, den) == 1). Payoffs and chance weights are kept exact so that the
// text format round-trips bit for bit. Arithmetic throws std::overflow_error
// instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Accepts "n", "n/d", and plain decimals such as "-0.75" (converted exactly).
  static Rational parse(std::string_view text);
  std::string to_string() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const;
  Rational& operator+=(Rational o) { return *this = *this + o; }
  Rational& operator-=(Rational o) { return *this = *this - o; }
  Rational& operator*=(Rational o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace saddle
