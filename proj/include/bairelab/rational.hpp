#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bairelab {

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in a signed 64-bit
/// word are stored inline; anything larger is promoted to a GMP rational and
/// demoted again as soon as a result fits. The representation is always
/// canonical: gcd(num, den) = 1, den > 0, and a value is big only when it
/// does not fit the inline form.
class Rational {
public:
  Rational() noexcept = default;
  Rational(std::int64_t value) noexcept : num_(value) { // NOLINT(google-explicit-constructor)
    if (value == std::numeric_limits<std::int64_t>::min()) [[unlikely]] promote_min();
  }
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other)
      : num_(other.num_), den_(other.den_), big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other) {
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_) [[unlikely]] {
      if (this != &other) big_ = std::make_unique<mpq_class>(*other.big_);
    } else {
      big_.reset();
    }
    return *this;
  }
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Parses "p", "-p", "p/q" (decimal digits only, q != 0).
  static Rational parse(std::string_view text);

  /// Canonical "p/q" form; integers print without a denominator.
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] mpq_class to_mpq() const;

  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  /// Inline numerator/denominator; only meaningful when is_small().
  [[nodiscard]] std::int64_t small_num() const noexcept { return num_; }
  [[nodiscard]] std::int64_t small_den() const noexcept { return den_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  void promote_min();
  void assign_i128(__int128 num, __int128 den);
  void assign_mpq(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

[[nodiscard]] Rational abs(const Rational& r);
[[nodiscard]] Rational pow(const Rational& base, unsigned exponent);
[[nodiscard]] const Rational& max(const Rational& a, const Rational& b);
[[nodiscard]] const Rational& min(const Rational& a, const Rational& b);

} // namespace bairelab
