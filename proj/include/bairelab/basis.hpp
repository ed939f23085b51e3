#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "bairelab/rational.hpp"

namespace bairelab {

/// Ingredient basic sequence: the standard unit vector basis of l1, l2 or c0.
/// All three are 1-unconditional and 1-symmetric, so the norm of a block
/// depends only on the multiset of nonzero coefficient moduli.
enum class BasisKind { Lp1, Lp2, C0 };

[[nodiscard]] std::string_view basis_tag(BasisKind kind) noexcept;
/// "l1" | "l2" | "c0"; throws ParseError otherwise.
[[nodiscard]] BasisKind parse_basis_tag(std::string_view tag);

/// Tolerance applied to every comparison that involves an approximate value.
inline constexpr double kApproxTolerance = 1e-9;

/// |a - b| <= kApproxTolerance * max(1, |a|, |b|).
[[nodiscard]] bool approx_equal(double a, double b) noexcept;

/// A norm carried either exactly as power_base^(1/inv_exp) or as a double.
class NormValue {
public:
  struct Exact {
    Rational power_base;
    Rational inv_exp;
  };

  NormValue() : repr_(Exact{Rational(0), Rational(1)}) {}
  static NormValue exact(Rational power_base, Rational inv_exp);
  static NormValue approx(double value);
  static NormValue zero() { return {}; }

  [[nodiscard]] bool is_exact() const noexcept { return std::holds_alternative<Exact>(repr_); }
  [[nodiscard]] const Exact& exact_repr() const { return std::get<Exact>(repr_); }
  /// The value as a double (the root is taken here for exact values).
  [[nodiscard]] double to_double() const;
  /// power_base when inv_exp is 1.
  [[nodiscard]] std::optional<Rational> rational_value() const;

  friend bool operator==(const NormValue& a, const NormValue& b);

private:
  std::variant<Exact, double> repr_;
};

/// Three-way comparison of the represented real numbers. Exact against exact
/// with integer exponents is decided exactly (a^(1/p) vs b^(1/q) through
/// a^q vs b^p); anything else compares doubles under kApproxTolerance and
/// reports equality inside the tolerance band.
[[nodiscard]] int compare(const NormValue& a, const NormValue& b);
[[nodiscard]] int compare(const NormValue& a, const Rational& b);

/// ||sum a_i e_i||_E. l1 and c0 are exact with inv_exp 1; l2 is exact with
/// the sum of squares as power base and inv_exp 2.
[[nodiscard]] NormValue basis_norm(BasisKind kind, std::span<const Rational> coeffs);

/// E with its first vector deleted. For the three symmetric bases this is
/// isometrically the same basis, so the tag is returned unchanged.
[[nodiscard]] BasisKind deleted_first(BasisKind kind) noexcept;

} // namespace bairelab
