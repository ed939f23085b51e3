#include "bairelab/basis.hpp"

#include <algorithm>
#include <cmath>

#include "bairelab/error.hpp"

namespace bairelab {

std::string_view basis_tag(BasisKind kind) noexcept {
  switch (kind) {
    case BasisKind::Lp1: return "l1";
    case BasisKind::Lp2: return "l2";
    case BasisKind::C0: return "c0";
  }
  return "?";
}

BasisKind parse_basis_tag(std::string_view tag) {
  if (tag == "l1") return BasisKind::Lp1;
  if (tag == "l2") return BasisKind::Lp2;
  if (tag == "c0") return BasisKind::C0;
  throw Error(ErrorCode::ParseError, "unknown basis tag '" + std::string(tag) + "'");
}

bool approx_equal(double a, double b) noexcept {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= kApproxTolerance * scale;
}

NormValue NormValue::exact(Rational power_base, Rational inv_exp) {
  NormValue v;
  v.repr_ = Exact{std::move(power_base), std::move(inv_exp)};
  return v;
}

NormValue NormValue::approx(double value) {
  NormValue v;
  v.repr_ = value;
  return v;
}

double NormValue::to_double() const {
  if (const auto* e = std::get_if<Exact>(&repr_)) {
    double base = e->power_base.to_double();
    if (e->inv_exp == Rational(1)) return base;
    if (e->inv_exp == Rational(2)) return std::sqrt(base);
    return std::pow(base, 1.0 / e->inv_exp.to_double());
  }
  return std::get<double>(repr_);
}

std::optional<Rational> NormValue::rational_value() const {
  if (const auto* e = std::get_if<Exact>(&repr_); e && e->inv_exp == Rational(1)) {
    return e->power_base;
  }
  return std::nullopt;
}

bool operator==(const NormValue& a, const NormValue& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) {
    return a.exact_repr().power_base == b.exact_repr().power_base &&
           a.exact_repr().inv_exp == b.exact_repr().inv_exp;
  }
  return std::get<double>(a.repr_) == std::get<double>(b.repr_);
}

namespace {

std::optional<unsigned> small_integer(const Rational& r) {
  if (!r.is_integer() || r.sign() <= 0 || r > Rational(64)) return std::nullopt;
  return static_cast<unsigned>(r.small_num());
}

int sign_of(std::strong_ordering o) {
  if (o < 0) return -1;
  if (o > 0) return 1;
  return 0;
}

int compare_doubles(double a, double b) {
  if (approx_equal(a, b)) return 0;
  return a < b ? -1 : 1;
}

} // namespace

int compare(const NormValue& a, const NormValue& b) {
  if (a.is_exact() && b.is_exact()) {
    auto p = small_integer(a.exact_repr().inv_exp);
    auto q = small_integer(b.exact_repr().inv_exp);
    if (p && q) {
      if (*p == *q) return sign_of(a.exact_repr().power_base <=> b.exact_repr().power_base);
      return sign_of(pow(a.exact_repr().power_base, *q) <=> pow(b.exact_repr().power_base, *p));
    }
  }
  return compare_doubles(a.to_double(), b.to_double());
}

int compare(const NormValue& a, const Rational& b) {
  if (a.is_exact()) {
    if (auto p = small_integer(a.exact_repr().inv_exp)) {
      if (b.sign() < 0) return 1;
      return sign_of(a.exact_repr().power_base <=> pow(b, *p));
    }
  }
  return compare_doubles(a.to_double(), b.to_double());
}

NormValue basis_norm(BasisKind kind, std::span<const Rational> coeffs) {
  Rational acc(0);
  switch (kind) {
    case BasisKind::Lp1:
      for (const Rational& c : coeffs) acc += abs(c);
      return NormValue::exact(std::move(acc), Rational(1));
    case BasisKind::Lp2:
      for (const Rational& c : coeffs) acc += c * c;
      return NormValue::exact(std::move(acc), Rational(2));
    case BasisKind::C0:
      for (const Rational& c : coeffs) {
        Rational m = abs(c);
        if (acc < m) acc = std::move(m);
      }
      return NormValue::exact(std::move(acc), Rational(1));
  }
  return NormValue::zero();
}

BasisKind deleted_first(BasisKind kind) noexcept { return kind; }

} // namespace bairelab
