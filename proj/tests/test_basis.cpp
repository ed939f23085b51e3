#include <doctest.h>

#include <vector>

#include "bairelab/basis.hpp"
#include "bairelab/random.hpp"
#include "bairelab/rational.hpp"
#include "helpers.hpp"

using namespace bairelab;
using bairelab::testing::exact;

namespace {

std::vector<Rational> random_coeffs(Rng& rng, std::size_t n) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto num = static_cast<std::int64_t>(uniform_below(rng, 21)) - 10;
    const auto den = static_cast<std::int64_t>(uniform_below(rng, 6)) + 1;
    out.emplace_back(num, den);
  }
  return out;
}

const BasisKind kKinds[] = {BasisKind::Lp1, BasisKind::Lp2, BasisKind::C0};

} // namespace

TEST_CASE("rational arithmetic stays canonical across the inline/GMP boundary") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational::parse("-6/4").to_string() == "-3/2");
  CHECK(Rational::parse("5").to_string() == "5");
  const Rational big = pow(Rational(1LL << 40), 3);
  CHECK_FALSE(big.is_small());
  CHECK((big / big) == Rational(1));
  CHECK((big / big).is_small());
  const Rational min64(std::numeric_limits<std::int64_t>::min());
  CHECK((-min64).sign() == 1);
  CHECK((min64 + Rational(1)).is_small());
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("0.5"));
}

TEST_CASE("basis_norm examples") {
  const std::vector<Rational> a{1, -2, 3};
  CHECK(basis_norm(BasisKind::Lp1, a) == exact(6, 1));
  const std::vector<Rational> b{3, 4};
  const NormValue l2 = basis_norm(BasisKind::Lp2, b);
  CHECK(l2 == exact(25, 2));
  CHECK(l2.to_double() == doctest::Approx(5.0));
  const std::vector<Rational> c{1, -2};
  CHECK(basis_norm(BasisKind::C0, c) == exact(2, 1));
  for (BasisKind k : kKinds) CHECK(compare(basis_norm(k, {}), Rational(0)) == 0);
}

TEST_CASE("deleted_first keeps the symmetric tags") {
  for (BasisKind k : kKinds) CHECK(deleted_first(k) == k);
}

TEST_CASE("basis tags round-trip") {
  for (BasisKind k : kKinds) CHECK(parse_basis_tag(basis_tag(k)) == k);
  CHECK(bairelab::testing::error_of([] { (void)parse_basis_tag("l3"); }) == ErrorCode::ParseError);
}

TEST_CASE("exact comparisons across inverse exponents") {
  CHECK(compare(exact(25, 2), exact(5, 1)) == 0);
  CHECK(compare(exact(2, 2), exact(3, 2)) < 0);
  CHECK(compare(exact(2, 2), Rational(3, 2)) < 0); // sqrt 2 < 3/2
  CHECK(compare(exact(9, 2), Rational(3)) == 0);
  CHECK(compare(NormValue::approx(1.0), NormValue::approx(1.0 + 1e-12)) == 0);
  CHECK(compare(NormValue::approx(1.0), NormValue::approx(1.1)) < 0);
}

TEST_CASE("sign flips leave basis norms unchanged") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_coeffs(rng, 1 + uniform_below(rng, 6));
    auto b = a;
    for (auto& v : b) {
      if (uniform_below(rng, 2)) v = -v;
    }
    for (BasisKind k : kKinds) CHECK(basis_norm(k, a) == basis_norm(k, b));
  }
}

TEST_CASE("zeroing a contiguous range never increases a basis norm") {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_coeffs(rng, 1 + uniform_below(rng, 6));
    const auto from = uniform_below(rng, a.size());
    const auto to = from + uniform_below(rng, a.size() - from);
    auto b = a;
    for (auto i = from; i <= to; ++i) b[i] = Rational(0);
    for (BasisKind k : kKinds) CHECK(compare(basis_norm(k, b), basis_norm(k, a)) <= 0);
  }
}

TEST_CASE("triangle inequality and homogeneity at the power-base level") {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 6);
    const auto a = random_coeffs(rng, n);
    const auto b = random_coeffs(rng, n);
    std::vector<Rational> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(a[i] + b[i]);
    const Rational q(static_cast<std::int64_t>(uniform_below(rng, 9)) - 4, 3);
    std::vector<Rational> qa;
    for (const auto& v : a) qa.push_back(q * v);
    for (BasisKind k : kKinds) {
      const auto na = basis_norm(k, a).exact_repr().power_base;
      const auto nb = basis_norm(k, b).exact_repr().power_base;
      const auto ns = basis_norm(k, s).exact_repr().power_base;
      const auto nqa = basis_norm(k, qa).exact_repr().power_base;
      if (k == BasisKind::Lp2) {
        // ||a+b||^2 <= (||a|| + ||b||)^2 = na + nb + 2 sqrt(na nb), i.e.
        // (ns - na - nb)_+^2 <= 4 na nb.
        const Rational gap = ns - na - nb;
        if (gap.sign() > 0) CHECK(gap * gap <= Rational(4) * na * nb);
        CHECK(nqa == q * q * na);
      } else {
        CHECK(ns <= na + nb);
        CHECK(nqa == abs(q) * na);
      }
    }
  }
}
