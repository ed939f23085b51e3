#include "bairelab/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace bairelab {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax64 = std::numeric_limits<std::int64_t>::max();

u128 gcd_u128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    auto x = static_cast<std::uint64_t>(a);
    auto y = static_cast<std::uint64_t>(b);
    int shift = __builtin_ctzll(x | y);
    x >>= __builtin_ctzll(x);
    while (y != 0) {
      y >>= __builtin_ctzll(y);
      if (x > y) std::swap(x, y);
      y -= x;
    }
    return static_cast<u128>(x) << shift;
  }
  auto ctz128 = [](u128 v) {
    auto lo = static_cast<std::uint64_t>(v);
    return lo != 0 ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
  };
  int shift = ctz128(a | b);
  a >>= ctz128(a);
  while (b != 0) {
    b >>= ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(gcd_u128(a, b));
}

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1U : static_cast<std::uint64_t>(v);
}

mpz_class mpz_from_i128(i128 v) {
  bool negative = v < 0;
  u128 m = negative ? static_cast<u128>(-(v + 1)) + 1U : static_cast<u128>(v);
  mpz_class out = static_cast<unsigned long>(m >> 64);
  out <<= 64;
  out += static_cast<unsigned long>(static_cast<std::uint64_t>(m));
  if (negative) out = -out;
  return out;
}

bool fits_inline(i128 num, i128 den) {
  return num > kMin64 && num <= kMax64 && den > 0 && den <= kMax64;
}

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

} // namespace

void Rational::promote_min() {
  big_ = std::make_unique<mpq_class>(mpz_from_i128(kMin64));
  num_ = 0;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  assign_i128(num, den);
}

Rational::Rational(const mpq_class& value) { assign_mpq(value); }

void Rational::assign_i128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num > kMin64 && num <= kMax64 && den <= kMax64) {
    // 64-bit division is much cheaper than the 128-bit library routine.
    auto n = static_cast<std::int64_t>(num);
    auto d = static_cast<std::int64_t>(den);
    const auto g = static_cast<std::int64_t>(gcd_u64(magnitude(n), static_cast<std::uint64_t>(d)));
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
    big_.reset();
    return;
  }
  u128 g = gcd_u128(num < 0 ? static_cast<u128>(-num) : static_cast<u128>(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (fits_inline(num, den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::assign_mpq(mpq_class value) {
  value.canonicalize();
  const mpz_class& n = value.get_num();
  const mpz_class& d = value.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != kMin64) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(value));
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num_part = body;
  std::string_view den_part = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num_part = body.substr(0, slash);
    den_part = body.substr(slash + 1);
  }
  if (!is_digits(num_part) || !is_digits(den_part)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num_part), 10);
  mpz_class d(std::string(den_part), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  Rational out;
  out.assign_mpq(mpq_class(n, d));
  return out;
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), num_);
  mpz_set_si(q.get_den_mpz_t(), den_);
  return q;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      assign_i128(static_cast<i128>(num_) + rhs.num_, den_);
    } else {
      assign_i128(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                  static_cast<i128>(den_) * rhs.den_);
    }
    return *this;
  }
  assign_mpq(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      assign_i128(static_cast<i128>(num_) - rhs.num_, den_);
    } else {
      assign_i128(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                  static_cast<i128>(den_) * rhs.den_);
    }
    return *this;
  }
  assign_mpq(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    auto g1 = static_cast<std::int64_t>(gcd_u64(magnitude(num_), static_cast<std::uint64_t>(rhs.den_)));
    auto g2 = static_cast<std::int64_t>(gcd_u64(magnitude(rhs.num_), static_cast<std::uint64_t>(den_)));
    assign_i128(static_cast<i128>(num_ / g1) * (rhs.num_ / g2),
                static_cast<i128>(den_ / g2) * (rhs.den_ / g1));
    return *this;
  }
  assign_mpq(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  if (!big_ && !rhs.big_) {
    assign_i128(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
    return *this;
  }
  assign_mpq(to_mpq() / rhs.to_mpq());
  return *this;
}

Rational Rational::operator-() const {
  Rational out;
  if (big_) {
    out.assign_mpq(-*big_);
  } else {
    out.num_ = -num_;
    out.den_ = den_;
  }
  return out;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false; // canonical form: big and inline never denote the same value
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  Rational factor = base;
  while (exponent != 0) {
    if (exponent & 1U) out *= factor;
    exponent >>= 1U;
    if (exponent != 0) factor *= factor;
  }
  return out;
}

const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

} // namespace bairelab
