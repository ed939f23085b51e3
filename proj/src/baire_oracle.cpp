// Brute-force evaluation of ||x||_{E,p,theta}: every antichain of segment
// minima in the prefix closure of the support, every choice of maxima below
// them. Exponential; used to cross-check the dynamic program.

#include <algorithm>
#include <cmath>

#include "baire_detail.hpp"
#include "bairelab/error.hpp"

namespace bairelab {

namespace {

using detail::SupportClosure;
using Pair = std::pair<std::size_t, std::size_t>;

/// Block measure of every segment (a..m) of the closure: sum |x|, max |x| or
/// sum x^2 over the chain a..m. Row a starts at offset[a] and holds the
/// maxima m in [a, subtree_end(a)).
template <class T>
struct Measures {
  std::vector<std::size_t> offset;
  std::vector<T> value;
  [[nodiscard]] const T& at(std::size_t a, std::size_t m) const { return value[offset[a] + (m - a)]; }
};

template <class T, class Weight, class Combine>
void block_measures(const SupportClosure& c, Weight weight, Combine combine, Measures<T>& out) {
  out.offset.resize(c.size());
  out.value.clear();
  for (std::size_t a = 0; a < c.size(); ++a) {
    const std::size_t base = out.value.size();
    out.offset[a] = base;
    // Preorder visits parent(m) before m, so the chain a..parent(m) is done.
    for (std::size_t m = a; m < c.subtree_end[a]; ++m) {
      out.value.push_back(m == a ? weight(m) : combine(out.value[base + (c.parent[m] - a)], weight(m)));
    }
  }
}

/// Depth-first walk over nodes in preorder: node i is either skipped or
/// opens a segment (i, m), which blocks the whole subtree of i. The current
/// family lives in current[0..len). Raw pointers keep the hot loop free of
/// reloads through the containers.
template <class T, class Better, class Tied>
struct FamilySearch {
  std::size_t n;
  const std::size_t* subtree_end;
  const std::size_t* offset;
  const T* measure;
  T zero;
  Better better;
  Tied tied;
  Pair* current;
  std::size_t len;
  std::vector<Pair>& best_family;
  T best_value;

  void visit(std::size_t i, const T& total) {
    if (i == n) {
      if (better(total, best_value) || (tied(total, best_value) && current_less())) {
        best_value = total;
        best_family.assign(current, current + len);
      }
      return;
    }
    const std::size_t end = subtree_end[i];
    const T* row = measure + offset[i] - i;
    for (std::size_t m = i; m < end; ++m) {
      if (!(zero < row[m])) continue;
      current[len++] = Pair{i, m};
      visit(end, total + row[m]);
      --len;
    }
    visit(i + 1, total);
  }

  [[nodiscard]] bool current_less() const {
    return std::lexicographical_compare(current, current + len, best_family.begin(), best_family.end());
  }
};

/// The returned family lives in a per-thread buffer, valid until the next call.
template <class T, class Better, class Tied>
const std::vector<Pair>& enumerate_families(const SupportClosure& c, const Measures<T>& cost, T zero, Better better,
                                     Tied tied, T& best_value) {
  thread_local std::vector<Pair> current;
  thread_local std::vector<Pair> best_family;
  current.resize(c.size());
  best_family.clear();
  FamilySearch<T, Better, Tied> search{c.size(), c.subtree_end.data(), cost.offset.data(), cost.value.data(),
                                       zero, better, tied, current.data(), 0, best_family, zero};
  search.visit(0, zero);
  best_value = search.best_value;
  return best_family;
}

std::vector<Segment> to_segments(const BaireVector& x, const SupportClosure& c,
                                 const std::vector<Pair>& family) {
  std::vector<Segment> out;
  out.reserve(family.size());
  for (auto [lo, hi] : family) out.push_back(detail::make_segment(x.tree(), c, lo, hi));
  return out;
}

} // namespace

NormResult baire_norm_oracle(const BaireVector& x, BasisKind kind, const ExponentP& p,
                             std::size_t max_nodes, bool witness) {
  if (p.is_zero()) {
    throw Error(ErrorCode::InvalidParameter, "the oracle evaluates p >= 1 only");
  }
  const bool exact = exact_mode(kind, p);
  if (x.is_zero()) {
    return {exact ? NormValue::exact(Rational(0), p.value()) : NormValue::approx(0.0), {}};
  }
  thread_local SupportClosure c;
  detail::close_support(x, c);
  if (c.size() > max_nodes) {
    throw Error(ErrorCode::TooLargeForOracle, "prefix closure of the support has " +
                                                  std::to_string(c.size()) + " nodes (limit " +
                                                  std::to_string(max_nodes) + ")");
  }
  if (exact) {
    const auto p_int = static_cast<unsigned>(p.value().small_num());
    // Work on integer numerators over a common denominator when they are
    // small: |z| < 2^20 and at most 64 nodes keep every family total below
    // 2^60.
    constexpr std::int64_t kSmall = std::int64_t{1} << 20;
    auto denom = detail::common_denominator(x);
    bool fits = denom.has_value() && c.size() <= 64;
    thread_local std::vector<std::int64_t> w;
    if (fits) {
      w.assign(c.size(), 0);
      detail::for_each_local_entry(c, x, [&](std::size_t i, const Rational& coef) {
        const __int128 z = static_cast<__int128>(coef.small_num()) * (*denom / coef.small_den());
        const std::int64_t a = z < 0 ? static_cast<std::int64_t>(-z) : static_cast<std::int64_t>(z);
        if (z >= kSmall || z <= -kSmall) fits = false;
        w[i] = kind == BasisKind::Lp2 ? a * a : a;
      });
    }
    if (fits) {
      auto combine = [kind](std::int64_t a, std::int64_t b) { return kind == BasisKind::C0 ? std::max(a, b) : a + b; };
      thread_local Measures<std::int64_t> measure;
      block_measures(c, [&](std::size_t i) { return w[i]; }, combine, measure);
      if (p_int == 2 && kind != BasisKind::Lp2) {
        for (auto& m : measure.value) m *= m;
      }
      std::int64_t best = 0;
      const auto& family = enumerate_families<std::int64_t>(
          c, measure, 0, [](std::int64_t a, std::int64_t b) { return a > b; },
          [](std::int64_t a, std::int64_t b) { return a == b; }, best);
      return {NormValue::exact(detail::over_power(best, *denom, p_int), Rational(p_int)),
              witness ? to_segments(x, c, family) : std::vector<Segment>{}};
    }
    std::vector<Rational> coef = detail::local_coefficients(c, x);
    auto combine = [kind](const Rational& a, const Rational& b) { return kind == BasisKind::C0 ? max(a, b) : a + b; };
    Measures<Rational> measure;
    block_measures(
        c, [&](std::size_t i) { return kind == BasisKind::Lp2 ? coef[i] * coef[i] : abs(coef[i]); }, combine,
        measure);
    if (p_int == 2 && kind != BasisKind::Lp2) {
      for (auto& m : measure.value) m = m * m;
    }
    Rational best(0);
    const auto& family = enumerate_families<Rational>(
        c, measure, Rational(0), [](const Rational& a, const Rational& b) { return b < a; },
        [](const Rational& a, const Rational& b) { return a == b; }, best);
    return {NormValue::exact(best, Rational(p_int)), witness ? to_segments(x, c, family) : std::vector<Segment>{}};
  }

  std::vector<Rational> coef = detail::local_coefficients(c, x);
  const double pd = p.value().to_double();
  auto combine = [kind](double a, double b) { return kind == BasisKind::C0 ? std::max(a, b) : a + b; };
  Measures<double> measure;
  block_measures(
      c,
      [&](std::size_t i) {
        double v = coef[i].to_double();
        return kind == BasisKind::Lp2 ? v * v : std::fabs(v);
      },
      combine, measure);
  for (auto& m : measure.value) m = std::pow(kind == BasisKind::Lp2 ? std::sqrt(m) : m, pd);
  double best = 0.0;
  const auto& family = enumerate_families<double>(
      c, measure, 0.0, [](double a, double b) { return a > b && !approx_equal(a, b); },
      [](double a, double b) { return approx_equal(a, b); }, best);
  return {NormValue::approx(std::pow(best, 1.0 / pd)), witness ? to_segments(x, c, family) : std::vector<Segment>{}};
}

} // namespace bairelab
