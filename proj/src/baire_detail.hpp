#pragma once

// Shared plumbing for the norm evaluators: the prefix closure of a support
// and the common-denominator integer form of its coefficients.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bairelab/baire.hpp"

namespace bairelab::detail {

/// Prefix closure R of a node set, indexed locally in lexicographic order
/// (local index order agrees with tree index order).
struct SupportClosure {
  std::vector<std::size_t> tree_index;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> child_offsets;
  std::vector<std::size_t> child_list;
  std::vector<std::size_t> subtree_end;
  std::vector<std::size_t> depth;
  std::vector<std::size_t> fill; // scratch for building child_list

  [[nodiscard]] std::size_t size() const noexcept { return tree_index.size(); }
  [[nodiscard]] std::span<const std::size_t> children(std::size_t i) const {
    return std::span<const std::size_t>(child_list).subspan(child_offsets[i],
                                                           child_offsets[i + 1] - child_offsets[i]);
  }
  [[nodiscard]] bool is_descendant_or_self(std::size_t ancestor, std::size_t node) const {
    return ancestor <= node && node < subtree_end[ancestor];
  }
};

/// `support` holds tree indices (any order, duplicates allowed). The
/// out-parameter forms reuse the capacity of `out` across calls.
void close_support(const FiniteTree& tree, std::span<const std::size_t> support, SupportClosure& out);
void close_support(const BaireVector& x, SupportClosure& out);
[[nodiscard]] SupportClosure close_support(const FiniteTree& tree, std::vector<std::size_t> support);

/// Coefficients of x on the closure, by local index.
void local_coefficients(const SupportClosure& closure, const BaireVector& x, std::vector<Rational>& out);
[[nodiscard]] std::vector<Rational> local_coefficients(const SupportClosure& closure,
                                                       const BaireVector& x);

/// Calls f(local, coefficient) for every entry of x; x's support must lie in
/// the closure.
template <class F>
void for_each_local_entry(const SupportClosure& closure, const BaireVector& x, F f) {
  std::size_t j = 0;
  for (const auto& [index, coef] : x.entries()) {
    while (closure.tree_index[j] < index) ++j;
    f(j, coef);
  }
}

/// Least common denominator of the entries of x when it fits in 64 bits.
[[nodiscard]] std::optional<std::int64_t> common_denominator(const BaireVector& x);

/// x = z / denom with integer z, when everything fits in 64 bits.
struct ScaledCoefficients {
  std::vector<std::int64_t> z;
  std::int64_t denom = 1;
};
bool scale_to_integers(std::span<const Rational> coeffs, ScaledCoefficients& out);
[[nodiscard]] std::optional<ScaledCoefficients> scale_to_integers(std::span<const Rational> coeffs);

/// value / denom^p, skipping the general rational power when denom^p fits.
[[nodiscard]] Rational over_power(std::int64_t value, std::int64_t denom, unsigned p);

struct Overflow {};

/// int64 arithmetic that throws Overflow instead of wrapping.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

/// Segment [min_local..max_local] of the closure as a public Segment.
[[nodiscard]] Segment make_segment(const FiniteTree& tree, const SupportClosure& closure,
                                   std::size_t min_local, std::size_t max_local);

} // namespace bairelab::detail
