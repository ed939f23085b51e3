#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bairelab/rational.hpp"
#include "bairelab/verdict.hpp"

namespace bairelab {

/// A step function on [0,1) that is constant on the 2^resolution dyadic
/// cells [(i-1)2^-k, i 2^-k).
///
/// Stored as maximal runs of equal value rather than 2^k values: run i
/// covers cells [runs[i].start, runs[i+1].start). The first run starts at 0
/// and adjacent runs differ in value.
class DyadicStep {
public:
  static constexpr unsigned kMaxResolution = 48;

  struct Run {
    std::uint64_t start;
    Rational value;
    friend bool operator==(const Run&, const Run&) = default;
  };

  /// The zero function at resolution 0.
  DyadicStep() : runs_{Run{0, Rational(0)}} {}

  static DyadicStep constant(Rational value, unsigned resolution = 0);
  /// values.size() must be a power of two (InvalidParameter otherwise).
  static DyadicStep from_values(std::span<const Rational> values);
  /// Runs need not be maximal; throws InvalidParameter unless the starts
  /// begin at 0, increase strictly and stay below 2^resolution.
  static DyadicStep from_runs(unsigned resolution, std::vector<Run> runs);
  /// height * 1_[(l-1)2^-k, l 2^-k), for 1 <= l <= 2^k.
  static DyadicStep indicator(unsigned k, std::uint64_t l, Rational height);

  [[nodiscard]] unsigned resolution() const noexcept { return resolution_; }
  [[nodiscard]] std::uint64_t cells() const noexcept { return std::uint64_t{1} << resolution_; }
  [[nodiscard]] const std::vector<Run>& runs() const noexcept { return runs_; }
  /// Value on cell i (0-based).
  [[nodiscard]] const Rational& value_at(std::uint64_t cell) const;
  /// All 2^resolution cell values.
  [[nodiscard]] std::vector<Rational> values() const;
  [[nodiscard]] bool is_zero() const noexcept { return runs_.size() == 1 && runs_[0].value.is_zero(); }

  /// The same function at a finer resolution (>= the current one).
  [[nodiscard]] DyadicStep refine(unsigned resolution) const;

  /// Structural equality: same resolution and same runs.
  friend bool operator==(const DyadicStep&, const DyadicStep&) = default;

private:
  DyadicStep(unsigned resolution, std::vector<Run> runs)
      : resolution_(resolution), runs_(std::move(runs)) {}
  void normalize();

  unsigned resolution_ = 0;
  std::vector<Run> runs_;
};

/// Equality as functions on [0,1), whatever the resolutions.
[[nodiscard]] bool same_function(const DyadicStep& f, const DyadicStep& g);

/// a f + b g at the finer of the two resolutions.
[[nodiscard]] DyadicStep step_combine(const Rational& a, const DyadicStep& f, const Rational& b,
                                      const DyadicStep& g);

/// sum c_i f_i at the finest resolution among the f_i, in one sweep over the
/// merged breakpoints.
[[nodiscard]] DyadicStep step_linear_combination(std::span<const Rational> coeffs,
                                                 std::span<const DyadicStep> fs);

/// Integral of |f| over [0,1).
[[nodiscard]] Rational l1_norm(const DyadicStep& f);

/// levels[k] holds x_k^1 .. x_k^{2^k} for k = 0..K.
struct BushLevels {
  std::vector<std::vector<DyadicStep>> levels;

  [[nodiscard]] unsigned K() const { return static_cast<unsigned>(levels.size()) - 1; }
  /// Throws InvalidParameter unless K >= 1 and level k has 2^k entries.
  void validate_shape() const;
};

/// x_k^l = 2^k 1_[(l-1)2^-k, l 2^-k) for k = 0..K. Throws KOutOfRange
/// unless 1 <= K <= 16.
[[nodiscard]] BushLevels rademacher_bush(unsigned K);

/// || sum_{l=1}^{2^{k-1}} (x_k^{2l-1} - x_k^{2l}) ||_1 for 1 <= k <= K.
[[nodiscard]] Rational bush_difference_norm(const BushLevels& bush, unsigned k);

/// Checks, in this order, the midpoint identity
/// x_{k-1}^l = (x_k^{2l-1} + x_k^{2l})/2 at every (k, l), then
/// difference norm > 2^k delta at every k >= 1, then ||x_k^l||_1 <= bound.
/// Reports the first failure. Throws InvalidParameter for a malformed bush
/// or nonpositive delta/bound.
[[nodiscard]] Verdict bush_check(const BushLevels& bush, const Rational& delta, const Rational& bound);

} // namespace bairelab
