#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bairelab/baire.hpp"
#include "bairelab/step_l1.hpp"
#include "bairelab/verdict.hpp"

namespace bairelab {

/// Norm of a Baire-sum family.
struct BaireContext {
  BasisKind kind;
  ExponentP p;
  friend bool operator==(const BaireContext&, const BaireContext&) = default;
};
/// L1 norm of dyadic step functions.
struct L1StepContext {
  friend bool operator==(const L1StepContext&, const L1StepContext&) = default;
};
using NormContext = std::variant<BaireContext, L1StepContext>;

using FamilyMember = std::variant<BaireVector, DyadicStep>;

/// A finite prefix x_0, x_1, ... of a sequence in one normed space.
/// Positions are 0-based throughout the API; position i is the paper-style
/// term x_{i+1}.
class VectorFamily {
public:
  /// Throws InvalidParameter for an empty list, TreeMismatch when the
  /// vectors do not share one tree.
  static VectorFamily baire(std::vector<BaireVector> vectors, BasisKind kind, ExponentP p);
  static VectorFamily steps(std::vector<DyadicStep> vectors);

  [[nodiscard]] std::size_t size() const noexcept;
  [[nodiscard]] const NormContext& context() const noexcept { return context_; }
  [[nodiscard]] bool is_baire() const noexcept { return std::holds_alternative<BaireContext>(context_); }
  [[nodiscard]] const std::vector<BaireVector>& baire_vectors() const { return std::get<0>(vectors_); }
  [[nodiscard]] const std::vector<DyadicStep>& step_vectors() const { return std::get<1>(vectors_); }

  /// Polyhedral norms admit the exact convex-block LP: Baire sums over l1 or
  /// c0 with p in {1, 0}, and the L1 step norm.
  [[nodiscard]] bool polyhedral() const noexcept;

  /// sum_j coeffs[j] * x_{indices[j]}.
  [[nodiscard]] FamilyMember combination(std::span<const std::size_t> indices,
                                         std::span<const Rational> coeffs) const;
  [[nodiscard]] NormValue norm(const FamilyMember& v, const EvalOptions& options = {}) const;
  [[nodiscard]] NormValue norm_at(std::size_t i) const;
  [[nodiscard]] NormValue combination_norm(std::span<const std::size_t> indices,
                                           std::span<const Rational> coeffs,
                                           const EvalOptions& options = {}) const {
    return norm(combination(indices, coeffs), options);
  }

private:
  VectorFamily(std::variant<std::vector<BaireVector>, std::vector<DyadicStep>> vectors, NormContext context)
      : vectors_(std::move(vectors)), context_(std::move(context)) {}

  std::variant<std::vector<BaireVector>, std::vector<DyadicStep>> vectors_;
  NormContext context_;
};

/// m^{-1} sum_k s_k x_{n_k} with s_k = (-1)^k (k = 1..m) when alternating
/// and 1 otherwise, together with its norm. Throws BadIndexList unless the
/// indices are nonempty, strictly increasing and in range.
[[nodiscard]] std::pair<FamilyMember, NormValue> cesaro_mean(const VectorFamily& family,
                                                             std::span<const std::size_t> indices,
                                                             bool alternating);

struct CheckOptions {
  /// Evaluate index tuples concurrently. The reported witness is the first
  /// violation in enumeration order either way.
  bool parallel = false;
};

inline constexpr std::size_t kMaxBanachSaksFamily = 10;

/// Exhaustive test of every mean (1/m)(sum_{k<=l} x_{n_k} - sum_{k>l} x_{n_k})
/// over m = 1..|F|, tuples n_1 < ... < n_m in lexicographic order and
/// l = 1..m. Pass iff every value is >= epsilon; otherwise the first value
/// below epsilon is reported. Throws NotInUnitBall when some ||x_i|| > 1,
/// InvalidParameter when |F| > 10 or epsilon <= 0.
[[nodiscard]] Verdict bs_obstruction_check(const VectorFamily& family, const Rational& epsilon,
                                           const CheckOptions& options = {});

/// Trial coefficients for the alternating Banach-Saks falsifier.
struct AbsSampler {
  /// Levels l = 1..max_level (2^l terms each).
  unsigned max_level = 2;
  /// Grid of coefficient values swept over all tuples of up to
  /// grid_max_terms terms (the all-zero vector is skipped).
  std::vector<Rational> grid{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
  std::size_t grid_max_terms = 4;

  [[nodiscard]] std::string describe() const;
};

/// Searches l, tuples l <= n(1) < ... < n(2^l) (1-based positions) and
/// coefficients c (unit vectors, then all sign patterns starting from all
/// +1, then the grid) for ||sum c_i x_{n(i)}|| < epsilon sum |c_i|. Never
/// passes: Violated with the first witness found, or Inconclusive. Throws
/// FamilyTooSmall when no level fits in the family.
[[nodiscard]] Verdict abs_obstruction_falsify(const VectorFamily& family, const Rational& epsilon,
                                              const AbsSampler& sampler = {});

inline constexpr std::size_t kMaxFunctionals = 100'000;

struct ConvexBlockResult {
  /// Convex weights for x_n .. x_{n+l}; they sum to exactly 1.
  std::vector<Rational> coefficients;
  /// Norm of sum a_i x_{n+i}, evaluated directly.
  NormValue value;
  /// True when an exact LP certificate proved global minimality.
  bool certified = false;
  /// Generating functionals (or LP rows) used.
  std::size_t functionals = 0;
};

/// Projected-subgradient settings for non-polyhedral norms. The returned
/// value is within about 1e-3 of the minimum on the windows this is used
/// for; it is an upper bound in every case.
struct SubgradientOptions {
  std::size_t iterations = 4000;
  double initial_step = 0.5;
};

/// Minimizes ||sum_{i=0}^{l} a_i x_{n+i}|| over the simplex. Polyhedral
/// contexts solve an exact rational LP; other contexts run projected
/// subgradient descent and report an approximate value. Throws
/// WindowOutOfRange when n + l >= |F|, FunctionalSetTooLarge when the
/// generating functionals exceed kMaxFunctionals.
[[nodiscard]] ConvexBlockResult convex_block_min(const VectorFamily& family, std::size_t n, std::size_t l,
                                                 const SubgradientOptions& options = {});

/// Greedy partition of the family into consecutive windows, each grown
/// until its convex-block minimum drops below epsilon. A trailing window
/// that never gets there is merged into the previous block (a larger window
/// has a smaller minimum). Pass when at least one block exists; otherwise
/// Inconclusive. Throws InvalidParameter when |F| < 2 or epsilon <= 0.
[[nodiscard]] Verdict weak_null_probe(const VectorFamily& family, const Rational& epsilon);

} // namespace bairelab
