#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bairelab/basis.hpp"
#include "bairelab/rational.hpp"
#include "bairelab/tree.hpp"

namespace bairelab {

/// The exponent of an l_p-Baire sum: a rational p >= 1, or the p = 0
/// variant whose norm is the supremum over single segments.
class ExponentP {
public:
  static ExponentP zero() { return ExponentP(); }
  /// Throws InvalidParameter unless p >= 1.
  static ExponentP of(Rational p);
  /// "0" selects the single-segment variant; anything else must be a
  /// rational >= 1.
  static ExponentP parse(std::string_view text);

  [[nodiscard]] bool is_zero() const noexcept { return !p_.has_value(); }
  [[nodiscard]] const Rational& value() const { return *p_; }
  [[nodiscard]] std::string to_string() const { return p_ ? p_->to_string() : "0"; }

  friend bool operator==(const ExponentP&, const ExponentP&) = default;

private:
  ExponentP() = default;
  explicit ExponentP(Rational p) : p_(std::move(p)) {}
  std::optional<Rational> p_;
};

/// (kind, p) pairs whose norm has a rational p-th power. Everything else is
/// evaluated in binary64.
[[nodiscard]] bool exact_mode(BasisKind kind, const ExponentP& p);

/// A finitely supported rational coefficient assignment on a tree.
class BaireVector {
public:
  /// Tree index paired with a nonzero coefficient; sorted by index.
  using Entry = std::pair<std::size_t, Rational>;

  explicit BaireVector(std::shared_ptr<const FiniteTree> tree);

  /// Throws InvalidParameter for nodes outside the tree or repeated nodes.
  /// Zero coefficients are dropped.
  static BaireVector from_nodes(std::shared_ptr<const FiniteTree> tree,
                                std::vector<std::pair<TreeNode, Rational>> coefficients);
  /// Same, keyed by tree index.
  static BaireVector from_indices(std::shared_ptr<const FiniteTree> tree,
                                  std::vector<Entry> coefficients);

  [[nodiscard]] const FiniteTree& tree() const noexcept { return *tree_; }
  [[nodiscard]] const std::shared_ptr<const FiniteTree>& tree_ptr() const noexcept { return tree_; }
  [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }
  [[nodiscard]] bool is_zero() const noexcept { return entries_.empty(); }
  [[nodiscard]] Rational coefficient(const TreeNode& node) const;
  [[nodiscard]] Rational coefficient_at(std::size_t index) const;
  [[nodiscard]] std::vector<TreeNode> support() const;
  [[nodiscard]] bool same_tree(const BaireVector& other) const;

  friend bool operator==(const BaireVector& a, const BaireVector& b);

private:
  std::shared_ptr<const FiniteTree> tree_;
  std::vector<Entry> entries_;
};

/// a*x + b*y. Throws TreeMismatch when the vectors live on different trees.
[[nodiscard]] BaireVector vector_combine(const Rational& a, const BaireVector& x, const Rational& b,
                                         const BaireVector& y);

/// Coefficients of x along the chain of `segment`, from its minimum node to
/// its maximum node, zeros included. Throws InvalidSegment.
[[nodiscard]] std::vector<Rational> segment_vector(const BaireVector& x, const Segment& segment);

/// A norm value together with a family of pairwise incomparable segments that
/// attains it. Witness segments all carry a nonzero block and are listed in
/// lexicographic order; among optimal families the lexicographically least
/// one is reported.
struct NormResult {
  NormValue value;
  std::vector<Segment> witness;
};

struct EvalOptions {
  /// Evaluate the subtrees under distinct root children concurrently.
  bool parallel = false;
  /// Build the witness family; value-only callers can skip it.
  bool witness = true;
};

/// ||x||_{E,p,theta} by dynamic programming over the prefix closure of the
/// support. Requires p != 0 (InvalidParameter otherwise).
///
/// The supremum over all families of incomparable segments is attained by a
/// family whose segments start and end at support nodes: cutting zero
/// coefficients off either end of a segment leaves its block norm unchanged
/// (the bases are symmetric and unconditional), and dropping segments with a
/// zero block does not change the sum. Such segments live inside the prefix
/// closure of the support, a finite set, so the supremum is a maximum over
/// finitely many families.
[[nodiscard]] NormResult baire_norm(const BaireVector& x, BasisKind kind, const ExponentP& p,
                                    const EvalOptions& options = {});

inline constexpr std::size_t kDefaultOracleNodes = 14;

/// Exhaustive evaluation over every antichain of segment minima and every
/// choice of segment maxima. Throws TooLargeForOracle when the prefix
/// closure of the support has more than max_nodes nodes.
[[nodiscard]] NormResult baire_norm_oracle(const BaireVector& x, BasisKind kind, const ExponentP& p,
                                           std::size_t max_nodes = kDefaultOracleNodes, bool witness = true);

/// ||x||_{E,0,theta}: the largest block norm over single segments.
[[nodiscard]] NormResult baire_norm_zero(const BaireVector& x, BasisKind kind);

/// Dispatches to baire_norm_zero for p = 0 and baire_norm otherwise.
[[nodiscard]] NormResult evaluate_norm(const BaireVector& x, BasisKind kind, const ExponentP& p,
                                       const EvalOptions& options = {});

} // namespace bairelab
