#pragma once

#include <span>
#include <string>

#include "bairelab/baire.hpp"

namespace bairelab {

/// Outcome of an identity check: both sides as norm values (the identity is
/// stated on p-th powers; the sides are reported as norms with the same
/// inverse exponent where exact). Equality is exact whenever both sides are
/// exact and within kApproxTolerance otherwise.
struct CheckReport {
  bool pass = false;
  NormValue lhs;
  NormValue rhs;
  std::string identity;
};

/// ||sum a_i y_i||^p = sum |a_i|^p ||y_i||^p for vectors with pairwise
/// completely incomparable supports. Throws TreeMismatch,
/// SupportsNotIncomparableError, and InvalidParameter for p = 0 or a length
/// mismatch between ys and as.
[[nodiscard]] CheckReport check_incomparable_additivity(std::span<const BaireVector> ys,
                                                        std::span<const Rational> as, BasisKind kind,
                                                        const ExponentP& p);

/// For x supported on a single chain, ||x||_{E,p,theta} equals the E-norm of
/// the coefficients along the chain from the root. Throws SupportNotChain.
[[nodiscard]] CheckReport check_branch_isometry(const BaireVector& x, BasisKind kind,
                                                const ExponentP& p);

/// For x(root) = 0, ||x||^p = sum over root children lambda of the p-th
/// power of x restricted to theta_lambda, reindexed into theta(lambda) and
/// measured with deleted_first(kind). Throws NonzeroRootCoefficient, and
/// InvalidParameter for p = 0.
[[nodiscard]] CheckReport check_root_decomposition(const BaireVector& x, BasisKind kind,
                                                   const ExponentP& p);

} // namespace bairelab
