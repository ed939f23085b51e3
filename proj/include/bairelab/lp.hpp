#pragma once

#include <cstddef>
#include <vector>

#include "bairelab/rational.hpp"

namespace bairelab {

/// maximize c^T x  subject to  A x (rel) b,  x >= 0, in exact rationals.
struct LinearProgram {
  enum class Relation { LessEq, Equal, GreaterEq };

  std::size_t num_vars = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;

  void add_row(std::vector<Rational> coeffs, Relation rel, Rational b);
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value;
  /// One multiplier per row, signed so that b^T y = value and A^T y >= c:
  /// y >= 0 on LessEq rows, y <= 0 on GreaterEq rows, free on Equal rows.
  std::vector<Rational> duals;
  std::size_t pivots = 0;
};

/// Two-phase dense tableau simplex with Bland's rule (no cycling).
[[nodiscard]] LpSolution solve_lp(const LinearProgram& lp);

/// Primal feasibility, dual feasibility and zero duality gap, all exact.
[[nodiscard]] bool certifies_optimum(const LinearProgram& lp, const LpSolution& solution);

} // namespace bairelab
