#include <doctest.h>

#include "bairelab/lp.hpp"
#include "bairelab/random.hpp"

using namespace bairelab;
using Rel = LinearProgram::Relation;

TEST_CASE("textbook maximum") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6).
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {3, 5};
  lp.add_row({1, 0}, Rel::LessEq, 4);
  lp.add_row({0, 2}, Rel::LessEq, 12);
  lp.add_row({3, 2}, Rel::LessEq, 18);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpSolution::Status::Optimal);
  CHECK(s.value == Rational(36));
  CHECK(s.x == std::vector<Rational>{2, 6});
  CHECK(certifies_optimum(lp, s));
}

TEST_CASE("equality and lower-bound rows need phase one") {
  // max -x - y, x + y = 3/2, x >= 1/2  ->  -3/2.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {-1, -1};
  lp.add_row({1, 1}, Rel::Equal, Rational(3, 2));
  lp.add_row({1, 0}, Rel::GreaterEq, Rational(1, 2));
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpSolution::Status::Optimal);
  CHECK(s.value == Rational(-3, 2));
  CHECK(certifies_optimum(lp, s));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram inf;
  inf.num_vars = 1;
  inf.objective = {1};
  inf.add_row({1}, Rel::LessEq, 1);
  inf.add_row({1}, Rel::GreaterEq, 2);
  CHECK(solve_lp(inf).status == LpSolution::Status::Infeasible);

  LinearProgram unb;
  unb.num_vars = 2;
  unb.objective = {1, 0};
  unb.add_row({-1, 1}, Rel::LessEq, 1);
  CHECK(solve_lp(unb).status == LpSolution::Status::Unbounded);
}

TEST_CASE("random bounded programs come with exact certificates") {
  Rng rng(40);
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp;
    lp.num_vars = 1 + uniform_below(rng, 4);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      lp.objective.emplace_back(static_cast<std::int64_t>(uniform_below(rng, 11)) - 5);
    }
    std::vector<Rational> box(lp.num_vars, Rational(1));
    lp.add_row(box, Rel::LessEq, static_cast<std::int64_t>(uniform_below(rng, 5)) + 1);
    const std::size_t rows = uniform_below(rng, 4);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < lp.num_vars; ++j) {
        row.emplace_back(static_cast<std::int64_t>(uniform_below(rng, 7)) - 3, 2);
      }
      lp.add_row(row, uniform_below(rng, 2) ? Rel::LessEq : Rel::GreaterEq,
                 Rational(static_cast<std::int64_t>(uniform_below(rng, 7)) - 3, 3));
    }
    const LpSolution s = solve_lp(lp);
    if (s.status == LpSolution::Status::Optimal) CHECK(certifies_optimum(lp, s));
    CHECK(s.status != LpSolution::Status::Unbounded);
  }
}
