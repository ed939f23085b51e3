#include <doctest.h>

#include "bairelab/random.hpp"
#include "bairelab/step_l1.hpp"
#include "helpers.hpp"

using namespace bairelab;
using bairelab::testing::error_of;

namespace {

DyadicStep random_step(Rng& rng) {
  const unsigned k = static_cast<unsigned>(uniform_below(rng, 5));
  std::vector<Rational> values;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i) {
    values.emplace_back(static_cast<std::int64_t>(uniform_below(rng, 9)) - 4,
                        static_cast<std::int64_t>(uniform_below(rng, 3)) + 1);
  }
  return DyadicStep::from_values(values);
}

/// sum |v_i| 2^-k straight from the dense values.
Rational dense_l1(const DyadicStep& f) {
  Rational acc(0);
  for (const auto& v : f.values()) acc += abs(v);
  return acc / Rational(static_cast<std::int64_t>(f.cells()));
}

} // namespace

TEST_CASE("step_combine examples") {
  const DyadicStep sum = step_combine(1, DyadicStep::indicator(1, 1, 1), 1, DyadicStep::indicator(1, 2, 1));
  CHECK(same_function(sum, DyadicStep::constant(1)));
  const DyadicStep f = DyadicStep::indicator(2, 3, Rational(5, 2));
  CHECK(step_combine(1, f, -1, f).is_zero());
  const DyadicStep g = DyadicStep::indicator(3, 2, -1);
  CHECK(same_function(step_combine(2, f.refine(5), 3, g), step_combine(2, f, 3, g).refine(5)));
}

TEST_CASE("l1_norm examples") {
  CHECK(l1_norm(DyadicStep::constant(1)) == Rational(1));
  for (unsigned k = 0; k <= 6; ++k) {
    for (std::uint64_t l = 1; l <= (std::uint64_t{1} << k); l += 3) {
      CHECK(l1_norm(DyadicStep::indicator(k, l, Rational(std::int64_t{1} << k))) == Rational(1));
    }
  }
  const BushLevels b = rademacher_bush(6);
  for (unsigned k = 1; k <= 6; ++k) CHECK(bush_difference_norm(b, k) == Rational(std::int64_t{1} << k));
}

TEST_CASE("DyadicStep construction checks") {
  const std::vector<Rational> three{1, 2, 3};
  CHECK(error_of([&] { (void)DyadicStep::from_values(three); }) == ErrorCode::InvalidParameter);
  CHECK(error_of([] { (void)DyadicStep::from_runs(2, {{1, Rational(1)}}); }) == ErrorCode::InvalidParameter);
  CHECK(error_of([] { (void)DyadicStep::from_runs(2, {{0, Rational(1)}, {4, Rational(2)}}); }) ==
        ErrorCode::InvalidParameter);
  const DyadicStep f = DyadicStep::from_runs(3, {{0, Rational(1)}, {2, Rational(1)}, {5, Rational(0)}});
  CHECK(f.runs().size() == 2);
  CHECK(f.value_at(4) == Rational(1));
  CHECK(f.value_at(5) == Rational(0));
}

TEST_CASE("rademacher_bush examples") {
  const BushLevels b = rademacher_bush(1);
  REQUIRE(b.levels.size() == 2);
  CHECK(same_function(b.levels[0][0], DyadicStep::constant(1)));
  CHECK(same_function(b.levels[1][0], DyadicStep::indicator(1, 1, 2)));
  CHECK(same_function(b.levels[1][1], DyadicStep::indicator(1, 2, 2)));
  CHECK(same_function(step_combine(Rational(1, 2), b.levels[1][0], Rational(1, 2), b.levels[1][1]),
                      b.levels[0][0]));
  CHECK(bush_difference_norm(rademacher_bush(3), 3) == Rational(8));
  CHECK(error_of([] { (void)rademacher_bush(0); }) == ErrorCode::KOutOfRange);
  CHECK(error_of([] { (void)rademacher_bush(17); }) == ErrorCode::KOutOfRange);
}

TEST_CASE("bush_check examples") {
  CHECK(bush_check(rademacher_bush(8), Rational(1, 2), 1).status == Verdict::Status::Pass);

  const Verdict v = bush_check(rademacher_bush(3), 1, 1);
  REQUIRE(v.status == Verdict::Status::Violated);
  CHECK(v.witness->labels.at("condition") == "ii");
  CHECK(v.witness->labels.at("k") == "1");
  CHECK(v.witness->value->rational_value() == Rational(2));

  BushLevels bad = rademacher_bush(3);
  bad.levels[2][1] = step_combine(1, bad.levels[2][1], Rational(1, 100), DyadicStep::constant(1));
  const Verdict w = bush_check(bad, Rational(1, 2), 2);
  REQUIRE(w.status == Verdict::Status::Violated);
  CHECK(w.witness->labels.at("condition") == "i");
  CHECK(w.witness->labels.at("k") == "2");

  const Verdict u = bush_check(rademacher_bush(3), Rational(1, 2), Rational(1, 2));
  REQUIRE(u.status == Verdict::Status::Violated);
  CHECK(u.witness->labels.at("condition") == "bound");

  BushLevels ragged = rademacher_bush(2);
  ragged.levels[2].pop_back();
  CHECK(error_of([&] { (void)bush_check(ragged, 1, 1); }) == ErrorCode::InvalidParameter);
  CHECK(error_of([] { (void)bush_check(rademacher_bush(2), 0, 1); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("canonical bush laws up to ten levels") {
  for (unsigned K = 1; K <= 10; ++K) {
    const BushLevels b = rademacher_bush(K);
    for (unsigned k = 1; k <= K; ++k) {
      CHECK(bush_difference_norm(b, k) == Rational(std::int64_t{1} << k));
      for (std::size_t l = 0; l < b.levels[k].size(); ++l) CHECK(l1_norm(b.levels[k][l]) == Rational(1));
    }
    for (const Rational delta : {Rational(1, 3), Rational(1, 2), Rational(99, 100)}) {
      CHECK(bush_check(b, delta, 1).status == Verdict::Status::Pass);
    }
    CHECK(bush_check(b, 1, 1).status == Verdict::Status::Violated);
  }
}

TEST_CASE("bush_check is monotone in delta") {
  BushLevels b = rademacher_bush(4);
  // Scaling keeps the midpoint identity and moves the threshold to 3/4.
  for (auto& level : b.levels) {
    for (auto& f : level) f = step_combine(Rational(3, 4), f, 0, f);
  }
  const std::vector<Rational> deltas{Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 2),
                                     Rational(3, 4), Rational(1)};
  bool passed_above = false;
  for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) {
    const bool pass = bush_check(b, *it, 2).status == Verdict::Status::Pass;
    if (passed_above) CHECK(pass);
    CHECK(pass == (*it < Rational(3, 4)));
    passed_above = passed_above || pass;
  }
}

TEST_CASE("l1_norm is refinement invariant and subadditive") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const DyadicStep f = random_step(rng);
    const DyadicStep g = random_step(rng);
    CHECK(l1_norm(f) == dense_l1(f));
    CHECK(l1_norm(f.refine(f.resolution() + 3)) == l1_norm(f));
    CHECK(l1_norm(step_combine(1, f, 1, g)) <= l1_norm(f) + l1_norm(g));
    const std::vector<Rational> cs{2, -1, Rational(1, 3)};
    const std::vector<DyadicStep> fs{f, g, f};
    const DyadicStep lin = step_linear_combination(cs, fs);
    CHECK(same_function(lin, step_combine(1, step_combine(2, f, -1, g), Rational(1, 3), f)));
  }
}
