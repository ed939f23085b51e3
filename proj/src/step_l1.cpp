#include "bairelab/step_l1.hpp"

#include <algorithm>
#include <string>

#include "bairelab/error.hpp"

namespace bairelab {

const char* status_name(Verdict::Status status) noexcept {
  switch (status) {
  case Verdict::Status::Pass: return "pass";
  case Verdict::Status::Violated: return "violated";
  case Verdict::Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

void check_resolution(unsigned resolution) {
  if (resolution > DyadicStep::kMaxResolution) {
    throw Error(ErrorCode::InvalidParameter,
                "resolution " + std::to_string(resolution) + " exceeds " +
                    std::to_string(DyadicStep::kMaxResolution));
  }
}

Rational two_to(unsigned k) { return Rational(static_cast<std::int64_t>(std::uint64_t{1} << k)); }

} // namespace

void DyadicStep::normalize() {
  std::vector<Run> merged;
  merged.reserve(runs_.size());
  for (auto& run : runs_) {
    if (!merged.empty() && merged.back().value == run.value) continue;
    merged.push_back(std::move(run));
  }
  runs_ = std::move(merged);
}

DyadicStep DyadicStep::constant(Rational value, unsigned resolution) {
  check_resolution(resolution);
  return DyadicStep(resolution, {Run{0, std::move(value)}});
}

DyadicStep DyadicStep::from_values(std::span<const Rational> values) {
  const std::size_t n = values.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error(ErrorCode::InvalidParameter,
                "a dyadic step function needs 2^k values, got " + std::to_string(n));
  }
  unsigned resolution = 0;
  while ((std::size_t{1} << resolution) < n) ++resolution;
  std::vector<Run> runs;
  for (std::size_t i = 0; i < n; ++i) runs.push_back(Run{i, values[i]});
  DyadicStep out(resolution, std::move(runs));
  out.normalize();
  return out;
}

DyadicStep DyadicStep::from_runs(unsigned resolution, std::vector<Run> runs) {
  check_resolution(resolution);
  const std::uint64_t cells = std::uint64_t{1} << resolution;
  if (runs.empty() || runs[0].start != 0) {
    throw Error(ErrorCode::InvalidParameter, "the first run must start at cell 0");
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].start >= cells || (i > 0 && runs[i].start <= runs[i - 1].start)) {
      throw Error(ErrorCode::InvalidParameter, "run starts must increase and stay below 2^resolution");
    }
  }
  DyadicStep out(resolution, std::move(runs));
  out.normalize();
  return out;
}

DyadicStep DyadicStep::indicator(unsigned k, std::uint64_t l, Rational height) {
  check_resolution(k);
  const std::uint64_t cells = std::uint64_t{1} << k;
  if (l < 1 || l > cells) {
    throw Error(ErrorCode::InvalidParameter, "cell index l must lie in 1..2^k");
  }
  std::vector<Run> runs;
  if (l > 1) runs.push_back(Run{0, Rational(0)});
  runs.push_back(Run{l - 1, std::move(height)});
  if (l < cells) runs.push_back(Run{l, Rational(0)});
  DyadicStep out(k, std::move(runs));
  out.normalize();
  return out;
}

const Rational& DyadicStep::value_at(std::uint64_t cell) const {
  if (cell >= cells()) throw Error(ErrorCode::InvalidParameter, "cell index out of range");
  auto it = std::upper_bound(runs_.begin(), runs_.end(), cell,
                             [](std::uint64_t c, const Run& r) { return c < r.start; });
  return std::prev(it)->value;
}

std::vector<Rational> DyadicStep::values() const {
  if (resolution_ > 24) throw Error(ErrorCode::InvalidParameter, "too many cells to list densely");
  std::vector<Rational> out;
  out.reserve(cells());
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    const std::uint64_t end = i + 1 < runs_.size() ? runs_[i + 1].start : cells();
    for (std::uint64_t c = runs_[i].start; c < end; ++c) out.push_back(runs_[i].value);
  }
  return out;
}

DyadicStep DyadicStep::refine(unsigned resolution) const {
  if (resolution < resolution_) {
    throw Error(ErrorCode::InvalidParameter, "refine cannot coarsen a step function");
  }
  check_resolution(resolution);
  const unsigned shift = resolution - resolution_;
  std::vector<Run> runs = runs_;
  for (auto& run : runs) run.start <<= shift;
  return DyadicStep(resolution, std::move(runs));
}

bool same_function(const DyadicStep& f, const DyadicStep& g) {
  const unsigned r = std::max(f.resolution(), g.resolution());
  return f.refine(r) == g.refine(r);
}

DyadicStep step_linear_combination(std::span<const Rational> coeffs, std::span<const DyadicStep> fs) {
  if (coeffs.size() != fs.size()) throw Error(ErrorCode::InvalidParameter, "one coefficient per function");
  unsigned resolution = 0;
  for (const auto& f : fs) resolution = std::max(resolution, f.resolution());
  // Jumps of the combination at each breakpoint, then a prefix sum.
  std::vector<std::pair<std::uint64_t, Rational>> jumps;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    const unsigned shift = resolution - fs[i].resolution();
    const Rational* previous = nullptr;
    for (const auto& run : fs[i].runs()) {
      Rational jump = previous ? run.value - *previous : run.value;
      if (!jump.is_zero()) jumps.emplace_back(run.start << shift, coeffs[i] * jump);
      previous = &run.value;
    }
  }
  std::sort(jumps.begin(), jumps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<DyadicStep::Run> runs{DyadicStep::Run{0, Rational(0)}};
  Rational level(0);
  for (std::size_t i = 0; i < jumps.size();) {
    const std::uint64_t at = jumps[i].first;
    for (; i < jumps.size() && jumps[i].first == at; ++i) level += jumps[i].second;
    if (at == 0) {
      runs[0].value = level;
    } else {
      runs.push_back(DyadicStep::Run{at, level});
    }
  }
  return DyadicStep::from_runs(resolution, std::move(runs));
}

DyadicStep step_combine(const Rational& a, const DyadicStep& f, const Rational& b, const DyadicStep& g) {
  const Rational coeffs[] = {a, b};
  const DyadicStep fs[] = {f, g};
  DyadicStep out = step_linear_combination(coeffs, fs);
  // Keep the finer input resolution even when both coefficients vanish.
  return out.refine(std::max(f.resolution(), g.resolution()));
}

Rational l1_norm(const DyadicStep& f) {
  Rational total(0);
  const auto& runs = f.runs();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::uint64_t end = i + 1 < runs.size() ? runs[i + 1].start : f.cells();
    total += abs(runs[i].value) * Rational(static_cast<std::int64_t>(end - runs[i].start));
  }
  return total / two_to(f.resolution());
}

void BushLevels::validate_shape() const {
  if (levels.size() < 2) throw Error(ErrorCode::InvalidParameter, "a bush needs levels 0..K with K >= 1");
  if (levels.size() > 31) throw Error(ErrorCode::InvalidParameter, "a bush may have at most 30 levels");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k].size() != (std::size_t{1} << k)) {
      throw Error(ErrorCode::InvalidParameter, "level " + std::to_string(k) + " must hold 2^" +
                                                   std::to_string(k) + " functions");
    }
  }
}

BushLevels rademacher_bush(unsigned K) {
  if (K < 1 || K > 16) {
    throw Error(ErrorCode::KOutOfRange, "K must lie in 1..16, got " + std::to_string(K));
  }
  BushLevels bush;
  bush.levels.resize(K + 1);
  for (unsigned k = 0; k <= K; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    bush.levels[k].reserve(n);
    for (std::uint64_t l = 1; l <= n; ++l) bush.levels[k].push_back(DyadicStep::indicator(k, l, two_to(k)));
  }
  return bush;
}

Rational bush_difference_norm(const BushLevels& bush, unsigned k) {
  if (k < 1 || k >= bush.levels.size()) throw Error(ErrorCode::InvalidParameter, "level out of range");
  const auto& level = bush.levels[k];
  std::vector<Rational> signs(level.size());
  for (std::size_t i = 0; i < level.size(); ++i) signs[i] = Rational(i % 2 == 0 ? 1 : -1);
  return l1_norm(step_linear_combination(signs, level));
}

Verdict bush_check(const BushLevels& bush, const Rational& delta, const Rational& bound) {
  bush.validate_shape();
  if (delta.sign() <= 0 || bound.sign() <= 0) {
    throw Error(ErrorCode::InvalidParameter, "delta and bound must be positive");
  }
  const unsigned K = bush.K();
  Verdict verdict;
  verdict.tested = "midpoint identity at every (k,l), difference norm > 2^k*delta for k=1.." +
                   std::to_string(K) + ", ||x_k^l||_1 <= bound at every (k,l)";
  auto violated = [&](std::string condition, unsigned k, std::optional<std::uint64_t> l,
                      std::optional<Rational> quantity, std::optional<Rational> threshold) {
    Witness w;
    w.kind = "bush";
    w.labels["condition"] = std::move(condition);
    w.labels["k"] = std::to_string(k);
    if (l) w.labels["l"] = std::to_string(*l);
    if (threshold) w.labels["threshold"] = threshold->to_string();
    if (quantity) w.value = NormValue::exact(*quantity, Rational(1));
    verdict.status = Verdict::Status::Violated;
    verdict.witness = std::move(w);
    return verdict;
  };

  const Rational half(1, 2);
  for (unsigned k = 1; k <= K; ++k) {
    const auto& parent = bush.levels[k - 1];
    const auto& level = bush.levels[k];
    for (std::size_t l = 0; l < parent.size(); ++l) {
      DyadicStep mid = step_combine(half, level[2 * l], half, level[2 * l + 1]);
      if (!same_function(mid, parent[l])) {
        // Quantity: ||x_{k-1}^l - midpoint||_1.
        return violated("i", k, l + 1, l1_norm(step_combine(Rational(1), parent[l], Rational(-1), mid)),
                        std::nullopt);
      }
    }
  }
  for (unsigned k = 1; k <= K; ++k) {
    Rational quantity = bush_difference_norm(bush, k);
    Rational threshold = two_to(k) * delta;
    if (!(quantity > threshold)) return violated("ii", k, std::nullopt, quantity, threshold);
  }
  for (unsigned k = 0; k <= K; ++k) {
    for (std::size_t l = 0; l < bush.levels[k].size(); ++l) {
      Rational norm = l1_norm(bush.levels[k][l]);
      if (norm > bound) return violated("bound", k, l + 1, norm, bound);
    }
  }
  verdict.status = Verdict::Status::Pass;
  return verdict;
}

} // namespace bairelab
