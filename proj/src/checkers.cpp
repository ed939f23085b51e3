#include "bairelab/checkers.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "bairelab/error.hpp"

namespace bairelab {

VectorFamily VectorFamily::baire(std::vector<BaireVector> vectors, BasisKind kind, ExponentP p) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidParameter, "a vector family must be nonempty");
  for (const auto& v : vectors) {
    if (!v.same_tree(vectors[0])) throw Error(ErrorCode::TreeMismatch, "family vectors live on different trees");
  }
  return VectorFamily(std::move(vectors), BaireContext{kind, std::move(p)});
}

VectorFamily VectorFamily::steps(std::vector<DyadicStep> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidParameter, "a vector family must be nonempty");
  return VectorFamily(std::move(vectors), L1StepContext{});
}

std::size_t VectorFamily::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, vectors_);
}

bool VectorFamily::polyhedral() const noexcept {
  if (!is_baire()) return true;
  const auto& ctx = std::get<BaireContext>(context_);
  if (ctx.kind == BasisKind::Lp2) return false;
  return ctx.p.is_zero() || ctx.p.value() == Rational(1);
}

FamilyMember VectorFamily::combination(std::span<const std::size_t> indices,
                                       std::span<const Rational> coeffs) const {
  if (indices.size() != coeffs.size()) throw Error(ErrorCode::InvalidParameter, "one coefficient per index");
  for (std::size_t i : indices) {
    if (i >= size()) throw Error(ErrorCode::BadIndexList, "index " + std::to_string(i) + " out of range");
  }
  if (!is_baire()) {
    std::vector<DyadicStep> picked;
    for (std::size_t i : indices) picked.push_back(step_vectors()[i]);
    return step_linear_combination(coeffs, picked);
  }
  const auto& xs = baire_vectors();
  std::map<std::size_t, Rational> acc;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    for (const auto& [node, coef] : xs[indices[j]].entries()) acc[node] += coeffs[j] * coef;
  }
  std::vector<BaireVector::Entry> entries(acc.begin(), acc.end());
  return BaireVector::from_indices(xs[0].tree_ptr(), std::move(entries));
}

NormValue VectorFamily::norm(const FamilyMember& v, const EvalOptions& options) const {
  if (const auto* x = std::get_if<BaireVector>(&v)) {
    const auto& ctx = std::get<BaireContext>(context_);
    EvalOptions value_only = options;
    value_only.witness = false;
    return evaluate_norm(*x, ctx.kind, ctx.p, value_only).value;
  }
  return NormValue::exact(l1_norm(std::get<DyadicStep>(v)), Rational(1));
}

NormValue VectorFamily::norm_at(std::size_t i) const {
  if (is_baire()) return norm(baire_vectors().at(i));
  return norm(step_vectors().at(i));
}

std::pair<FamilyMember, NormValue> cesaro_mean(const VectorFamily& family, std::span<const std::size_t> indices,
                                               bool alternating) {
  if (indices.empty()) throw Error(ErrorCode::BadIndexList, "index list is empty");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= family.size()) {
      throw Error(ErrorCode::BadIndexList, "index " + std::to_string(indices[k]) + " out of range");
    }
    if (k > 0 && indices[k] <= indices[k - 1]) {
      throw Error(ErrorCode::BadIndexList, "indices must be strictly increasing");
    }
  }
  const auto m = static_cast<std::int64_t>(indices.size());
  std::vector<Rational> coeffs;
  for (std::int64_t k = 1; k <= m; ++k) {
    coeffs.emplace_back(alternating && k % 2 == 1 ? -1 : 1, m);
  }
  FamilyMember mean = family.combination(indices, coeffs);
  NormValue value = family.norm(mean);
  return {std::move(mean), std::move(value)};
}

namespace {

/// Advances a strictly increasing tuple over [lo, n) to its lexicographic
/// successor; false after the last one.
bool next_tuple(std::vector<std::size_t>& t, std::size_t n) {
  const std::size_t m = t.size();
  for (std::size_t i = m; i-- > 0;) {
    if (t[i] < n - (m - i)) {
      ++t[i];
      for (std::size_t j = i + 1; j < m; ++j) t[j] = t[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<std::size_t>> all_tuples(std::size_t m, std::size_t lo, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (lo + m > n) return out;
  std::vector<std::size_t> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = lo + i;
  do {
    out.push_back(t);
  } while (next_tuple(t, n));
  return out;
}

std::vector<Rational> split_coefficients(std::size_t m, std::size_t split) {
  std::vector<Rational> c;
  for (std::size_t k = 1; k <= m; ++k) {
    c.emplace_back(k <= split ? 1 : -1, static_cast<std::int64_t>(m));
  }
  return c;
}

} // namespace

Verdict bs_obstruction_check(const VectorFamily& family, const Rational& epsilon, const CheckOptions& options) {
  if (epsilon.sign() <= 0) throw Error(ErrorCode::InvalidParameter, "epsilon must be positive");
  const std::size_t n = family.size();
  if (n > kMaxBanachSaksFamily) {
    throw Error(ErrorCode::InvalidParameter, "bs_obstruction_check is exhaustive and accepts at most " +
                                                 std::to_string(kMaxBanachSaksFamily) + " vectors, got " +
                                                 std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (compare(family.norm_at(i), Rational(1)) > 0) {
      throw Error(ErrorCode::NotInUnitBall, "vector " + std::to_string(i) + " has norm above 1");
    }
  }

  struct Trial {
    const std::vector<std::size_t>* tuple;
    std::size_t split;
  };
  std::size_t tested = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    const auto tuples = all_tuples(m, 0, n);
    std::vector<Trial> trials;
    for (const auto& t : tuples) {
      for (std::size_t split = 1; split <= m; ++split) trials.push_back({&t, split});
    }
    std::vector<std::optional<NormValue>> results(trials.size());
    auto evaluate = [&](std::size_t i) -> bool {
      auto coeffs = split_coefficients(m, trials[i].split);
      NormValue v = family.combination_norm(*trials[i].tuple, coeffs);
      const bool below = compare(v, epsilon) < 0;
      results[i] = std::move(v);
      return below;
    };
    // First violating trial in enumeration order.
    std::size_t first = trials.size();
    const unsigned workers = options.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
    if (workers > 1 && trials.size() > 1) {
      std::vector<std::future<std::size_t>> jobs;
      const std::size_t chunk = (trials.size() + workers - 1) / workers;
      for (std::size_t begin = 0; begin < trials.size(); begin += chunk) {
        const std::size_t end = std::min(trials.size(), begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
          for (std::size_t i = begin; i < end; ++i) {
            if (evaluate(i)) return i;
          }
          return trials.size();
        }));
      }
      for (auto& job : jobs) first = std::min(first, job.get());
      tested += first == trials.size() ? trials.size() : first + 1;
    } else {
      for (std::size_t i = 0; i < trials.size(); ++i) {
        ++tested;
        if (evaluate(i)) {
          first = i;
          break;
        }
      }
    }
    if (first < trials.size()) {
      Verdict verdict;
      verdict.status = Verdict::Status::Violated;
      Witness w;
      w.kind = "beauzamy-mean";
      w.indices = *trials[first].tuple;
      w.coefficients = split_coefficients(m, trials[first].split);
      w.value = results[first];
      w.labels["m"] = std::to_string(m);
      w.labels["split"] = std::to_string(trials[first].split);
      verdict.witness = std::move(w);
      verdict.tested = std::to_string(tested) + " means up to m=" + std::to_string(m) + " against epsilon=" +
                       epsilon.to_string();
      return verdict;
    }
  }
  Verdict verdict;
  verdict.status = Verdict::Status::Pass;
  verdict.tested = "all " + std::to_string(tested) + " means for m=1.." + std::to_string(n) +
                   ", every split, against epsilon=" + epsilon.to_string();
  return verdict;
}

std::string AbsSampler::describe() const {
  std::ostringstream out;
  out << "levels 1.." << max_level << "; unit vectors, all sign patterns, grid {";
  for (std::size_t i = 0; i < grid.size(); ++i) out << (i ? "," : "") << grid[i].to_string();
  out << "} for up to " << grid_max_terms << " terms";
  return out.str();
}

namespace {

/// Coefficient vectors of length t in sweep order.
std::vector<std::vector<Rational>> abs_trials(std::size_t t, const AbsSampler& sampler) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<Rational> e(t, Rational(0));
    e[j] = Rational(1);
    out.push_back(std::move(e));
  }
  // Bit i of the mask set means a -1 at position i; all +1 comes first.
  if (t < 20) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
      std::vector<Rational> c(t);
      for (std::size_t i = 0; i < t; ++i) c[i] = Rational((mask >> (t - 1 - i)) & 1 ? -1 : 1);
      out.push_back(std::move(c));
    }
  }
  if (t <= sampler.grid_max_terms && !sampler.grid.empty()) {
    std::vector<std::size_t> digit(t, 0);
    const std::size_t g = sampler.grid.size();
    for (;;) {
      std::vector<Rational> c(t);
      bool nonzero = false;
      for (std::size_t i = 0; i < t; ++i) {
        c[i] = sampler.grid[digit[i]];
        nonzero = nonzero || !c[i].is_zero();
      }
      if (nonzero) out.push_back(std::move(c));
      std::size_t i = t;
      while (i-- > 0) {
        if (++digit[i] < g) break;
        digit[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

} // namespace

Verdict abs_obstruction_falsify(const VectorFamily& family, const Rational& epsilon, const AbsSampler& sampler) {
  if (epsilon.sign() <= 0) throw Error(ErrorCode::InvalidParameter, "epsilon must be positive");
  const std::size_t n = family.size();
  std::size_t tested = 0;
  unsigned levels_tested = 0;
  for (unsigned level = 1; level <= sampler.max_level && level < 63; ++level) {
    const std::size_t t = std::size_t{1} << level;
    // 1-based positions n(1) >= level, i.e. 0-based indices from level-1.
    const std::size_t lo = level - 1;
    if (lo + t > n) break;
    ++levels_tested;
    const auto trials = abs_trials(t, sampler);
    for (const auto& tuple : all_tuples(t, lo, n)) {
      for (const auto& c : trials) {
        ++tested;
        Rational mass(0);
        for (const auto& ci : c) mass += abs(ci);
        NormValue v = family.combination_norm(tuple, c);
        if (compare(v, epsilon * mass) < 0) {
          Verdict verdict;
          verdict.status = Verdict::Status::Violated;
          Witness w;
          w.kind = "alternating-combination";
          w.indices = tuple;
          w.coefficients = c;
          w.value = std::move(v);
          w.labels["level"] = std::to_string(level);
          w.labels["threshold"] = (epsilon * mass).to_string();
          verdict.witness = std::move(w);
          verdict.tested = std::to_string(tested) + " combinations; " + sampler.describe();
          return verdict;
        }
      }
    }
  }
  if (levels_tested == 0) {
    throw Error(ErrorCode::FamilyTooSmall,
                "level 1 needs 2 vectors at positions >= 1; the family has " + std::to_string(n));
  }
  Verdict verdict;
  verdict.status = Verdict::Status::Inconclusive;
  verdict.tested = std::to_string(tested) + " combinations, levels 1.." + std::to_string(levels_tested) +
                   " fit the family; sampler: " + sampler.describe();
  return verdict;
}

} // namespace bairelab
