// Convex-block minimization.
//
// Polyhedral Baire norms are maxima of finitely many linear functionals
// phi(v) = sum_{s in S} sigma_s v(s) where S ranges over the node sets a
// norming family can see and sigma over sign patterns on S:
//
//   c0, p = 0   S = a single node
//   l1, p = 0   S = the support nodes on one root-to-leaf chain
//   c0, p = 1   S = an antichain of support nodes (one pick per segment)
//   l1, p = 1   S = the support nodes covered by incomparable segments
//
// Only inclusion-maximal S matter. With M[phi][i] = phi(x_i) the minimum of
// max_phi phi(sum a_i x_i) over the simplex is the value of the matrix game
//
//   max w  s.t.  w - sum_phi M[phi][i] y_phi <= 0  (each i),  sum y_phi = 1,
//
// whose row duals are the optimal weights a (scaled to sum 1). The L1 step
// norm uses the direct formulation min sum_c width_c u_c, u_c >= |v(c)|.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "baire_detail.hpp"
#include "bairelab/checkers.hpp"
#include "bairelab/error.hpp"
#include "bairelab/lp.hpp"

namespace bairelab {

namespace {

using Mask = std::uint64_t;
using Relation = LinearProgram::Relation;

void too_large(const std::string& what) {
  throw Error(ErrorCode::FunctionalSetTooLarge, what + " exceeds the bound of " + std::to_string(kMaxFunctionals));
}

/// Inclusion-maximal node sets over the union V of the window supports,
/// as bitmasks over V (V listed in tree order).
std::vector<Mask> maximal_node_sets(const detail::SupportClosure& c, const std::vector<std::size_t>& v_local,
                                    BasisKind kind, bool single_segment) {
  const std::size_t n = c.size();
  std::vector<Mask> bit(n, 0);
  for (std::size_t j = 0; j < v_local.size(); ++j) bit[v_local[j]] = Mask{1} << j;

  std::set<Mask> sets;
  auto add = [&](Mask m) {
    if (m == 0) return;
    sets.insert(m);
    if (sets.size() > kMaxFunctionals) too_large("the number of norming node sets");
  };
  if (single_segment && kind == BasisKind::C0) {
    for (std::size_t j = 0; j < v_local.size(); ++j) add(Mask{1} << j);
  } else if (single_segment) {
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
      if (!c.children(leaf).empty()) continue;
      Mask m = 0;
      for (std::size_t u = leaf; u != FiniteTree::npos; u = c.parent[u]) m |= bit[u];
      add(m);
    }
  } else {
    // Families of incomparable segments: a node either starts a segment
    // (blocking its subtree) or is skipped.
    std::size_t visited = 0;
    auto rec = [&](auto&& self, std::size_t i, Mask acc) -> void {
      if (++visited > 10 * kMaxFunctionals) too_large("the number of segment families");
      if (i == n) {
        add(acc);
        return;
      }
      if (kind == BasisKind::C0) {
        // One pick per segment: any node of the subtree stands for it.
        for (std::size_t m = i; m < c.subtree_end[i]; ++m) {
          if (bit[m]) self(self, c.subtree_end[i], acc | bit[m]);
        }
      } else {
        for (std::size_t m = i; m < c.subtree_end[i]; ++m) {
          Mask chain = 0;
          for (std::size_t u = m;; u = c.parent[u]) {
            chain |= bit[u];
            if (u == i) break;
          }
          if (chain) self(self, c.subtree_end[i], acc | chain);
        }
      }
      self(self, i + 1, acc);
    };
    rec(rec, 0, 0);
  }
  std::vector<Mask> all(sets.begin(), sets.end());
  std::vector<Mask> maximal;
  for (Mask a : all) {
    bool dominated = false;
    for (Mask b : all) {
      if (b != a && (a & b) == a) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(a);
  }
  return maximal;
}

ConvexBlockResult baire_lp(const VectorFamily& family, std::size_t n, std::size_t l) {
  const auto& xs = family.baire_vectors();
  const auto& ctx = std::get<BaireContext>(family.context());
  const std::size_t k = l + 1;
  const FiniteTree& tree = xs[0].tree();

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& e : xs[n + i].entries()) support.push_back(e.first);
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  ConvexBlockResult out;
  if (support.empty()) {
    out.coefficients.assign(k, Rational(0));
    out.coefficients[0] = Rational(1);
    out.value = NormValue::exact(Rational(0), Rational(1));
    out.certified = true;
    return out;
  }
  if (support.size() > 63) too_large("a support union of " + std::to_string(support.size()) + " nodes");
  detail::SupportClosure closure = detail::close_support(tree, support);
  std::vector<std::size_t> v_local;
  for (std::size_t s : support) {
    v_local.push_back(static_cast<std::size_t>(
        std::lower_bound(closure.tree_index.begin(), closure.tree_index.end(), s) - closure.tree_index.begin()));
  }
  const auto sets = maximal_node_sets(closure, v_local, ctx.kind, ctx.p.is_zero());

  std::size_t count = 0;
  for (Mask m : sets) {
    const auto bits = static_cast<std::size_t>(std::popcount(m));
    if (bits >= 17) too_large("the number of generating functionals");
    count += std::size_t{1} << bits;
    if (count > kMaxFunctionals) too_large("the number of generating functionals");
  }

  // coef[j][i] = x_{n+i} at support node j.
  std::vector<std::vector<Rational>> coef(support.size(), std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < support.size(); ++j) coef[j][i] = xs[n + i].coefficient_at(support[j]);
  }
  std::set<std::vector<Rational>> columns;
  for (Mask m : sets) {
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (m >> j & 1) members.push_back(j);
    }
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << members.size()); ++signs) {
      std::vector<Rational> col(k, Rational(0));
      for (std::size_t b = 0; b < members.size(); ++b) {
        const bool negative = (signs >> b) & 1;
        for (std::size_t i = 0; i < k; ++i) {
          if (negative) {
            col[i] -= coef[members[b]][i];
          } else {
            col[i] += coef[members[b]][i];
          }
        }
      }
      columns.insert(std::move(col));
    }
  }

  // Variables: w, then one y per distinct column.
  LinearProgram lp;
  lp.num_vars = 1 + columns.size();
  lp.objective.assign(lp.num_vars, Rational(0));
  lp.objective[0] = Rational(1);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> row(lp.num_vars);
    row[0] = Rational(1);
    std::size_t j = 1;
    for (const auto& col : columns) row[j++] = -col[i];
    lp.add_row(std::move(row), Relation::LessEq, Rational(0));
  }
  std::vector<Rational> simplex_row(lp.num_vars, Rational(1));
  simplex_row[0] = Rational(0);
  lp.add_row(std::move(simplex_row), Relation::Equal, Rational(1));

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal) {
    throw std::logic_error("convex-block game LP is always feasible and bounded");
  }
  Rational total(0);
  for (std::size_t i = 0; i < k; ++i) total += sol.duals[i];
  out.coefficients.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.coefficients[i] = sol.duals[i] / total;
  std::vector<std::size_t> window(k);
  std::iota(window.begin(), window.end(), n);
  out.value = family.combination_norm(window, out.coefficients);
  out.functionals = columns.size();
  out.certified = certifies_optimum(lp, sol) && compare(out.value, sol.value) == 0;
  return out;
}

ConvexBlockResult step_lp(const VectorFamily& family, std::size_t n, std::size_t l) {
  const auto& fs = family.step_vectors();
  const std::size_t k = l + 1;
  unsigned resolution = 0;
  for (std::size_t i = 0; i < k; ++i) resolution = std::max(resolution, fs[n + i].resolution());
  std::vector<std::uint64_t> starts;
  for (std::size_t i = 0; i < k; ++i) {
    const unsigned shift = resolution - fs[n + i].resolution();
    for (const auto& run : fs[n + i].runs()) starts.push_back(run.start << shift);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  const std::size_t cells = starts.size();
  if (2 * cells + 1 > kMaxFunctionals) too_large("the number of LP rows");
  const std::uint64_t total_cells = std::uint64_t{1} << resolution;

  // Variables: a_0..a_{k-1}, then u_c per merged cell.
  LinearProgram lp;
  lp.num_vars = k + cells;
  lp.objective.assign(lp.num_vars, Rational(0));
  const Rational scale(static_cast<std::int64_t>(total_cells));
  for (std::size_t c = 0; c < cells; ++c) {
    const std::uint64_t end = c + 1 < cells ? starts[c + 1] : total_cells;
    lp.objective[k + c] = -Rational(static_cast<std::int64_t>(end - starts[c])) / scale;
  }
  for (std::size_t c = 0; c < cells; ++c) {
    std::vector<Rational> value(k);
    for (std::size_t i = 0; i < k; ++i) {
      const unsigned shift = resolution - fs[n + i].resolution();
      value[i] = fs[n + i].value_at(starts[c] >> shift);
    }
    for (int sign : {1, -1}) {
      // sign * v(c) - u_c <= 0
      std::vector<Rational> row(lp.num_vars);
      for (std::size_t i = 0; i < k; ++i) row[i] = sign > 0 ? value[i] : -value[i];
      row[k + c] = Rational(-1);
      lp.add_row(std::move(row), Relation::LessEq, Rational(0));
    }
  }
  std::vector<Rational> simplex_row(lp.num_vars, Rational(0));
  for (std::size_t i = 0; i < k; ++i) simplex_row[i] = Rational(1);
  lp.add_row(std::move(simplex_row), Relation::Equal, Rational(1));

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal) {
    throw std::logic_error("convex-block L1 LP is always feasible and bounded");
  }
  ConvexBlockResult out;
  out.coefficients.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::size_t> window(k);
  std::iota(window.begin(), window.end(), n);
  out.value = family.combination_norm(window, out.coefficients);
  out.functionals = lp.rows.size();
  out.certified = certifies_optimum(lp, sol) && compare(out.value, -sol.value) == 0;
  return out;
}

/// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

/// Weights with denominator 2^20 summing to exactly 1.
std::vector<Rational> round_weights(const std::vector<double>& a) {
  constexpr std::int64_t kDen = std::int64_t{1} << 20;
  std::vector<std::int64_t> num(a.size());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num[i] = std::max<std::int64_t>(0, std::llround(a[i] * static_cast<double>(kDen)));
    sum += num[i];
  }
  const auto largest = static_cast<std::size_t>(std::max_element(num.begin(), num.end()) - num.begin());
  num[largest] += kDen - sum;
  if (num[largest] < 0) {
    std::fill(num.begin(), num.end(), 0);
    num[largest] = kDen;
  }
  std::vector<Rational> out;
  for (std::int64_t x : num) out.emplace_back(x, kDen);
  return out;
}

ConvexBlockResult subgradient(const VectorFamily& family, std::size_t n, std::size_t l,
                              const SubgradientOptions& options) {
  const auto& xs = family.baire_vectors();
  const auto& ctx = std::get<BaireContext>(family.context());
  const std::size_t k = l + 1;
  std::vector<std::size_t> window(k);
  std::iota(window.begin(), window.end(), n);
  const double p = ctx.p.is_zero() ? 1.0 : ctx.p.value().to_double();

  std::vector<double> a(k, 1.0 / static_cast<double>(k));
  std::vector<Rational> best_weights = round_weights(a);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= options.iterations; ++t) {
    std::vector<Rational> weights = round_weights(a);
    auto v = std::get<BaireVector>(family.combination(window, weights));
    NormResult r = evaluate_norm(v, ctx.kind, ctx.p);
    const double norm = r.value.to_double();
    if (norm < best) {
      best = norm;
      best_weights = weights;
    }
    if (norm == 0.0) break;

    // dN/dv(s) through the witness family: N^p = sum_I beta_I^p.
    std::map<std::size_t, double> grad_v;
    for (const Segment& seg : r.witness) {
      std::vector<std::pair<std::size_t, double>> block;
      for (const TreeNode& node : seg.chain()) {
        const std::size_t idx = *v.tree().index_of(node);
        block.emplace_back(idx, v.coefficient_at(idx).to_double());
      }
      double beta = 0.0;
      for (auto& [idx, b] : block) {
        if (ctx.kind == BasisKind::Lp1) beta += std::fabs(b);
        if (ctx.kind == BasisKind::Lp2) beta += b * b;
        if (ctx.kind == BasisKind::C0) beta = std::max(beta, std::fabs(b));
      }
      if (ctx.kind == BasisKind::Lp2) beta = std::sqrt(beta);
      if (beta == 0.0) continue;
      const double outer = ctx.p.is_zero() ? 1.0 : std::pow(beta / norm, p - 1.0);
      bool picked = false;
      for (auto& [idx, b] : block) {
        double inner = 0.0;
        if (ctx.kind == BasisKind::Lp1) inner = b > 0 ? 1.0 : (b < 0 ? -1.0 : 0.0);
        if (ctx.kind == BasisKind::Lp2) inner = b / beta;
        if (ctx.kind == BasisKind::C0 && !picked && std::fabs(b) == beta) {
          inner = b > 0 ? 1.0 : -1.0;
          picked = true;
        }
        if (inner != 0.0) grad_v[idx] += outer * inner;
      }
    }
    std::vector<double> g(k, 0.0);
    double g_norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& [idx, coef] : xs[n + i].entries()) {
        auto it = grad_v.find(idx);
        if (it != grad_v.end()) g[i] += it->second * coef.to_double();
      }
      g_norm += g[i] * g[i];
    }
    g_norm = std::sqrt(g_norm);
    if (g_norm == 0.0) break;
    const double step = options.initial_step / std::sqrt(static_cast<double>(t)) / g_norm;
    for (std::size_t i = 0; i < k; ++i) a[i] -= step * g[i];
    a = project_simplex(std::move(a));
  }
  ConvexBlockResult out;
  out.coefficients = std::move(best_weights);
  out.value = NormValue::approx(family.combination_norm(window, out.coefficients).to_double());
  out.certified = false;
  return out;
}

} // namespace

ConvexBlockResult convex_block_min(const VectorFamily& family, std::size_t n, std::size_t l,
                                   const SubgradientOptions& options) {
  if (n >= family.size() || l >= family.size() - n) {
    throw Error(ErrorCode::WindowOutOfRange, "window (" + std::to_string(n) + "," + std::to_string(l) +
                                                 ") needs positions " + std::to_string(n) + ".." +
                                                 std::to_string(n + l) + " in a family of " +
                                                 std::to_string(family.size()));
  }
  if (!family.is_baire()) return step_lp(family, n, l);
  if (family.polyhedral()) return baire_lp(family, n, l);
  return subgradient(family, n, l, options);
}

Verdict weak_null_probe(const VectorFamily& family, const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw Error(ErrorCode::InvalidParameter, "epsilon must be positive");
  if (family.size() < 2) throw Error(ErrorCode::InvalidParameter, "weak_null_probe needs at least 2 vectors");

  struct Block {
    std::size_t start;
    std::size_t last;
    ConvexBlockResult result;
  };
  std::vector<Block> blocks;
  const std::size_t size = family.size();
  std::size_t start = 0;
  std::size_t windows = 0;
  while (start < size) {
    bool found = false;
    for (std::size_t l = 0; start + l < size; ++l) {
      ++windows;
      ConvexBlockResult r = convex_block_min(family, start, l);
      if (compare(r.value, epsilon) < 0) {
        blocks.push_back({start, start + l, std::move(r)});
        start += l + 1;
        found = true;
        break;
      }
    }
    if (found) continue;
    if (!blocks.empty()) {
      // Fold the remainder into the previous block.
      Block& last = blocks.back();
      ConvexBlockResult r = convex_block_min(family, last.start, size - 1 - last.start);
      ++windows;
      if (compare(r.value, epsilon) < 0) {
        last.last = size - 1;
        last.result = std::move(r);
        start = size;
        continue;
      }
    }
    break;
  }

  Verdict verdict;
  verdict.tested = std::to_string(windows) + " windows, greedy consecutive partition of " +
                   std::to_string(size) + " vectors against epsilon=" + epsilon.to_string();
  if (blocks.empty() || start < size) {
    verdict.status = Verdict::Status::Inconclusive;
    return verdict;
  }
  Witness w;
  w.kind = "convex-blocks";
  std::string layout;
  std::optional<NormValue> worst;
  for (const Block& b : blocks) {
    for (std::size_t i = b.start; i <= b.last; ++i) w.indices.push_back(i);
    w.coefficients.insert(w.coefficients.end(), b.result.coefficients.begin(), b.result.coefficients.end());
    if (!layout.empty()) layout += ",";
    layout += std::to_string(b.start) + "-" + std::to_string(b.last);
    if (!worst || compare(b.result.value, *worst) > 0) worst = b.result.value;
  }
  w.labels["blocks"] = layout;
  w.value = worst;
  verdict.status = Verdict::Status::Pass;
  verdict.witness = std::move(w);
  return verdict;
}

} // namespace bairelab
