// Tree dynamic program for ||x||_{E,p,theta}.
//
// Every node below the minimum of a segment is comparable with that minimum,
// so a segment starting at v rules out every other segment meeting the
// subtree of v. Families of completely incomparable segments are therefore
// an antichain of minima, each with one maximum below it. On the prefix
// closure R of the support, with cost(v..m) = ||block v..m||_E^p:
//
//   top(v)  = max over m below v (v included) of cost(v..m)
//   best(v) = max( sum_c best(c), top(v) )
//
// and the norm is best(root)^(1/p). Segments with a zero block are never
// used, so every witness segment contributes.
//
// Witness tie-breaking: a segment starting at v sorts before everything
// else in the subtree of v, and (v, m) sorts before (v, m') when m precedes
// m' lexicographically. Preferring "open" over "skip" and the first maximum
// m in preorder yields the lexicographically least optimal family.

#include <cmath>
#include <cstdint>
#include <future>

#include "baire_detail.hpp"
#include "bairelab/error.hpp"

namespace bairelab {

namespace {

using detail::SupportClosure;

struct IntArith {
  using T = std::int64_t;
  static T add(T a, T b) { return detail::checked_add(a, b); }
  static bool less(T a, T b) { return a < b; }
  static bool positive(T a) { return a > 0; }
};

struct RationalArith {
  using T = Rational;
  static T add(const T& a, const T& b) { return a + b; }
  static bool less(const T& a, const T& b) { return a < b; }
  static bool positive(const T& a) { return a.sign() > 0; }
};

struct DoubleArith {
  using T = double;
  static T add(T a, T b) { return a + b; }
  // Strictly better by more than the tolerance band.
  static bool less(T a, T b) { return a < b && !approx_equal(a, b); }
  static bool positive(T a) { return a > 0; }
};

/// The DP runs either on the prefix closure of the support or, for small
/// trees, on the whole tree. Nodes outside the closure carry no support below
/// them, so they never start a positive segment, and a maximum outside the
/// closure ties with its nearest closure ancestor, which precedes it in
/// preorder. Both topologies therefore give the same value and witness.
struct ClosureTopology {
  const SupportClosure& c;
  [[nodiscard]] std::size_t size() const { return c.size(); }
  [[nodiscard]] std::size_t parent(std::size_t i) const { return c.parent[i]; }
  [[nodiscard]] std::size_t subtree_end(std::size_t i) const { return c.subtree_end[i]; }
  [[nodiscard]] std::span<const std::size_t> children(std::size_t i) const { return c.children(i); }
  [[nodiscard]] std::size_t tree_index(std::size_t i) const { return c.tree_index[i]; }
  /// Calls f(local, coefficient) for every entry of x.
  template <class F>
  void for_each_entry(const BaireVector& x, F f) const {
    detail::for_each_local_entry(c, x, f);
  }
};

struct WholeTreeTopology {
  const FiniteTree& t;
  [[nodiscard]] std::size_t size() const { return t.size(); }
  [[nodiscard]] std::size_t parent(std::size_t i) const { return t.parent(i); }
  [[nodiscard]] std::size_t subtree_end(std::size_t i) const { return t.subtree_end(i); }
  [[nodiscard]] std::span<const std::size_t> children(std::size_t i) const { return t.children(i); }
  [[nodiscard]] std::size_t tree_index(std::size_t i) const { return i; }
  template <class F>
  void for_each_entry(const BaireVector& x, F f) const {
    for (const auto& [index, coef] : x.entries()) f(index, coef);
  }
};

/// Trees up to this size are evaluated without building the closure.
constexpr std::size_t kWholeTreeNodes = 64;

/// Per-thread working arrays, reused across evaluations.
template <class T>
struct DpBuffers {
  std::vector<T> weight;
  std::vector<T> top;
  std::vector<T> best;
  std::vector<T> prefix;
  std::vector<std::size_t> top_max; // npos while no positive segment starts here
  std::vector<char> best_open;
};

template <class T>
DpBuffers<T>& dp_buffers() {
  thread_local DpBuffers<T> buffers;
  return buffers;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

template <class A, class Topo, class Combine, class Cost>
class TreeDp {
public:
  using T = typename A::T;

  /// Reads the node weights from b.weight. top and best need no reset:
  /// top[v] is read only once top_max[v] is set, and best[v] is written by
  /// settle(v) before any read.
  TreeDp(const Topo& topo, DpBuffers<T>& b, Combine combine, Cost cost)
      : c_(topo), b_(b), combine_(combine), cost_(cost) {
    const std::size_t n = c_.size();
    b_.top.resize(n);
    b_.best.resize(n);
    b_.best_open.resize(n);
    b_.top_max.assign(n, kNone);
    b_.prefix.resize(n);
    weight_ = b_.weight.data();
    top_ = b_.top.data();
    best_ = b_.best.data();
    prefix_ = b_.prefix.data();
    top_max_ = b_.top_max.data();
    best_open_ = b_.best_open.data();
  }

  /// Returns best(root) and, unless `witness` is null, appends the witness
  /// in preorder, which is lexicographic order because the minima are
  /// incomparable.
  T run(bool parallel, const FiniteTree& tree, std::vector<Segment>* witness) {
    if (c_.size() == 0) return T{};
    auto root_children = c_.children(0);
    if (parallel && root_children.size() > 1) {
      std::vector<std::future<void>> jobs;
      for (std::size_t child : root_children) {
        jobs.push_back(std::async(std::launch::async, [this, child] { solve_subtree(child); }));
      }
      for (auto& job : jobs) job.get();
    } else {
      for (std::size_t child : root_children) solve_subtree(child);
    }
    root_tops();
    settle(0);
    if (witness) {
      witness->reserve(c_.size());
      emit_best(0, tree, *witness);
    }
    return best_[0];
  }

private:
  /// top() and best() for every node of the subtree of r (r != root).
  void solve_subtree(std::size_t r) {
    const std::size_t end = c_.subtree_end(r);
    for (std::size_t m = r; m < end; ++m) {
      T measure = weight_[m];
      for (std::size_t a = m;;) {
        offer(a, m, measure);
        if (a == r) break;
        a = c_.parent(a);
        measure = combine_(measure, weight_[a]);
      }
    }
    for (std::size_t v = end; v-- > r;) settle(v);
  }

  /// Segments starting at the root, from prefix measures in preorder.
  void root_tops() {
    for (std::size_t m = 0; m < c_.size(); ++m) {
      prefix_[m] = m == 0 ? weight_[0] : combine_(prefix_[c_.parent(m)], weight_[m]);
      offer(0, m, prefix_[m]);
    }
  }

  /// Candidate segment a..m; keeps the first maximum in preorder.
  void offer(std::size_t a, std::size_t m, const T& measure) {
    T block = cost_(measure);
    if (!A::positive(block)) return;
    if (top_max_[a] == kNone || A::less(top_[a], block)) {
      top_[a] = std::move(block);
      top_max_[a] = m;
    }
  }

  void settle(std::size_t v) {
    T child_sum{};
    for (std::size_t ch : c_.children(v)) child_sum = A::add(child_sum, best_[ch]);
    if (top_max_[v] != kNone && !A::less(top_[v], child_sum)) {
      best_[v] = top_[v];
      best_open_[v] = 1;
    } else {
      best_[v] = std::move(child_sum);
      best_open_[v] = 0;
    }
  }

  void emit_best(std::size_t v, const FiniteTree& tree, std::vector<Segment>& out) const {
    if (best_open_[v]) {
      out.push_back(Segment{tree.node(c_.tree_index(v)), tree.node(c_.tree_index(top_max_[v]))});
      return;
    }
    for (std::size_t ch : c_.children(v)) emit_best(ch, tree, out);
  }

  const Topo& c_;
  DpBuffers<T>& b_;
  Combine combine_;
  Cost cost_;
  // Views of b_; the vectors are not resized while the DP runs.
  const T* weight_;
  T* top_;
  T* best_;
  T* prefix_;
  std::size_t* top_max_;
  char* best_open_;
};

template <class A, class Topo, class Combine, class Cost>
typename A::T run_dp(const Topo& topo, DpBuffers<typename A::T>& buffers, Combine combine, Cost cost,
                     bool parallel, const FiniteTree& tree, std::vector<Segment>* witness) {
  TreeDp<A, Topo, Combine, Cost> dp(topo, buffers, combine, cost);
  return dp.run(parallel, tree, witness);
}

/// Block measures along a chain: sum of |x| (l1), max of |x| (c0), or sum
/// of x^2 (l2, whose weights are already squared).
struct SumCombine {
  std::int64_t operator()(std::int64_t m, std::int64_t w) const { return detail::checked_add(m, w); }
};
struct MaxCombine {
  std::int64_t operator()(std::int64_t m, std::int64_t w) const { return std::max(m, w); }
};
struct PlainCost {
  std::int64_t operator()(std::int64_t m) const { return m; }
};
struct SquareCost {
  std::int64_t operator()(std::int64_t m) const { return detail::checked_mul(m, m); }
};

template <class Topo>
std::int64_t int_dp(const Topo& topo, DpBuffers<std::int64_t>& buffers, BasisKind kind, bool square_block,
                    bool parallel, const FiniteTree& tree, std::vector<Segment>* witness) {
  if (kind == BasisKind::C0) {
    return square_block ? run_dp<IntArith>(topo, buffers, MaxCombine{}, SquareCost{}, parallel, tree, witness)
                        : run_dp<IntArith>(topo, buffers, MaxCombine{}, PlainCost{}, parallel, tree, witness);
  }
  return square_block ? run_dp<IntArith>(topo, buffers, SumCombine{}, SquareCost{}, parallel, tree, witness)
                      : run_dp<IntArith>(topo, buffers, SumCombine{}, PlainCost{}, parallel, tree, witness);
}

template <class Topo>
NormResult exact_dp(const BaireVector& x, const Topo& topo, BasisKind kind, unsigned p, const EvalOptions& options) {
  const bool square_block = p == 2 && kind != BasisKind::Lp2;
  if (auto denom = detail::common_denominator(x)) {
    try {
      auto& buffers = dp_buffers<std::int64_t>();
      std::vector<std::int64_t>& weight = buffers.weight;
      weight.assign(topo.size(), 0);
      topo.for_each_entry(x, [&](std::size_t i, const Rational& c) {
        std::int64_t z = detail::checked_mul(c.small_num(), *denom / c.small_den());
        if (z < 0) z = detail::checked_mul(z, -1);
        weight[i] = kind == BasisKind::Lp2 ? detail::checked_mul(z, z) : z;
      });
      NormResult out;
      const std::int64_t value = int_dp(topo, buffers, kind, square_block, options.parallel, x.tree(),
                                          options.witness ? &out.witness : nullptr);
      out.value = NormValue::exact(detail::over_power(value, *denom, p), Rational(p));
      return out;
    } catch (const detail::Overflow&) {
      // fall through to rational arithmetic
    }
  }
  auto& buffers = dp_buffers<Rational>();
  std::vector<Rational>& weight = buffers.weight;
  weight.assign(topo.size(), Rational());
  topo.for_each_entry(x, [&](std::size_t i, const Rational& c) {
    weight[i] = kind == BasisKind::Lp2 ? c * c : abs(c);
  });
  auto combine = [kind](const Rational& m, const Rational& w) {
    return kind == BasisKind::C0 ? max(m, w) : m + w;
  };
  auto cost = [square_block](const Rational& m) { return square_block ? m * m : m; };
  NormResult out;
  Rational value = run_dp<RationalArith>(topo, buffers, combine, cost, options.parallel, x.tree(),
                                          options.witness ? &out.witness : nullptr);
  out.value = NormValue::exact(std::move(value), Rational(p));
  return out;
}

template <class Topo>
NormResult approx_dp(const BaireVector& x, const Topo& topo, BasisKind kind, double p, const EvalOptions& options) {
  auto& buffers = dp_buffers<double>();
  std::vector<double>& weight = buffers.weight;
  weight.assign(topo.size(), 0.0);
  topo.for_each_entry(x, [&](std::size_t i, const Rational& coef) {
    const double c = coef.to_double();
    weight[i] = kind == BasisKind::Lp2 ? c * c : std::fabs(c);
  });
  auto combine = [kind](double m, double w) { return kind == BasisKind::C0 ? std::max(m, w) : m + w; };
  auto cost = [kind, p](double m) {
    double block = kind == BasisKind::Lp2 ? std::sqrt(m) : m;
    return std::pow(block, p);
  };
  NormResult out;
  const double value = run_dp<DoubleArith>(topo, buffers, combine, cost, options.parallel, x.tree(),
                                            options.witness ? &out.witness : nullptr);
  out.value = NormValue::approx(std::pow(value, 1.0 / p));
  return out;
}

template <class Topo>
NormResult dispatch(const BaireVector& x, const Topo& topo, BasisKind kind, const ExponentP& p,
                    const EvalOptions& options) {
  if (exact_mode(kind, p)) {
    return exact_dp(x, topo, kind, static_cast<unsigned>(p.value().small_num()), options);
  }
  return approx_dp(x, topo, kind, p.value().to_double(), options);
}

} // namespace

NormResult baire_norm(const BaireVector& x, BasisKind kind, const ExponentP& p,
                      const EvalOptions& options) {
  if (p.is_zero()) {
    throw Error(ErrorCode::InvalidParameter, "baire_norm requires p >= 1; use baire_norm_zero");
  }
  const bool exact = exact_mode(kind, p);
  if (x.is_zero()) {
    return {exact ? NormValue::exact(Rational(0), p.value()) : NormValue::approx(0.0), {}};
  }
  if (x.tree().size() <= kWholeTreeNodes) {
    return dispatch(x, WholeTreeTopology{x.tree()}, kind, p, options);
  }
  thread_local SupportClosure closure;
  detail::close_support(x, closure);
  return dispatch(x, ClosureTopology{closure}, kind, p, options);
}

} // namespace bairelab
