#include <algorithm>
#include <numeric>

#include "baire_detail.hpp"
#include "bairelab/error.hpp"

namespace bairelab {

ExponentP ExponentP::of(Rational p) {
  if (p < Rational(1)) {
    throw Error(ErrorCode::InvalidParameter, "exponent p must be >= 1, got " + p.to_string());
  }
  return ExponentP(std::move(p));
}

ExponentP ExponentP::parse(std::string_view text) {
  Rational p;
  try {
    p = Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (p.is_zero()) return zero();
  return of(std::move(p));
}

bool exact_mode(BasisKind kind, const ExponentP& p) {
  if (p.is_zero()) return true;
  const Rational& v = p.value();
  if (!v.is_small() || v.small_den() != 1) return false;
  return v.small_num() == 2 || (v.small_num() == 1 && kind != BasisKind::Lp2);
}

BaireVector::BaireVector(std::shared_ptr<const FiniteTree> tree) : tree_(std::move(tree)) {
  if (!tree_) throw std::invalid_argument("BaireVector requires a tree");
}

BaireVector BaireVector::from_indices(std::shared_ptr<const FiniteTree> tree,
                                      std::vector<Entry> coefficients) {
  BaireVector out(std::move(tree));
  std::sort(coefficients.begin(), coefficients.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i].first >= out.tree_->size()) {
      throw Error(ErrorCode::InvalidParameter, "coefficient index outside the tree");
    }
    if (i > 0 && coefficients[i].first == coefficients[i - 1].first) {
      throw Error(ErrorCode::InvalidParameter,
                  "node " + out.tree_->node(coefficients[i].first).to_string() + " given twice");
    }
  }
  std::erase_if(coefficients, [](const Entry& e) { return e.second.is_zero(); });
  out.entries_ = std::move(coefficients);
  return out;
}

BaireVector BaireVector::from_nodes(std::shared_ptr<const FiniteTree> tree,
                                    std::vector<std::pair<TreeNode, Rational>> coefficients) {
  std::vector<Entry> indexed;
  indexed.reserve(coefficients.size());
  for (auto& [node, coef] : coefficients) {
    auto i = tree->index_of(node);
    if (!i) throw Error(ErrorCode::InvalidParameter, "node " + node.to_string() + " is not in the tree");
    indexed.emplace_back(*i, std::move(coef));
  }
  return from_indices(std::move(tree), std::move(indexed));
}

Rational BaireVector::coefficient_at(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it == entries_.end() || it->first != index) return Rational(0);
  return it->second;
}

Rational BaireVector::coefficient(const TreeNode& node) const {
  auto i = tree_->index_of(node);
  return i ? coefficient_at(*i) : Rational(0);
}

std::vector<TreeNode> BaireVector::support() const {
  std::vector<TreeNode> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(tree_->node(e.first));
  return out;
}

bool BaireVector::same_tree(const BaireVector& other) const {
  return tree_ == other.tree_ || *tree_ == *other.tree_;
}

bool operator==(const BaireVector& a, const BaireVector& b) {
  return a.same_tree(b) && a.entries_ == b.entries_;
}

BaireVector vector_combine(const Rational& a, const BaireVector& x, const Rational& b,
                           const BaireVector& y) {
  if (!x.same_tree(y)) throw Error(ErrorCode::TreeMismatch, "vectors live on different trees");
  std::vector<BaireVector::Entry> out;
  auto xi = x.entries().begin();
  auto yi = y.entries().begin();
  while (xi != x.entries().end() || yi != y.entries().end()) {
    if (yi == y.entries().end() || (xi != x.entries().end() && xi->first < yi->first)) {
      out.emplace_back(xi->first, a * xi->second);
      ++xi;
    } else if (xi == x.entries().end() || yi->first < xi->first) {
      out.emplace_back(yi->first, b * yi->second);
      ++yi;
    } else {
      out.emplace_back(xi->first, a * xi->second + b * yi->second);
      ++xi;
      ++yi;
    }
  }
  return BaireVector::from_indices(x.tree_ptr(), std::move(out));
}

std::vector<Rational> segment_vector(const BaireVector& x, const Segment& segment) {
  if (!segment.valid_in(x.tree())) {
    throw Error(ErrorCode::InvalidSegment, "segment " + segment.min_node.to_string() + ".." +
                                               segment.max_node.to_string() +
                                               " is not a segment of the tree");
  }
  std::vector<Rational> out;
  for (const TreeNode& node : segment.chain()) out.push_back(x.coefficient(node));
  return out;
}

namespace detail {

void close_support(const FiniteTree& tree, std::span<const std::size_t> support, SupportClosure& c) {
  // Marks are reset before returning, so the buffer stays all-zero between
  // calls. `local` is only read at members of the current closure.
  thread_local std::vector<char> mark;
  thread_local std::vector<std::size_t> local;
  if (mark.size() < tree.size()) {
    mark.resize(tree.size(), 0);
    local.resize(tree.size());
  }
  std::vector<std::size_t>& members = c.tree_index;
  members.clear();
  for (std::size_t s : support) {
    // Walk up to the first already-collected ancestor, then put the new
    // chain in root-first order. For increasing support indices the chains
    // come out already sorted: a new ancestor u of s precedes s, and an
    // earlier support node below u would have collected u.
    const std::size_t first = members.size();
    for (std::size_t v = s; v != FiniteTree::npos && mark[v] == 0; v = tree.parent(v)) {
      mark[v] = 1;
      members.push_back(v);
    }
    std::reverse(members.begin() + static_cast<std::ptrdiff_t>(first), members.end());
  }
  for (std::size_t v : members) mark[v] = 0;
  if (!std::is_sorted(members.begin(), members.end())) std::sort(members.begin(), members.end());
  const std::size_t n = members.size();
  c.parent.resize(n);
  c.depth.resize(n);
  c.subtree_end.resize(n);
  c.child_offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ti = members[i];
    local[ti] = i;
    c.depth[i] = tree.depth(ti);
    c.subtree_end[i] = i + 1;
    const std::size_t tp = tree.parent(ti);
    // Parents precede children in preorder, so local[tp] is already set.
    c.parent[i] = tp == FiniteTree::npos ? FiniteTree::npos : local[tp];
    if (tp != FiniteTree::npos) ++c.child_offsets[c.parent[i] + 1];
  }
  // The closure is prefix closed, so a subtree is a contiguous run ending at
  // its last descendant.
  for (std::size_t i = n; i-- > 1;) {
    if (c.parent[i] != FiniteTree::npos) {
      c.subtree_end[c.parent[i]] = std::max(c.subtree_end[c.parent[i]], c.subtree_end[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) c.child_offsets[i + 1] += c.child_offsets[i];
  // Preorder lists children in increasing order, so a running cursor per
  // parent fills each child range in order.
  c.child_list.resize(c.child_offsets[n]);
  c.fill.assign(c.child_offsets.begin(), c.child_offsets.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.parent[i] != FiniteTree::npos) c.child_list[c.fill[c.parent[i]]++] = i;
  }
}

void close_support(const BaireVector& x, SupportClosure& c) {
  thread_local std::vector<std::size_t> support;
  support.clear();
  for (const auto& e : x.entries()) support.push_back(e.first);
  close_support(x.tree(), support, c);
}

SupportClosure close_support(const FiniteTree& tree, std::vector<std::size_t> support) {
  SupportClosure c;
  close_support(tree, support, c);
  return c;
}

void local_coefficients(const SupportClosure& closure, const BaireVector& x, std::vector<Rational>& out) {
  out.assign(closure.size(), Rational());
  std::size_t j = 0;
  for (const auto& [index, coef] : x.entries()) {
    while (j < closure.size() && closure.tree_index[j] < index) ++j;
    if (j < closure.size() && closure.tree_index[j] == index) out[j] = coef;
  }
}

std::vector<Rational> local_coefficients(const SupportClosure& closure, const BaireVector& x) {
  std::vector<Rational> out;
  local_coefficients(closure, x, out);
  return out;
}

bool scale_to_integers(std::span<const Rational> coeffs, ScaledCoefficients& out) {
  std::int64_t denom = 1;
  for (const Rational& c : coeffs) {
    if (!c.is_small()) return false;
    std::int64_t d = c.small_den();
    if (d == denom) continue;
    std::int64_t g = std::gcd(denom, d);
    __int128 l = static_cast<__int128>(denom / g) * d;
    if (l > std::numeric_limits<std::int64_t>::max()) return false;
    denom = static_cast<std::int64_t>(l);
  }
  out.z.clear();
  for (const Rational& c : coeffs) {
    __int128 z = static_cast<__int128>(c.small_num()) * (denom / c.small_den());
    if (z > std::numeric_limits<std::int64_t>::max() || z < -std::numeric_limits<std::int64_t>::max()) {
      return false;
    }
    out.z.push_back(static_cast<std::int64_t>(z));
  }
  out.denom = denom;
  return true;
}

std::optional<ScaledCoefficients> scale_to_integers(std::span<const Rational> coeffs) {
  ScaledCoefficients out;
  if (!scale_to_integers(coeffs, out)) return std::nullopt;
  return out;
}

std::optional<std::int64_t> common_denominator(const BaireVector& x) {
  std::int64_t denom = 1;
  for (const auto& [index, c] : x.entries()) {
    if (!c.is_small()) return std::nullopt;
    const std::int64_t d = c.small_den();
    if (d == denom) continue;
    const std::int64_t g = std::gcd(denom, d);
    std::int64_t l;
    if (__builtin_mul_overflow(denom / g, d, &l)) return std::nullopt;
    denom = l;
  }
  return denom;
}

Rational over_power(std::int64_t value, std::int64_t denom, unsigned p) {
  std::int64_t d = 1;
  for (unsigned i = 0; i < p; ++i) {
    if (__builtin_mul_overflow(d, denom, &d)) return Rational(value) / pow(Rational(denom), p);
  }
  return Rational(value, d);
}

Segment make_segment(const FiniteTree& tree, const SupportClosure& closure, std::size_t min_local,
                     std::size_t max_local) {
  return Segment{tree.node(closure.tree_index[min_local]), tree.node(closure.tree_index[max_local])};
}

} // namespace detail

NormResult baire_norm_zero(const BaireVector& x, BasisKind kind) {
  NormResult result;
  const Rational inv_exp(kind == BasisKind::Lp2 ? 2 : 1);
  result.value = NormValue::exact(Rational(0), inv_exp);
  if (x.is_zero()) return result;

  std::vector<std::size_t> support;
  for (const auto& e : x.entries()) support.push_back(e.first);
  detail::SupportClosure closure = detail::close_support(x.tree(), std::move(support));
  std::vector<Rational> coef = detail::local_coefficients(closure, x);
  std::vector<Rational> weight(coef.size());
  for (std::size_t i = 0; i < coef.size(); ++i) {
    weight[i] = kind == BasisKind::Lp2 ? coef[i] * coef[i] : abs(coef[i]);
  }

  Rational best(0);
  std::size_t best_min = 0;
  std::size_t best_max = 0;
  std::vector<Rational> measure(closure.size());
  for (std::size_t a = 0; a < closure.size(); ++a) {
    for (std::size_t m = a; m < closure.subtree_end[a]; ++m) {
      if (m == a) {
        measure[m] = weight[m];
      } else {
        const Rational& up = measure[closure.parent[m]];
        measure[m] = kind == BasisKind::C0 ? max(up, weight[m]) : up + weight[m];
      }
      // Strict improvement keeps the lexicographically least pair.
      if (best < measure[m]) {
        best = measure[m];
        best_min = a;
        best_max = m;
      }
    }
  }
  if (best.is_zero()) return result;
  result.value = NormValue::exact(best, inv_exp);
  result.witness.push_back(detail::make_segment(x.tree(), closure, best_min, best_max));
  return result;
}

NormResult evaluate_norm(const BaireVector& x, BasisKind kind, const ExponentP& p,
                         const EvalOptions& options) {
  if (p.is_zero()) return baire_norm_zero(x, kind);
  return baire_norm(x, kind, p, options);
}

} // namespace bairelab
