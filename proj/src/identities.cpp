#include "bairelab/identities.hpp"

#include <cmath>
#include <map>

#include "bairelab/error.hpp"

namespace bairelab {

namespace {

void require_p(const ExponentP& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidParameter, "identity checks require p >= 1");
}

/// Accumulates sum w_i * ||v_i||^p either exactly (as power bases with
/// inv_exp p) or in binary64.
class PowerSum {
public:
  explicit PowerSum(const ExponentP& p) : p_(p.value()), pd_(p.value().to_double()) {}

  void add(const Rational& weight, const NormValue& norm) {
    if (norm.is_exact() && norm.exact_repr().inv_exp == p_) {
      exact_ += weight * norm.exact_repr().power_base;
    } else {
      exact_only_ = false;
    }
    approx_ += weight.to_double() * std::pow(norm.to_double(), pd_);
  }

  [[nodiscard]] NormValue value() const {
    if (exact_only_) return NormValue::exact(exact_, p_);
    return NormValue::approx(std::pow(approx_, 1.0 / pd_));
  }

private:
  Rational p_;
  double pd_;
  Rational exact_{0};
  double approx_ = 0.0;
  bool exact_only_ = true;
};

/// |a|^p for the exponents where that is rational.
Rational abs_power(const Rational& a, const Rational& p) {
  return pow(abs(a), static_cast<unsigned>(p.small_num()));
}

bool sides_equal(const NormValue& lhs, const NormValue& rhs) { return compare(lhs, rhs) == 0; }

} // namespace

CheckReport check_incomparable_additivity(std::span<const BaireVector> ys, std::span<const Rational> as,
                                          BasisKind kind, const ExponentP& p) {
  require_p(p);
  if (ys.size() != as.size()) {
    throw Error(ErrorCode::InvalidParameter, "need one coefficient per vector");
  }
  if (ys.empty()) {
    throw Error(ErrorCode::InvalidParameter, "need at least one vector");
  }
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (!ys[i].same_tree(ys[0])) throw Error(ErrorCode::TreeMismatch, "vectors live on different trees");
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = i + 1; j < ys.size(); ++j) {
      for (const TreeNode& s : ys[i].support()) {
        for (const TreeNode& t : ys[j].support()) {
          if (s.comparable_with(t)) throw SupportsNotIncomparableError(i, j, s.to_string(), t.to_string());
        }
      }
    }
  }

  BaireVector sum(ys[0].tree_ptr());
  PowerSum rhs(p);
  const bool exact = exact_mode(kind, p);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    sum = vector_combine(Rational(1), sum, as[i], ys[i]);
    NormValue yi = baire_norm(ys[i], kind, p).value;
    if (exact) {
      rhs.add(abs_power(as[i], p.value()), yi);
    } else {
      rhs.add(Rational(1), NormValue::approx(std::fabs(as[i].to_double()) * yi.to_double()));
    }
  }
  CheckReport report;
  report.identity = "incomparable-additivity";
  report.lhs = baire_norm(sum, kind, p).value;
  report.rhs = rhs.value();
  report.pass = sides_equal(report.lhs, report.rhs);
  return report;
}

CheckReport check_branch_isometry(const BaireVector& x, BasisKind kind, const ExponentP& p) {
  std::vector<TreeNode> support = x.support();
  for (std::size_t i = 1; i < support.size(); ++i) {
    // Lexicographic order lists a chain from top to bottom.
    if (!support[i - 1].is_prefix_of(support[i])) {
      throw Error(ErrorCode::SupportNotChain,
                  "support nodes " + support[i - 1].to_string() + " and " + support[i].to_string() +
                      " are incomparable");
    }
  }
  std::vector<Rational> chain;
  if (!support.empty()) {
    const TreeNode& deepest = support.back();
    for (std::size_t len = 0; len <= deepest.length(); ++len) chain.push_back(x.coefficient(deepest.prefix(len)));
  }
  CheckReport report;
  report.identity = "branch-isometry";
  report.lhs = evaluate_norm(x, kind, p).value;
  report.rhs = basis_norm(kind, chain);
  report.pass = sides_equal(report.lhs, report.rhs);
  return report;
}

CheckReport check_root_decomposition(const BaireVector& x, BasisKind kind, const ExponentP& p) {
  require_p(p);
  if (!x.coefficient(TreeNode{}).is_zero()) {
    throw Error(ErrorCode::NonzeroRootCoefficient,
                "x(()) = " + x.coefficient(TreeNode{}).to_string() + " must be 0");
  }
  // Support grouped by root child lambda, reindexed by dropping the first entry.
  std::map<TreeNode::Entry, std::vector<std::pair<TreeNode, Rational>>> parts;
  for (const auto& [index, coef] : x.entries()) {
    const TreeNode& node = x.tree().node(index);
    std::vector<TreeNode::Entry> tail(node.entries().begin() + 1, node.entries().end());
    parts[node[0]].emplace_back(TreeNode(std::move(tail)), coef);
  }
  const BasisKind shifted = deleted_first(kind);
  PowerSum rhs(p);
  for (auto& [lambda, coeffs] : parts) {
    auto local = std::make_shared<const FiniteTree>(subtree_at(x.tree(), lambda));
    BaireVector part = BaireVector::from_nodes(local, std::move(coeffs));
    rhs.add(Rational(1), baire_norm(part, shifted, p).value);
  }
  CheckReport report;
  report.identity = "root-decomposition";
  report.lhs = baire_norm(x, kind, p).value;
  report.rhs = rhs.value();
  report.pass = sides_equal(report.lhs, report.rhs);
  return report;
}

} // namespace bairelab
