#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "bairelab/tree.hpp"

namespace bairelab {

/// Children of a node in a possibly infinite tree. A finite set lists its
/// entries; a cofinite set lists the entries it excludes.
struct ChildSet {
  enum class Kind { Finite, Cofinite };
  Kind kind = Kind::Finite;
  std::vector<TreeNode::Entry> entries;

  static ChildSet none() { return {}; }
  static ChildSet finite(std::vector<TreeNode::Entry> children) {
    return {Kind::Finite, std::move(children)};
  }
  static ChildSet all_except(std::vector<TreeNode::Entry> excluded) {
    return {Kind::Cofinite, std::move(excluded)};
  }
};

/// A finite window onto a tree given by child enumeration. Only the nodes
/// reachable from the root are ever requested.
class LazyTree {
public:
  using ChildFn = std::function<ChildSet(const TreeNode&)>;

  LazyTree(ChildFn children_of, std::size_t depth_budget)
      : children_of_(std::move(children_of)), depth_budget_(depth_budget) {}

  [[nodiscard]] ChildSet children_of(const TreeNode& node) const { return children_of_(node); }
  [[nodiscard]] std::size_t depth_budget() const noexcept { return depth_budget_; }

  [[nodiscard]] static LazyTree from_finite(FiniteTree tree, std::size_t depth_budget);
  /// The single infinite branch (0,0,0,...).
  [[nodiscard]] static LazyTree zero_branch(std::size_t depth_budget);
  /// Every node of length <= max_length with entries < arity.
  [[nodiscard]] static LazyTree bounded(std::uint32_t arity, std::size_t max_length,
                                        std::size_t depth_budget);
  /// Every node of length <= max_length (infinitely many children above it).
  [[nodiscard]] static LazyTree cofinite_bounded(std::size_t max_length, std::size_t depth_budget);

private:
  ChildFn children_of_;
  std::size_t depth_budget_;
};

/// Outcome of a depth-limited exploration. A branch candidate is a chain of
/// the requested length; it does not prove the tree has an infinite branch.
/// Unresolved means a cofinite child set blocked exhaustive exploration
/// before any chain of the requested length was found.
struct ProbeVerdict {
  enum class Kind { WellFoundedCertified, BranchCandidate, Unresolved };
  Kind kind = Kind::WellFoundedCertified;
  std::optional<TreeNode> prefix;
  std::size_t explored = 0;
};

struct ProbeLimits {
  /// Explored-node cap; exceeding it raises BudgetExceeded.
  std::size_t max_nodes = 1'000'000;
  /// Children sampled from a cofinite set (the smallest admitted entries).
  std::size_t cofinite_sample = 2;
};

/// Depth-first exploration up to `depth`. Throws BudgetExceeded when depth
/// exceeds the tree's depth budget or the node cap is hit.
[[nodiscard]] ProbeVerdict probe_wf(const LazyTree& tree, std::size_t depth,
                                    const ProbeLimits& limits = {});

} // namespace bairelab
