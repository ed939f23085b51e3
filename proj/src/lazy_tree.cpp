#include "bairelab/lazy_tree.hpp"

#include <algorithm>
#include <memory>

namespace bairelab {

LazyTree LazyTree::from_finite(FiniteTree tree, std::size_t depth_budget) {
  auto shared = std::make_shared<const FiniteTree>(std::move(tree));
  return LazyTree(
      [shared](const TreeNode& node) {
        auto i = shared->index_of(node);
        if (!i) return ChildSet::none();
        std::vector<TreeNode::Entry> out;
        for (std::size_t c : shared->children(*i)) out.push_back(shared->node(c).entries().back());
        return ChildSet::finite(std::move(out));
      },
      depth_budget);
}

LazyTree LazyTree::zero_branch(std::size_t depth_budget) {
  return LazyTree(
      [](const TreeNode& node) {
        bool all_zero = std::all_of(node.entries().begin(), node.entries().end(),
                                    [](TreeNode::Entry e) { return e == 0; });
        return all_zero ? ChildSet::finite({0}) : ChildSet::none();
      },
      depth_budget);
}

LazyTree LazyTree::bounded(std::uint32_t arity, std::size_t max_length, std::size_t depth_budget) {
  return LazyTree(
      [arity, max_length](const TreeNode& node) {
        if (node.length() >= max_length) return ChildSet::none();
        std::vector<TreeNode::Entry> out(arity);
        for (std::uint32_t c = 0; c < arity; ++c) out[c] = c;
        return ChildSet::finite(std::move(out));
      },
      depth_budget);
}

LazyTree LazyTree::cofinite_bounded(std::size_t max_length, std::size_t depth_budget) {
  return LazyTree(
      [max_length](const TreeNode& node) {
        return node.length() >= max_length ? ChildSet::none() : ChildSet::all_except({});
      },
      depth_budget);
}

namespace {

struct Prober {
  const LazyTree& tree;
  std::size_t depth;
  const ProbeLimits& limits;
  std::size_t explored = 0;
  bool saw_cofinite = false;

  std::optional<TreeNode> visit(const TreeNode& node) {
    if (++explored > limits.max_nodes) {
      throw Error(ErrorCode::BudgetExceeded,
                  "exploration exceeded " + std::to_string(limits.max_nodes) + " nodes");
    }
    if (node.length() >= depth) return node;
    ChildSet set = tree.children_of(node);
    std::vector<TreeNode::Entry> children;
    if (set.kind == ChildSet::Kind::Finite) {
      children = std::move(set.entries);
      std::sort(children.begin(), children.end());
      children.erase(std::unique(children.begin(), children.end()), children.end());
    } else {
      saw_cofinite = true;
      std::sort(set.entries.begin(), set.entries.end());
      TreeNode::Entry candidate = 0;
      while (children.size() < limits.cofinite_sample) {
        if (!std::binary_search(set.entries.begin(), set.entries.end(), candidate)) {
          children.push_back(candidate);
        }
        ++candidate;
      }
    }
    for (TreeNode::Entry c : children) {
      if (auto found = visit(node.child(c))) return found;
    }
    return std::nullopt;
  }
};

} // namespace

ProbeVerdict probe_wf(const LazyTree& tree, std::size_t depth, const ProbeLimits& limits) {
  if (depth > tree.depth_budget()) {
    throw Error(ErrorCode::BudgetExceeded, "probe depth " + std::to_string(depth) +
                                               " exceeds depth budget " +
                                               std::to_string(tree.depth_budget()));
  }
  Prober prober{tree, depth, limits};
  ProbeVerdict verdict;
  if (auto found = prober.visit(TreeNode{})) {
    verdict.kind = ProbeVerdict::Kind::BranchCandidate;
    verdict.prefix = std::move(found);
  } else {
    verdict.kind = prober.saw_cofinite ? ProbeVerdict::Kind::Unresolved
                                       : ProbeVerdict::Kind::WellFoundedCertified;
  }
  verdict.explored = prober.explored;
  return verdict;
}

} // namespace bairelab
