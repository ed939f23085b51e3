#pragma once

// Seeded instance generators shared by the unit tests and the acceptance run.

#include <bit>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "bairelab/baire.hpp"
#include "bairelab/random.hpp"
#include "bairelab/tree.hpp"

namespace bairelab::testing {

/// Every prefix-closed tree with at most max_nodes nodes and entries below
/// max_entry, the empty tree included. Each node picks a subset of
/// {0..max_entry-1} as its children; nodes are expanded breadth first, so
/// every tree arises from exactly one sequence of choices.
inline std::vector<FiniteTree> all_small_trees(std::size_t max_nodes, TreeNode::Entry max_entry) {
  std::vector<FiniteTree> out;
  out.emplace_back();
  if (max_nodes == 0) return out;
  const std::uint32_t subsets = 1u << max_entry;
  struct Frame {
    std::vector<TreeNode> nodes;
    std::size_t next; // first node whose children are still undecided
  };
  std::vector<Frame> stack{{{TreeNode{}}, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.next == f.nodes.size()) {
      out.push_back(make_tree(f.nodes));
      continue;
    }
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      const auto extra = static_cast<std::size_t>(std::popcount(mask));
      if (f.nodes.size() + extra > max_nodes) continue;
      Frame g{f.nodes, f.next + 1};
      for (TreeNode::Entry e = 0; e < max_entry; ++e) {
        if (mask & (1u << e)) g.nodes.push_back(f.nodes[f.next].child(e));
      }
      stack.push_back(std::move(g));
    }
  }
  return out;
}

/// Each node independently carries a coefficient with probability 1/2: a
/// numerator in [-4, 4] over a denominator in [1, 4]. One draw per node
/// decides all three.
inline BaireVector random_vector(const std::shared_ptr<const FiniteTree>& tree, Rng& rng) {
  std::vector<BaireVector::Entry> entries;
  for (std::size_t i = 0; i < tree->size(); ++i) {
    const std::uint64_t draw = uniform_below(rng, 2 * 9 * 4);
    if (draw < 36) continue;
    const auto num = static_cast<std::int64_t>((draw - 36) % 9) - 4;
    const auto den = static_cast<std::int64_t>((draw - 36) / 9) + 1;
    if (num != 0) entries.emplace_back(i, Rational(num, den));
  }
  return BaireVector::from_indices(tree, std::move(entries));
}

inline Rational random_coefficient(Rng& rng) {
  const auto num = static_cast<std::int64_t>(uniform_below(rng, 8)) + 1;
  const auto den = static_cast<std::int64_t>(uniform_below(rng, 4)) + 1;
  return uniform_below(rng, 2) ? Rational(num, den) : Rational(-num, den);
}

/// Vectors with pairwise completely incomparable supports: an antichain of
/// anchors is drawn greedily and each vector lives below one anchor.
struct IncomparableInstance {
  std::vector<BaireVector> ys;
  std::vector<Rational> as;
};

inline IncomparableInstance incomparable_instance(Rng& rng) {
  const std::size_t n = 2 + uniform_below(rng, 24);
  auto tree = std::make_shared<const FiniteTree>(generate_tree(family::Random{n, rng()}));
  std::vector<std::size_t> order(tree->size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  std::vector<std::size_t> anchors;
  for (std::size_t i : order) {
    bool free = true;
    for (std::size_t a : anchors) free = free && !tree->node(a).comparable_with(tree->node(i));
    if (free) anchors.push_back(i);
    if (anchors.size() == 4) break;
  }
  IncomparableInstance out;
  for (std::size_t a : anchors) {
    std::vector<BaireVector::Entry> entries;
    for (std::size_t j = a; j < tree->subtree_end(a); ++j) {
      if (j == a || uniform_below(rng, 2)) entries.emplace_back(j, random_coefficient(rng));
    }
    out.ys.push_back(BaireVector::from_indices(tree, std::move(entries)));
    out.as.push_back(random_coefficient(rng));
  }
  return out;
}

/// A vector supported on the prefixes of one random node.
inline BaireVector chain_vector(Rng& rng) {
  const std::size_t n = 1 + uniform_below(rng, 24);
  auto tree = std::make_shared<const FiniteTree>(generate_tree(family::Random{n, rng()}));
  const TreeNode& leaf = tree->node(uniform_below(rng, tree->size()));
  std::vector<std::pair<TreeNode, Rational>> entries;
  for (std::size_t len = 0; len <= leaf.length(); ++len) {
    if (uniform_below(rng, 3) != 0) entries.emplace_back(leaf.prefix(len), random_coefficient(rng));
  }
  return BaireVector::from_nodes(tree, std::move(entries));
}

/// A random vector with no coefficient at the root.
inline BaireVector rootless_vector(Rng& rng) {
  const std::size_t n = 1 + uniform_below(rng, 24);
  auto tree = std::make_shared<const FiniteTree>(generate_tree(family::Random{n, rng()}));
  std::vector<BaireVector::Entry> entries;
  for (std::size_t i = 1; i < tree->size(); ++i) {
    if (uniform_below(rng, 2)) entries.emplace_back(i, random_coefficient(rng));
  }
  return BaireVector::from_indices(tree, std::move(entries));
}

/// x_k = delta_(k) for k = 1..n on the tree {(), (1), ..., (n)}.
inline std::vector<BaireVector> delta_antichain(std::size_t n) {
  std::vector<TreeNode> nodes{TreeNode{}};
  for (std::size_t k = 1; k <= n; ++k) nodes.push_back(TreeNode{static_cast<TreeNode::Entry>(k)});
  auto tree = std::make_shared<const FiniteTree>(make_tree(nodes));
  std::vector<BaireVector> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(BaireVector::from_nodes(tree, {{nodes[k], Rational(1)}}));
  return out;
}

/// m vectors x_i = +-delta_(j_i) with j_i drawn from 1..width: signed
/// unit vectors on an antichain, repeats allowed.
inline std::vector<BaireVector> signed_delta_family(Rng& rng, std::size_t m, std::size_t width) {
  const auto base = delta_antichain(width);
  std::vector<BaireVector> out;
  for (std::size_t i = 0; i < m; ++i) {
    const BaireVector& d = base[uniform_below(rng, width)];
    out.push_back(vector_combine(uniform_below(rng, 2) ? 1 : -1, d, 0, d));
  }
  return out;
}

/// m vectors, each a sum of +-delta_(j) over a random subset of 1..width.
inline std::vector<BaireVector> sign_pattern_family(Rng& rng, std::size_t m, std::size_t width) {
  const auto base = delta_antichain(width);
  std::vector<BaireVector> out;
  for (std::size_t i = 0; i < m; ++i) {
    BaireVector v(base[0].tree_ptr());
    for (const BaireVector& d : base) {
      const auto r = uniform_below(rng, 3);
      if (r != 0) v = vector_combine(1, v, r == 1 ? 1 : -1, d);
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// The (kind, p) pairs evaluated exactly by baire_norm.
inline std::vector<std::pair<BasisKind, ExponentP>> exact_pairs() {
  return {{BasisKind::Lp1, ExponentP::of(1)},
          {BasisKind::Lp1, ExponentP::of(2)},
          {BasisKind::C0, ExponentP::of(1)},
          {BasisKind::C0, ExponentP::of(2)},
          {BasisKind::Lp2, ExponentP::of(2)}};
}

} // namespace bairelab::testing
