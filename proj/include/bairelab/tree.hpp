#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "bairelab/error.hpp"

namespace bairelab {

/// A finite tuple of naturals. The default ordering is lexicographic, which
/// places every node before its proper extensions (preorder of the full tree).
class TreeNode {
public:
  using Entry = std::uint32_t;
  static constexpr std::size_t kMaxDepth = std::size_t{1} << 16;

  TreeNode() = default;
  explicit TreeNode(std::vector<Entry> entries);
  TreeNode(std::initializer_list<Entry> entries);

  [[nodiscard]] std::size_t length() const noexcept { return entries_.size(); }
  [[nodiscard]] bool is_root() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::span<const Entry> entries() const noexcept { return {entries_.data(), entries_.size()}; }
  [[nodiscard]] Entry operator[](std::size_t i) const { return entries_[i]; }

  /// s_{|i}: the first i entries.
  [[nodiscard]] TreeNode prefix(std::size_t i) const;
  [[nodiscard]] TreeNode parent() const;
  [[nodiscard]] TreeNode child(Entry k) const;
  [[nodiscard]] TreeNode concat(const TreeNode& tail) const;

  /// s <= t in the extension order.
  [[nodiscard]] bool is_prefix_of(const TreeNode& other) const noexcept;
  /// s < t in the extension order.
  [[nodiscard]] bool is_proper_prefix_of(const TreeNode& other) const noexcept;
  [[nodiscard]] bool comparable_with(const TreeNode& other) const noexcept;

  /// "()" for the root, "(0,1)" otherwise.
  [[nodiscard]] std::string to_string() const;

  friend std::strong_ordering operator<=>(const TreeNode& a, const TreeNode& b) noexcept {
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                  b.entries_.end());
  }
  friend bool operator==(const TreeNode& a, const TreeNode& b) noexcept {
    return std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end());
  }

private:
  // Nodes of the trees handled here are short; inline storage keeps copies
  // of them off the heap.
  boost::container::small_vector<Entry, 8> entries_;
};

/// Shorter nodes first, lexicographic within a length.
[[nodiscard]] bool length_lex_less(const TreeNode& a, const TreeNode& b) noexcept;

class PrefixClosureError : public Error {
public:
  PrefixClosureError(TreeNode node, TreeNode missing)
      : Error(ErrorCode::PrefixClosureViolation,
              "node " + node.to_string() + " is missing its prefix " + missing.to_string()),
        node_(std::move(node)), missing_(std::move(missing)) {}

  [[nodiscard]] const TreeNode& node() const noexcept { return node_; }
  [[nodiscard]] const TreeNode& missing_prefix() const noexcept { return missing_; }

private:
  TreeNode node_;
  TreeNode missing_;
};

/// A finite prefix-closed set of nodes.
///
/// Nodes are indexed in lexicographic order, so the root (when present) has
/// index 0 and the descendants of node i occupy the index range
/// [i, subtree_end(i)).
class FiniteTree {
public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  FiniteTree() = default;

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }
  [[nodiscard]] std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  [[nodiscard]] const TreeNode& node(std::size_t i) const { return nodes_[i]; }
  [[nodiscard]] std::optional<std::size_t> index_of(const TreeNode& node) const;
  [[nodiscard]] bool contains(const TreeNode& node) const { return index_of(node).has_value(); }

  [[nodiscard]] std::size_t parent(std::size_t i) const { return parent_[i]; }
  [[nodiscard]] std::span<const std::size_t> children(std::size_t i) const {
    return {child_list_.data() + child_offsets_[i], child_offsets_[i + 1] - child_offsets_[i]};
  }
  [[nodiscard]] std::size_t subtree_end(std::size_t i) const { return subtree_end_[i]; }
  [[nodiscard]] bool is_descendant_or_self(std::size_t ancestor, std::size_t node) const {
    return ancestor <= node && node < subtree_end_[ancestor];
  }
  [[nodiscard]] std::size_t depth(std::size_t i) const { return nodes_[i].length(); }

  /// Canonical interchange order.
  [[nodiscard]] std::vector<TreeNode> nodes_length_lex() const;

  friend bool operator==(const FiniteTree& a, const FiniteTree& b) { return a.nodes_ == b.nodes_; }

private:
  friend FiniteTree make_tree(std::vector<TreeNode> node_list);
  void index();

  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> child_offsets_;
  std::vector<std::size_t> child_list_;
  std::vector<std::size_t> subtree_end_;
};

/// Deduplicates and validates prefix closure; throws PrefixClosureError.
[[nodiscard]] FiniteTree make_tree(std::vector<TreeNode> node_list);

/// T' : the nodes with a proper extension in T.
[[nodiscard]] FiniteTree derived_tree(const FiniteTree& tree);

/// Least n with T^n empty. For a finite tree this is one more than the
/// longest node length (each derivation strips exactly the current leaves).
[[nodiscard]] std::size_t order_index(const FiniteTree& tree);

/// T(k) = { s : (k)^s in T }.
[[nodiscard]] FiniteTree subtree_at(const FiniteTree& tree, TreeNode::Entry k);

/// T_k = { s in T : (k) <= s }, in lexicographic order. Not a tree: the
/// root is never a member.
[[nodiscard]] std::vector<TreeNode> restricted_at(const FiniteTree& tree, TreeNode::Entry k);

/// The chain { u : min_node <= u <= max_node }, stored by its endpoints.
struct Segment {
  TreeNode min_node;
  TreeNode max_node;

  /// Throws InvalidSegment unless min_node <= max_node.
  static Segment make(TreeNode min_node, TreeNode max_node);

  [[nodiscard]] bool contains(const TreeNode& node) const noexcept {
    return min_node.is_prefix_of(node) && node.is_prefix_of(max_node);
  }
  [[nodiscard]] std::size_t length() const noexcept {
    return max_node.length() - min_node.length() + 1;
  }
  /// Member nodes from min to max.
  [[nodiscard]] std::vector<TreeNode> chain() const;
  [[nodiscard]] bool valid_in(const FiniteTree& tree) const {
    return min_node.is_prefix_of(max_node) && tree.contains(max_node);
  }

  friend auto operator<=>(const Segment&, const Segment&) = default;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Totally ordered and order-convex within T. Throws InvalidParameter when
/// some member of the set is not a node of T.
[[nodiscard]] bool is_segment(const FiniteTree& tree, std::span<const TreeNode> node_set);

/// No node of one segment is comparable with a node of the other. Decided
/// through the minimum nodes: two chains hanging below incomparable minima
/// cannot meet, and comparable minima put the lower one's chain through the
/// other one's minimum.
[[nodiscard]] bool segments_incomparable(const Segment& first, const Segment& second);

namespace family {
struct FullKary {
  std::uint32_t k;
  std::uint32_t d;
};
struct Spine {
  std::uint32_t d;
};
struct Random {
  std::size_t n;
  std::uint64_t seed;
};
} // namespace family

using TreeFamily = std::variant<family::FullKary, family::Spine, family::Random>;

/// Deterministic tree corpora. random(n, seed) starts from the root and
/// repeatedly picks an existing node uniformly (see uniform_below) and gives
/// it a new child whose entry is the node's current child count.
[[nodiscard]] FiniteTree generate_tree(const TreeFamily& spec);

} // namespace bairelab
