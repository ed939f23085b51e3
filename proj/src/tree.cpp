#include "bairelab/tree.hpp"

#include <algorithm>
#include <stdexcept>

#include "bairelab/random.hpp"

namespace bairelab {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  std::uint64_t r = rng();
  while (r > limit) r = rng();
  return r % bound;
}

TreeNode::TreeNode(std::vector<Entry> entries) : entries_(entries.begin(), entries.end()) {
  if (entries_.size() > kMaxDepth) {
    throw Error(ErrorCode::InvalidParameter, "node depth exceeds 2^16");
  }
}

TreeNode::TreeNode(std::initializer_list<Entry> entries) : entries_(entries) {}

TreeNode TreeNode::prefix(std::size_t i) const {
  TreeNode out;
  out.entries_.assign(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(std::min(i, entries_.size())));
  return out;
}

TreeNode TreeNode::parent() const {
  if (entries_.empty()) throw std::logic_error("root has no parent");
  return prefix(entries_.size() - 1);
}

TreeNode TreeNode::child(Entry k) const {
  if (entries_.size() >= kMaxDepth) {
    throw Error(ErrorCode::InvalidParameter, "node depth exceeds 2^16");
  }
  TreeNode out = *this;
  out.entries_.push_back(k);
  return out;
}

TreeNode TreeNode::concat(const TreeNode& tail) const {
  std::vector<Entry> joined(entries_.begin(), entries_.end());
  joined.insert(joined.end(), tail.entries_.begin(), tail.entries_.end());
  return TreeNode(std::move(joined));
}

bool TreeNode::is_prefix_of(const TreeNode& other) const noexcept {
  return entries_.size() <= other.entries_.size() &&
         std::equal(entries_.begin(), entries_.end(), other.entries_.begin());
}

bool TreeNode::is_proper_prefix_of(const TreeNode& other) const noexcept {
  return entries_.size() < other.entries_.size() && is_prefix_of(other);
}

bool TreeNode::comparable_with(const TreeNode& other) const noexcept {
  return is_prefix_of(other) || other.is_prefix_of(*this);
}

std::string TreeNode::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(entries_[i]);
  }
  out += ')';
  return out;
}

bool length_lex_less(const TreeNode& a, const TreeNode& b) noexcept {
  if (a.length() != b.length()) return a.length() < b.length();
  return a < b;
}

std::optional<std::size_t> FiniteTree::index_of(const TreeNode& node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::vector<TreeNode> FiniteTree::nodes_length_lex() const {
  std::vector<TreeNode> out = nodes_;
  std::stable_sort(out.begin(), out.end(), length_lex_less);
  return out;
}

void FiniteTree::index() {
  const std::size_t n = nodes_.size();
  parent_.assign(n, npos);
  subtree_end_.assign(n, n);
  std::vector<std::size_t> child_count(n, 0);
  // Preorder walk with an explicit ancestor stack.
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    while (!stack.empty() && !nodes_[stack.back()].is_proper_prefix_of(nodes_[i])) {
      subtree_end_[stack.back()] = i;
      stack.pop_back();
    }
    if (!stack.empty()) {
      parent_[i] = stack.back();
      ++child_count[stack.back()];
    }
    stack.push_back(i);
  }
  child_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) child_offsets_[i + 1] = child_offsets_[i] + child_count[i];
  child_list_.assign(child_offsets_[n], 0);
  std::vector<std::size_t> fill(child_offsets_.begin(), child_offsets_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (parent_[i] != npos) child_list_[fill[parent_[i]]++] = i;
  }
}

FiniteTree make_tree(std::vector<TreeNode> node_list) {
  std::sort(node_list.begin(), node_list.end());
  node_list.erase(std::unique(node_list.begin(), node_list.end()), node_list.end());
  // In lexicographic order the parent of a node, when present, sorts before
  // it, so a binary search per node suffices.
  for (const TreeNode& node : node_list) {
    if (node.is_root()) continue;
    TreeNode parent = node.parent();
    // The parent is the longest missing prefix of a node whose closure fails.
    if (!std::binary_search(node_list.begin(), node_list.end(), parent)) throw PrefixClosureError(node, parent);
  }
  FiniteTree tree;
  tree.nodes_ = std::move(node_list);
  tree.index();
  return tree;
}

FiniteTree derived_tree(const FiniteTree& tree) {
  // A node has a proper extension in a prefix-closed set iff it has a child.
  std::vector<TreeNode> kept;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (!tree.children(i).empty()) kept.push_back(tree.node(i));
  }
  return make_tree(std::move(kept));
}

std::size_t order_index(const FiniteTree& tree) {
  std::size_t longest = 0;
  if (tree.empty()) return 0;
  for (const TreeNode& node : tree.nodes()) longest = std::max(longest, node.length());
  return longest + 1;
}

FiniteTree subtree_at(const FiniteTree& tree, TreeNode::Entry k) {
  auto start = tree.index_of(TreeNode{k});
  if (!start) return {};
  std::vector<TreeNode> out;
  out.reserve(tree.subtree_end(*start) - *start);
  for (std::size_t i = *start; i < tree.subtree_end(*start); ++i) {
    const auto& e = tree.node(i).entries();
    out.emplace_back(std::vector<TreeNode::Entry>(e.begin() + 1, e.end()));
  }
  return make_tree(std::move(out));
}

std::vector<TreeNode> restricted_at(const FiniteTree& tree, TreeNode::Entry k) {
  auto start = tree.index_of(TreeNode{k});
  if (!start) return {};
  return {tree.nodes().begin() + static_cast<std::ptrdiff_t>(*start),
          tree.nodes().begin() + static_cast<std::ptrdiff_t>(tree.subtree_end(*start))};
}

Segment Segment::make(TreeNode min_node, TreeNode max_node) {
  if (!min_node.is_prefix_of(max_node)) {
    throw Error(ErrorCode::InvalidSegment,
                "segment endpoints " + min_node.to_string() + " and " + max_node.to_string() +
                    " are not ordered");
  }
  return Segment{std::move(min_node), std::move(max_node)};
}

std::vector<TreeNode> Segment::chain() const {
  std::vector<TreeNode> out;
  for (std::size_t i = min_node.length(); i <= max_node.length(); ++i) out.push_back(max_node.prefix(i));
  return out;
}

bool is_segment(const FiniteTree& tree, std::span<const TreeNode> node_set) {
  std::vector<TreeNode> members(node_set.begin(), node_set.end());
  for (const TreeNode& node : members) {
    if (!tree.contains(node)) {
      throw Error(ErrorCode::InvalidParameter, "node " + node.to_string() + " is not in the tree");
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) return true;
  // Totally ordered: in lexicographic order each member is a prefix of the next.
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (!members[i - 1].is_prefix_of(members[i])) return false;
  }
  // Order-convex: every node between the extremes is a member, i.e. lengths
  // are consecutive.
  return members.back().length() - members.front().length() + 1 == members.size();
}

bool segments_incomparable(const Segment& first, const Segment& second) {
  return !first.min_node.comparable_with(second.min_node);
}

FiniteTree generate_tree(const TreeFamily& spec) {
  return std::visit(
      [](const auto& f) -> FiniteTree {
        using F = std::decay_t<decltype(f)>;
        std::vector<TreeNode> nodes;
        if constexpr (std::is_same_v<F, family::FullKary>) {
          if (f.k == 0) throw Error(ErrorCode::InvalidParameter, "full_kary requires k >= 1");
          if (f.d >= TreeNode::kMaxDepth) throw Error(ErrorCode::InvalidParameter, "depth exceeds 2^16");
          std::vector<TreeNode> level{TreeNode{}};
          nodes.push_back(TreeNode{});
          for (std::uint32_t depth = 0; depth < f.d; ++depth) {
            std::vector<TreeNode> next;
            for (const TreeNode& node : level) {
              for (std::uint32_t c = 0; c < f.k; ++c) next.push_back(node.child(c));
            }
            nodes.insert(nodes.end(), next.begin(), next.end());
            level = std::move(next);
            if (nodes.size() > (std::size_t{1} << 26)) {
              throw Error(ErrorCode::InvalidParameter, "full_kary tree too large");
            }
          }
        } else if constexpr (std::is_same_v<F, family::Spine>) {
          if (f.d >= TreeNode::kMaxDepth) throw Error(ErrorCode::InvalidParameter, "depth exceeds 2^16");
          TreeNode node;
          nodes.push_back(node);
          for (std::uint32_t depth = 0; depth < f.d; ++depth) {
            node = node.child(0);
            nodes.push_back(node);
          }
        } else {
          if (f.n == 0) return {};
          Rng rng(f.seed);
          nodes.push_back(TreeNode{});
          std::vector<TreeNode::Entry> child_count{0};
          while (nodes.size() < f.n) {
            auto pick = static_cast<std::size_t>(uniform_below(rng, nodes.size()));
            nodes.push_back(nodes[pick].child(child_count[pick]++));
            child_count.push_back(0);
          }
        }
        return make_tree(std::move(nodes));
      },
      spec);
}

} // namespace bairelab
