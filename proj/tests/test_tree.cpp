#include <doctest.h>

#include "bairelab/lazy_tree.hpp"
#include "bairelab/random.hpp"
#include "bairelab/tree.hpp"
#include "helpers.hpp"
#include "support/brute.hpp"
#include "support/corpus.hpp"

using namespace bairelab;
using bairelab::testing::error_of;
using bairelab::testing::node_list;
using bairelab::testing::tree_of;

namespace {

const std::vector<TreeNode> kFourNodes{{}, {0}, {1}, {0, 0}};

} // namespace

TEST_CASE("make_tree accepts prefix-closed sets and collapses duplicates") {
  CHECK(tree_of({{}, {0}, {1}}).size() == 3);
  CHECK(tree_of({{}, {}, {0}}).size() == 2);
  CHECK(tree_of({}).empty());
}

TEST_CASE("make_tree reports the first missing prefix") {
  try {
    (void)make_tree({{0, 1}});
    FAIL("expected PrefixClosureViolation");
  } catch (const PrefixClosureError& e) {
    CHECK(e.code() == ErrorCode::PrefixClosureViolation);
    CHECK(e.node() == TreeNode{0, 1});
    CHECK(e.missing_prefix() == TreeNode{0});
  }
}

TEST_CASE("derived_tree examples") {
  // Frozen from the pair scan in brute::derived.
  CHECK(brute::derived(kFourNodes) == std::vector<TreeNode>{{}, {0}});
  CHECK(node_list(derived_tree(tree_of(kFourNodes))) == std::vector<TreeNode>{{}, {0}});
  CHECK(derived_tree(tree_of({{}})).empty());
  CHECK(derived_tree(FiniteTree{}).empty());
}

TEST_CASE("order_index examples") {
  CHECK(order_index(tree_of({{}})) == 1);
  CHECK(order_index(FiniteTree{}) == 0);
  const FiniteTree bin = generate_tree(family::FullKary{2, 2});
  CHECK(brute::order_index(node_list(bin)) == 3);
  CHECK(order_index(bin) == 3);
}

TEST_CASE("subtree_at and restricted_at examples") {
  const FiniteTree t = tree_of(kFourNodes);
  CHECK(brute::subtree_at(kFourNodes, 0) == std::vector<TreeNode>{{}, {0}});
  CHECK(node_list(subtree_at(t, 0)) == std::vector<TreeNode>{{}, {0}});
  CHECK(brute::subtree_at(kFourNodes, 1) == std::vector<TreeNode>{{}});
  CHECK(node_list(subtree_at(t, 1)) == std::vector<TreeNode>{{}});
  CHECK(subtree_at(t, 5).empty());
  CHECK(restricted_at(t, 0) == std::vector<TreeNode>{{0}, {0, 0}});
  CHECK(restricted_at(t, 5).empty());
}

TEST_CASE("is_segment examples") {
  const FiniteTree chain = tree_of({{}, {0}, {0, 0}});
  const std::vector<TreeNode> ok{{}, {0}};
  const std::vector<TreeNode> gap{{}, {0, 0}};
  CHECK(is_segment(chain, ok));
  CHECK_FALSE(is_segment(chain, gap));
  const std::vector<TreeNode> incomparable{{0}, {1}};
  CHECK_FALSE(is_segment(tree_of(kFourNodes), incomparable));
  const std::vector<TreeNode> outside{{7}};
  CHECK(error_of([&] { (void)is_segment(chain, outside); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("segments_incomparable examples") {
  CHECK(segments_incomparable(Segment::make({0}, {0}), Segment::make({1}, {1})));
  CHECK_FALSE(segments_incomparable(Segment::make({}, {0}), Segment::make({1}, {1})));
  CHECK(segments_incomparable(Segment::make({0, 0}, {0, 0}), Segment::make({0, 1}, {0, 1})));
  CHECK(error_of([] { (void)Segment::make({1}, {0}); }) == ErrorCode::InvalidSegment);
}

TEST_CASE("generate_tree families") {
  CHECK(generate_tree(family::FullKary{2, 2}).size() == 7);
  CHECK(node_list(generate_tree(family::Spine{3})) == std::vector<TreeNode>{{}, {0}, {0, 0}, {0, 0, 0}});
  const FiniteTree r = generate_tree(family::Random{10, 42});
  CHECK(r.size() == 10);
  CHECK(brute::prefix_closed(node_list(r)));
  CHECK(generate_tree(family::Random{10, 42}) == r);
  CHECK(generate_tree(family::Random{0, 1}).empty());
  CHECK(error_of([] { (void)generate_tree(family::FullKary{0, 2}); }) == ErrorCode::InvalidParameter);
  CHECK(generate_tree(family::FullKary{1, 4}).size() == 5);
}

TEST_CASE("probe_wf examples") {
  const ProbeVerdict branch = probe_wf(LazyTree::zero_branch(10), 10);
  REQUIRE(branch.kind == ProbeVerdict::Kind::BranchCandidate);
  CHECK(*branch.prefix == TreeNode(std::vector<TreeNode::Entry>(10, 0)));
  CHECK(probe_wf(LazyTree::bounded(2, 3, 10), 10).kind == ProbeVerdict::Kind::WellFoundedCertified);
  CHECK(error_of([] { (void)probe_wf(LazyTree::zero_branch(5), 6); }) == ErrorCode::BudgetExceeded);
  CHECK(probe_wf(LazyTree::cofinite_bounded(2, 10), 10).kind == ProbeVerdict::Kind::Unresolved);
  CHECK(probe_wf(LazyTree::from_finite(generate_tree(family::Spine{3}), 10), 10).kind ==
        ProbeVerdict::Kind::WellFoundedCertified);
  CHECK(probe_wf(LazyTree::from_finite(generate_tree(family::Spine{3}), 4), 3).kind ==
        ProbeVerdict::Kind::BranchCandidate);
}

TEST_CASE("derivation, subtree and rank agree with the definitional scans on all small trees") {
  for (const FiniteTree& t : bairelab::testing::all_small_trees(6, 3)) {
    const auto nodes = node_list(t);
    const FiniteTree d = derived_tree(t);
    CHECK(node_list(d) == brute::derived(nodes));
    CHECK(brute::prefix_closed(node_list(d)));
    CHECK(order_index(t) == brute::order_index(nodes));
    for (TreeNode::Entry k = 0; k < 4; ++k) {
      const FiniteTree s = subtree_at(t, k);
      CHECK(node_list(s) == brute::subtree_at(nodes, k));
      CHECK(brute::prefix_closed(node_list(s)));
    }
  }
}

TEST_CASE("derived_tree applied order_index times empties the tree, and not earlier") {
  for (const FiniteTree& t : bairelab::testing::all_small_trees(7, 3)) {
    FiniteTree cur = t;
    const std::size_t n = order_index(t);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_FALSE(cur.empty());
      cur = derived_tree(cur);
    }
    CHECK(cur.empty());
  }
}

TEST_CASE("rank decreases at every root child") {
  for (const FiniteTree& t : bairelab::testing::all_small_trees(8, 3)) {
    if (order_index(t) <= 1) continue;
    for (std::size_t c : t.children(0)) {
      CHECK(order_index(subtree_at(t, t.node(c)[0])) < order_index(t));
    }
  }
}

TEST_CASE("rank is monotone under inclusion") {
  // Removing a leaf gives every subtree of a small tree in a few steps.
  for (const FiniteTree& t : bairelab::testing::all_small_trees(6, 3)) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t.children(i).empty()) continue;
      auto nodes = node_list(t);
      nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(i));
      CHECK(order_index(make_tree(nodes)) <= order_index(t));
    }
  }
}

TEST_CASE("full k-ary rank is depth plus one") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::uint32_t d = 0; d <= 4; ++d) {
      const FiniteTree t = generate_tree(family::FullKary{k, d});
      CHECK(order_index(t) == d + 1);
      std::size_t expected = 0;
      std::size_t level = 1;
      for (std::uint32_t i = 0; i <= d; ++i, level *= k) expected += level;
      CHECK(t.size() == expected);
    }
  }
}

TEST_CASE("segment incomparability matches the min-node test and the member scan") {
  for (const FiniteTree& t : bairelab::testing::all_small_trees(6, 2)) {
    std::vector<Segment> segs;
    for (const auto& a : t.nodes()) {
      for (const auto& b : t.nodes()) {
        if (brute::le(a, b)) segs.push_back(Segment::make(a, b));
      }
    }
    for (const auto& s : segs) {
      const auto cs = s.chain();
      CHECK(is_segment(t, cs));
      for (const auto& u : segs) {
        const bool by_members = brute::completely_incomparable(cs, u.chain());
        CHECK(segments_incomparable(s, u) == by_members);
        CHECK(by_members == !s.min_node.comparable_with(u.min_node));
      }
    }
  }
}

TEST_CASE("random trees are prefix-closed with the requested size") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FiniteTree t = generate_tree(family::Random{30, seed});
    CHECK(t.size() == 30);
    CHECK(brute::prefix_closed(node_list(t)));
  }
}

TEST_CASE("subtree ranges follow the lexicographic indexing") {
  const FiniteTree t = generate_tree(family::Random{25, 7});
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      CHECK(t.is_descendant_or_self(i, j) == brute::le(t.node(i), t.node(j)));
    }
  }
}
