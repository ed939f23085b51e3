#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <doctest.h>

#include "bairelab/baire.hpp"
#include "bairelab/error.hpp"
#include "bairelab/tree.hpp"

namespace bairelab::testing {

inline FiniteTree tree_of(std::vector<TreeNode> nodes) { return make_tree(std::move(nodes)); }

inline std::shared_ptr<const FiniteTree> shared_tree(std::vector<TreeNode> nodes) {
  return std::make_shared<const FiniteTree>(make_tree(std::move(nodes)));
}

inline std::vector<TreeNode> node_list(const FiniteTree& t) { return {t.nodes().begin(), t.nodes().end()}; }

inline BaireVector vec(const std::shared_ptr<const FiniteTree>& t,
                       std::vector<std::pair<TreeNode, Rational>> entries) {
  return BaireVector::from_nodes(t, std::move(entries));
}

/// Runs f and returns the library error code it raised, if any.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline NormValue exact(Rational base, Rational inv_exp) { return NormValue::exact(std::move(base), std::move(inv_exp)); }

} // namespace bairelab::testing
