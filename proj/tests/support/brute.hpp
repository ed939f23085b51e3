#pragma once

// Definitional reference implementations. They work on plain node lists and
// share no code with the library beyond TreeNode and Rational: every
// quantity is computed by scanning pairs or enumerating families literally.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "bairelab/basis.hpp"
#include "bairelab/rational.hpp"
#include "bairelab/tree.hpp"

namespace bairelab::brute {

inline bool le(const TreeNode& s, const TreeNode& t) {
  if (s.length() > t.length()) return false;
  for (std::size_t i = 0; i < s.length(); ++i) {
    if (s[i] != t[i]) return false;
  }
  return true;
}

inline bool lt(const TreeNode& s, const TreeNode& t) { return s.length() < t.length() && le(s, t); }

inline std::vector<TreeNode> sorted(std::vector<TreeNode> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// { s in T : exists t in T with s < t }.
inline std::vector<TreeNode> derived(const std::vector<TreeNode>& t) {
  std::vector<TreeNode> out;
  for (const auto& s : t) {
    for (const auto& u : t) {
      if (lt(s, u)) {
        out.push_back(s);
        break;
      }
    }
  }
  return sorted(out);
}

inline std::size_t order_index(std::vector<TreeNode> t) {
  std::size_t n = 0;
  while (!t.empty()) {
    t = derived(t);
    ++n;
  }
  return n;
}

/// { s : (k)^s in T }.
inline std::vector<TreeNode> subtree_at(const std::vector<TreeNode>& t, TreeNode::Entry k) {
  std::vector<TreeNode> out;
  for (const auto& u : t) {
    if (u.length() >= 1 && u[0] == k) {
      std::vector<TreeNode::Entry> tail(u.entries().begin() + 1, u.entries().end());
      out.emplace_back(std::move(tail));
    }
  }
  return sorted(out);
}

inline bool prefix_closed(const std::vector<TreeNode>& t) {
  for (const auto& u : t) {
    for (std::size_t i = 0; i < u.length(); ++i) {
      if (std::find(t.begin(), t.end(), u.prefix(i)) == t.end()) return false;
    }
  }
  return true;
}

/// A segment as its explicit member set.
using Chain = std::vector<TreeNode>;

/// Every nonempty totally ordered, order-convex subset of T.
inline std::vector<Chain> all_segments(const std::vector<TreeNode>& t) {
  std::vector<Chain> out;
  for (const auto& a : t) {
    for (const auto& b : t) {
      if (!le(a, b)) continue;
      Chain c;
      for (const auto& u : t) {
        if (le(a, u) && le(u, b)) c.push_back(u);
      }
      out.push_back(sorted(c));
    }
  }
  return out;
}

/// No member of one chain is comparable with a member of the other.
inline bool completely_incomparable(const Chain& a, const Chain& b) {
  for (const auto& s : a) {
    for (const auto& u : b) {
      if (le(s, u) || le(u, s)) return false;
    }
  }
  return true;
}

using Coeffs = std::map<TreeNode, Rational>;

/// ||block||_E^p for p in {1, 2}; l2 is only paired with p = 2.
inline Rational block_power(const Chain& c, const Coeffs& x, BasisKind kind, unsigned p) {
  Rational acc(0);
  for (const auto& u : c) {
    auto it = x.find(u);
    if (it == x.end()) continue;
    const Rational a = abs(it->second);
    if (kind == BasisKind::Lp1) acc += a;
    if (kind == BasisKind::Lp2) acc += a * a;
    if (kind == BasisKind::C0 && a > acc) acc = a;
  }
  return kind == BasisKind::Lp2 ? acc : pow(acc, p);
}

/// max over families of pairwise completely incomparable segments of
/// sum ||block||^p. The empty family gives 0.
inline Rational norm_power(const std::vector<TreeNode>& t, const Coeffs& x, BasisKind kind, unsigned p) {
  const auto segs = all_segments(t);
  std::vector<Rational> val;
  for (const auto& s : segs) val.push_back(block_power(s, x, kind, p));
  Rational best(0);
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t from, const Rational& acc) -> void {
    if (acc > best) best = acc;
    for (std::size_t i = from; i < segs.size(); ++i) {
      bool ok = true;
      for (std::size_t j : chosen) ok = ok && completely_incomparable(segs[i], segs[j]);
      if (!ok) continue;
      chosen.push_back(i);
      self(self, i + 1, acc + val[i]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Rational(0));
  return best;
}

/// max over single segments of ||block||_E (squared for l2).
inline Rational norm_zero_base(const std::vector<TreeNode>& t, const Coeffs& x, BasisKind kind) {
  Rational best(0);
  for (const auto& s : all_segments(t)) {
    const Rational v = block_power(s, x, kind, 1);
    if (v > best) best = v;
  }
  return best;
}

} // namespace bairelab::brute
