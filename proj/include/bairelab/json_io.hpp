#pragma once

#include <json.hpp>

#include "bairelab/baire.hpp"
#include "bairelab/checkers.hpp"
#include "bairelab/identities.hpp"
#include "bairelab/lazy_tree.hpp"
#include "bairelab/step_l1.hpp"

namespace bairelab::json_io {

using Json = nlohmann::json;

/// Readers throw Error(ValidationError) on malformed documents and let the
/// library's own errors (PrefixClosureViolation, ...) through.

[[nodiscard]] Rational rational_from(const Json& j);
[[nodiscard]] Json rational_to(const Rational& r);

[[nodiscard]] TreeNode node_from(const Json& j);
[[nodiscard]] Json node_to(const TreeNode& node);

/// {"nodes": [[...], ...]} in length-lexicographic order.
[[nodiscard]] FiniteTree tree_from(const Json& j);
[[nodiscard]] Json tree_to(const FiniteTree& tree);

/// {"tree": {...}, "entries": [{"node": [...], "coef": "p/q"}, ...]}.
[[nodiscard]] BaireVector vector_from(const Json& j);
[[nodiscard]] Json vector_to(const BaireVector& x);
/// Entries only, on a given tree.
[[nodiscard]] BaireVector entries_from(const Json& entries, std::shared_ptr<const FiniteTree> tree);
[[nodiscard]] Json entries_to(const BaireVector& x);

[[nodiscard]] Json segment_to(const Segment& s);
[[nodiscard]] Json norm_value_to(const NormValue& v);
/// {"approx": number, "exact": {"power_base", "inv_exp"} | null, "witness": [...]}.
[[nodiscard]] Json norm_result_to(const NormResult& r);

/// {"resolution": k, "values": [...]} up to resolution 8, otherwise
/// {"resolution": k, "runs": [{"start": i, "value": "p/q"}, ...]}. Both
/// forms are accepted on input.
[[nodiscard]] DyadicStep step_from(const Json& j);
[[nodiscard]] Json step_to(const DyadicStep& f);
/// {"K": K, "levels": [[step, ...], ...]}.
[[nodiscard]] BushLevels bush_from(const Json& j);
[[nodiscard]] Json bush_to(const BushLevels& b);

/// Baire family: {"context": {"basis": "l1", "p": "1"}, "tree": {...},
/// "vectors": [[entry, ...], ...]}. Step family: {"context": "l1-step",
/// "vectors": [step, ...]}.
[[nodiscard]] VectorFamily family_from(const Json& j);
[[nodiscard]] Json family_to(const VectorFamily& f);

[[nodiscard]] Json verdict_to(const Verdict& v);
[[nodiscard]] Json check_report_to(const CheckReport& r);
[[nodiscard]] Json convex_block_to(const ConvexBlockResult& r);
[[nodiscard]] Json probe_to(const ProbeVerdict& v);

/// Compact single-line dump; keys come out sorted.
[[nodiscard]] std::string dump(const Json& j);

} // namespace bairelab::json_io
