#include "bairelab/json_io.hpp"

#include <cmath>
#include <limits>

#include "bairelab/error.hpp"

namespace bairelab::json_io {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::ValidationError, message);
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), std::string("expected an object with field \"") + key + "\"");
  auto it = j.find(key);
  require(it != j.end(), std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t natural_from(const Json& j, const char* what) {
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0),
          std::string(what) + " must be a natural number");
  return j.get<std::uint64_t>();
}

constexpr unsigned kDenseStepLimit = 8;

} // namespace

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  require(j.is_string(), "rationals are written as \"p/q\" strings");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }
}

Json rational_to(const Rational& r) { return r.to_string(); }

TreeNode node_from(const Json& j) {
  require(j.is_array(), "a node is an array of naturals");
  require(j.size() <= TreeNode::kMaxDepth, "node longer than the depth bound");
  std::vector<TreeNode::Entry> entries;
  entries.reserve(j.size());
  for (const auto& e : j) {
    const std::uint64_t v = natural_from(e, "a node entry");
    require(v <= std::numeric_limits<TreeNode::Entry>::max(), "node entry exceeds 2^32-1");
    entries.push_back(static_cast<TreeNode::Entry>(v));
  }
  return TreeNode(std::move(entries));
}

Json node_to(const TreeNode& node) {
  Json out = Json::array();
  for (TreeNode::Entry e : node.entries()) out.push_back(e);
  return out;
}

FiniteTree tree_from(const Json& j) {
  const Json& nodes = field(j, "nodes");
  require(nodes.is_array(), "\"nodes\" must be an array");
  std::vector<TreeNode> list;
  list.reserve(nodes.size());
  for (const auto& n : nodes) list.push_back(node_from(n));
  return make_tree(std::move(list));
}

Json tree_to(const FiniteTree& tree) {
  Json nodes = Json::array();
  for (const auto& n : tree.nodes_length_lex()) nodes.push_back(node_to(n));
  return Json{{"nodes", std::move(nodes)}};
}

BaireVector entries_from(const Json& entries, std::shared_ptr<const FiniteTree> tree) {
  require(entries.is_array(), "\"entries\" must be an array");
  std::vector<std::pair<TreeNode, Rational>> coeffs;
  for (const auto& e : entries) coeffs.emplace_back(node_from(field(e, "node")), rational_from(field(e, "coef")));
  return BaireVector::from_nodes(std::move(tree), std::move(coeffs));
}

Json entries_to(const BaireVector& x) {
  Json out = Json::array();
  for (const auto& [index, coef] : x.entries()) {
    out.push_back(Json{{"node", node_to(x.tree().node(index))}, {"coef", rational_to(coef)}});
  }
  return out;
}

BaireVector vector_from(const Json& j) {
  auto tree = std::make_shared<const FiniteTree>(tree_from(field(j, "tree")));
  return entries_from(field(j, "entries"), std::move(tree));
}

Json vector_to(const BaireVector& x) { return Json{{"tree", tree_to(x.tree())}, {"entries", entries_to(x)}}; }

Json segment_to(const Segment& s) { return Json{{"min", node_to(s.min_node)}, {"max", node_to(s.max_node)}}; }

Json norm_value_to(const NormValue& v) {
  Json out;
  const double approx = v.to_double();
  out["approx"] = std::isfinite(approx) ? Json(approx) : Json(nullptr);
  if (v.is_exact()) {
    out["exact"] = Json{{"power_base", rational_to(v.exact_repr().power_base)},
                        {"inv_exp", rational_to(v.exact_repr().inv_exp)}};
  } else {
    out["exact"] = nullptr;
  }
  return out;
}

Json norm_result_to(const NormResult& r) {
  Json out = norm_value_to(r.value);
  Json witness = Json::array();
  for (const auto& s : r.witness) witness.push_back(segment_to(s));
  out["witness"] = std::move(witness);
  return out;
}

DyadicStep step_from(const Json& j) {
  const std::uint64_t resolution = natural_from(field(j, "resolution"), "\"resolution\"");
  require(resolution <= DyadicStep::kMaxResolution, "resolution too large");
  require(j.contains("values") != j.contains("runs"), "a step function has exactly one of \"values\" or \"runs\"");
  if (j.contains("values")) {
    const Json& values = j["values"];
    require(values.is_array() && values.size() == (std::uint64_t{1} << resolution),
            "\"values\" must list 2^resolution rationals");
    std::vector<Rational> vs;
    for (const auto& v : values) vs.push_back(rational_from(v));
    return DyadicStep::from_values(vs);
  }
  const Json& runs = j["runs"];
  require(runs.is_array(), "\"runs\" must be an array");
  std::vector<DyadicStep::Run> rs;
  for (const auto& r : runs) {
    rs.push_back(DyadicStep::Run{natural_from(field(r, "start"), "\"start\""), rational_from(field(r, "value"))});
  }
  try {
    return DyadicStep::from_runs(static_cast<unsigned>(resolution), std::move(rs));
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }
}

Json step_to(const DyadicStep& f) {
  Json out{{"resolution", f.resolution()}};
  if (f.resolution() <= kDenseStepLimit) {
    Json values = Json::array();
    for (const auto& v : f.values()) values.push_back(rational_to(v));
    out["values"] = std::move(values);
  } else {
    Json runs = Json::array();
    for (const auto& r : f.runs()) runs.push_back(Json{{"start", r.start}, {"value", rational_to(r.value)}});
    out["runs"] = std::move(runs);
  }
  return out;
}

BushLevels bush_from(const Json& j) {
  const std::uint64_t K = natural_from(field(j, "K"), "\"K\"");
  const Json& levels = field(j, "levels");
  require(levels.is_array() && levels.size() == K + 1, "\"levels\" must hold K+1 levels");
  BushLevels bush;
  for (const auto& level : levels) {
    require(level.is_array(), "each level is an array of step functions");
    std::vector<DyadicStep> fs;
    for (const auto& f : level) fs.push_back(step_from(f));
    bush.levels.push_back(std::move(fs));
  }
  try {
    bush.validate_shape();
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }
  return bush;
}

Json bush_to(const BushLevels& b) {
  Json levels = Json::array();
  for (const auto& level : b.levels) {
    Json fs = Json::array();
    for (const auto& f : level) fs.push_back(step_to(f));
    levels.push_back(std::move(fs));
  }
  return Json{{"K", b.K()}, {"levels", std::move(levels)}};
}

VectorFamily family_from(const Json& j) {
  const Json& context = field(j, "context");
  const Json& vectors = field(j, "vectors");
  require(vectors.is_array() && !vectors.empty(), "\"vectors\" must be a nonempty array");
  if (context.is_string()) {
    require(context.get<std::string>() == "l1-step", "unknown family context");
    std::vector<DyadicStep> fs;
    for (const auto& f : vectors) fs.push_back(step_from(f));
    return VectorFamily::steps(std::move(fs));
  }
  const Json& basis = field(context, "basis");
  const Json& p = field(context, "p");
  require(basis.is_string(), "\"basis\" must be a string");
  require(p.is_string() || p.is_number_integer(), "\"p\" must be a rational");
  BasisKind kind = parse_basis_tag(basis.get<std::string>());
  ExponentP exponent = ExponentP::parse(p.is_string() ? p.get<std::string>() : std::to_string(p.get<std::int64_t>()));
  auto tree = std::make_shared<const FiniteTree>(tree_from(field(j, "tree")));
  std::vector<BaireVector> xs;
  for (const auto& v : vectors) xs.push_back(entries_from(v, tree));
  return VectorFamily::baire(std::move(xs), kind, std::move(exponent));
}

Json family_to(const VectorFamily& f) {
  Json vectors = Json::array();
  if (!f.is_baire()) {
    for (const auto& s : f.step_vectors()) vectors.push_back(step_to(s));
    return Json{{"context", "l1-step"}, {"vectors", std::move(vectors)}};
  }
  const auto& ctx = std::get<BaireContext>(f.context());
  for (const auto& x : f.baire_vectors()) vectors.push_back(entries_to(x));
  return Json{{"context", Json{{"basis", std::string(basis_tag(ctx.kind))}, {"p", ctx.p.to_string()}}},
              {"tree", tree_to(f.baire_vectors()[0].tree())},
              {"vectors", std::move(vectors)}};
}

Json verdict_to(const Verdict& v) {
  Json out{{"status", status_name(v.status)}, {"tested", v.tested}};
  if (!v.witness) {
    out["witness"] = nullptr;
    return out;
  }
  const Witness& w = *v.witness;
  Json coefficients = Json::array();
  for (const auto& c : w.coefficients) coefficients.push_back(rational_to(c));
  Json labels = Json::object();
  for (const auto& [k, val] : w.labels) labels[k] = val;
  out["witness"] = Json{{"kind", w.kind},
                        {"indices", w.indices},
                        {"coefficients", std::move(coefficients)},
                        {"value", w.value ? norm_value_to(*w.value) : Json(nullptr)},
                        {"labels", std::move(labels)}};
  return out;
}

Json check_report_to(const CheckReport& r) {
  return Json{{"status", r.pass ? "pass" : "fail"},
              {"identity", r.identity},
              {"lhs", norm_value_to(r.lhs)},
              {"rhs", norm_value_to(r.rhs)}};
}

Json convex_block_to(const ConvexBlockResult& r) {
  Json coefficients = Json::array();
  for (const auto& c : r.coefficients) coefficients.push_back(rational_to(c));
  return Json{{"coefficients", std::move(coefficients)},
              {"value", norm_value_to(r.value)},
              {"certified", r.certified},
              {"functionals", r.functionals}};
}

Json probe_to(const ProbeVerdict& v) {
  const char* kind = "well_founded_certified";
  if (v.kind == ProbeVerdict::Kind::BranchCandidate) kind = "branch_candidate";
  if (v.kind == ProbeVerdict::Kind::Unresolved) kind = "unresolved";
  return Json{{"verdict", kind},
              {"prefix", v.prefix ? node_to(*v.prefix) : Json(nullptr)},
              {"explored", v.explored}};
}

std::string dump(const Json& j) { return j.dump(); }

} // namespace bairelab::json_io
