#include "bairelab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bairelab/error.hpp"
#include "bairelab/json_io.hpp"

namespace bairelab::cli {

namespace {

using json_io::Json;

/// A file that is missing or is not JSON.
class FileError : public Error {
public:
  FileError(std::string path, std::string message, std::optional<std::size_t> byte = std::nullopt)
      : Error(ErrorCode::ParseError, message), path_(std::move(path)), byte_(byte) {}
  [[nodiscard]] const std::string& path() const noexcept { return path_; }
  [[nodiscard]] std::optional<std::size_t> byte() const noexcept { return byte_; }

private:
  std::string path_;
  std::optional<std::size_t> byte_;
};

Json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw FileError(path, path + ": " + e.what(), e.byte);
  }
}

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ValidationError, flag + " expects a rational \"p/q\", got \"" + text + "\"");
  }
}

Rational positive_flag(const std::string& flag, const std::string& text) {
  Rational r = parse_rational_flag(flag, text);
  if (r.sign() <= 0) throw Error(ErrorCode::ValidationError, flag + " must be positive");
  return r;
}

std::size_t oracle_limit() {
  const char* env = std::getenv("BAIRELAB_MAX_ORACLE_NODES");
  if (env == nullptr || *env == '\0') return kDefaultOracleNodes;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    throw Error(ErrorCode::ValidationError, "BAIRELAB_MAX_ORACLE_NODES must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

Json error_json(const Error& e) {
  Json body{{"code", error_code_name(e.code())}, {"message", e.what()}};
  if (const auto* fe = dynamic_cast<const FileError*>(&e)) {
    body["path"] = fe->path();
    body["location"] = fe->byte() ? Json(*fe->byte()) : Json(nullptr);
  }
  if (const auto* pe = dynamic_cast<const PrefixClosureError*>(&e)) {
    body["node"] = json_io::node_to(pe->node());
    body["missing_prefix"] = json_io::node_to(pe->missing_prefix());
  }
  if (const auto* se = dynamic_cast<const SupportsNotIncomparableError*>(&e)) {
    body["pair"] = {se->first_index(), se->second_index()};
    body["nodes"] = {se->first_node(), se->second_node()};
  }
  return Json{{"error", std::move(body)}};
}

struct Options {
  std::string tree;
  std::string vector;
  std::string family;
  std::string bush;
  std::string basis = "l1";
  std::string p = "1";
  std::string epsilon;
  std::string delta;
  std::string bound = "1";
  std::string out;
  std::string gen_family;
  std::string identity;
  std::string coeffs;
  std::string grid;
  std::string lazy = "finite";
  bool oracle = false;
  bool parallel = false;
  std::uint32_t k = 2;
  std::uint32_t d = 0;
  std::size_t n = 0;
  std::size_t l = 0;
  std::uint64_t seed = 0;
  unsigned K = 1;
  std::size_t times = 1;
  unsigned max_level = 2;
  std::size_t grid_max_terms = 4;
  std::size_t depth = 0;
  std::size_t budget = 0;
  std::uint32_t arity = 2;
  std::size_t max_length = 0;
  std::optional<std::string> weak_null;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

Json cmd_rank(const Options& o) { return Json{{"order_index", order_index(json_io::tree_from(read_json(o.tree)))}}; }

Json cmd_derive(const Options& o) {
  FiniteTree t = json_io::tree_from(read_json(o.tree));
  for (std::size_t i = 0; i < o.times; ++i) t = derived_tree(t);
  return json_io::tree_to(t);
}

Json cmd_norm(const Options& o) {
  BaireVector x = json_io::vector_from(read_json(o.vector));
  if (!o.tree.empty()) {
    FiniteTree t = json_io::tree_from(read_json(o.tree));
    if (!(t == x.tree())) throw Error(ErrorCode::TreeMismatch, "--tree differs from the vector's tree");
  }
  const BasisKind kind = parse_basis_tag(o.basis);
  const ExponentP p = ExponentP::parse(o.p);
  if (o.oracle) {
    if (p.is_zero()) return json_io::norm_result_to(baire_norm_zero(x, kind));
    return json_io::norm_result_to(baire_norm_oracle(x, kind, p, oracle_limit()));
  }
  return json_io::norm_result_to(evaluate_norm(x, kind, p, EvalOptions{o.parallel}));
}

Json cmd_gen(const Options& o) {
  const std::string& f = o.gen_family;
  if (f == "spine") return json_io::tree_to(generate_tree(family::Spine{o.d}));
  if (f == "full-kary") return json_io::tree_to(generate_tree(family::FullKary{o.k, o.d}));
  if (f == "random") return json_io::tree_to(generate_tree(family::Random{o.n, o.seed}));
  if (f == "rademacher-bush") return json_io::bush_to(rademacher_bush(o.K));
  if (f == "delta-antichain") {
    if (o.n == 0) throw Error(ErrorCode::InvalidParameter, "delta-antichain needs --n >= 1");
    std::vector<TreeNode> nodes{TreeNode{}};
    for (std::size_t i = 1; i <= o.n; ++i) nodes.push_back(TreeNode{static_cast<TreeNode::Entry>(i)});
    auto tree = std::make_shared<const FiniteTree>(make_tree(nodes));
    std::vector<BaireVector> xs;
    for (std::size_t i = 1; i <= o.n; ++i) xs.push_back(BaireVector::from_nodes(tree, {{nodes[i], Rational(1)}}));
    return json_io::family_to(VectorFamily::baire(std::move(xs), parse_basis_tag(o.basis), ExponentP::parse(o.p)));
  }
  throw Error(ErrorCode::InvalidParameter, "unknown family " + f);
}

Json cmd_check_bs(const Options& o) {
  VectorFamily f = json_io::family_from(read_json(o.family));
  return json_io::verdict_to(bs_obstruction_check(f, positive_flag("--epsilon", o.epsilon), CheckOptions{o.parallel}));
}

Json cmd_check_abs(const Options& o) {
  VectorFamily f = json_io::family_from(read_json(o.family));
  AbsSampler sampler;
  sampler.max_level = o.max_level;
  sampler.grid_max_terms = o.grid_max_terms;
  if (!o.grid.empty()) {
    sampler.grid.clear();
    for (const auto& g : split_list(o.grid)) sampler.grid.push_back(parse_rational_flag("--grid", g));
  }
  return json_io::verdict_to(abs_obstruction_falsify(f, positive_flag("--epsilon", o.epsilon), sampler));
}

Json cmd_check_bush(const Options& o) {
  BushLevels b = json_io::bush_from(read_json(o.bush));
  return json_io::verdict_to(bush_check(b, positive_flag("--delta", o.delta), positive_flag("--bound", o.bound)));
}

Json cmd_check_identity(const Options& o) {
  if (o.identity == "additivity") {
    if (o.family.empty()) throw Error(ErrorCode::ValidationError, "additivity needs --family");
    VectorFamily f = json_io::family_from(read_json(o.family));
    if (!f.is_baire()) throw Error(ErrorCode::ValidationError, "additivity needs a Baire family");
    const auto& ctx = std::get<BaireContext>(f.context());
    std::vector<Rational> as;
    if (o.coeffs.empty()) {
      as.assign(f.size(), Rational(1));
    } else {
      for (const auto& c : split_list(o.coeffs)) as.push_back(parse_rational_flag("--coeffs", c));
    }
    return json_io::check_report_to(check_incomparable_additivity(f.baire_vectors(), as, ctx.kind, ctx.p));
  }
  if (o.vector.empty()) throw Error(ErrorCode::ValidationError, o.identity + " needs --vector");
  BaireVector x = json_io::vector_from(read_json(o.vector));
  const BasisKind kind = parse_basis_tag(o.basis);
  const ExponentP p = ExponentP::parse(o.p);
  if (o.identity == "branch") return json_io::check_report_to(check_branch_isometry(x, kind, p));
  return json_io::check_report_to(check_root_decomposition(x, kind, p));
}

Json cmd_probe_wf(const Options& o) {
  const std::size_t budget = o.budget == 0 ? o.depth : o.budget;
  std::optional<LazyTree> tree;
  if (o.lazy == "finite") {
    if (o.tree.empty()) throw Error(ErrorCode::ValidationError, "--lazy finite needs --tree");
    tree.emplace(LazyTree::from_finite(json_io::tree_from(read_json(o.tree)), budget));
  } else if (o.lazy == "zero-branch") {
    tree.emplace(LazyTree::zero_branch(budget));
  } else if (o.lazy == "bounded") {
    tree.emplace(LazyTree::bounded(o.arity, o.max_length, budget));
  } else {
    tree.emplace(LazyTree::cofinite_bounded(o.max_length, budget));
  }
  return json_io::probe_to(probe_wf(*tree, o.depth));
}

Json cmd_block_min(const Options& o) {
  VectorFamily f = json_io::family_from(read_json(o.family));
  if (o.weak_null) return json_io::verdict_to(weak_null_probe(f, positive_flag("--weak-null", *o.weak_null)));
  return json_io::convex_block_to(convex_block_min(f, o.n, o.l));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trees on N, l_p-Baire sums and finite checkers", "bairelab"};
  app.require_subcommand(1);
  Options o;

  auto add_parallel = [&](CLI::App* c) {
    c->add_flag("--parallel", o.parallel, "Concurrent evaluation (identical output)");
  };
  const std::vector<std::string> bases{"l1", "l2", "c0"};

  auto* rank = app.add_subcommand("rank", "Order index of a finite tree");
  rank->add_option("--tree", o.tree, "Tree file")->required();
  add_parallel(rank);

  auto* derive = app.add_subcommand("derive", "Derived tree");
  derive->add_option("--tree", o.tree, "Tree file")->required();
  derive->add_option("--times", o.times, "Number of derivations")->check(CLI::NonNegativeNumber);
  add_parallel(derive);

  auto* norm = app.add_subcommand("norm", "Baire-sum norm of a vector");
  norm->add_option("--vector", o.vector, "Vector file")->required();
  norm->add_option("--tree", o.tree, "Tree file (must match the vector's tree)");
  norm->add_option("--basis", o.basis, "l1 | l2 | c0")->check(CLI::IsMember(bases));
  norm->add_option("--p", o.p, "Exponent p >= 1, or 0");
  norm->add_flag("--oracle", o.oracle, "Exhaustive evaluation");
  add_parallel(norm);

  auto* gen = app.add_subcommand("gen", "Generate a tree, bush or family");
  gen->add_option("--family", o.gen_family, "Family name")
      ->required()
      ->check(CLI::IsMember({"spine", "full-kary", "random", "rademacher-bush", "delta-antichain"}));
  gen->add_option("--k", o.k, "Arity");
  gen->add_option("--d", o.d, "Depth");
  gen->add_option("--n", o.n, "Node or vector count");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--K", o.K, "Bush levels");
  gen->add_option("--basis", o.basis, "Family basis")->check(CLI::IsMember(bases));
  gen->add_option("--p", o.p, "Family exponent");
  gen->add_option("--out", o.out, "Write the document here");
  add_parallel(gen);

  auto* check_bs = app.add_subcommand("check-bs", "Banach-Saks obstruction check");
  check_bs->add_option("--family", o.family, "Family file")->required();
  check_bs->add_option("--epsilon", o.epsilon, "Threshold")->required();
  add_parallel(check_bs);

  auto* check_abs = app.add_subcommand("check-abs", "Alternating Banach-Saks falsifier");
  check_abs->add_option("--family", o.family, "Family file")->required();
  check_abs->add_option("--epsilon", o.epsilon, "Threshold")->required();
  check_abs->add_option("--max-level", o.max_level, "Largest level l");
  check_abs->add_option("--grid", o.grid, "Comma-separated grid of rationals");
  check_abs->add_option("--grid-max-terms", o.grid_max_terms, "Grid sweep term limit");
  add_parallel(check_abs);

  auto* check_bush = app.add_subcommand("check-bush", "Rademacher bush conditions");
  check_bush->add_option("--bush", o.bush, "Bush file")->required();
  check_bush->add_option("--delta", o.delta, "delta")->required();
  check_bush->add_option("--bound", o.bound, "Norm bound");
  add_parallel(check_bush);

  auto* check_identity = app.add_subcommand("check-identity", "Exact norm identities");
  check_identity->add_option("--identity", o.identity, "additivity | branch | root")
      ->required()
      ->check(CLI::IsMember({"additivity", "branch", "root"}));
  check_identity->add_option("--family", o.family, "Family file (additivity)");
  check_identity->add_option("--coeffs", o.coeffs, "Comma-separated coefficients (additivity)");
  check_identity->add_option("--vector", o.vector, "Vector file (branch, root)");
  check_identity->add_option("--basis", o.basis, "l1 | l2 | c0")->check(CLI::IsMember(bases));
  check_identity->add_option("--p", o.p, "Exponent p >= 1");
  add_parallel(check_identity);

  auto* probe = app.add_subcommand("probe-wf", "Depth-limited well-foundedness probe");
  probe->add_option("--lazy", o.lazy, "finite | zero-branch | bounded | cofinite")
      ->check(CLI::IsMember({"finite", "zero-branch", "bounded", "cofinite"}));
  probe->add_option("--tree", o.tree, "Tree file (finite)");
  probe->add_option("--depth", o.depth, "Chain length sought")->required();
  probe->add_option("--budget", o.budget, "Depth budget (defaults to --depth)");
  probe->add_option("--arity", o.arity, "Arity (bounded)");
  probe->add_option("--max-length", o.max_length, "Longest node (bounded, cofinite)");
  add_parallel(probe);

  auto* block = app.add_subcommand("block-min", "Convex-block minimum over a window");
  block->add_option("--family", o.family, "Family file")->required();
  block->add_option("--n", o.n, "First position (0-based)");
  block->add_option("--l", o.l, "Window covers positions n..n+l");
  block->add_option("--weak-null", o.weak_null, "Run the weak-null probe at this epsilon instead");
  add_parallel(block);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json_io::dump(error_json(Error(ErrorCode::ValidationError, e.what()))) << '\n';
    return 2;
  }

  try {
    Json result;
    if (rank->parsed()) result = cmd_rank(o);
    if (derive->parsed()) result = cmd_derive(o);
    if (norm->parsed()) result = cmd_norm(o);
    if (gen->parsed()) result = cmd_gen(o);
    if (check_bs->parsed()) result = cmd_check_bs(o);
    if (check_abs->parsed()) result = cmd_check_abs(o);
    if (check_bush->parsed()) result = cmd_check_bush(o);
    if (check_identity->parsed()) result = cmd_check_identity(o);
    if (probe->parsed()) result = cmd_probe_wf(o);
    if (block->parsed()) result = cmd_block_min(o);
    if (gen->parsed() && !o.out.empty()) {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw FileError(o.out, "cannot write " + o.out);
      file << json_io::dump(result) << '\n';
      result = Json{{"out", o.out}};
    }
    out << json_io::dump(result) << '\n';
    return 0;
  } catch (const Error& e) {
    err << json_io::dump(error_json(e)) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << json_io::dump(Json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}) << '\n';
    return 1;
  }
}

} // namespace bairelab::cli
