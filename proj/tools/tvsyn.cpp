#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tvsyn/dictionary.hpp"
#include "tvsyn/errors.hpp"
#include "tvsyn/factors.hpp"
#include "tvsyn/graph.hpp"
#include "tvsyn/io.hpp"
#include "tvsyn/linalg.hpp"
#include "tvsyn/random.hpp"
#include "tvsyn/solvers.hpp"

namespace {

using namespace tvsyn;

std::optional<int> enum_guard_override() {
  const char* env = std::getenv("TVSYN_MAX_ENUM");
  if (!env || !*env) return std::nullopt;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "TVSYN_MAX_ENUM must be an integer");
  }
}

DictMethod parse_method(const std::string& name) {
  if (name == "recipe") return DictMethod::recipe;
  if (name == "tree") return DictMethod::tree;
  if (name == "cuts") return DictMethod::cuts;
  if (name == "closed-form") return DictMethod::closed_form;
  fail(ErrorCode::ParseError, "unknown method " + name);
}

Eigen::VectorXd load_vector(const std::string& path) {
  const Eigen::MatrixXd m = load_matrix_csv(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  fail(ErrorCode::ParseError, path + " does not hold a vector");
}

Eigen::VectorXd gaussian_vector(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.next_gaussian();
  return y;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

int run_graph(const std::string& path) {
  const DirectedGraph g = load_graph(path);
  const auto components = connected_components(g);
  std::cout << "vertices: " << g.n << "\n"
            << "edges: " << g.m() << "\n"
            << "connected: " << (components.size() == 1 ? "yes" : "no") << "\n"
            << "components: " << components.size() << "\n"
            << "tree: "
            << (components.size() == 1 && g.m() == g.n - 1 ? "yes" : "no") << "\n";
  return 0;
}

int run_dict(const std::string& graph_path, int k, const std::string& method_name,
             const std::string& norm_name, int root, const std::string& out_path,
             const std::string& csv_path) {
  const DirectedGraph g = load_graph(graph_path);
  const DictMethod method = parse_method(method_name);
  const Normalization target =
      norm_name == "unit-row" ? Normalization::unit_row : Normalization::l1_image;
  const auto guard = enum_guard_override();

  Dictionary dict;
  switch (method) {
    case DictMethod::recipe: {
      SynthesisOptions opts;
      if (guard) opts.max_subsets = *guard;
      dict = synthesize_dictionary(derivative_operator(g, k), target, opts);
      break;
    }
    case DictMethod::tree:
      if (k != 1) fail(ErrorCode::BadOrder, "tree dictionaries are first-order");
      dict = tree_dictionary(g, root);
      dict.normalization = target;  // the tree inverse satisfies both conventions
      break;
    case DictMethod::cuts:
      if (k != 1) fail(ErrorCode::BadOrder, "cut dictionaries are first-order");
      if (target == Normalization::unit_row)
        fail(ErrorCode::BadShape, "cut dictionaries carry the l1-image convention");
      dict = cut_dictionary(g, root, guard.value_or(20));
      break;
    case DictMethod::closed_form:
      dict = dictionary_for_method(g, k, DictMethod::closed_form);
      if (target == Normalization::l1_image)
        dict = renormalized(dict, derivative_operator(g, k), target);
      break;
  }

  if (!out_path.empty()) save_dictionary(out_path, dict);
  if (!csv_path.empty()) save_matrix_csv(csv_path, hstack(dict.nullspace_block, dict.atoms));
  if (out_path.empty() && csv_path.empty()) std::cout << dictionary_to_json(dict);
  std::cerr << "atoms: " << dict.p() << ", unpenalized: " << dict.nullspace_block.cols()
            << "\n";
  return 0;
}

int run_solve(const std::string& mode, const std::string& graph_path, int k,
              const std::string& dict_path, const std::string& y_path, double lambda,
              const std::string& out_path) {
  const Eigen::VectorXd y = load_vector(y_path);
  FitOptions opts;
  FitResult fit;
  if (mode == "analysis") {
    if (graph_path.empty()) fail(ErrorCode::ParseError, "analysis mode needs --graph");
    const DirectedGraph g = load_graph(graph_path);
    opts.order_scale = std::pow(static_cast<double>(g.n), k - 1);
    fit = fit_analysis(y, derivative_operator(g, k), lambda, opts);
  } else if (mode == "synthesis") {
    if (dict_path.empty()) fail(ErrorCode::ParseError, "synthesis mode needs --dict");
    const Dictionary dict = load_dictionary(dict_path);
    opts.order_scale = std::pow(static_cast<double>(dict.n()), k - 1);
    fit = fit_synthesis(y, dict, lambda, opts);
  } else {
    fail(ErrorCode::ParseError, "mode must be analysis or synthesis");
  }
  emit(out_path, fit_to_json(fit));
  return 0;
}

int run_verify(const std::string& graph_path, int k, double lambda, std::uint64_t seed,
               const std::string& lemma, const std::string& method_name) {
  const DirectedGraph g = load_graph(graph_path);
  const Eigen::VectorXd y = gaussian_vector(g.n, seed);
  std::cout << "seed: " << seed << "\n";

  const Operator op = derivative_operator(g, k);
  const int r = rank(op.entries);
  const int n = g.n;

  // A full-row-rank submatrix and a bordered square operator for the
  // lemma-level checks.
  std::vector<int> subset;
  {
    std::vector<int> rows;
    for (int i = 0; i < op.rows(); ++i) {
      rows.push_back(i);
      if (rank(rows_subset(op.entries, rows)) < static_cast<int>(rows.size()))
        rows.pop_back();
      if (static_cast<int>(rows.size()) == r) break;
    }
    subset = rows;
  }
  const Eigen::MatrixXd d_rows = rows_subset(op.entries, subset);
  // complete to an invertible square with standard basis rows
  Eigen::MatrixXd border(0, n);
  for (int i = 0; i < n && border.rows() < n - r; ++i) {
    Eigen::MatrixXd unit = Eigen::MatrixXd::Zero(1, n);
    unit(0, i) = 1.0;
    const Eigen::MatrixXd candidate = vstack(border, unit);
    if (rank(vstack(candidate, d_rows)) == r + static_cast<int>(candidate.rows()))
      border = candidate;
  }
  const Eigen::MatrixXd d_square = vstack(border, d_rows);
  const Eigen::MatrixXd x_full = invert(d_square);
  std::vector<int> unpen;
  for (int i = 1; i <= n - r; ++i) unpen.push_back(i);

  DictMethod method = DictMethod::recipe;
  if (method_name == "auto") {
    if (k == 1 && g.m() == g.n - 1)
      method = DictMethod::tree;
    else if (k == 1)
      method = DictMethod::cuts;
    else if (detect_closed_form_family(g))
      method = DictMethod::closed_form;
  } else {
    method = parse_method(method_name);
  }

  bool all_pass = true;
  const auto report = [&all_pass](const char* name, const EquivalenceReport& r) {
    std::cout << name << " gap = " << r.gap << (r.pass ? "  PASS" : "  FAIL") << "\n";
    all_pass = all_pass && r.pass;
  };

  if (lemma.empty() || lemma == "21") report("lemma21", check_lemma21(y, x_full, unpen, lambda));
  if (lemma.empty() || lemma == "31") {
    if (d_rows.rows() < n)
      report("lemma31", check_lemma31(y, d_rows, lambda));
    else
      std::cout << "lemma31 skipped (operator is square)\n";
  }
  if (lemma.empty() || lemma == "32") report("lemma32", check_lemma32(y, d_square, lambda));
  if (lemma.empty() || lemma == "c41")
    report("corollary41", check_corollary41(y, g, k, lambda, method));
  return all_pass ? 0 : 1;
}

int run_factors(const std::string& family_name, const std::string& sizes_text,
                const std::string& sprime_text, const std::string& out_path) {
  GraphFamily family;
  if (family_name == "path")
    family = GraphFamily::path;
  else if (family_name == "grid2d")
    family = GraphFamily::grid2d;
  else if (family_name == "star")
    family = GraphFamily::star;
  else if (family_name == "cycle")
    family = GraphFamily::cycle;
  else
    fail(ErrorCode::ParseError, "unknown family " + family_name);

  std::vector<int> sizes;
  std::istringstream size_stream(sizes_text);
  std::string token;
  while (std::getline(size_stream, token, ',')) sizes.push_back(std::stoi(token));
  if (sizes.empty()) fail(ErrorCode::ParseError, "--sizes must list vertex counts");

  SprimePolicy policy;
  if (sprime_text == "none" || sprime_text.empty()) {
    policy.kind = SprimePolicy::Kind::none;
  } else if (sprime_text.rfind("first:", 0) == 0) {
    policy.kind = SprimePolicy::Kind::first_k;
    policy.k = std::stoi(sprime_text.substr(6));
  } else {
    policy.kind = SprimePolicy::Kind::explicit_list;
    std::istringstream edges(sprime_text);
    while (std::getline(edges, token, ',')) policy.edges.push_back(std::stoi(token));
  }

  const auto reports = table1_report(family, sizes, policy);
  std::ostringstream csv;
  write_factor_csv(csv, reports);
  emit(out_path, csv.str());
  return 0;
}

int run_plot(const std::string& dict_path, const std::string& out_path) {
  const Dictionary dict = load_dictionary(dict_path);
  emit(out_path, atoms_svg(dict.atoms));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-th order graph derivative operators, synthesis dictionaries, and "
               "analysis/synthesis equivalence checks"};
  app.require_subcommand(1);

  std::string graph_path, dict_path, y_path, out_path, csv_path;
  std::string method = "recipe", normalization = "l1-image", lemma, family, sizes, sprime = "none";
  std::string verify_method = "auto", mode = "analysis";
  int k = 1, root = 1;
  double lambda = 0.1;
  std::uint64_t seed = 1;

  auto* graph_cmd = app.add_subcommand("graph", "validate a graph file and print basic facts");
  graph_cmd->add_option("--in", graph_path, "graph text file")->required();

  auto* dict_cmd = app.add_subcommand("dict", "build a synthesis dictionary");
  dict_cmd->add_option("--graph", graph_path, "graph text file")->required();
  dict_cmd->add_option("--k", k, "derivative order")->check(CLI::Range(1, 3));
  dict_cmd->add_option("--method", method, "recipe|tree|cuts|closed-form")
      ->check(CLI::IsMember({"recipe", "tree", "cuts", "closed-form"}));
  dict_cmd->add_option("--normalization", normalization, "l1-image|unit-row")
      ->check(CLI::IsMember({"l1-image", "unit-row"}));
  dict_cmd->add_option("--root", root, "root vertex for tree/cut methods");
  dict_cmd->add_option("--out", out_path, "dictionary JSON output");
  dict_cmd->add_option("--csv", csv_path, "also write [J | atoms] as CSV");

  auto* solve_cmd = app.add_subcommand("solve", "fit an estimator");
  solve_cmd->add_option("--mode", mode, "analysis|synthesis")
      ->check(CLI::IsMember({"analysis", "synthesis"}));
  solve_cmd->add_option("--graph", graph_path, "graph text file (analysis)");
  solve_cmd->add_option("--dict", dict_path, "dictionary JSON (synthesis)");
  solve_cmd->add_option("--k", k, "derivative order")->check(CLI::Range(1, 3));
  solve_cmd->add_option("--lambda", lambda, "regularization weight")->required();
  solve_cmd->add_option("--y", y_path, "observation CSV")->required();
  solve_cmd->add_option("--out", out_path, "fit JSON output (stdout when absent)");

  auto* verify_cmd = app.add_subcommand("verify", "run the equivalence checks");
  verify_cmd->add_option("--graph", graph_path, "graph text file")->required();
  verify_cmd->add_option("--k", k, "derivative order")->check(CLI::Range(1, 3));
  verify_cmd->add_option("--lambda", lambda, "regularization weight");
  verify_cmd->add_option("--seed", seed, "seed for the observation vector");
  verify_cmd->add_option("--lemma", lemma, "21|31|32|c41 (all when absent)")
      ->check(CLI::IsMember({"21", "31", "32", "c41"}));
  verify_cmd->add_option("--method", verify_method,
                         "dictionary method for the end-to-end check");

  auto* factors_cmd = app.add_subcommand("factors", "factor reports across graph sizes");
  factors_cmd->add_option("--family", family, "path|grid2d|star|cycle")->required();
  factors_cmd->add_option("--sizes", sizes, "comma separated vertex counts")->required();
  factors_cmd->add_option("--sprime", sprime, "none | first:K | comma separated edges");
  factors_cmd->add_option("--out", out_path, "CSV output (stdout when absent)");

  auto* plot_cmd = app.add_subcommand("plot", "render dictionary atoms as SVG");
  plot_cmd->add_option("--dict", dict_path, "dictionary JSON")->required();
  plot_cmd->add_option("--out", out_path, "SVG output (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(graph_cmd)) return run_graph(graph_path);
    if (app.got_subcommand(dict_cmd))
      return run_dict(graph_path, k, method, normalization, root, out_path, csv_path);
    if (app.got_subcommand(solve_cmd))
      return run_solve(mode, graph_path, k, dict_path, y_path, lambda, out_path);
    if (app.got_subcommand(verify_cmd))
      return run_verify(graph_path, k, lambda, seed, lemma, verify_method);
    if (app.got_subcommand(factors_cmd)) return run_factors(family, sizes, sprime, out_path);
    if (app.got_subcommand(plot_cmd)) return run_plot(dict_path, out_path);
  } catch (const tvsyn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
