#include "tvsyn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tvsyn/errors.hpp"

namespace tvsyn {

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

const char* normalization_name(Normalization norm) {
  return norm == Normalization::l1_image ? "l1_image" : "unit_row";
}

const char* provenance_name(DictProvenance::Kind kind) {
  switch (kind) {
    case DictProvenance::Kind::recipe: return "recipe";
    case DictProvenance::Kind::tree: return "tree";
    case DictProvenance::Kind::cuts: return "cuts";
    case DictProvenance::Kind::closed_form: return "closed_form";
  }
  return "recipe";
}

nlohmann::ordered_json matrix_columns(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(m(r, c));
    cols.push_back(std::move(col));
  }
  return cols;
}

Eigen::MatrixXd columns_matrix(const nlohmann::ordered_json& cols, Eigen::Index n) {
  Eigen::MatrixXd m(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (static_cast<Eigen::Index>(cols[c].size()) != n)
      fail(ErrorCode::ParseError, "dictionary column length mismatch");
    for (Eigen::Index r = 0; r < n; ++r)
      m(r, static_cast<Eigen::Index>(c)) = cols[c][static_cast<std::size_t>(r)].get<double>();
  }
  return m;
}

}  // namespace

DirectedGraph read_graph_text(std::istream& in) {
  std::vector<std::vector<long>> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream tokens(strip_comment(line));
    std::vector<long> values;
    long v = 0;
    while (tokens >> v) values.push_back(v);
    if (!tokens.eof())
      fail(ErrorCode::ParseError, "line " + std::to_string(line_number) + ": expected integers");
    if (!values.empty()) rows.push_back(std::move(values));
  }
  if (rows.empty()) fail(ErrorCode::ParseError, "empty graph file");
  if (rows[0].size() != 2) fail(ErrorCode::ParseError, "header must be \"n m\"");
  const long n = rows[0][0];
  const long m = rows[0][1];
  if (static_cast<long>(rows.size()) - 1 != m)
    fail(ErrorCode::ParseError, "expected " + std::to_string(m) + " edge lines, found " +
                                    std::to_string(rows.size() - 1));
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2)
      fail(ErrorCode::ParseError, "edge lines must be \"tail head\"");
    edges.emplace_back(static_cast<int>(rows[i][0]), static_cast<int>(rows[i][1]));
  }
  return from_edge_list(static_cast<int>(n), edges);
}

DirectedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  return read_graph_text(in);
}

void write_graph_text(std::ostream& out, const DirectedGraph& g) {
  out << g.n << ' ' << g.m() << '\n';
  for (const auto& [tail, head] : g.edges) out << tail << ' ' << head << '\n';
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<double> values;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "line " + std::to_string(line_number) + ": bad number");
      }
    }
    if (!rows.empty() && values.size() != rows[0].size())
      fail(ErrorCode::ParseError, "line " + std::to_string(line_number) + ": ragged row");
    rows.push_back(std::move(values));
  }
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  return read_matrix_csv(in);
}

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot open " + path + " for writing");
  write_matrix_csv(out, m);
}

std::string dictionary_to_json(const Dictionary& d) {
  nlohmann::ordered_json j;
  j["n"] = d.n();
  j["r"] = d.r();
  j["normalization"] = normalization_name(d.normalization);
  j["J"] = matrix_columns(d.nullspace_block);
  j["atoms"] = matrix_columns(d.atoms);
  j["provenance"] = {{"kind", provenance_name(d.provenance.kind)},
                     {"family", d.provenance.family},
                     {"order", d.provenance.order}};
  return j.dump(2) + "\n";
}

Dictionary dictionary_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad dictionary JSON: ") + e.what());
  }
  Dictionary d;
  const Eigen::Index n = j.at("n").get<Eigen::Index>();
  d.nullspace_block = columns_matrix(j.at("J"), n);
  d.atoms = columns_matrix(j.at("atoms"), n);
  const std::string norm = j.at("normalization").get<std::string>();
  if (norm == "l1_image")
    d.normalization = Normalization::l1_image;
  else if (norm == "unit_row")
    d.normalization = Normalization::unit_row;
  else
    fail(ErrorCode::ParseError, "unknown normalization " + norm);
  const auto& prov = j.at("provenance");
  const std::string kind = prov.at("kind").get<std::string>();
  if (kind == "recipe")
    d.provenance.kind = DictProvenance::Kind::recipe;
  else if (kind == "tree")
    d.provenance.kind = DictProvenance::Kind::tree;
  else if (kind == "cuts")
    d.provenance.kind = DictProvenance::Kind::cuts;
  else if (kind == "closed_form")
    d.provenance.kind = DictProvenance::Kind::closed_form;
  else
    fail(ErrorCode::ParseError, "unknown provenance " + kind);
  d.provenance.family = prov.at("family").get<std::string>();
  d.provenance.order = prov.at("order").get<int>();
  if (j.at("r").get<Eigen::Index>() != d.r())
    fail(ErrorCode::ParseError, "rank field inconsistent with block shapes");
  return d;
}

Dictionary load_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return dictionary_from_json(text.str());
}

void save_dictionary(const std::string& path, const Dictionary& d) {
  write_text_file(path, dictionary_to_json(d));
}

std::string fit_to_json(const FitResult& fit) {
  nlohmann::ordered_json j;
  j["lambda"] = fit.lambda;
  j["objective"] = fit.objective;
  j["iterations"] = fit.iterations;
  nlohmann::ordered_json fitted = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < fit.fitted.size(); ++i) fitted.push_back(fit.fitted(i));
  j["fitted"] = std::move(fitted);
  if (fit.beta) {
    nlohmann::ordered_json beta = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < fit.beta->size(); ++i) beta.push_back((*fit.beta)(i));
    j["beta"] = std::move(beta);
  } else {
    j["beta"] = nullptr;
  }
  j["residuals"] = {{"primal", fit.primal_residual}, {"dual", fit.dual_residual}};
  return j.dump(2) + "\n";
}

void write_factor_csv(std::ostream& out, const std::vector<FactorReport>& reports) {
  out << "family,n,m,s_prime,rho,kappa_strong,kappa_weak_lo,kappa_weak_hi\n";
  for (const auto& report : reports) {
    out << report.family << ',' << report.n << ',' << report.m << ','
        << report.sprime.size() << ',' << format_double(report.rho) << ','
        << format_double(report.kappa_strong) << ',' << format_double(report.kappa_weak_lower)
        << ',' << format_double(report.kappa_weak_upper) << '\n';
  }
}

std::string atoms_svg(const Eigen::MatrixXd& atoms) {
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  const Eigen::Index n = atoms.rows();
  const Eigen::Index p = atoms.cols();
  double lo = 0.0, hi = 0.0;
  if (atoms.size() > 0) {
    lo = std::min(0.0, atoms.minCoeff());
    hi = std::max(0.0, atoms.maxCoeff());
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const auto x_at = [n](Eigen::Index i) {
    if (n <= 1) return 400.0;
    return 40.0 + 720.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const auto y_at = [lo, hi](double v) { return 380.0 - 360.0 * (v - lo) / (hi - lo); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 400\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"white\"/>\n";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", y_at(0.0));
  svg << "  <line x1=\"40\" y1=\"" << buffer << "\" x2=\"760\" y2=\"" << buffer
      << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  for (Eigen::Index c = 0; c < p; ++c) {
    svg << "  <polyline fill=\"none\" stroke=\"" << kPalette[c % 10]
        << "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index i = 0; i < n; ++i) {
      std::snprintf(buffer, sizeof(buffer), "%.2f,%.2f", x_at(i), y_at(atoms(i, c)));
      if (i > 0) svg << ' ';
      svg << buffer;
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot open " + path + " for writing");
  out << text;
}

}  // namespace tvsyn
