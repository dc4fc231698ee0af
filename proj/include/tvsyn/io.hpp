#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "tvsyn/dictionary.hpp"
#include "tvsyn/factors.hpp"
#include "tvsyn/graph.hpp"
#include "tvsyn/solvers.hpp"

namespace tvsyn {

// Graph text format: line 1 = "n m", then m lines "tail head" (1-based).
// '#' starts a comment; blank lines are skipped.
DirectedGraph read_graph_text(std::istream& in);
DirectedGraph load_graph(const std::string& path);
void write_graph_text(std::ostream& out, const DirectedGraph& g);

// Matrix CSV: one row per line, comma separated, full %.17g precision.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(std::istream& in);
Eigen::MatrixXd load_matrix_csv(const std::string& path);
void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

// Dictionary JSON: {n, r, normalization, J (column-major), atoms, provenance}.
std::string dictionary_to_json(const Dictionary& d);
Dictionary dictionary_from_json(const std::string& text);
Dictionary load_dictionary(const std::string& path);
void save_dictionary(const std::string& path, const Dictionary& d);

// Fit JSON: {lambda, objective, iterations, fitted, beta|null, residuals}.
std::string fit_to_json(const FitResult& fit);

// Factor report CSV with a fixed header.
void write_factor_csv(std::ostream& out, const std::vector<FactorReport>& reports);

// One polyline per atom over the vertex index, 800x400 viewBox.
std::string atoms_svg(const Eigen::MatrixXd& atoms);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace tvsyn
