#pragma once

// JSON documents for operators, polyvectors and rational matrices.
//
// Operator:   {"ell": 1, "name": "...", "description": "...",
//              "entries": [["D^3 + 2*u1*D + u1'"]]}
// Polyvector: {"ell": 1, "functional": "1/2*u1^2"}              degree -1
//             {"ell": 2, "components": ["u1'", "u1*u2"]}        degree 0
//             {"ell": 1, "operator": [["D"]]}                   degree 1
//             {"ell": 2, "degree": 1,
//              "entries": [{"index": [1, 2], "value": "l0*u1"}, ...]}
//   Entries use l0..l_k; missing index tuples are zero. The array must be
//   skewsymmetric after normalization.
// Matrix:     {"matrix": [[1, 0], [0, "3/2"]]}
//
// Every loader throws std::invalid_argument (ParseError for expression
// syntax) on malformed input.

#include <string>
#include <vector>

#include "vpc/linalg.hpp"
#include "vpc/matop.hpp"
#include "vpc/polyvec.hpp"

namespace vpc {

struct OperatorDocument {
  int ell = 0;
  std::string name;
  std::string description;
  std::vector<std::vector<std::string>> entries;
};

OperatorDocument parse_operator_document(const std::string& json_text);
MatDiffOp to_matdiffop(const OperatorDocument& doc);
OperatorDocument from_matdiffop(const MatDiffOp& op, const std::string& name = "", const std::string& description = "");
std::string dump_operator_document(const OperatorDocument& doc);

PolyVector parse_polyvector_document(const std::string& json_text);
std::string dump_polyvector_document(const PolyVector& p);

linalg::Matrix parse_matrix_document(const std::string& json_text);

// Reads a whole file; throws std::invalid_argument if it cannot be opened.
std::string read_file(const std::string& path);

// Comma-separated expressions, e.g. "u1, 2*u2'".
std::vector<DiffPoly> parse_expr_list(const std::string& text, int ell);

// Human-readable lines for a polyvector, one nonzero entry per line with
// 1-based index tuples.
std::vector<std::string> describe_polyvector(const PolyVector& p);

}  // namespace vpc
