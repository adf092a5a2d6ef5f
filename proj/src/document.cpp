#include "vpc/document.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vpc/expr.hpp"

namespace vpc {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

int read_ell(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("document must be a JSON object");
  if (!doc.contains("ell") || !doc["ell"].is_number_integer()) throw std::invalid_argument("document needs an integer \"ell\"");
  const int ell = doc["ell"].get<int>();
  if (ell < 1 || ell > 16) throw std::invalid_argument("ell must be between 1 and 16");
  return ell;
}

std::string string_field(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  if (!doc[key].is_string()) throw std::invalid_argument(std::string("\"") + key + "\" must be a string");
  return doc[key].get<std::string>();
}

std::vector<std::vector<std::string>> string_matrix(const json& m, std::size_t ell, const char* what) {
  if (!m.is_array() || m.size() != ell) throw std::invalid_argument(std::string(what) + " must have ell rows");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != ell) throw std::invalid_argument(std::string(what) + " must be square with ell columns");
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (!e.is_string()) throw std::invalid_argument(std::string(what) + " entries must be strings");
      r.push_back(e.get<std::string>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

MatDiffOp operator_from_strings(const std::vector<std::vector<std::string>>& entries, int ell) {
  MatDiffOp op(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries[i].size(); ++j) op(i, j) = parse_operator(entries[i][j], ell);
  return op;
}

std::string index_label(const std::vector<int>& idx) {
  std::string s = "[";
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (t) s += ",";
    s += std::to_string(idx[t] + 1);
  }
  return s + "]";
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OperatorDocument parse_operator_document(const std::string& json_text) {
  const json doc = parse_json(json_text);
  OperatorDocument out;
  out.ell = read_ell(doc);
  out.name = string_field(doc, "name");
  out.description = string_field(doc, "description");
  if (!doc.contains("entries")) throw std::invalid_argument("operator document needs \"entries\"");
  out.entries = string_matrix(doc["entries"], static_cast<std::size_t>(out.ell), "entries");
  operator_from_strings(out.entries, out.ell);  // reject bad entries at load time
  return out;
}

MatDiffOp to_matdiffop(const OperatorDocument& doc) { return operator_from_strings(doc.entries, doc.ell); }

OperatorDocument from_matdiffop(const MatDiffOp& op, const std::string& name, const std::string& description) {
  if (!op.is_square()) throw std::invalid_argument("operator must be square");
  OperatorDocument doc;
  doc.ell = static_cast<int>(op.rows());
  doc.name = name;
  doc.description = description;
  for (std::size_t i = 0; i < op.rows(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < op.cols(); ++j) row.push_back(print_operator(op(i, j)));
    doc.entries.push_back(std::move(row));
  }
  return doc;
}

std::string dump_operator_document(const OperatorDocument& doc) {
  json j = json::object();
  j["ell"] = doc.ell;
  j["name"] = doc.name;
  j["description"] = doc.description;
  j["entries"] = doc.entries;
  return j.dump(2);
}

PolyVector parse_polyvector_document(const std::string& json_text) {
  const json doc = parse_json(json_text);
  const int ell = read_ell(doc);
  int kinds = 0;
  for (const char* key : {"functional", "components", "operator", "entries"}) kinds += doc.contains(key) ? 1 : 0;
  if (kinds != 1) throw std::invalid_argument("polyvector document needs exactly one of functional/components/operator/entries");

  if (doc.contains("functional")) {
    if (!doc["functional"].is_string()) throw std::invalid_argument("\"functional\" must be a string");
    return PolyVector::functional(ell, parse_expr(doc["functional"].get<std::string>(), ell));
  }
  if (doc.contains("components")) {
    const auto& c = doc["components"];
    if (!c.is_array() || c.size() != static_cast<std::size_t>(ell)) throw std::invalid_argument("\"components\" must have ell strings");
    std::vector<DiffPoly> comps;
    for (const auto& e : c) {
      if (!e.is_string()) throw std::invalid_argument("components must be strings");
      comps.push_back(parse_expr(e.get<std::string>(), ell));
    }
    return PolyVector::vector_field(comps);
  }
  if (doc.contains("operator")) {
    const auto op = operator_from_strings(string_matrix(doc["operator"], static_cast<std::size_t>(ell), "operator"), ell);
    return from_operator(op);
  }

  if (!doc.contains("degree") || !doc["degree"].is_number_integer()) throw std::invalid_argument("entries form needs an integer \"degree\"");
  const int degree = doc["degree"].get<int>();
  if (degree < 0 || degree > 6) throw std::invalid_argument("degree must be between 0 and 6 in the entries form");
  const auto& entries = doc["entries"];
  if (!entries.is_array()) throw std::invalid_argument("\"entries\" must be an array");
  const PolyVector shape(ell, degree);
  std::vector<LambdaPoly> raw(shape.size(), LambdaPoly(degree + 1));
  std::vector<bool> seen(shape.size(), false);
  for (const auto& e : entries) {
    if (!e.is_object() || !e.contains("index") || !e.contains("value") || !e["index"].is_array() || !e["value"].is_string())
      throw std::invalid_argument("each entry needs \"index\" (array) and \"value\" (string)");
    if (e["index"].size() != static_cast<std::size_t>(degree + 1)) throw std::invalid_argument("index tuple has the wrong length");
    std::vector<int> idx;
    for (const auto& i : e["index"]) {
      if (!i.is_number_integer()) throw std::invalid_argument("index entries must be integers");
      const int v = i.get<int>();
      if (v < 1 || v > ell) throw std::invalid_argument("index out of range 1..ell");
      idx.push_back(v - 1);
    }
    const std::size_t flat = shape.flatten(idx);
    if (seen[flat]) throw std::invalid_argument("duplicate index tuple " + index_label(idx));
    seen[flat] = true;
    raw[flat] = parse_lambda(e["value"].get<std::string>(), degree + 1, ell);
  }
  PolyVector p = normalize(ell, degree, raw);
  if (!permute_and_check_skew(p)) throw std::invalid_argument("entries are not skewsymmetric");
  return p;
}

std::string dump_polyvector_document(const PolyVector& p) {
  json j = json::object();
  j["ell"] = p.ell();
  if (p.degree() == -1) {
    j["functional"] = print_expr(p.density());
  } else if (p.degree() == 0) {
    std::vector<std::string> comps;
    for (const auto& c : p.components()) comps.push_back(print_expr(c));
    j["components"] = comps;
  } else {
    j["degree"] = p.degree();
    json entries = json::array();
    for (std::size_t flat = 0; flat < p.size(); ++flat) {
      if (p.at(flat).is_zero()) continue;
      std::vector<int> idx = p.unflatten(flat);
      for (int& i : idx) ++i;
      entries.push_back({{"index", idx}, {"value", print_lambda(p.at(flat))}});
    }
    j["entries"] = entries;
  }
  return j.dump(2);
}

linalg::Matrix parse_matrix_document(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("matrix")) throw std::invalid_argument("matrix document needs \"matrix\"");
  const auto& m = doc["matrix"];
  if (!m.is_array() || m.empty()) throw std::invalid_argument("\"matrix\" must be a nonempty array of rows");
  const std::size_t rows = m.size();
  if (!m[0].is_array() || m[0].empty()) throw std::invalid_argument("matrix rows must be nonempty arrays");
  const std::size_t cols = m[0].size();
  linalg::Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!m[r].is_array() || m[r].size() != cols) throw std::invalid_argument("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = m[r][c];
      if (e.is_number_integer()) {
        out(r, c) = Rational(e.get<long>());
      } else if (e.is_string()) {
        out(r, c) = parse_rational(e.get<std::string>());
      } else {
        throw std::invalid_argument("matrix entries must be integers or rational strings");
      }
    }
  }
  return out;
}

std::vector<DiffPoly> parse_expr_list(const std::string& text, int ell) {
  std::vector<DiffPoly> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_expr(std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start), ell));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> describe_polyvector(const PolyVector& p) {
  std::vector<std::string> lines;
  if (p.degree() == -1) {
    lines.push_back("∫(" + print_expr(p.density()) + ")");
    return lines;
  }
  if (p.degree() == 0) {
    const auto comps = p.components();
    for (std::size_t i = 0; i < comps.size(); ++i) lines.push_back("[" + std::to_string(i + 1) + "] " + print_expr(comps[i]));
    return lines;
  }
  for (std::size_t flat = 0; flat < p.size(); ++flat)
    if (!p.at(flat).is_zero()) lines.push_back(index_label(p.unflatten(flat)) + " " + print_lambda(p.at(flat)));
  if (lines.empty()) lines.push_back("0");
  return lines;
}

}  // namespace vpc
