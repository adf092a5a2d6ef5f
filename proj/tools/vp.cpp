// vp: command-line front end for the variational Poisson library.
// Exit codes: 0 success, 1 the mathematical property fails, 2 input error.

#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vpc/document.hpp"
#include "vpc/expr.hpp"
#include "vpc/hamcoh.hpp"
#include "vpc/magri.hpp"
#include "vpc/polyvec.hpp"
#include "vpc/superlie.hpp"

using namespace vpc;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;

const char* yes_no(bool b) { return b ? "true" : "false"; }

template <typename T>
std::string list(const std::vector<T>& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << "]";
  return out.str();
}

std::string bool_list(const std::vector<bool>& v) {
  std::vector<std::string> s;
  for (bool b : v) s.emplace_back(yes_no(b));
  return list(s);
}

std::string functional_text(const LocalFunctional& f) { return "∫(" + print_expr(f.representative()) + ")"; }

MatDiffOp load_operator(const std::string& path) { return to_matdiffop(parse_operator_document(read_file(path))); }

PolyVector load_polyvector(const std::string& path) { return parse_polyvector_document(read_file(path)); }

linalg::Matrix load_matrix(const std::string& path) { return parse_matrix_document(read_file(path)); }

void require_square_size(const linalg::Matrix& s, int n, const char* what) {
  if (!s.is_square() || static_cast<int>(s.rows()) != n)
    throw std::invalid_argument(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!s.is_symmetric()) throw std::invalid_argument(std::string(what) + " must be symmetric");
}

void print_matrix(const linalg::Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::cout << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) std::cout << (c ? ", " : "") << to_string(m(r, c));
    std::cout << "]\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_check_skewadjoint(const std::string& k_path) {
  const MatDiffOp k = load_operator(k_path);
  if (!k.is_square()) throw std::invalid_argument("operator must be square");
  const bool skew = is_skewadjoint(k);
  std::cout << "skewadjoint: " << yes_no(skew) << "\n";
  return skew ? kOk : kFalse;
}

int cmd_check_hamiltonian(const std::string& k_path) {
  const MatDiffOp k = load_operator(k_path);
  const bool skew = is_skewadjoint(k);
  std::cout << "skewadjoint: " << yes_no(skew) << "\n";
  if (!skew) return kFalse;
  const bool ham = is_hamiltonian(k);
  std::cout << "hamiltonian: " << yes_no(ham) << "\n";
  return ham ? kOk : kFalse;
}

int cmd_compatible(const std::string& k_path, const std::string& h_path) {
  const MatDiffOp k = load_operator(k_path);
  const MatDiffOp h = load_operator(h_path);
  if (k.rows() != h.rows()) throw std::invalid_argument("operators have different sizes");
  const bool sk = is_skewadjoint(k), sh = is_skewadjoint(h);
  std::cout << "K skewadjoint: " << yes_no(sk) << "\n" << "H skewadjoint: " << yes_no(sh) << "\n";
  if (!sk || !sh) return kFalse;
  const bool hk = is_hamiltonian(k), hh = is_hamiltonian(h), comp = is_compatible(k, h);
  std::cout << "K hamiltonian: " << yes_no(hk) << "\n"
            << "H hamiltonian: " << yes_no(hh) << "\n"
            << "compatible: " << yes_no(comp) << "\n";
  return hk && hh && comp ? kOk : kFalse;
}

int cmd_schouten(const std::string& p_path, const std::string& q_path) {
  const PolyVector p = load_polyvector(p_path);
  const PolyVector q = load_polyvector(q_path);
  if (p.ell() != q.ell()) throw std::invalid_argument("polyvectors have different ell");
  if (p.degree() + q.degree() < -1) throw std::invalid_argument("bracket of two functionals has degree -2");
  const PolyVector r = schouten(p, q);
  std::cout << "degree: " << r.degree() << "\n" << "zero: " << yes_no(r.is_zero()) << "\n" << "entries:\n";
  for (const auto& line : describe_polyvector(r)) std::cout << "  " << line << "\n";
  return kOk;
}

int cmd_cohomology(const std::string& k_path, int kmax) {
  const MatDiffOp k = load_operator(k_path);
  if (!k.is_quasiconstant()) throw std::invalid_argument("operator does not have constant coefficients");
  const auto report = cohomology_dimensions(k, kmax);
  std::vector<int> degrees;
  std::vector<std::size_t> dims, kers, bounds;
  std::vector<bool> attained;
  for (const auto& e : report.entries) {
    degrees.push_back(e.degree);
    dims.push_back(e.dimension);
    kers.push_back(e.kernel_alpha);
    bounds.push_back(e.bound);
    attained.push_back(e.bound_attained);
  }
  std::cout << "ell: " << report.ell << "\n"
            << "order: " << report.order << "\n"
            << "degrees: " << list(degrees) << "\n"
            << "dimensions: " << list(dims) << "\n"
            << "kernel_alpha: " << list(kers) << "\n"
            << "bounds: " << list(bounds) << "\n"
            << "bound_attained: " << bool_list(attained) << "\n";
  return kOk;
}

int cmd_casimirs(const std::string& k_path) {
  const MatDiffOp k = load_operator(k_path);
  const auto cas = casimir_basis(k);
  std::cout << "count: " << cas.size() << "\n" << "casimirs: ";
  for (std::size_t i = 0; i < cas.size(); ++i) std::cout << (i ? ", " : "") << "∫" << print_expr(cas[i].representative());
  std::cout << "\n" << "note: functionals are cosets modulo total derivatives\n";
  return kOk;
}

int cmd_lenard(const std::string& k_path, const std::string& h_path, const std::string& seed_text, int steps) {
  const MatDiffOp k = load_operator(k_path);
  const MatDiffOp h = load_operator(h_path);
  if (k.rows() != h.rows()) throw std::invalid_argument("operators have different sizes");
  if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
  const LocalFunctional seed(parse_expr(seed_text, static_cast<int>(k.rows())));
  if (!is_skewadjoint(k) || !is_skewadjoint(h) || !is_compatible(k, h)) {
    std::cout << "compatible: false\n";
    return kFalse;
  }
  const auto state = build_hierarchy(k, h, seed, steps);
  std::cout << "compatible: true\n";
  for (std::size_t m = 0; m < state.functionals.size(); ++m) {
    std::cout << "h_" << m << ": " << functional_text(state.functionals[m]) << "\n";
    std::vector<std::string> flow;
    for (const auto& c : state.flows[m]) flow.push_back(print_expr(c));
    std::cout << "flow_" << m << ": " << list(flow) << "\n";
  }
  std::cout << "complete: " << yes_no(state.complete) << "\n";
  if (state.obstructed_at) std::cout << "obstructed_at_step: " << *state.obstructed_at << "\n";
  std::cout << "involution_H:\n";
  for (const auto& row : state.involution_h) std::cout << "  " << bool_list(row) << "\n";
  std::cout << "involution_K:\n";
  for (const auto& row : state.involution_k) std::cout << "  " << bool_list(row) << "\n";
  std::cout << "involution: " << (state.all_in_involution ? "all true" : "not all true") << "\n";
  std::cout << "note: functionals are cosets modulo total derivatives\n";
  return state.complete && state.all_in_involution ? kOk : kFalse;
}

int cmd_inner_product(const std::string& k_path, const std::string& f_text, const std::string& g_text) {
  const MatDiffOp k = load_operator(k_path);
  const int ell = static_cast<int>(k.rows());
  const auto f = parse_expr_list(f_text, ell);
  const auto g = parse_expr_list(g_text, ell);
  if (static_cast<int>(f.size()) != ell || static_cast<int>(g.size()) != ell)
    throw std::invalid_argument("F and G need ell comma-separated expressions");
  std::cout << "inner_product: " << print_expr(inner_product(k, f, g)) << "\n";
  return kOk;
}

int cmd_essential(const std::string& k_path, const std::string& p_path) {
  const MatDiffOp k = load_operator(k_path);
  const PolyVector p = load_polyvector(p_path);
  if (p.ell() != static_cast<int>(k.rows())) throw std::invalid_argument("polyvector and operator sizes differ");
  const bool ess = is_essential(k, p);
  std::cout << "degree: " << p.degree() << "\n" << "essential: " << yes_no(ess) << "\n";
  return ess ? kOk : kFalse;
}

int cmd_htilde(int n, const std::string& s_path, bool dims_only) {
  if (n < 1 || n > 12) throw std::invalid_argument("n must be between 1 and 12");
  const auto s = load_matrix(s_path);
  require_square_size(s, n, "S");
  const auto dims = htilde_dims(n);
  std::size_t total = 0;
  for (auto d : dims) total += d;
  std::vector<int> degrees;
  for (int k = -1; k <= n - 2; ++k) degrees.push_back(k);
  std::cout << "n: " << n << "\n"
            << "rank_S: " << linalg::rank(s) << "\n"
            << "degrees: " << list(degrees) << "\n"
            << "dimensions: " << list(dims) << "\n"
            << "total: " << total << "\n";
  if (!dims_only) {
    std::cout << "so_dimension: " << so_basis(s).size() << "\n"
              << "vA_map_bijective: " << yes_no(vA_map_bijective(s)) << "\n";
  }
  return kOk;
}

int cmd_prolongation(const std::string& pair, int n, const std::string& s_path, int kmax) {
  if (n < 1 || n > 8) throw std::invalid_argument("n must be between 1 and 8");
  std::vector<linalg::Matrix> g;
  if (pair == "so") {
    if (s_path.empty()) throw std::invalid_argument("--S is required for the so pair");
    const auto s = load_matrix(s_path);
    require_square_size(s, n, "S");
    g = so_basis(s);
  } else if (pair == "gl") {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        linalg::Matrix e(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        e(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = 1;
        g.push_back(e);
      }
  } else {
    throw std::invalid_argument("--pair must be so or gl");
  }
  const auto levels = full_prolongation(n, g, kmax);
  std::vector<int> degrees;
  std::vector<std::size_t> dims;
  for (const auto& l : levels) {
    degrees.push_back(l.degree);
    dims.push_back(l.basis.size());
  }
  std::cout << "pair: " << pair << "\n" << "n: " << n << "\n" << "degrees: " << list(degrees) << "\n"
            << "dimensions: " << list(dims) << "\n";
  return kOk;
}

int cmd_iso_check(int ell, const std::string& s_path) {
  const auto s = load_matrix(s_path);
  require_square_size(s, ell, "S");
  const auto report = iso_check_translation_case(s);
  std::cout << "ell: " << ell << "\n"
            << "A_dimensions: " << list(report.a_dims) << "\n"
            << "Htilde_dimensions: " << list(report.htilde_dims) << "\n"
            << "isomorphic: " << yes_no(report.isomorphic) << "\n";
  return report.isomorphic ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational Poisson cohomology toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string k_path, h_path, p_path, q_path, s_path, seed, f_text, g_text, pair = "so";
  int kmax = 2, steps = 3, n = 0, ell = 0;
  bool dims_only = false;

  auto* c1 = app.add_subcommand("check-skewadjoint", "Test K* = -K");
  c1->add_option("--K", k_path, "Operator document")->required();
  c1->callback([&] { action = [&] { return cmd_check_skewadjoint(k_path); }; });

  auto* c2 = app.add_subcommand("check-hamiltonian", "Test [K,K] = 0");
  c2->add_option("--K", k_path, "Operator document")->required();
  c2->callback([&] { action = [&] { return cmd_check_hamiltonian(k_path); }; });

  auto* c3 = app.add_subcommand("compatible", "Test [K,H] = 0");
  c3->add_option("--K", k_path)->required();
  c3->add_option("--H", h_path)->required();
  c3->callback([&] { action = [&] { return cmd_compatible(k_path, h_path); }; });

  auto* c4 = app.add_subcommand("schouten", "Schouten bracket of two polyvectors");
  c4->add_option("--P", p_path)->required();
  c4->add_option("--Q", q_path)->required();
  c4->callback([&] { action = [&] { return cmd_schouten(p_path, q_path); }; });

  auto* c5 = app.add_subcommand("cohomology", "Cohomology dimensions for constant-coefficient K");
  c5->add_option("--K", k_path)->required();
  c5->add_option("--kmax", kmax, "Largest degree reported (inclusive)")->required();
  c5->callback([&] { action = [&] { return cmd_cohomology(k_path, kmax); }; });

  auto* c6 = app.add_subcommand("casimirs", "Casimir basis");
  c6->add_option("--K", k_path)->required();
  c6->callback([&] { action = [&] { return cmd_casimirs(k_path); }; });

  auto* c7 = app.add_subcommand("lenard", "Lenard-Magri hierarchy");
  c7->add_option("--K", k_path)->required();
  c7->add_option("--H", h_path)->required();
  c7->add_option("--seed", seed, "Density of the seed Casimir")->required();
  c7->add_option("--steps", steps)->required();
  c7->callback([&] { action = [&] { return cmd_lenard(k_path, h_path, seed, steps); }; });

  auto* c8 = app.add_subcommand("inner-product", "<F|G>_K");
  c8->add_option("--K", k_path)->required();
  c8->add_option("--F", f_text, "Comma-separated expressions")->required();
  c8->add_option("--G", g_text, "Comma-separated expressions")->required();
  c8->callback([&] { action = [&] { return cmd_inner_product(k_path, f_text, g_text); }; });

  auto* c9 = app.add_subcommand("essential", "Nested Casimir bracket test");
  c9->add_option("--K", k_path)->required();
  c9->add_option("--P", p_path)->required();
  c9->callback([&] { action = [&] { return cmd_essential(k_path, p_path); }; });

  auto* c10 = app.add_subcommand("htilde", "Graded dimensions of H~(n,S)");
  c10->add_option("--n", n)->required();
  c10->add_option("--S", s_path)->required();
  c10->add_flag("--dims", dims_only, "Only print dimensions");
  c10->callback([&] { action = [&] { return cmd_htilde(n, s_path, dims_only); }; });

  auto* c11 = app.add_subcommand("prolongation", "Full prolongation dimensions");
  c11->add_option("--pair", pair, "so or gl");
  c11->add_option("--n", n)->required();
  c11->add_option("--S", s_path);
  c11->add_option("--kmax", kmax)->required();
  c11->callback([&] { action = [&] { return cmd_prolongation(pair, n, s_path, kmax); }; });

  auto* c12 = app.add_subcommand("iso-check", "Compare the translation-invariant algebra with H~(ell+1, S~)");
  c12->add_option("--ell", ell)->required();
  c12->add_option("--S", s_path)->required();
  c12->callback([&] { action = [&] { return cmd_iso_check(ell, s_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  try {
    return action ? action() : kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
