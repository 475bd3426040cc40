#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "wreathe/report.hpp"

namespace {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("WREATHE_SEED");
  if (env == nullptr) return fallback;
  return std::strtoull(env, nullptr, 10);
}

wreathe::RunOptions make_options(const std::string& sections, std::uint64_t seed,
                                 const std::vector<long>& primes) {
  wreathe::RunOptions opt;
  opt.seed = seed;
  opt.primes = primes;
  if (!sections.empty()) {
    opt.rational = opt.colength = opt.modular = opt.verify = false;
    std::stringstream ss(sections);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok == "rational")
        opt.rational = true;
      else if (tok == "colength")
        opt.colength = true;
      else if (tok == "modular")
        opt.modular = true;
      else if (tok == "verify")
        opt.verify = true;
      else
        throw wreathe::error("unknown section " + tok);
    }
  }
  return opt;
}

void explain(const std::string& section) {
  if (section == "colength") {
    std::cout
        << "Wedderburn colength of T wr G inside prod_i End_{S_i} V_i:\n"
        << "  (1/2) ( g*(delta_{T/S} + v(n)*h) - sum_i x_i^2*(delta_{S_i/S} + v(x_i d_i/h)*r_i) )\n"
        << "Inputs: g = |G|, h = [L:K], n = |ker|, v = p-adic valuation,\n"
        << "delta_{T/S} = Smith-valuation sum of the trace Gram of Z_(p)[gamma],\n"
        << "per-block invariants x_i, d_i, r_i and delta_{S_i/S}.\n"
        << "Faithful case (n = 1): the value degenerates to (1/2) g delta_{T/S} and is\n"
        << "cross-checked against the Smith-form oracle on the embedding into End_S T.\n"
        << "Central variant:\n"
        << "  (1/2) ( sum_nu (delta_{T_nu/S} + v([N:C_N(nu)])*h_nu)\n"
        << "        - sum_i (delta_{Z(S_i)/S} + v(x_i^2 d_i^2/(g h))*c_i) )\n";
  } else if (section == "modular") {
    std::cout
        << "Simple-module count for Lambda-bar = Tbar wr G over F_p:\n"
        << "  z = sum over p'-classes sigma of codim V_sigma, where\n"
        << "  V_sigma = < (y^sigma - y)z, y^rho - y : y,z in Tbar0, rho in C_G(sigma) >.\n"
        << "Verified equal to dim Z(Lambda-bar/Jac) and to dim Lambda-bar/bLCP, where\n"
        << "bLCP is the stabilized p-power preimage of the commutator space.\n"
        << "Semisimplicity criterion: e = 1 and p does not divide n.\n";
  } else if (section == "rational") {
    std::cout
        << "Rational structure of L wr G:\n"
        << "  center basis: sum_{rho in C_G(sigma)\\G} (sigma y)^rho over Cl_N^G and\n"
        << "  K-bases of L_sigma = Fix_{C_G(sigma)} L; dim = #classes(N).\n"
        << "  eps_1 = (1/n) sum_{nu in N} nu.\n"
        << "  Plancherel: (xi,eta) = sum_i (x_i d_i/g) tr_{K_i/K} Tr_{K_i}(omega_i(xi) omega_i(eta)).\n"
        << "  Identity suites: Fourier inversion, Schur relations, orthogonality,\n"
        << "  character support, central idempotents, central Plancherel.\n";
  } else {
    throw wreathe::error("unknown section " + section);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with twisted group rings of groups acting on p-local number rings"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string sections;
  std::uint64_t seed = seed_from_env(0);
  std::vector<long> primes;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    cmd->add_option("--out", out_path, "write the JSON report to this path");
    cmd->add_option("--seed", seed, "seed for the randomized kernels (default 0 or WREATHE_SEED)");
    cmd->add_option("--primes", primes, "override the scenario's prime list");
    cmd->add_option("--sections", sections, "comma list: rational,colength,modular,verify");
  };

  auto* report_cmd = app.add_subcommand("report", "run the scenario and emit a JSON report");
  add_common(report_cmd);
  auto* verify_cmd =
      app.add_subcommand("verify", "run the invariant suites; exit 0 iff everything passes");
  add_common(verify_cmd);
  auto* explain_cmd = app.add_subcommand("explain", "print the formula behind a report section");
  std::string explain_section;
  explain_cmd->add_option("section", explain_section, "rational | colength | modular")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (explain_cmd->parsed()) {
      explain(explain_section);
      return 0;
    }
    auto bundle = wreathe::load_scenario(scenario_path);
    auto opt = make_options(sections, seed, primes);
    if (verify_cmd->parsed()) opt.verify = true;
    auto rep = wreathe::run_scenario(*bundle, opt);
    auto text = wreathe::render_report(rep);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << text;
    } else {
      std::cout << text;
    }
    if (opt.verify) {
      long failures = rep.value("verify_failures", 0L);
      if (failures > 0) {
        std::cerr << failures << " verification failures\n";
        return 1;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
