#pragma once

#include <future>

#include <json.hpp>

#include "wreathe/verify.hpp"

namespace wreathe {

using json = nlohmann::json;

namespace detail {

// Printer for twisted elements: the stored right form sigma*(y) and the
// normalized left form y*sigma with y rewritten through the action.
inline json element_json(const TwistedRing& T, const TwistedElement& x) {
  const auto& L = T.coeff_field();
  const auto& G = T.group();
  std::string right, left;
  for (long s = 0; s < T.g(); ++s) {
    if (L.is_zero(x.c[s])) continue;
    std::string grp = perm_str(G.elem(static_cast<int>(s)));
    std::string coeff = L.to_string(x.c[s]);
    if (!right.empty()) right += " + ";
    right += (coeff == "1") ? grp : grp + "*(" + coeff + ")";
    // left coefficient: sigma y = (y^(sigma^-1)) sigma
    auto yl = T.ring_data().apply(G.inv(static_cast<int>(s)), x.c[s]);
    std::string lc = L.to_string(yl);
    if (!left.empty()) left += " + ";
    left += (lc == "1") ? grp : "(" + lc + ")*" + grp;
  }
  if (right.empty()) right = left = "0";
  return json{{"right_form", right}, {"left_form", left}};
}

inline json suite_json(const std::vector<SuiteResult>& suites) {
  json out = json::object();
  for (auto& s : suites) {
    json j{{"checks", s.checks}, {"failures", s.failures}, {"pass", s.passed()}};
    if (!s.note.empty()) j["note"] = s.note;
    out[s.name] = j;
  }
  return out;
}

}  // namespace detail

struct RunOptions {
  std::uint64_t seed = 0;
  std::vector<long> primes;  // override; empty = scenario primes
  bool rational = true;
  bool colength = true;
  bool modular = true;
  bool verify = false;
};

inline json run_scenario(const ScenarioBundle& B, const RunOptions& opt) {
  const auto& R = B.ring();
  const auto& T = B.twisted();
  json rep;
  rep["scenario"] = B.sc.name;
  rep["seed"] = std::to_string(opt.seed);
  {
    json grp;
    grp["order"] = R.g();
    grp["degree"] = R.group().degree();
    grp["classes"] = R.group().conjugacy_classes().size();
    json gens = json::array();
    for (int gi : R.group().generator_indices()) gens.push_back(perm_str(R.group().elem(gi)));
    grp["generators"] = gens;
    rep["group"] = grp;
  }
  {
    RationalField Q;
    json fld;
    fld["mu"] = poly_str(Q, R.field().modulus());
    fld["degree"] = R.m();
    fld["kernel_order_n"] = R.n();
    fld["image_order_h"] = R.h();
    fld["fixed_degree"] = R.fixed_degree();
    json ker = json::array();
    for (int nu : R.kernel()) ker.push_back(perm_str(R.group().elem(nu)));
    fld["kernel"] = ker;
    rep["field"] = fld;
  }
  std::vector<long> primes = opt.primes.empty() ? B.sc.primes : opt.primes;

  if (opt.rational) {
    json rat;
    auto cb = center_basis(T);
    rat["center_dim"] = cb.dim();
    json basis = json::array();
    for (auto& z : cb.all) basis.push_back(detail::element_json(T, z));
    rat["center_basis"] = basis;
    rat["epsilon1"] = detail::element_json(T, epsilon1(T));
    rat["centralizer_assumption"] = centralizer_assumption_holds(R);
    if (B.wedderburn_complete()) {
      auto audit = dimension_audits(T, *B.W, primes);
      json a;
      a["dims_ok"] = audit.dims_ok;
      a["center_ok"] = audit.center_ok;
      a["morita_ok"] = audit.morita_ok;
      a["xdh_integral"] = audit.xdh_integral;
      a["xdh_unit_ok"] = audit.xdh_unit_ok;
      json dims = json::array();
      for (auto& b : B.W->blocks) {
        json bj;
        bj["x"] = b.x;
        bj["r"] = b.K.r();
        bj["c"] = b.K.c();
        bj["d"] = b.K.d();
        dims.push_back(bj);
      }
      a["blocks"] = dims;
      rat["audits"] = a;
    } else if (B.W.has_value()) {
      rat["audits"] = "skipped: missing blocks";
    } else {
      rat["audits"] = "skipped: no representation data";
    }
    rep["rational"] = rat;
  }

  // Per-prime evaluations are independent; run them concurrently and
  // assemble in the declared order.
  auto eval_prime = [&](long p) {
    json pj;
    auto ld = R.local_data(p);
    pj["local"] = json{{"e", ld.e}, {"f", ld.f}, {"d", ld.d},
                       {"s", ld.s}, {"t", ld.t}, {"delta", ld.delta}};
    pj["dedekind_maximal"] = dedekind_pmaximal(R.field().modulus(), p);
    auto pr = R.projectivity_check(p);
    pj["projective"] = json{{"verdict", pr.projective}, {"reason", pr.reason}};
    auto rd = R.reduce_mod_p(p);
    pj["residue"] = json{{"tbar", R.describe_residue(rd, false)},
                         {"tbar0", R.describe_residue(rd, true)},
                         {"dim_tbar", rd.dim_tbar},
                         {"dim_tbar0", rd.dim_t0}};
    if (opt.modular) {
      auto an = analyze_modular(R, p, opt.seed);
      json mj;
      mj["dim"] = an.dim;
      mj["semisimple"] = an.semisimple;
      mj["semisimple_predicted"] = an.prediction;
      mj["radical_dim"] = an.radical_dim;
      mj["z"] = an.z;
      mj["center_dim_semisimple_quotient"] = an.center_dim_ss;
      mj["kulshammer_codim"] = an.kulshammer_codim;
      mj["triple_equality"] = an.triple_equal;
      json blocks = json::array();
      for (auto& b : an.blocks) {
        blocks.push_back(json{{"dim", b.dim},
                              {"x", b.x},
                              {"c", b.c},
                              {"simple_dim", b.simple_dim},
                              {"endo", b.endo},
                              {"split", b.split}});
      }
      mj["blocks"] = blocks;
      json vs = json::object();
      for (auto& [name, codim] : an.v_codims) vs[name] = codim;
      mj["v_sigma_codim"] = vs;
      if (an.radT_test_applicable) mj["radical_equals_radT_ideal"] = an.radical_is_radT_ideal;
      pj["modular"] = mj;
    }
    if (opt.colength) {
      json cj;
      bool any = false;
      if (R.faithful() && R.fixed_degree() == 1) {
        auto oracle = direct_embedding_colength(T, p);
        auto formula =
            wedderburn_colength(R.g(), R.h(), 1, 0, ld.delta, {{R.h(), 1, 1, 1, 0, 0}}, p);
        cj["formula"] = formula.str();
        cj["oracle"] = oracle.colength;
        json v = json::array();
        for (long x : oracle.cokernel_valuations) v.push_back(x);
        cj["cokernel_valuations"] = v;
        cj["annihilation_ok"] = oracle.annihilation_ok;
        cj["duality_chain_ok"] = oracle.chain_ok;
        any = true;
      }
      if (!B.sc.blocks.empty()) {
        try {
          auto blocks = B.block_invariants(p);
          long vn = 0;
          for (long n0 = R.n(); n0 % p == 0; n0 /= p) ++vn;
          auto val = wedderburn_colength(R.g(), R.h(), R.n(), vn, ld.delta, blocks, p);
          cj["formula"] = val.str();
          const WedderburnData* W = B.wedderburn_complete() ? &*B.W : nullptr;
          auto cc = central_colength(T, p, blocks, W);
          cj["central_formula"] = cc.formula.str();
          if (cc.has_oracle) cj["central_oracle"] = cc.oracle;
          json terms = json::object();
          for (auto& [name, term] : cc.class_terms) terms[name] = term;
          cj["central_class_terms"] = terms;
          auto bc = bound_check(blocks, R.g(), R.h(), R.n(), ld.t, p);
          cj["bound_ok"] = bc.ok && bc.integrality_ok && bc.unit_ok;
          any = true;
        } catch (const error& e) {
          cj["blocks"] = std::string("skipped: ") + e.what();
        }
      }
      if (!any && cj.empty())
        pj["colength"] = "skipped: no faithful action and no block invariants";
      else
        pj["colength"] = cj;
    }
    return pj;
  };
  json primes_json = json::object();
  std::vector<std::future<json>> futures;
  for (long p : primes)
    futures.push_back(std::async(std::launch::async, eval_prime, p));
  for (std::size_t i = 0; i < primes.size(); ++i)
    primes_json[std::to_string(primes[i])] = futures[i].get();
  rep["primes"] = primes_json;

  if (opt.verify) {
    auto suites = verify_all(B, opt.seed, primes);
    rep["verify"] = detail::suite_json(suites);
    long failures = 0;
    for (auto& s : suites) failures += s.failures;
    rep["verify_failures"] = failures;
  }
  return rep;
}

inline std::string render_report(const json& rep) { return rep.dump(2) + "\n"; }

}  // namespace wreathe
