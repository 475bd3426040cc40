#pragma once

#include "wreathe/scenario.hpp"

namespace wreathe {

struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  std::string note;

  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}
  bool passed() const { return failures == 0; }
};

namespace detail {

// Random elements with small support: keeps the exact-arithmetic property
// checks fast on large rings without weakening them.
inline TwistedElement random_twisted(const TwistedRing& T, SplitMix64& rng) {
  auto x = T.zero();
  long support = std::min<long>(T.g(), 6);
  for (long t = 0; t < support; ++t) {
    long s = static_cast<long>(rng.bounded(T.g()));
    for (long l = 0; l < T.m(); ++l)
      x.c[s][l] = Rational(static_cast<long>(rng.bounded(7)) - 3);
  }
  return x;
}

inline void tick(SuiteResult& r, bool ok) {
  ++r.checks;
  if (!ok) ++r.failures;
}

}  // namespace detail

// Rational-side invariant suites for one scenario.
inline std::vector<SuiteResult> verify_rational(const ScenarioBundle& B, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const auto& T = B.twisted();
  const auto& R = B.ring();
  SplitMix64 rng(seed ^ 0x7e57ULL);

  {
    SuiteResult r("mul-associativity");
    for (int t = 0; t < 500; ++t) {
      auto x = detail::random_twisted(T, rng), y = detail::random_twisted(T, rng),
           z = detail::random_twisted(T, rng);
      detail::tick(r, T.eq(T.mul(T.mul(x, y), z), T.mul(x, T.mul(y, z))));
    }
    out.push_back(r);
  }
  {
    SuiteResult r("bilinear-form");
    for (int t = 0; t < 200; ++t) {
      auto x = detail::random_twisted(T, rng), y = detail::random_twisted(T, rng),
           z = detail::random_twisted(T, rng);
      detail::tick(r, T.form(x, y) == T.form(y, x));
      detail::tick(r, T.form(T.mul(x, y), z) == T.form(x, T.mul(y, z)));
    }
    out.push_back(r);
  }
  {
    SuiteResult r("center");
    auto cb = center_basis(T);
    const auto& G = R.group();
    std::vector<bool> seen(G.order(), false);
    long classes = 0;
    for (int nu : R.kernel()) {
      if (seen[nu]) continue;
      ++classes;
      for (int nu2 : R.kernel()) seen[G.conj(nu, nu2)] = true;
    }
    detail::tick(r, cb.dim() == classes);
    for (auto& z : cb.all)
      for (long s = 0; s < T.g(); ++s)
        for (long l = 0; l < T.m(); ++l) {
          auto b = T.basis_elem(static_cast<int>(s), l);
          detail::tick(r, T.eq(T.mul(z, b), T.mul(b, z)));
        }
    // central form: scaling h (x,y)^Z = (x,y) and associativity
    auto zg = central_gram(T, cb);
    for (long i = 0; i < cb.dim(); ++i)
      for (long j = 0; j < cb.dim(); ++j)
        detail::tick(r, Rational(R.h()) * zg(i, j) == T.form(cb.all[i], cb.all[j]));
    // when every centralizer covers G over N, the center basis is made of
    // N-class sums with coefficient one
    if (centralizer_assumption_holds(R)) {
      for (auto& item : cb.items)
        for (auto& z : item.elems)
          for (long s = 0; s < T.g(); ++s) {
            if (T.coeff_field().is_zero(z.c[s])) continue;
            detail::tick(r, T.coeff_field().eq(z.c[s], T.coeff_field().one()) &&
                                R.in_kernel(static_cast<int>(s)));
          }
    }
    out.push_back(r);
  }
  {
    SuiteResult r("epsilon1");
    auto e1 = epsilon1(T);
    detail::tick(r, T.eq(T.mul(e1, e1), e1));
    for (long s = 0; s < T.g(); ++s) {
      auto b = T.group_elem(static_cast<int>(s));
      detail::tick(r, T.eq(T.mul(e1, b), T.mul(b, e1)));
    }
    detail::tick(r, principal_rep(T, e1) ==
                        Matrix<Rational>::identity(T.m(), Rational(1), Rational(0)));
    out.push_back(r);
  }
  {
    SuiteResult r("principal-representation");
    detail::tick(r, principal_span_rank(T) == T.m() * T.m());
    out.push_back(r);
  }
  if (T.dim() <= 16) {
    SuiteResult r("maschke");
    RationalField Q;
    auto M = regular_module(T);
    if (R.n() == 1) {
      auto f = Matrix<Rational>::identity(M.dim, Rational(1), Rational(0));
      auto res = maschke_coretraction(T, M, M, f);
      detail::tick(r, res.factor == Rational(1));
    } else {
      // projection onto eps1 * (L wr G)
      auto e1 = epsilon1(T);
      Matrix<Rational> lmul(M.dim, M.dim, Rational(0));
      for (long s = 0; s < T.g(); ++s)
        for (long l = 0; l < T.m(); ++l) {
          auto prod = T.mul(e1, T.basis_elem(static_cast<int>(s), l));
          for (long ss = 0; ss < T.g(); ++ss)
            for (long c = 0; c < T.m(); ++c) lmul(s * T.m() + l, ss * T.m() + c) = prod.c[ss][c];
        }
      auto img = linear_solve(Q, lmul, SolveMode::image).basis;
      RModule M2;
      M2.dim = static_cast<long>(img.rows());
      auto coords = [&](const std::vector<Rational>& v) {
        auto bt = mat_transpose(Q, img);
        return *linear_solve(Q, bt, SolveMode::solve, &v).sol;
      };
      for (long b = 0; b < T.g() * T.m(); ++b) {
        Matrix<Rational> A(M2.dim, M2.dim, Rational(0));
        for (long rr = 0; rr < M2.dim; ++rr) {
          auto v = vec_mat(Q, img.row(rr), M.act[b]);
          auto cc = coords(v);
          for (long c = 0; c < M2.dim; ++c) A(rr, c) = cc[c];
        }
        M2.act.push_back(std::move(A));
      }
      Matrix<Rational> f(M.dim, M2.dim, Rational(0));
      for (long rr = 0; rr < M.dim; ++rr) {
        auto cc = coords(lmul.row(rr));
        for (long c = 0; c < M2.dim; ++c) f(rr, c) = cc[c];
      }
      auto res = maschke_coretraction(T, M, M2, f);
      detail::tick(r, res.factor == Rational(1));
    }
    // integral variant on each declared prime
    for (long p : B.sc.primes) {
      auto f = Matrix<Rational>::identity(M.dim, Rational(1), Rational(0));
      auto res = maschke_coretraction(T, M, M, f, p);
      auto ld = R.local_data(p);
      Rational expect = Rational(Int::power(Int(p), ld.s)) * Rational(R.n());
      detail::tick(r, res.factor == expect);
      bool integral = true;
      for (std::size_t i = 0; i < res.i.rows(); ++i)
        for (std::size_t j = 0; j < res.i.cols(); ++j)
          integral &= res.i(i, j).p_integral(Int(p));
      detail::tick(r, integral);
    }
    out.push_back(r);
  }
  if (B.wedderburn_complete()) {
    const auto& W = *B.W;
    {
      SuiteResult r("plancherel");
      for (int t = 0; t < 200; ++t) {
        auto x = detail::random_twisted(T, rng), y = detail::random_twisted(T, rng);
        detail::tick(r, plancherel_check(T, W, x, y).equal);
      }
      out.push_back(r);
    }
    {
      SuiteResult r("fourier-inversion");
      for (long s = 0; s < T.g(); ++s)
        for (long l = 0; l < T.m(); ++l) {
          auto b = T.basis_elem(static_cast<int>(s), l);
          std::vector<KMat> phi;
          for (auto& blk : W.blocks) phi.push_back(blk.of(T, b));
          detail::tick(r, T.eq(fourier_invert(T, W, phi), b));
        }
      for (int t = 0; t < 10; ++t) {
        std::vector<KMat> phi;
        for (auto& blk : W.blocks) {
          KMat M(blk.x, blk.x, blk.K.zero());
          for (long i = 0; i < blk.x; ++i)
            for (long j = 0; j < blk.x; ++j) {
              auto e = blk.K.zero();
              for (auto& q : e) q = Rational(static_cast<long>(rng.bounded(5)) - 2);
              M(i, j) = e;
            }
          phi.push_back(M);
        }
        auto back = fourier_invert(T, W, phi);
        bool ok = true;
        for (std::size_t i = 0; i < W.blocks.size(); ++i)
          ok &= (W.blocks[i].of(T, back) == phi[i]);
        detail::tick(r, ok);
      }
      out.push_back(r);
    }
    {
      SuiteResult r("schur-relations");
      for (std::size_t i = 0; i < W.blocks.size(); ++i)
        for (std::size_t ip = 0; ip < W.blocks.size(); ++ip)
          for (long a = 0; a < W.blocks[i].x; ++a)
            for (long b = 0; b < W.blocks[i].x; ++b)
              for (long ap = 0; ap < W.blocks[ip].x; ++ap)
                for (long bp = 0; bp < W.blocks[ip].x; ++bp) {
                  auto v = schur_sum(T, W, i, a, b, ip, ap, bp);
                  auto expect = W.blocks[i].K.zero();
                  if (i == ip && a == ap && b == bp)
                    expect[0] = Rational(Int(T.g()), Int(W.blocks[i].x * W.blocks[i].K.d()));
                  detail::tick(r, v == expect);
                }
      out.push_back(r);
    }
    {
      SuiteResult r("orthogonality");
      for (std::size_t i = 0; i < W.blocks.size(); ++i)
        for (std::size_t ip = 0; ip < W.blocks.size(); ++ip) {
          Rational expect =
              (i == ip) ? Rational(T.g()) * Rational(W.blocks[i].K.c()) : Rational(0);
          detail::tick(r, orthogonality_sum(T, W, i, ip) == expect);
        }
      out.push_back(r);
    }
    {
      SuiteResult r("characters");
      detail::tick(r, character_support_check(T, W));
      auto eps = central_idempotents(T, W);  // self-verifying
      for (std::size_t i = 0; i < W.blocks.size(); ++i)
        for (std::size_t j = 0; j < W.blocks.size(); ++j) {
          Rational expect = (i == j) ? Rational(W.blocks[i].x * W.blocks[i].K.c() *
                                                W.blocks[i].K.d())
                                     : Rational(0);
          detail::tick(r, character(T, W, i, eps[j]) == expect);
        }
      detail::tick(r, T.eq(eps[0], epsilon1(T)));
      // integrality n p^s eps_i at every declared prime
      for (long p : B.sc.primes) {
        auto ld = R.local_data(p);
        Rational scale = Rational(R.n()) * Rational(Int::power(Int(p), ld.s));
        for (auto& e : eps) detail::tick(r, T.p_integral(T.scale(scale, e), p));
      }
      out.push_back(r);
    }
    {
      SuiteResult r("central-plancherel");
      auto cb = center_basis(T);
      for (long i = 0; i < cb.dim(); ++i)
        for (long j = 0; j < cb.dim(); ++j) {
          auto res = central_plancherel_check(T, W, cb.all[i], cb.all[j]);
          detail::tick(r, res.equal && res.scaling_ok);
        }
      out.push_back(r);
    }
    {
      SuiteResult r("dimension-audits");
      auto audit = dimension_audits(T, W, B.sc.primes);
      detail::tick(r, audit.dims_ok);
      detail::tick(r, audit.center_ok);
      detail::tick(r, audit.morita_ok);
      detail::tick(r, audit.xdh_integral);
      detail::tick(r, audit.xdh_unit_ok);
      out.push_back(r);
    }
    if (R.faithful()) {
      SuiteResult r("noether-inversion");
      for (long a = 0; a < T.m(); ++a)
        for (long b = 0; b < T.m(); ++b) {
          Matrix<Rational> phi(T.m(), T.m(), Rational(0));
          phi(a, b) = Rational(1);
          detail::tick(r, principal_rep(T, noether_invert(T, phi)) == phi);
        }
      out.push_back(r);
    }
  }
  return out;
}

// Modular-side invariant suites at one prime.
inline std::vector<SuiteResult> verify_modular(const ScenarioBundle& B, long p,
                                               std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const auto& R = B.ring();
  {
    SuiteResult r("local-data");
    auto ld = R.local_data(p);
    detail::tick(r, ld.e * ld.f * ld.d == R.m());
    detail::tick(r, ld.s <= ld.t);
    detail::tick(r, (ld.t == 0) == (ld.e == 1));
    detail::tick(r, (ld.delta == 0) == (ld.t == 0));
    out.push_back(r);
  }
  {
    SuiteResult r("idempotent-orbit");
    auto rd = R.reduce_mod_p(p);
    FpCtx k(p);
    std::set<std::vector<FpCtx::Elem>> orbit;
    for (std::size_t s = 0; s < R.group().order(); ++s)
      orbit.insert(vec_mat(k, rd.t0_idempotents[0], rd.act_t0[s]));
    detail::tick(r, orbit.size() == rd.t0_idempotents.size());
    for (auto& e : rd.t0_idempotents) detail::tick(r, orbit.count(e) == 1);
    out.push_back(r);
  }
  {
    SuiteResult r("brauer-count");
    auto an = analyze_modular(R, p, seed);
    detail::tick(r, an.prediction == an.semisimple);
    detail::tick(r, an.triple_equal);
    bool all_split = true;
    long h_over_e = R.h() / R.local_data(p).e;
    for (auto& b : an.blocks) {
      all_split &= b.split;
      detail::tick(r, b.simple_dim % h_over_e == 0);
    }
    detail::tick(r, static_cast<long>(an.blocks.size()) <= an.z);
    detail::tick(r, (static_cast<long>(an.blocks.size()) == an.z) == all_split);
    if (an.radT_test_applicable) detail::tick(r, an.radical_is_radT_ideal);
    // p-group: only Tbar0 survives
    bool pgroup = true;
    for (long o = static_cast<long>(R.group().order()); o > 1;) {
      if (o % p != 0) {
        pgroup = false;
        break;
      }
      o /= p;
    }
    if (pgroup) detail::tick(r, an.blocks.size() == 1);
    // e = 1 implies codim V_1 = 1
    auto rd = R.reduce_mod_p(p);
    if (rd.e == 1) detail::tick(r, v_sigma(R, rd, R.group().id()).codim == 1);
    // d = 1: codim V_sigma = 0 outside the Tbar0-kernel
    if (rd.irreducibles.size() == 1) {
      auto N0 = t0_action_kernel(R, rd);
      for (auto& c : R.group().conjugacy_classes()) {
        if (R.group().element_order(c.rep) % p == 0) continue;
        bool in_n0 = std::find(N0.begin(), N0.end(), c.rep) != N0.end();
        if (!in_n0) detail::tick(r, v_sigma(R, rd, c.rep).codim == 0);
      }
    }
    // trivial action on Tbar0: z = #p'-classes * dim Tbar0
    auto N0 = t0_action_kernel(R, rd);
    if (N0.size() == R.group().order())
      detail::tick(r, an.z == static_cast<long>(R.group().p_prime_class_reps(p).size()) *
                                  rd.dim_t0);
    out.push_back(r);
  }
  return out;
}

// Colength suites at one prime.
inline std::vector<SuiteResult> verify_colength(const ScenarioBundle& B, long p,
                                                std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const auto& R = B.ring();
  const auto& T = B.twisted();
  (void)seed;
  auto ld = R.local_data(p);
  if (R.faithful()) {
    SuiteResult r("colength-oracle");
    auto oracle = direct_embedding_colength(T, p);
    auto formula = wedderburn_colength(R.g(), R.h(), 1, 0, ld.delta,
                                       {{R.h(), 1, 1, 1, 0, 0}}, p);
    detail::tick(r, formula == Rational(oracle.colength));
    detail::tick(r, oracle.annihilation_ok);
    detail::tick(r, oracle.chain_ok);
    if (ld.delta == 0) detail::tick(r, oracle.colength == 0);
    out.push_back(r);
  }
  if (!B.sc.blocks.empty()) {
    SuiteResult r("colength-formula");
    try {
      auto blocks = B.block_invariants(p);
      long vn = 0;
      {
        long n = R.n();
        while (n % p == 0) {
          n /= p;
          ++vn;
        }
      }
      auto val = wedderburn_colength(R.g(), R.h(), R.n(), vn, ld.delta, blocks, p);
      detail::tick(r, val.is_integer() && val.sign() >= 0);
      auto bc = bound_check(blocks, R.g(), R.h(), R.n(), ld.t, p);
      detail::tick(r, bc.ok);
      detail::tick(r, bc.integrality_ok);
      detail::tick(r, bc.unit_ok);
      const WedderburnData* W = B.wedderburn_complete() ? &*B.W : nullptr;
      auto cc = central_colength(T, p, blocks, W);
      detail::tick(r, cc.formula.is_integer() && cc.formula.sign() >= 0);
      if (cc.has_oracle) detail::tick(r, cc.formula == Rational(cc.oracle));
    } catch (const error& e) {
      ++r.checks;
      ++r.failures;
      r.note = e.what();
    }
    out.push_back(r);
  }
  return out;
}

inline std::vector<SuiteResult> verify_all(const ScenarioBundle& B, std::uint64_t seed,
                                           const std::vector<long>& primes) {
  auto out = verify_rational(B, seed);
  for (long p : primes) {
    for (auto& r : verify_modular(B, p, seed)) {
      r.name = "p" + std::to_string(p) + ":" + r.name;
      out.push_back(r);
    }
    for (auto& r : verify_colength(B, p, seed)) {
      r.name = "p" + std::to_string(p) + ":" + r.name;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace wreathe
