#pragma once

#include <optional>

#include "wreathe/fq_algebra.hpp"

namespace wreathe {

namespace detail {

// Minimal polynomial of x in A (unit as x^0), ascending coefficients, monic.
inline std::vector<std::int64_t> min_poly(const FqAlgebra& A, const FpVec& x) {
  const auto& F = A.field();
  FpSubspace S(F, A.dim());
  std::vector<FpVec> powers;
  FpVec cur = A.unit();
  while (true) {
    powers.push_back(cur);
    if (!S.insert(cur)) break;
    cur = A.mul(cur, x);
  }
  long d = static_cast<long>(powers.size()) - 1;  // first dependent power
  // solve powers[d] = sum_{j<d} c_j powers[j]
  FpMat M(d, A.dim(), 0);
  for (long j = 0; j < d; ++j) M.set_row(j, powers[j]);
  auto Mt = mat_transpose(F, M);
  auto b = powers[d];
  auto res = linear_solve(F, Mt, SolveMode::solve, &b);
  std::vector<std::int64_t> mp(d + 1, 0);
  mp[d] = 1;
  for (long j = 0; j < d; ++j) mp[j] = F.neg((*res.sol)[j]);
  return mp;
}

// Evaluate a polynomial at x inside A.
inline FpVec eval_in_algebra(const FqAlgebra& A, const std::vector<std::int64_t>& poly,
                             const FpVec& x) {
  const auto& F = A.field();
  FpVec r = A.zero();
  for (long j = static_cast<long>(poly.size()) - 1; j >= 0; --j) {
    r = A.mul(r, x);
    if (poly[j] != 0)
      for (long t = 0; t < A.dim(); ++t)
        r[t] = F.add(r[t], F.mul(poly[j], A.unit()[t]));
  }
  return r;
}

// Nilradical of the commutative span of zbasis (closed under multiplication),
// via the kernel chain of the p-power map.
inline std::vector<FpVec> commutative_nilradical(const FqAlgebra& A,
                                                 const std::vector<FpVec>& zbasis) {
  const auto& F = A.field();
  long zdim = static_cast<long>(zbasis.size());
  if (zdim == 0) return {};
  // coordinates within the span
  FpMat Zb(zdim, A.dim(), 0);
  for (long i = 0; i < zdim; ++i) Zb.set_row(i, zbasis[i]);
  auto Zt = mat_transpose(F, Zb);
  auto coords = [&](const FpVec& v) {
    auto res = linear_solve(F, Zt, SolveMode::solve, &v);
    return *res.sol;
  };
  FpMat P(zdim, zdim, 0);
  for (long i = 0; i < zdim; ++i) {
    auto xp = A.pth_power(zbasis[i]);
    P.set_row(i, coords(xp));
  }
  // ascending kernel chain of P^m (row-vector convention: v -> v P)
  FpMat Pk = P;
  long prev = -1;
  Mat<FpCtx> K;
  for (long m = 1; m <= zdim + 1; ++m) {
    K = kernel_basis(F, mat_transpose(F, Pk));
    if (static_cast<long>(K.rows()) == prev) break;
    prev = static_cast<long>(K.rows());
    Pk = mat_mul(F, Pk, P);
  }
  std::vector<FpVec> out;
  for (std::size_t r = 0; r < K.rows(); ++r) {
    FpVec v(A.dim(), 0);
    for (long c = 0; c < zdim; ++c) {
      if (K(r, c) == 0) continue;
      for (long t = 0; t < A.dim(); ++t) v[t] = F.add(v[t], F.mul(K(r, c), zbasis[c][t]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Primitive idempotents of an etale commutative subalgebra spanned by zbasis
// (must contain the unit). Deterministic for a fixed seed.
inline std::vector<FpVec> etale_idempotents(const FqAlgebra& A, const std::vector<FpVec>& zbasis,
                                            std::uint64_t seed) {
  const auto& F = A.field();
  std::vector<FpVec> parts = {A.unit()};
  SplitMix64 rng(seed ^ 0xb10cULL);
  FpCtx k(F.p());
  auto field_count = [&](const std::vector<FpVec>& span_basis) {
    // dim of the Frobenius-fixed subspace x -> x^p - x on the span
    long zd = static_cast<long>(span_basis.size());
    FpMat Zb(zd, A.dim(), 0);
    for (long i = 0; i < zd; ++i) Zb.set_row(i, span_basis[i]);
    auto Zt = mat_transpose(F, Zb);
    FpMat D(zd, zd, 0);
    for (long i = 0; i < zd; ++i) {
      auto img = A.pth_power(span_basis[i]);
      for (long t = 0; t < A.dim(); ++t) img[t] = F.sub(img[t], span_basis[i][t]);
      auto res = linear_solve(F, Zt, SolveMode::solve, &img);
      D.set_row(i, *res.sol);
    }
    return static_cast<long>(kernel_basis(F, mat_transpose(F, D)).rows());
  };
  auto span_of_part = [&](const FpVec& e) {
    FpSubspace S(F, A.dim());
    std::vector<FpVec> rows;
    for (auto& z : zbasis) {
      auto v = A.mul(z, e);
      if (S.insert(v)) rows.push_back(v);
    }
    return rows;
  };
  bool progress = true;
  int guard = 0;
  while (progress) {
    if (++guard > 200) throw error("etale splitting did not converge");
    progress = false;
    std::vector<FpVec> next_parts;
    for (auto& e : parts) {
      auto span = span_of_part(e);
      if (static_cast<long>(span.size()) <= 1 || field_count(span) == 1) {
        next_parts.push_back(e);
        continue;
      }
      // find a splitting element
      bool split_done = false;
      for (int attempt = 0; attempt < 40 && !split_done; ++attempt) {
        FpVec z;
        if (attempt < static_cast<int>(span.size()))
          z = span[attempt];
        else {
          z = A.zero();
          for (auto& b : span) {
            auto c = static_cast<std::int64_t>(rng.bounded(F.p()));
            for (long t = 0; t < A.dim(); ++t) z[t] = F.add(z[t], F.mul(c, b[t]));
          }
        }
        // minimal polynomial within the unital span (unit e)
        FpSubspace S(F, A.dim());
        std::vector<FpVec> powers;
        FpVec cur = e;
        while (true) {
          powers.push_back(cur);
          if (!S.insert(cur)) break;
          cur = A.mul(cur, z);
        }
        long d = static_cast<long>(powers.size()) - 1;
        if (d <= 1) continue;
        FpMat M(d, A.dim(), 0);
        for (long j = 0; j < d; ++j) M.set_row(j, powers[j]);
        auto Mt = mat_transpose(F, M);
        auto bvec = powers[d];
        auto sol = linear_solve(F, Mt, SolveMode::solve, &bvec);
        std::vector<std::int64_t> mp(d + 1, 0);
        mp[d] = 1;
        for (long j = 0; j < d; ++j) mp[j] = F.neg((*sol.sol)[j]);
        auto fac = factor_poly_fq(k, Poly<FpCtx>::from(k, mp), seed + attempt);
        if (fac.factors.size() <= 1) continue;
        // CRT idempotents: e_t = (g_t * (g_t^{-1} mod f_t))(z) * e
        for (auto& [f_t, mult] : fac.factors) {
          if (mult != 1) throw error("radical nonzero");
          auto g_t = Poly<FpCtx>::constant(k, k.one());
          for (auto& [f_s, ms] : fac.factors)
            if (!poly_eq(k, f_s, f_t)) g_t = poly_mul(k, g_t, f_s);
          auto [gg, u, v] = poly_xgcd(k, g_t, f_t);
          (void)v;
          if (gg.degree() != 0) throw error("radical nonzero");
          auto idempoly = poly_mul(k, u, g_t);
          std::vector<std::int64_t> coeffs(idempoly.degree() + 1, 0);
          for (long j = 0; j <= idempoly.degree(); ++j) coeffs[j] = idempoly.coeffs()[j];
          // evaluate at z with unit e
          FpVec et = A.zero();
          FpVec zp = e;
          for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j] != 0)
              for (long t = 0; t < A.dim(); ++t)
                et[t] = F.add(et[t], F.mul(coeffs[j], zp[t]));
            zp = A.mul(zp, z);
          }
          if (A.mul(et, et) != et) throw error("radical nonzero");
          next_parts.push_back(et);
        }
        split_done = true;
        progress = true;
      }
      if (!split_done) next_parts.push_back(e);  // retried on the next sweep
    }
    parts = std::move(next_parts);
  }
  for (auto& e : parts)
    if (field_count(span_of_part(e)) != 1) throw error("etale splitting did not converge");
  return parts;
}

// Unital subalgebra A*e for a central idempotent e.
struct CentralFactor {
  FqAlgebra alg;
  std::vector<FpVec> embed;  // basis of the factor inside A
};

inline CentralFactor central_factor(const FqAlgebra& A, const FpVec& e) {
  const auto& F = A.field();
  FpSubspace S(F, A.dim());
  std::vector<FpVec> basis;
  for (long i = 0; i < A.dim(); ++i) {
    auto v = A.mul(A.basis(i), e);
    if (S.insert(v)) basis.push_back(v);
  }
  long q = static_cast<long>(basis.size());
  FpMat B(q, A.dim(), 0);
  for (long i = 0; i < q; ++i) B.set_row(i, basis[i]);
  auto Bt = mat_transpose(F, B);
  auto coords = [&](const FpVec& v) {
    auto res = linear_solve(F, Bt, SolveMode::solve, &v);
    return *res.sol;
  };
  std::vector<std::int64_t> sc(q * q * q, 0);
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      auto prod = coords(A.mul(basis[a], basis[b]));
      for (long c = 0; c < q; ++c) sc[(a * q + b) * q + c] = prod[c];
    }
  return {FqAlgebra(F, q, std::move(sc), coords(e), false), std::move(basis)};
}

// Corner certificate: find an idempotent with a commutative etale corner that
// generates A as a two-sided ideal. Succeeds only on semisimple algebras whose
// center is a field (then A is simple).
inline bool corner_certified_semisimple(const FqAlgebra& A, std::uint64_t seed) {
  const auto& F = A.field();
  FpCtx k(F.p());
  SplitMix64 rng(seed ^ 0xc0feeULL);
  for (int attempt = 0; attempt < 10; ++attempt) {
    FpVec b(A.dim());
    for (auto& x : b) x = static_cast<std::int64_t>(rng.bounded(F.p()));
    auto mp = min_poly(A, b);
    auto fac = factor_poly_fq(k, Poly<FpCtx>::from(k, mp), seed + attempt);
    bool squarefree = true;
    for (auto& [f, m] : fac.factors) squarefree &= (m == 1);
    if (!squarefree) continue;
    // try factors smallest-first: small corners are cheap to test
    auto factors = fac.factors;
    std::sort(factors.begin(), factors.end(),
              [](const auto& x, const auto& y) { return x.first.degree() < y.first.degree(); });
    for (auto& [f_t, m_t] : factors) {
      if (factors.size() == 1 && f_t.degree() == static_cast<long>(mp.size()) - 1 &&
          static_cast<long>(mp.size()) - 1 == A.dim()) {
        // b generates a field of full dimension: A is a field
        return true;
      }
      if (factors.size() == 1) break;  // no split available from this b
      auto g_t = Poly<FpCtx>::constant(k, k.one());
      for (auto& [f_s, m_s] : factors)
        if (!poly_eq(k, f_s, f_t)) g_t = poly_mul(k, g_t, f_s);
      auto [gg, u, v] = poly_xgcd(k, g_t, f_t);
      (void)v;
      if (gg.degree() != 0) continue;
      auto idempoly = poly_mul(k, u, g_t);
      std::vector<std::int64_t> coeffs(idempoly.degree() + 1, 0);
      for (long j = 0; j <= idempoly.degree(); ++j) coeffs[j] = idempoly.coeffs()[j];
      auto e = eval_in_algebra(A, coeffs, b);
      if (A.mul(e, e) != e) continue;
      bool is_zero = true, is_unit = true;
      for (long t = 0; t < A.dim(); ++t) {
        if (e[t] != 0) is_zero = false;
        if (e[t] != A.unit()[t]) is_unit = false;
      }
      if (is_zero || is_unit) continue;
      // corner eAe
      FpSubspace S(F, A.dim());
      std::vector<FpVec> corner;
      for (long i = 0; i < A.dim(); ++i) {
        auto w = A.mul(A.mul(e, A.basis(i)), e);
        if (S.insert(w)) corner.push_back(w);
      }
      bool commutative = true;
      for (auto& xx : corner)
        for (auto& yy : corner)
          if (A.mul(xx, yy) != A.mul(yy, xx)) commutative = false;
      if (!commutative) continue;
      if (!commutative_nilradical(A, corner).empty()) return false;  // rad(eAe) != 0
      // fullness: AeA = A
      auto full = A.ideal_closure({e});
      if (full.dim() == A.dim()) return true;  // Morita: rad(A) = A rad(eAe) A = 0
      return false;  // proper two-sided ideal exists: not simple, so not semisimple here
    }
  }
  return false;  // could not certify either way
}

// Characteristic-p refinement chain: descending ideals cut out by the
// elementary-symmetric functionals e_{p^k} of right-multiplication matrices.
inline std::vector<FpVec> ciw_chain(const FqAlgebra& A) {
  const auto& F = A.field();
  long n = A.dim();
  std::vector<FpVec> I;
  for (long i = 0; i < n; ++i) I.push_back(A.basis(i));
  long pk = 1;
  for (long level = 0; pk <= n; ++level, pk *= A.p()) {
    long m = static_cast<long>(I.size());
    if (m == 0) break;
    FpMat rho(m, m, 0);
    if (level == 0) {
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) rho(i, j) = A.reg_trace(A.mul(I[i], I[j]));
    } else {
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) {
          auto prod = A.mul(I[i], I[j]);
          auto cp = charpoly_fp(F, A.right_mult(prod));
          // e_{pk} = (-1)^{pk} * coeff of X^{n-pk}
          auto c = cp[n - pk];
          rho(i, j) = (pk % 2 == 1) ? F.neg(c) : c;
        }
    }
    auto K = kernel_basis(F, mat_transpose(F, rho));
    std::vector<FpVec> next;
    for (std::size_t r = 0; r < K.rows(); ++r) {
      FpVec v(n, 0);
      for (long c = 0; c < m; ++c) {
        if (K(r, c) == 0) continue;
        for (long t = 0; t < n; ++t) v[t] = F.add(v[t], F.mul(K(r, c), I[c][t]));
      }
      next.push_back(std::move(v));
    }
    I = std::move(next);
  }
  return I;
}

inline FpSubspace rad_impl(const FqAlgebra& A, std::uint64_t seed);

inline FpSubspace rad_via_quotient(const FqAlgebra& A, const FpSubspace& W, std::uint64_t seed) {
  const auto& F = A.field();
  auto Q = A.quotient(W);
  auto JQ = rad_impl(Q.alg, seed);
  FpSubspace J(F, A.dim());
  for (auto& w : W.rows()) J.insert(w);
  for (auto& v : JQ.rows()) J.insert(A.lift_from_quotient(Q, v));
  return J;
}

inline FpSubspace rad_impl(const FqAlgebra& A, std::uint64_t seed) {
  const auto& F = A.field();
  FpSubspace empty(F, A.dim());
  if (A.dim() == 0) return empty;
  auto Z = A.center();
  auto NZ = commutative_nilradical(A, Z);
  if (!NZ.empty()) {
    auto W = A.ideal_closure(NZ);
    if (!A.subspace_nilpotent(W)) throw error("central nilradical ideal not nilpotent");
    return rad_via_quotient(A, W, seed);
  }
  auto parts = etale_idempotents(A, Z, seed);
  if (parts.size() > 1) {
    FpSubspace J(F, A.dim());
    for (auto& e : parts) {
      auto factor = central_factor(A, e);
      auto Jf = rad_impl(factor.alg, seed);
      for (auto& v : Jf.rows()) {
        FpVec w(A.dim(), 0);
        for (long c = 0; c < factor.alg.dim(); ++c) {
          if (v[c] == 0) continue;
          for (long t = 0; t < A.dim(); ++t)
            w[t] = F.add(w[t], F.mul(v[c], factor.embed[c][t]));
        }
        J.insert(w);
      }
    }
    return J;
  }
  if (corner_certified_semisimple(A, seed)) return empty;
  auto chain = ciw_chain(A);
  FpSubspace J(F, A.dim());
  for (auto& v : chain) J.insert(v);
  if (J.dim() == 0) return empty;
  if (!A.is_two_sided_ideal(J)) throw error("radical verification failed");
  if (!A.subspace_nilpotent(J)) throw error("radical verification failed");
  return rad_via_quotient(A, J, seed);
}

}  // namespace detail

// Jacobson radical. Optional seed ideal generators: a caller-supplied list of
// elements whose two-sided closure is verified nilpotent and stripped first.
// Output invariants (verified): two-sided nilpotent ideal whose quotient has
// zero radical under a re-run.
inline FpSubspace jacobson_radical(const FqAlgebra& A, std::uint64_t seed = 0,
                                   const std::vector<FpVec>& hint_gens = {}) {
  const auto& F = A.field();
  FpSubspace J(F, A.dim());
  if (!hint_gens.empty()) {
    auto W = A.ideal_closure(hint_gens);
    if (W.dim() > 0 && !A.subspace_nilpotent(W)) throw error("hint ideal not nilpotent");
    if (W.dim() > 0)
      J = detail::rad_via_quotient(A, W, seed);
    else
      J = detail::rad_impl(A, seed);
  } else {
    J = detail::rad_impl(A, seed);
  }
  // completion loop: re-run on the quotient until it reports zero
  for (int guard = 0; guard < 64; ++guard) {
    if (J.dim() == static_cast<long>(A.dim())) throw error("radical cannot be the whole algebra");
    auto Q = A.quotient(J);
    auto JQ = detail::rad_impl(Q.alg, seed);
    if (JQ.dim() == 0) break;
    for (auto& v : JQ.rows()) J.insert(A.lift_from_quotient(Q, v));
  }
  if (J.dim() > 0) {
    if (!A.is_two_sided_ideal(J)) throw error("radical verification failed");
    if (!A.subspace_nilpotent(J)) throw error("radical verification failed");
  }
  return J;
}

// Exhaustive reference: the set of x whose two-sided ideal is nilpotent,
// enumerated over all of A. Only for |F|^dim within the bound.
inline std::optional<FpSubspace> radical_exhaustive(const FqAlgebra& A, long bound = 2000000) {
  Int total(1);
  for (long i = 0; i < A.dim(); ++i) {
    total *= Int(A.p());
    if (total > Int(bound)) return std::nullopt;
  }
  const auto& F = A.field();
  FpSubspace J(F, A.dim());
  long n = A.dim();
  std::vector<std::int64_t> counter(n, 0);
  while (true) {
    FpVec x(counter.begin(), counter.end());
    bool nonzero = false;
    for (auto c : x) nonzero |= (c != 0);
    if (nonzero) {
      auto I = A.ideal_closure({x});
      if (A.subspace_nilpotent(I)) J.insert(x);
    }
    long i = 0;
    while (i < n && ++counter[i] == A.p()) counter[i++] = 0;
    if (i == n) break;
  }
  return J;
}

struct BlockReport {
  long dim = 0;        // block dimension over F_p
  long c = 0;          // center degree
  long x = 0;          // matrix size
  long simple_dim = 0; // x * c
  std::string endo;    // F_{p^c}
  bool split = false;
};

// Decompose a semisimple algebra into its blocks via the etale center.
inline std::vector<BlockReport> block_decompose(const FqAlgebra& A, std::uint64_t seed = 0) {
  auto Z = A.center();
  if (!detail::commutative_nilradical(A, Z).empty()) throw error("radical nonzero");
  auto parts = detail::etale_idempotents(A, Z, seed);
  std::vector<BlockReport> out;
  long frob_fixed = 0;
  {
    // #blocks must match the Frobenius-fixed dimension of the center
    const auto& F = A.field();
    long zd = static_cast<long>(Z.size());
    FpMat Zb(zd, A.dim(), 0);
    for (long i = 0; i < zd; ++i) Zb.set_row(i, Z[i]);
    auto Zt = mat_transpose(F, Zb);
    FpMat D(zd, zd, 0);
    for (long i = 0; i < zd; ++i) {
      auto img = A.pth_power(Z[i]);
      for (long t = 0; t < A.dim(); ++t) img[t] = F.sub(img[t], Z[i][t]);
      auto res = linear_solve(F, Zt, SolveMode::solve, &img);
      D.set_row(i, *res.sol);
    }
    frob_fixed = static_cast<long>(kernel_basis(F, mat_transpose(F, D)).rows());
  }
  if (static_cast<long>(parts.size()) != frob_fixed) throw error("radical nonzero");
  for (auto& e : parts) {
    auto factor = detail::central_factor(A, e);
    auto Zf = factor.alg.center();
    if (!detail::commutative_nilradical(factor.alg, Zf).empty()) throw error("radical nonzero");
    if (!detail::corner_certified_semisimple(factor.alg, seed)) {
      auto chain = detail::ciw_chain(factor.alg);
      FpSubspace Jf(factor.alg.field(), factor.alg.dim());
      for (auto& v : chain) Jf.insert(v);
      if (Jf.dim() != 0) throw error("radical nonzero");
    }
    BlockReport r;
    r.dim = factor.alg.dim();
    r.c = static_cast<long>(Zf.size());
    long x2 = r.dim / r.c;
    long x = 0;
    while ((x + 1) * (x + 1) <= x2) ++x;
    if (x * x * r.c != r.dim) throw error("inconsistent block dimensions");
    r.x = x;
    r.simple_dim = x * r.c;
    long q = 1;
    for (long t = 0; t < r.c; ++t) q *= A.p();
    r.endo = "F" + std::to_string(q);
    r.split = (r.c == 1);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const BlockReport& a, const BlockReport& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.c < b.c;
  });
  return out;
}

struct KulshammerResult {
  long dim_commutator = 0;   // dim bLC
  long dim_bLCP = 0;
  long codim = 0;            // dim A / bLCP
  long chain_steps = 0;
};

inline KulshammerResult kulshammer_spaces(const FqAlgebra& A) {
  const auto& F = A.field();
  long n = A.dim();
  FpSubspace C(F, n);
  for (long i = 0; i < n && C.dim() < n; ++i)
    for (long j = i + 1; j < n && C.dim() < n; ++j) {
      auto ab = A.mul(A.basis(i), A.basis(j));
      auto ba = A.mul(A.basis(j), A.basis(i));
      for (long t = 0; t < n; ++t) ab[t] = F.sub(ab[t], ba[t]);
      C.insert(ab);
    }
  auto comp = C.complement_indices();
  long v = static_cast<long>(comp.size());
  // p-power map on A/bLC
  FpMat P(v, v, 0);
  for (long i = 0; i < v; ++i) {
    auto xp = A.pth_power(A.basis(comp[i]));
    auto res = C.residue(xp);
    for (long j = 0; j < v; ++j) P(i, j) = res[comp[j]];
  }
  KulshammerResult out;
  out.dim_commutator = C.dim();
  FpMat Pk = P;
  long prev = -1;
  long kerdim = 0;
  long steps = 0;
  for (long m = 1; m <= v + 1; ++m) {
    auto K = kernel_basis(F, mat_transpose(F, Pk));
    kerdim = static_cast<long>(K.rows());
    if (kerdim == prev) break;
    prev = kerdim;
    ++steps;
    Pk = mat_mul(F, Pk, P);
  }
  out.chain_steps = steps;
  out.dim_bLCP = C.dim() + kerdim;
  out.codim = v - kerdim;
  return out;
}

// A right module over an FqAlgebra: one action matrix per algebra basis
// element (row convention).
struct FqModule {
  long dim = 0;
  std::vector<FpMat> act;

  void validate(const FqAlgebra& A, std::uint64_t seed = 0) const {
    const auto& F = A.field();
    // unit acts as identity
    FpMat U(dim, dim, 0);
    for (long i = 0; i < A.dim(); ++i) {
      if (A.unit()[i] == 0) continue;
      for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) U(r, c) = F.add(U(r, c), F.mul(A.unit()[i], act[i](r, c)));
    }
    if (!(U == FpMat::identity(dim, 1, 0))) throw error("module unit axiom fails");
    SplitMix64 rng(seed ^ 0x30d5ULL);
    for (int t = 0; t < 50; ++t) {
      long i = rng.bounded(A.dim()), j = rng.bounded(A.dim());
      // act(b_i) act(b_j) = act(b_i b_j)
      auto lhs = mat_mul(F, act[i], act[j]);
      auto prod = A.mul(A.basis(i), A.basis(j));
      FpMat rhs(dim, dim, 0);
      for (long k2 = 0; k2 < A.dim(); ++k2) {
        if (prod[k2] == 0) continue;
        for (long r = 0; r < dim; ++r)
          for (long c = 0; c < dim; ++c)
            rhs(r, c) = F.add(rhs(r, c), F.mul(prod[k2], act[k2](r, c)));
      }
      if (!(lhs == rhs)) throw error("module action not multiplicative");
    }
  }
};

// Exhaustive spinning: simple iff every nonzero vector generates everything.
inline bool is_simple(const FqAlgebra& A, const FqModule& M, long bound = 2000000) {
  if (M.dim == 0) return false;
  const auto& F = A.field();
  // number of projective points (p^dim - 1)/(p - 1) must stay within budget
  Int points(1);
  Int limit = Int(bound) * Int(A.p() - 1) + Int(1);
  for (long i = 0; i < M.dim; ++i) {
    points *= Int(A.p());
    if (points > limit) throw error("module too large for exhaustive check");
  }
  // enumerate projective representatives: first nonzero coordinate = 1
  auto spin_full = [&](const FpVec& v) {
    FpSubspace S(F, M.dim);
    std::vector<FpVec> queue = {v};
    S.insert(v);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto cur = queue[head];
      for (long b = 0; b < A.dim(); ++b) {
        auto img = vec_mat(F, cur, M.act[b]);
        if (S.insert(img)) {
          if (S.dim() == M.dim) return true;
          queue.push_back(img);
        }
      }
    }
    return S.dim() == M.dim;
  };
  // iterate over normalized vectors: leading coordinate 1, zeros before it
  for (long lead = 0; lead < M.dim; ++lead) {
    long tail = M.dim - lead - 1;
    std::vector<std::int64_t> suffix(tail, 0);
    while (true) {
      FpVec v(M.dim, 0);
      v[lead] = 1;
      for (long t = 0; t < tail; ++t) v[lead + 1 + t] = suffix[t];
      if (!spin_full(v)) return false;
      long i = 0;
      while (i < tail && ++suffix[i] == A.p()) suffix[i++] = 0;
      if (i == tail) break;
    }
  }
  return true;
}

}  // namespace wreathe
