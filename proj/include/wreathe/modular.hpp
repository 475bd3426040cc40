#pragma once

#include <numeric>
#include <set>

#include "wreathe/fq_radical.hpp"
#include "wreathe/numberring.hpp"
#include "wreathe/wedderburn.hpp"

namespace wreathe {

// The residue twisted group ring Lambda-bar = Tbar wr G over F_p, with the
// distinguished basis sigma x^j (sigma-major).
struct ResidueAlgebra {
  FqAlgebra alg;
  ResidueData rd;
  long g = 0, m = 0;

  long index(long sigma, long j) const { return sigma * m + j; }
};

inline ResidueAlgebra build_residue_algebra(const GaloisNumberRing& R, long p,
                                            std::uint64_t seed = 0) {
  auto rd = R.reduce_mod_p(p);
  FpCtx F(p);
  long g = R.g();
  long m = R.m();
  long n = g * m;
  // multiplication-by-x matrices mod mubar
  std::vector<Matrix<FpCtx::Elem>> xpow(m);
  {
    auto X = Poly<FpCtx>::x(F);
    auto cur = Poly<FpCtx>::constant(F, F.one());
    for (long b = 0; b < m; ++b) {
      Matrix<FpCtx::Elem> M(m, m, 0);
      for (long a = 0; a < m; ++a) {
        // x^a * x^b mod mubar
        auto prod = poly_mod(
            F, poly_mul(F, poly_powmod(F, X, Int(a), rd.mubar), cur), rd.mubar);
        for (long k = 0; k <= prod.degree(); ++k) M(a, k) = prod.coeffs()[k];
      }
      xpow[b] = std::move(M);
      cur = poly_mod(F, poly_mul(F, cur, X), rd.mubar);
    }
  }
  std::vector<std::int64_t> sc(static_cast<std::size_t>(n) * n * n, 0);
  const auto& G = R.group();
  for (long s = 0; s < g; ++s)
    for (long a = 0; a < m; ++a) {
      long row = s * m + a;
      for (long t = 0; t < g; ++t) {
        long st = G.mul(static_cast<int>(s), static_cast<int>(t));
        // (sigma x^a)(tau x^b) = (sigma tau) ((x^a)^tau x^b)
        const auto& tw = rd.act_tbar[t];  // row a: coords of (x^a)^tau
        for (long b = 0; b < m; ++b) {
          long col = t * m + b;
          // coords of (x^a)^tau * x^b: row vector tw.row(a) times xpow[b]
          for (long i2 = 0; i2 < m; ++i2) {
            if (tw(a, i2) == 0) continue;
            for (long k = 0; k < m; ++k) {
              auto v = F.mul(tw(a, i2), xpow[b](i2, k));
              if (v == 0) continue;
              auto& slot = sc[(static_cast<std::size_t>(row) * n + col) * n + st * m + k];
              slot = F.add(slot, v);
            }
          }
        }
      }
    }
  FpVec unit(n, 0);
  unit[G.id() * m + 0] = 1;
  ResidueAlgebra out{FqAlgebra(F, n, std::move(sc), std::move(unit), true, seed), std::move(rd), g,
                     m};
  return out;
}

// Kernel of the G-action on Tbar0.
inline std::vector<int> t0_action_kernel(const GaloisNumberRing& R, const ResidueData& rd) {
  std::vector<int> out;
  auto id = Matrix<FpCtx::Elem>::identity(rd.dim_t0, 1, 0);
  for (std::size_t s = 0; s < R.group().order(); ++s)
    if (rd.act_t0[s] == id) out.push_back(static_cast<int>(s));
  return out;
}

// Largest normal p-subgroup of the (normal) subgroup given by `members`:
// elements whose normal closure inside `members` is a p-group.
inline std::vector<int> largest_normal_p_subgroup(const FiniteGroup& G,
                                                  const std::vector<int>& members, long p) {
  std::vector<int> gens;
  for (int x : members) {
    long o = G.element_order(x);
    bool ppower = true;
    for (long q = o; q > 1;) {
      if (q % p != 0) {
        ppower = false;
        break;
      }
      q /= p;
    }
    if (!ppower) continue;
    // normal closure of x inside the subgroup
    std::vector<int> closure_gens;
    for (int y : members) closure_gens.push_back(G.conj(x, y));
    auto closure = G.closure_of(closure_gens);
    bool all_p = true;
    for (int z : closure) {
      long oz = G.element_order(z);
      while (oz % p == 0) oz /= p;
      if (oz != 1) all_p = false;
    }
    if (all_p) gens.push_back(x);
  }
  return G.closure_of(gens);
}

// Nilpotent seed ideal generators for the radical of Lambda-bar: the radical
// of Tbar (embedded at the identity) and the augmentation of the largest
// normal p-subgroup acting trivially on Tbar0.
inline std::vector<FpVec> radical_hint(const GaloisNumberRing& R, const ResidueAlgebra& RA) {
  FpCtx F(RA.rd.p);
  std::vector<FpVec> gens;
  // rad(Tbar) = (radpoly) / (mubar): basis radpoly * x^j
  long nilpotent_dim = RA.m - RA.rd.dim_t0;
  auto cur = RA.rd.radpoly;
  auto X = Poly<FpCtx>::x(F);
  for (long j = 0; j < nilpotent_dim; ++j) {
    FpVec v(RA.alg.dim(), 0);
    auto red = poly_mod(F, cur, RA.rd.mubar);
    for (long k = 0; k <= red.degree(); ++k)
      v[RA.index(R.group().id(), k)] = red.coeffs()[k];
    gens.push_back(std::move(v));
    cur = poly_mul(F, cur, X);
  }
  // augmentation of O_p(N0)
  auto N0 = t0_action_kernel(R, RA.rd);
  auto P = largest_normal_p_subgroup(R.group(), N0, RA.rd.p);
  for (int nu : P) {
    if (nu == R.group().id()) continue;
    FpVec v(RA.alg.dim(), 0);
    v[RA.index(nu, 0)] = 1;
    v[RA.index(R.group().id(), 0)] = F.neg(1);
    gens.push_back(std::move(v));
  }
  return gens;
}

// V_sigma inside Tbar0 and its codimension.
struct VSigma {
  FpSubspace span;
  long codim = 0;
};

inline VSigma v_sigma(const GaloisNumberRing& R, const ResidueData& rd, int sigma) {
  FpCtx F(rd.p);
  long d0 = rd.dim_t0;
  VSigma out{FpSubspace(F, d0), 0};
  // multiplication in Tbar0
  auto mul0 = [&](const FpVec& a, const FpVec& b) {
    auto prod =
        poly_mod(F, poly_mul(F, Poly<FpCtx>::from(F, a), Poly<FpCtx>::from(F, b)), rd.radpoly);
    FpVec v(d0, 0);
    for (long k = 0; k <= prod.degree(); ++k) v[k] = prod.coeffs()[k];
    return v;
  };
  auto basis0 = [&](long j) {
    FpVec v(d0, 0);
    v[j] = 1;
    return v;
  };
  const auto& act = rd.act_t0;
  for (long y = 0; y < d0; ++y) {
    FpVec ys = vec_mat(F, basis0(y), act[sigma]);
    for (long t = 0; t < d0; ++t) ys[t] = F.sub(ys[t], basis0(y)[t]);
    for (long z = 0; z < d0; ++z) out.span.insert(mul0(ys, basis0(z)));
  }
  auto cent = R.group().centralizer(sigma);
  for (int rho : R.group().subgroup_generators(cent)) {
    for (long y = 0; y < d0; ++y) {
      FpVec yr = vec_mat(F, basis0(y), act[rho]);
      for (long t = 0; t < d0; ++t) yr[t] = F.sub(yr[t], basis0(y)[t]);
      out.span.insert(yr);
    }
  }
  out.codim = d0 - out.span.dim();
  return out;
}

inline long brauer_z(const GaloisNumberRing& R, const ResidueData& rd) {
  long z = 0;
  for (int rep : R.group().p_prime_class_reps(rd.p)) z += v_sigma(R, rd, rep).codim;
  return z;
}

// Rem-style semisimplicity criterion: e = 1 and p coprime to n (residue
// fields of F_p are automatically separable).
inline bool semisimplicity_predict(const GaloisNumberRing& R, long p) {
  auto ld = R.local_data(p);
  return ld.e == 1 && (R.n() % p != 0);
}

// Norm-type map y -> prod_{l < q^mu} y^(alpha^l) on F_{q^f}, alpha = Frob^s;
// exhaustively checked surjectivity plus the gcd prediction.
struct NormSurjectivity {
  bool surjective = false;
  bool predicted = false;
  Int exponent;  // the map is y -> y^exponent on the unit group
};

inline NormSurjectivity norm_surjectivity(long q, long f, long s, long mu) {
  // q = p^a; we realize F_{q^f} as FqField(p, a*f)
  long p = 2;
  long a = 0;
  {
    long t = q;
    for (long cand = 2; cand <= t; ++cand) {
      if (!is_prime_small(cand)) continue;
      long pw = cand, e = 1;
      while (pw < t) {
        pw *= cand;
        ++e;
      }
      if (pw == t) {
        p = cand;
        a = e;
        break;
      }
    }
    if (a == 0) throw error("invalid prime power");
  }
  long ss = ((s % f) + f) % f;
  long o_alpha = (ss == 0) ? 1 : f / std::gcd(f, ss);
  if (o_alpha % p == 0) throw error("hypothesis violated");
  FqField K(p, a * f);
  // alpha^l(y) = y^(q^(s l mod f)); exponent E = sum_l q^(s l mod f)
  Int qmu = Int::power(Int(q), mu);
  if (!qmu.fits_long()) throw error("field too large to enumerate");
  long reps = qmu.to_long();
  Int E(0);
  Int card_units = Int::power(Int(q), f) - Int(1);
  for (long l = 0; l < reps; ++l) E = E + Int::power(Int(q), (ss * l) % f);
  NormSurjectivity out;
  out.exponent = E;
  out.predicted = gcd(E, card_units).is_one();
  // exhaustive image enumeration
  auto elems = K.enumerate();
  std::set<FqField::Elem> image;
  for (auto& y : elems) {
    if (K.is_zero(y)) continue;
    auto acc = K.one();
    auto cur = y;
    for (long l = 0; l < reps; ++l) {
      acc = K.mul(acc, cur);
      cur = K.frobenius(cur, a * ss);  // cur = alpha^(l+1)(y)
    }
    image.insert(acc);
  }
  out.surjective = (image.size() == elems.size() - 1);
  return out;
}

// Brauer-Nesbitt check for an integral lattice inside a block with K_i = K.
struct BrauerNesbittResult {
  bool hypothesis_met = false;  // v(x_i) = v(g) + t
  bool bound_ok = false;        // v(x_i) + v(d_i) <= v(g) + t
  bool reduction_simple = false;
  bool checked = false;  // simplicity actually tested
};

inline BrauerNesbittResult brauer_nesbitt_check(const GaloisNumberRing& R,
                                                const ResidueAlgebra& RA, const BlockRep& block,
                                                long p) {
  if (block.K.kind() != CoeffAlg::Kind::rational) throw error("not a lattice");
  auto ld = R.local_data(p);
  FpCtx F(p);
  auto vp = [&](long v) {
    long count = 0;
    while (v % p == 0) {
      v /= p;
      ++count;
    }
    return count;
  };
  BrauerNesbittResult out;
  long vg = vp(R.g());
  out.bound_ok = (vp(block.x * block.K.d()) <= vg + ld.t);
  out.hypothesis_met = (vp(block.x) == vg + ld.t);
  if (!out.hypothesis_met) return out;
  // reduce the representation matrices mod p
  FqModule M;
  M.dim = block.x;
  for (auto& km : block.omega) {
    FpMat A(block.x, block.x, 0);
    for (long r = 0; r < block.x; ++r)
      for (long c = 0; c < block.x; ++c) {
        const Rational& q = km(r, c)[0];
        if (!q.p_integral(Int(p))) throw error("not a lattice");
        A(r, c) = F.from_rational(q);
      }
    M.act.push_back(std::move(A));
  }
  M.validate(RA.alg);
  out.reduction_simple = is_simple(RA.alg, M);
  out.checked = true;
  return out;
}

// Tbar0 as a module over Lambda-bar.
inline FqModule t0_module(const ResidueAlgebra& RA) {
  FpCtx F(RA.rd.p);
  long d0 = RA.rd.dim_t0;
  FqModule M;
  M.dim = d0;
  // y * (sigma x^j) = y^sigma * x^j in Tbar0
  auto X = Poly<FpCtx>::x(F);
  std::vector<Matrix<FpCtx::Elem>> xm(RA.m);
  for (long j = 0; j < RA.m; ++j) {
    Matrix<FpCtx::Elem> A(d0, d0, 0);
    for (long a = 0; a < d0; ++a) {
      auto prod = poly_mod(
          F, poly_mul(F, poly_powmod(F, X, Int(a), RA.rd.radpoly), poly_powmod(F, X, Int(j), RA.rd.radpoly)),
          RA.rd.radpoly);
      for (long k = 0; k <= prod.degree(); ++k) A(a, k) = prod.coeffs()[k];
    }
    xm[j] = std::move(A);
  }
  for (long s = 0; s < RA.g; ++s)
    for (long j = 0; j < RA.m; ++j)
      M.act.push_back(mat_mul(F, RA.rd.act_t0[s], xm[j]));
  M.validate(RA.alg);
  return M;
}

// Full modular analysis of one (ring, prime) pair.
struct ModularAnalysis {
  long p = 0;
  long dim = 0;
  long radical_dim = 0;
  bool semisimple = false;
  bool prediction = false;
  long z = 0;
  long center_dim_ss = 0;  // dim Z(Lambda-bar / J)
  long kulshammer_codim = 0;
  std::vector<BlockReport> blocks;
  std::vector<std::pair<std::string, long>> v_codims;  // per p'-class rep
  bool triple_equal = false;
  bool radical_is_radT_ideal = false;  // Jac = Jac(Tbar) Lambda-bar (when tested)
  bool radT_test_applicable = false;
};

inline ModularAnalysis analyze_modular(const GaloisNumberRing& R, long p, std::uint64_t seed = 0) {
  ModularAnalysis out;
  out.p = p;
  auto RA = build_residue_algebra(R, p, seed);
  out.dim = RA.alg.dim();
  auto hints = radical_hint(R, RA);
  auto J = jacobson_radical(RA.alg, seed, hints);
  out.radical_dim = J.dim();
  out.semisimple = (J.dim() == 0);
  out.prediction = semisimplicity_predict(R, p);
  if (out.prediction != out.semisimple) throw error("semisimplicity prediction failed");
  auto Q = RA.alg.quotient(J);
  // center of the semisimple quotient, with the group generators + gamma as
  // a generating hint
  std::vector<FpVec> hint_gens;
  {
    auto project = [&](long idx) {
      FpVec v(RA.alg.dim(), 0);
      v[idx] = 1;
      auto r = J.residue(v);
      FpVec w(Q.alg.dim(), 0);
      for (std::size_t t2 = 0; t2 < Q.complement.size(); ++t2) w[t2] = r[Q.complement[t2]];
      return w;
    };
    for (int gi : R.group().generator_indices()) hint_gens.push_back(project(RA.index(gi, 0)));
    if (RA.m > 1) hint_gens.push_back(project(RA.index(R.group().id(), 1)));
  }
  auto Zq = Q.alg.center(hint_gens);
  out.center_dim_ss = static_cast<long>(Zq.size());
  out.z = 0;
  for (int rep : R.group().p_prime_class_reps(p)) {
    auto vs = v_sigma(R, RA.rd, rep);
    out.v_codims.emplace_back(perm_str(R.group().elem(rep)), vs.codim);
    out.z += vs.codim;
  }
  auto kul = kulshammer_spaces(RA.alg);
  out.kulshammer_codim = kul.codim;
  out.triple_equal = (out.z == out.center_dim_ss) && (out.z == out.kulshammer_codim);
  if (!out.triple_equal) throw error("center/count/kulshammer equality failed");
  out.blocks = block_decompose(Q.alg, seed);
  // when Tbar0 wr G is semisimple, Jac(Lambda-bar) = Jac(Tbar) Lambda-bar
  {
    FpCtx F(p);
    long nil_dim = RA.m - RA.rd.dim_t0;
    bool t0_ss;
    if (nil_dim == 0) {
      t0_ss = out.semisimple;
    } else {
      // quotient by rad(Tbar) ideal and test semisimplicity there
      std::vector<FpVec> gens;
      auto X = Poly<FpCtx>::x(F);
      auto cur = RA.rd.radpoly;
      for (long j = 0; j < nil_dim; ++j) {
        FpVec v(RA.alg.dim(), 0);
        auto red = poly_mod(F, cur, RA.rd.mubar);
        for (long k2 = 0; k2 <= red.degree(); ++k2)
          v[RA.index(R.group().id(), k2)] = red.coeffs()[k2];
        gens.push_back(std::move(v));
        cur = poly_mul(F, cur, X);
      }
      auto W = RA.alg.ideal_closure(gens);
      auto Q0 = RA.alg.quotient(W);
      auto J0 = jacobson_radical(Q0.alg, seed);
      t0_ss = (J0.dim() == 0);
      if (t0_ss) {
        out.radT_test_applicable = true;
        // J must equal W
        out.radical_is_radT_ideal = (J.dim() == W.dim());
        if (out.radical_is_radT_ideal)
          for (auto& w : W.rows())
            if (!J.contains(w)) out.radical_is_radT_ideal = false;
      }
    }
    if (nil_dim == 0 && out.semisimple) {
      out.radT_test_applicable = true;
      out.radical_is_radT_ideal = (J.dim() == 0);
    }
  }
  return out;
}

}  // namespace wreathe
