#pragma once

#include "wreathe/twisted.hpp"
#include "wreathe/wedderburn.hpp"

namespace wreathe {

// Per-block integral invariants feeding the colength formulas.
struct BlockInvariants {
  long x = 0, d = 0, r = 0, c = 0;
  long delta_S = 0;   // colength of S_i in its reduced-trace dual
  long delta_ZS = 0;  // colength of Z(S_i) in its trace dual
};

inline long vp_long(long v, long p) {
  if (v == 0) throw error("valuation of zero");
  long neg = v < 0 ? -v : v;
  long count = 0;
  while (neg % p == 0) {
    neg /= p;
    ++count;
  }
  return count;
}

// delta_{S_i/S} for a commutative monogenic K_i = Q[w]/(mu_i): Smith sum of
// the trace Gram of Z_(p)[w]. Requires p-maximality.
inline long delta_for_field(const QPoly& mu_i, long p) {
  if (mu_i.degree() == 1) return 0;
  if (!dedekind_pmaximal(mu_i, p)) throw error("ring not p-maximal");
  NumberField K(mu_i);
  long m = K.degree();
  Matrix<Rational> gram(m, m, Rational(0));
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b)
      gram(a, b) = K.trace(K.mul(K.power_basis(a), K.power_basis(b)));
  return smith_valuations(gram, Int(p)).sum();
}

// The Wedderburn colength formula:
// (1/2) ( g (delta_{T/S} + v(n) h) - sum_i x_i^2 (delta_{S_i/S} + v(x_i d_i / h) r_i) ).
inline Rational wedderburn_colength(long g, long h, long n, long vn, long delta_T,
                                    const std::vector<BlockInvariants>& blocks, long p) {
  long dimsum = 0;
  for (auto& b : blocks) dimsum += b.r * b.x * b.x;
  if (dimsum != g * h) throw error("inconsistent invariants");
  if (n >= 1 && vp_long(n, p) != vn) throw error("inconsistent invariants");
  Rational acc = Rational(g) * (Rational(delta_T) + Rational(vn) * Rational(h));
  for (auto& b : blocks) {
    if ((b.x * b.d) % h != 0) throw error("inconsistent invariants");
    long v_xdh = vp_long((b.x * b.d) / h, p);
    acc -= Rational(b.x) * Rational(b.x) *
           (Rational(b.delta_S) + Rational(v_xdh) * Rational(b.r));
  }
  Rational out = acc / Rational(2);
  if (!out.is_integer() || out.sign() < 0) throw error("inconsistent invariants");
  return out;
}

// Lattice utilities for the direct embedding oracle. Lattices are given by
// basis rows inside Q^N; lengths are Smith-valuation sums of transitions.
namespace detail {

// l(B/A) for lattices A subseteq B (rows); throws if not contained p-integrally.
inline long lattice_colength(const Matrix<Rational>& inner, const Matrix<Rational>& outer,
                             long p) {
  RationalField Q;
  auto Bt = mat_transpose(Q, outer);
  Matrix<Rational> trans(inner.rows(), outer.rows(), Rational(0));
  for (std::size_t i = 0; i < inner.rows(); ++i) {
    auto v = inner.row(i);
    auto sol = linear_solve(Q, Bt, SolveMode::solve, &v);
    for (std::size_t j = 0; j < outer.rows(); ++j) {
      if (!(*sol.sol)[j].p_integral(Int(p))) throw error("lattice not contained");
      trans(i, j) = (*sol.sol)[j];
    }
  }
  auto sv = smith_valuations(trans, Int(p));
  if (sv.infinite != 0) throw error("lattice rank deficient");
  return sv.sum();
}

}  // namespace detail

struct EmbeddingOracle {
  long colength = 0;
  std::vector<long> cokernel_valuations;  // elementary divisor exponents
  bool annihilation_ok = false;           // all <= v(n) + t
  // Experimental: per-quasiblock colengths (the faithful case has a single
  // quasiblock, so this echoes the total).
  std::vector<long> experimental_quasiblock_colengths;
  // the five-length chain of the duality argument (faithful case):
  // l(Lambda#/Gamma#) - l(Lambda+/Lambda) + l(Gamma/Lambda)
  // + l(Gamma+/Gamma) - l(Gamma+/Gamma#) = 0
  long l_lambda_sharp_over_gamma_sharp = 0;
  long l_lambda_plus_over_lambda = 0;
  long l_gamma_over_lambda = 0;
  long l_gamma_plus_over_gamma = 0;
  long l_gamma_plus_over_gamma_sharp = 0;
  bool chain_ok = false;
};

// Direct Smith-form oracle for the faithful case: Lambda = T wr G inside
// Gamma = End_S T via the principal representation.
inline EmbeddingOracle direct_embedding_colength(const TwistedRing& T, long p) {
  const auto& R = T.ring_data();
  if (!R.faithful()) throw error("action not faithful");
  if (R.fixed_degree() != 1) throw error("fixed field must be Q");
  auto ld = R.local_data(p);  // also enforces p-maximality
  long h = T.m();
  long D = h * h;
  auto M = principal_module(T);
  auto flatten = [&](const Matrix<Rational>& A) {
    std::vector<Rational> row(D, Rational(0));
    for (long r = 0; r < h; ++r)
      for (long c = 0; c < h; ++c) row[r * h + c] = A(r, c);
    return row;
  };
  // Lambda basis: sigma gamma^l; Lambda+ basis: sigma y*_l; Gamma: matrix units
  Matrix<Rational> lambda(T.g() * T.m(), D, Rational(0));
  for (long s = 0; s < T.g(); ++s)
    for (long l = 0; l < T.m(); ++l)
      lambda.set_row(s * T.m() + l, flatten(M.act[s * T.m() + l]));
  auto dual = dual_power_basis(T);
  Matrix<Rational> lambda_plus(T.g() * T.m(), D, Rational(0));
  for (long s = 0; s < T.g(); ++s)
    for (long l = 0; l < T.m(); ++l) {
      auto el = T.zero();
      el.c[s] = dual[l];
      lambda_plus.set_row(s * T.m() + l, flatten(module_action(T, M, el)));
    }
  auto gamma = Matrix<Rational>::identity(D, Rational(1), Rational(0));
  EmbeddingOracle out;
  // cokernel of Lambda inside Gamma: Smith valuations of the coordinate matrix
  auto sv = smith_valuations(lambda, Int(p));
  if (sv.infinite != 0) throw error("embedding not full rank");
  out.cokernel_valuations = sv.finite;
  out.colength = sv.sum();
  out.experimental_quasiblock_colengths = {out.colength};
  long bound = vp_long(R.n() == 1 ? 1 : R.n(), p) + ld.t;
  if (R.n() == 1) bound = ld.t;
  out.annihilation_ok = true;
  for (long v : out.cokernel_valuations)
    if (v > bound) out.annihilation_ok = false;
  // duality chain; faithful case has Gamma+ = Gamma# = Gamma
  out.l_gamma_over_lambda = detail::lattice_colength(lambda, gamma, p);
  out.l_lambda_plus_over_lambda = detail::lattice_colength(lambda, lambda_plus, p);
  out.l_lambda_sharp_over_gamma_sharp = detail::lattice_colength(gamma, lambda_plus, p);
  out.l_gamma_plus_over_gamma = 0;
  out.l_gamma_plus_over_gamma_sharp = 0;
  out.chain_ok = (out.l_lambda_sharp_over_gamma_sharp - out.l_lambda_plus_over_lambda +
                      out.l_gamma_over_lambda + out.l_gamma_plus_over_gamma -
                      out.l_gamma_plus_over_gamma_sharp ==
                  0);
  return out;
}

struct AnnihilationCheck {
  bool ok = false;
  long bound = 0;
  std::vector<long> valuations;
};

inline AnnihilationCheck annihilation_check(const TwistedRing& T, long p) {
  auto oracle = direct_embedding_colength(T, p);
  auto ld = T.ring_data().local_data(p);
  AnnihilationCheck out;
  out.bound = vp_long(T.ring_data().n() == 1 ? 1 : T.ring_data().n(), p) + ld.t;
  if (T.ring_data().n() == 1) out.bound = ld.t;
  out.valuations = oracle.cokernel_valuations;
  out.ok = oracle.annihilation_ok;
  return out;
}

struct CentralColength {
  Rational formula;
  std::vector<std::pair<std::string, long>> class_terms;  // delta_{T_nu/S} + v([N:C_N])h_nu
  bool has_oracle = false;
  long oracle = 0;
};

// Central colength formula (and, with representation data over split blocks,
// the direct Smith oracle on the central embedding).
inline CentralColength central_colength(const TwistedRing& T, long p,
                                        const std::vector<BlockInvariants>& blocks,
                                        const WedderburnData* W = nullptr) {
  const auto& R = T.ring_data();
  if (R.fixed_degree() != 1) throw error("fixed field must be Q");
  R.local_data(p);  // p-maximality gate
  const auto& G = R.group();
  CentralColength out;
  Rational first(0);
  for (int nu : cl_n_g(R)) {
    auto cent = G.centralizer(nu);
    auto latt = R.fixed_lattice_basis(G.subgroup_generators(cent), p);
    long h_nu = static_cast<long>(latt.rows());
    // Gram of Tr_{L_nu/K} on the saturated lattice basis
    Matrix<Rational> gram(h_nu, h_nu, Rational(0));
    const auto& L = R.field();
    Rational scale(Int(h_nu), Int(R.h()));
    for (long a = 0; a < h_nu; ++a)
      for (long b = 0; b < h_nu; ++b) {
        NumberField::Elem ya(latt.row(a)), yb(latt.row(b));
        gram(a, b) = L.trace(L.mul(ya, yb)) * scale;
      }
    long delta_nu = smith_valuations(gram, Int(p)).sum();
    long cn = 0;
    for (int k2 : R.kernel())
      if (G.mul(k2, nu) == G.mul(nu, k2)) ++cn;
    long index_n = R.n() / cn;
    long v_index = index_n == 1 ? 0 : vp_long(index_n, p);
    long term = delta_nu + v_index * h_nu;
    out.class_terms.emplace_back(perm_str(G.elem(nu)), term);
    first += Rational(term);
  }
  Rational second(0);
  for (auto& b : blocks) {
    // v(x^2 d^2 / gh) c
    Rational ratio = Rational(Int(b.x * b.x * b.d * b.d), Int(R.g() * R.h()));
    long v = ratio.valuation(Int(p));
    second += Rational(b.delta_ZS) + Rational(v) * Rational(b.c);
  }
  out.formula = (first - second) / Rational(2);
  if (!out.formula.is_integer() || out.formula.sign() < 0) throw error("inconsistent invariants");
  // oracle: central basis mapped through omega^Z when all Z(K_i) = Q
  if (W != nullptr && W->complete(T)) {
    bool all_split = true;
    for (auto& blk : W->blocks) all_split &= (blk.K.c() == 1);
    if (all_split) {
      // integral central basis: items over the saturated fixed lattices
      std::vector<TwistedElement> zbasis;
      for (int nu : cl_n_g(R)) {
        auto cent = G.centralizer(nu);
        auto latt = R.fixed_lattice_basis(G.subgroup_generators(cent), p);
        std::vector<bool> covered(G.order(), false);
        std::vector<int> transversal;
        for (std::size_t rho = 0; rho < G.order(); ++rho) {
          if (covered[rho]) continue;
          transversal.push_back(static_cast<int>(rho));
          for (int c2 : cent) covered[G.mul(c2, static_cast<int>(rho))] = true;
        }
        const auto& L = R.field();
        for (std::size_t bb = 0; bb < latt.rows(); ++bb) {
          NumberField::Elem y(latt.row(bb));
          auto z = T.zero();
          for (int rho : transversal) {
            int srho = G.conj(nu, rho);
            z.c[srho] = L.add(z.c[srho], R.apply(rho, y));
          }
          zbasis.push_back(z);
        }
      }
      long k2 = static_cast<long>(zbasis.size());
      if (k2 == static_cast<long>(W->blocks.size())) {
        Matrix<Rational> img(k2, k2, Rational(0));
        for (long i2 = 0; i2 < k2; ++i2)
          for (std::size_t j2 = 0; j2 < W->blocks.size(); ++j2) {
            auto m2 = W->blocks[j2].of(T, zbasis[i2]);
            // central element acts as a rational scalar
            auto z0 = m2(0, 0)[0];
            img(i2, j2) = z0;
          }
        auto sv = smith_valuations(img, Int(p));
        if (sv.infinite == 0) {
          out.has_oracle = true;
          out.oracle = sv.sum();
        }
      }
    }
  }
  return out;
}

struct BoundCheck {
  bool ok = true;
  bool integrality_ok = true;
  bool unit_ok = true;
};

// Lemma-style valuation bound v(x_i) + v(d_i) <= v(g) + t, plus integrality
// of x_i d_i / h and its primality to p when p does not divide n.
inline BoundCheck bound_check(const std::vector<BlockInvariants>& blocks, long g, long h, long n,
                              long t, long p) {
  BoundCheck out;
  long vg = vp_long(g, p);
  for (auto& b : blocks) {
    if (vp_long(b.x, p) + vp_long(b.d, p) > vg + t) out.ok = false;
    if ((b.x * b.d) % h != 0) {
      out.integrality_ok = false;
      continue;
    }
    long q = (b.x * b.d) / h;
    if (n % p != 0 && q % p == 0) out.unit_ok = false;
  }
  return out;
}

}  // namespace wreathe
