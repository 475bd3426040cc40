#pragma once

#include <map>
#include <string>
#include <vector>

#include "wreathe/expr.hpp"
#include "wreathe/factor.hpp"
#include "wreathe/group.hpp"
#include "wreathe/numberfield.hpp"

namespace wreathe {

// Ramification data of Z_(p)[gamma] over Z_(p).
struct LocalData {
  long e = 0, f = 0, d = 0;  // e*f*d = deg mu
  long s = 0;                // Tr(T) = p^s S
  long t = 0;                // max elementary divisor exponent of the trace Gram
  long delta = 0;            // colength of T in its trace dual
  std::vector<std::pair<long, long>> factor_shape;  // (deg, mult) of mu mod p
};

// Dedekind's criterion: is Z_(p)[gamma] the full integral closure locally at p?
inline bool dedekind_pmaximal(const QPoly& mu, long p) {
  RationalField Q;
  FpCtx k(p);
  long m = mu.degree();
  std::vector<FpCtx::Elem> red(m + 1);
  for (long i = 0; i <= m; ++i) red[i] = k.from_rational(mu.coeffs()[i]);
  auto mubar = Poly<FpCtx>::from(k, red);
  if (mubar.degree() != m) throw error("not p-integral");
  auto fac = factor_poly_fq(k, mubar, 0);
  auto gbar = Poly<FpCtx>::constant(k, k.one());
  auto hbar = Poly<FpCtx>::constant(k, k.one());
  for (auto& [irr, mult] : fac.factors) {
    gbar = poly_mul(k, gbar, irr);
    for (long t = 1; t < mult; ++t) hbar = poly_mul(k, hbar, irr);
  }
  // Lift g,h to integer polynomials with coefficients in [0,p), form
  // F = (g*h - mu)/p and reduce mod p.
  auto lift = [&](const Poly<FpCtx>& f) {
    std::vector<Rational> c(f.degree() + 1, Rational(0));
    for (long i = 0; i <= f.degree(); ++i) c[i] = Rational(f.coeffs()[i]);
    return QPoly::from(Q, c);
  };
  auto prod = poly_mul(Q, lift(gbar), lift(hbar));
  auto diff = poly_sub(Q, prod, mu);
  std::vector<FpCtx::Elem> fc(diff.degree() + 1, 0);
  for (long i = 0; i <= diff.degree(); ++i) {
    Rational c = diff.coeff(Q, i) / Rational(p);
    if (!c.p_integral(Int(p))) throw error("not p-integral");
    fc[i] = k.from_rational(c);
  }
  auto Fbar = Poly<FpCtx>::from(k, fc);
  auto g1 = poly_gcd(k, Fbar, gbar);
  auto g2 = poly_gcd(k, g1, hbar);
  return g2.degree() == 0;
}

// Residue-side data at p: Tbar = F_p[X]/(mubar) with the induced G-action,
// its semisimple quotient Tbar0 = F_p[X]/(rad mubar), and bookkeeping.
struct ResidueData {
  long p = 0;
  long dim_tbar = 0;   // deg mu
  long dim_t0 = 0;     // f*d
  Poly<FpCtx> mubar;
  Poly<FpCtx> radpoly;                    // product of the distinct irreducible factors
  std::vector<Poly<FpCtx>> irreducibles;  // the q_i
  long e = 1;
  // Per group element: matrix of the action on Tbar (rows: X^j -> row) and on Tbar0.
  std::vector<Matrix<FpCtx::Elem>> act_tbar;
  std::vector<Matrix<FpCtx::Elem>> act_t0;
  Matrix<FpCtx::Elem> quot;  // dim_tbar x dim_t0 reduction map
  std::vector<std::vector<FpCtx::Elem>> t0_idempotents;  // CRT idempotents of Tbar0
};

// A finite group acting on a monogenic number ring by a validated right
// action. K is the fixed field; all colength machinery requires K = Q.
class GaloisNumberRing {
 public:
  static GaloisNumberRing build_and_validate(QPoly mu, FiniteGroup group,
                                             const std::vector<std::string>& generator_actions) {
    GaloisNumberRing R(std::move(mu), std::move(group), generator_actions);
    return R;
  }

  const FiniteGroup& group() const { return G_; }
  const NumberField& field() const { return L_; }
  long m() const { return L_.degree(); }
  long g() const { return static_cast<long>(G_.order()); }
  long n() const { return static_cast<long>(kernel_.size()); }
  long h() const { return g() / n(); }
  const std::vector<int>& kernel() const { return kernel_; }
  bool faithful() const { return n() == 1; }
  bool in_kernel(int sigma) const {
    return std::binary_search(kernel_.begin(), kernel_.end(), sigma);
  }
  long fixed_degree() const { return static_cast<long>(fixed_basis_.rows()); }
  const Matrix<Rational>& fixed_field_basis() const { return fixed_basis_; }

  const NumberField::Elem& action_of(int sigma) const { return act_poly_[sigma]; }
  const Matrix<Rational>& action_matrix(int sigma) const { return act_mat_[sigma]; }
  NumberField::Elem apply(int sigma, const NumberField::Elem& y) const {
    return L_.substitute(y, act_poly_[sigma]);
  }

  // Q-basis (rows) of Fix_U(L) for the subgroup generated by the given
  // element indices.
  Matrix<Rational> fixed_subspace_basis(const std::vector<int>& gens) const {
    RationalField Q;
    long m = L_.degree();
    if (gens.empty()) return Matrix<Rational>::identity(m, Rational(1), Rational(0));
    // v fixed iff v*(M - I) = 0 for every generator; stack the transposed
    // blocks so the column-sense kernel is the fixed space.
    Matrix<Rational> stack(gens.size() * m, m, Rational(0));
    for (std::size_t t = 0; t < gens.size(); ++t) {
      const auto& M = act_mat_[gens[t]];
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
          stack(t * m + i, j) = M(j, i) - (i == j ? Rational(1) : Rational(0));
    }
    return kernel_basis(Q, stack);
  }

  // Z_(p)-basis of the saturated fixed lattice T n Fix_U(L).
  Matrix<Rational> fixed_lattice_basis(const std::vector<int>& gens, long p) const {
    return saturate_rows(fixed_subspace_basis(gens), Int(p));
  }

  bool action_p_integral(long p) const {
    for (auto& a : act_poly_)
      if (!L_.p_integral(a, Int(p))) return false;
    return true;
  }

  LocalData local_data(long p) const {
    if (fixed_degree() != 1) throw error("fixed field must be Q");
    if (!dedekind_pmaximal(L_.modulus(), p)) throw error("ring not p-maximal");
    LocalData out;
    FpCtx k(p);
    long m = L_.degree();
    std::vector<FpCtx::Elem> red(m + 1);
    for (long i = 0; i <= m; ++i) red[i] = k.from_rational(L_.modulus().coeffs()[i]);
    auto mubar = Poly<FpCtx>::from(k, red);
    auto fac = factor_poly_fq(k, mubar, 0);
    out.e = fac.factors.front().second;
    out.f = fac.factors.front().first.degree();
    out.d = static_cast<long>(fac.factors.size());
    for (auto& [irr, mult] : fac.factors) {
      out.factor_shape.emplace_back(irr.degree(), mult);
      if (mult != out.e || irr.degree() != out.f)
        throw error("prime factorization not Galois-uniform");
    }
    if (out.e * out.f * out.d != m) throw error("prime factorization not Galois-uniform");
    // Trace Gram on the power basis; entries are the precomputed power traces.
    Matrix<Rational> gram(m, m, Rational(0));
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) gram(a, b) = trace_of_power(a + b);
    auto sv = smith_valuations(gram, Int(p));
    if (sv.infinite != 0) throw error("not a field");
    out.t = sv.max_finite();
    out.delta = sv.sum();
    bool have_s = false;
    for (long l = 0; l < m; ++l) {
      Rational tr = trace_of_power(l);
      if (tr.is_zero()) continue;
      long v = tr.valuation(Int(p));
      if (!have_s || v < out.s) {
        out.s = v;
        have_s = true;
      }
    }
    if (!have_s) throw error("trace form degenerate");
    if (out.s > out.t) throw error("trace exponent exceeds Gram exponent");
    if ((out.t == 0) != (out.e == 1)) throw error("ramification/Gram mismatch");
    return out;
  }

  struct Projectivity {
    bool projective;
    bool p_coprime_to_n;
    bool tame;
    std::string reason;
  };

  Projectivity projectivity_check(long p) const {
    auto ld = local_data(p);
    Projectivity out;
    out.p_coprime_to_n = (n() % p != 0);
    out.tame = (ld.e % p != 0);  // residue extensions of F_p are separable
    out.projective = out.p_coprime_to_n && out.tame;
    if (out.projective)
      out.reason = "p does not divide n and p is tamely ramified";
    else if (!out.p_coprime_to_n)
      out.reason = "p divides the order of the kernel N";
    else
      out.reason = "p is wildly ramified (p divides e)";
    return out;
  }

  ResidueData reduce_mod_p(long p) const {
    if (!dedekind_pmaximal(L_.modulus(), p)) throw error("ring not p-maximal");
    if (!action_p_integral(p)) throw error("action not p-integral");
    ResidueData rd;
    rd.p = p;
    FpCtx k(p);
    long m = L_.degree();
    std::vector<FpCtx::Elem> red(m + 1);
    for (long i = 0; i <= m; ++i) red[i] = k.from_rational(L_.modulus().coeffs()[i]);
    rd.mubar = Poly<FpCtx>::from(k, red);
    auto fac = factor_poly_fq(k, rd.mubar, 0);
    rd.e = fac.factors.front().second;
    rd.radpoly = Poly<FpCtx>::constant(k, k.one());
    for (auto& [irr, mult] : fac.factors) {
      rd.irreducibles.push_back(irr);
      rd.radpoly = poly_mul(k, rd.radpoly, irr);
    }
    rd.dim_tbar = m;
    rd.dim_t0 = rd.radpoly.degree();
    // Action matrices: X^j -> (a_sigma mod p)^j reduced mod mubar resp. radpoly.
    auto build = [&](const Poly<FpCtx>& mod) {
      long dim = mod.degree();
      std::vector<Matrix<FpCtx::Elem>> mats(G_.order());
      for (std::size_t s = 0; s < G_.order(); ++s) {
        std::vector<FpCtx::Elem> ac(m, 0);
        for (long i = 0; i < m; ++i) ac[i] = k.from_rational(act_poly_[s][i]);
        auto a = poly_mod(k, Poly<FpCtx>::from(k, ac), mod);
        Matrix<FpCtx::Elem> M(dim, dim, 0);
        auto cur = Poly<FpCtx>::constant(k, k.one());
        for (long j = 0; j < dim; ++j) {
          for (long c = 0; c <= cur.degree(); ++c) M(j, c) = cur.coeffs()[c];
          cur = poly_mod(k, poly_mul(k, cur, a), mod);
        }
        mats[s] = std::move(M);
      }
      return mats;
    };
    rd.act_tbar = build(rd.mubar);
    rd.act_t0 = build(rd.radpoly);
    rd.quot = Matrix<FpCtx::Elem>(rd.dim_tbar, rd.dim_t0, 0);
    auto cur = Poly<FpCtx>::constant(k, k.one());
    auto X = Poly<FpCtx>::x(k);
    for (long j = 0; j < rd.dim_tbar; ++j) {
      for (long c = 0; c <= cur.degree(); ++c) rd.quot(j, c) = cur.coeffs()[c];
      cur = poly_mod(k, poly_mul(k, cur, X), rd.radpoly);
    }
    // CRT idempotents of Tbar0 = prod F_p[X]/(q_i).
    for (auto& q : rd.irreducibles) {
      auto rest = poly_divmod(k, rd.radpoly, q).first;
      auto [gg, u, v] = poly_xgcd(k, rest, q);
      (void)v;
      if (gg.degree() != 0) throw error("factors not coprime");
      auto idem = poly_mod(k, poly_mul(k, u, rest), rd.radpoly);
      std::vector<FpCtx::Elem> coords(rd.dim_t0, 0);
      for (long c = 0; c <= idem.degree(); ++c) coords[c] = idem.coeffs()[c];
      rd.t0_idempotents.push_back(std::move(coords));
    }
    return rd;
  }

  Rational trace_of_power(long k) const {
    // Tr(gamma^k) for 0 <= k <= 2m-2 comes straight from the Newton power sums.
    return L_.trace(L_.power_basis(k));
  }

  std::string describe_residue(const ResidueData& rd, bool semisimple_part) const {
    std::string out;
    for (std::size_t i = 0; i < rd.irreducibles.size(); ++i) {
      if (i) out += " x ";
      long q = 1;
      for (long t = 0; t < rd.irreducibles[i].degree(); ++t) q *= rd.p;
      out += "F" + std::to_string(q);
      if (!semisimple_part && rd.e > 1) out += "[eps]/(eps^" + std::to_string(rd.e) + ")";
    }
    return out;
  }

 private:
  GaloisNumberRing(QPoly mu, FiniteGroup group, const std::vector<std::string>& generator_actions)
      : G_(std::move(group)), L_(std::move(mu)) {
    const auto& gen_idx = G_.generator_indices();
    if (generator_actions.size() != gen_idx.size())
      throw error("one action polynomial required per generator");
    // Evaluate generator actions in L (rational functions allowed: division
    // inverts mod mu).
    std::map<std::string, NumberField::Elem> env = {{"X", L_.gen()}};
    std::vector<NumberField::Elem> gen_act;
    for (auto& s : generator_actions) {
      auto a = eval_expr_str(L_, s, env);
      // automorphism check: mu(a) = 0 in L
      NumberField::Elem v = L_.zero();
      for (long i = L_.modulus().degree(); i >= 0; --i) {
        v = L_.mul(v, a);
        v[0] += L_.modulus().coeffs()[i];
      }
      if (!L_.is_zero(v)) throw error("not an automorphism");
      gen_act.push_back(a);
    }
    // Extend to the whole group along generator words; verify the right
    // action law on every (element, generator) pair.
    act_poly_.assign(G_.order(), L_.gen());
    std::vector<bool> have(G_.order(), false);
    have[G_.id()] = true;
    std::vector<int> queue = {G_.id()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int cur = queue[head];
      for (std::size_t t = 0; t < gen_idx.size(); ++t) {
        int nxt = G_.mul(cur, gen_idx[t]);
        auto composed = L_.substitute(act_poly_[cur], gen_act[t]);
        if (!have[nxt]) {
          act_poly_[nxt] = composed;
          have[nxt] = true;
          queue.push_back(nxt);
        } else if (!L_.eq(act_poly_[nxt], composed)) {
          throw error("not a right action");
        }
      }
    }
    for (std::size_t s = 0; s < G_.order(); ++s)
      for (std::size_t t = 0; t < gen_idx.size(); ++t) {
        int nxt = G_.mul(static_cast<int>(s), gen_idx[t]);
        if (!L_.eq(act_poly_[nxt], L_.substitute(act_poly_[s], gen_act[t])))
          throw error("not a right action");
      }
    // Action matrices on the power basis.
    long m = L_.degree();
    act_mat_.reserve(G_.order());
    for (std::size_t s = 0; s < G_.order(); ++s) {
      Matrix<Rational> M(m, m, Rational(0));
      auto cur = L_.one();
      for (long j = 0; j < m; ++j) {
        for (long c = 0; c < m; ++c) M(j, c) = cur[c];
        cur = L_.mul(cur, act_poly_[s]);
      }
      act_mat_.push_back(std::move(M));
    }
    // Kernel and fixed field.
    for (std::size_t s = 0; s < G_.order(); ++s)
      if (L_.eq(act_poly_[s], L_.gen())) kernel_.push_back(static_cast<int>(s));
    std::sort(kernel_.begin(), kernel_.end());
    std::vector<int> gens(gen_idx.begin(), gen_idx.end());
    fixed_basis_ = fixed_subspace_basis(gens);
    if (g() % n() != 0 || m % (g() / n()) != 0 ||
        fixed_degree() != m / (g() / n()))
      throw error("action is not Galois-compatible");
  }

  FiniteGroup G_;
  NumberField L_;
  std::vector<NumberField::Elem> act_poly_;
  std::vector<Matrix<Rational>> act_mat_;
  std::vector<int> kernel_;
  Matrix<Rational> fixed_basis_;
};

}  // namespace wreathe
