#pragma once

#include <map>
#include <string>
#include <vector>

#include "wreathe/numberring.hpp"

namespace wreathe {

// Element of L wr G: dense coefficient map sigma -> y_sigma with the
// coefficients written on the right of the group elements.
struct TwistedElement {
  std::vector<NumberField::Elem> c;  // indexed by group element
};

// The twisted group ring L wr G over the number-ring action R.
class TwistedRing {
 public:
  explicit TwistedRing(const GaloisNumberRing& R) : R_(&R) {}

  const GaloisNumberRing& ring_data() const { return *R_; }
  const FiniteGroup& group() const { return R_->group(); }
  const NumberField& coeff_field() const { return R_->field(); }
  long g() const { return R_->g(); }
  long m() const { return R_->m(); }
  long dim() const { return g() * m(); }  // over Q (= gh when K = Q)

  using Elem = TwistedElement;

  Elem zero() const {
    Elem e;
    e.c.assign(g(), coeff_field().zero());
    return e;
  }
  Elem one() const {
    Elem e = zero();
    e.c[group().id()] = coeff_field().one();
    return e;
  }
  Elem group_elem(int sigma) const {
    Elem e = zero();
    e.c[sigma] = coeff_field().one();
    return e;
  }
  Elem coeff_elem(const NumberField::Elem& y) const {
    Elem e = zero();
    e.c[group().id()] = y;
    return e;
  }
  // Basis element sigma * gamma^l.
  Elem basis_elem(int sigma, long l) const {
    Elem e = zero();
    e.c[sigma] = coeff_field().power_basis(l);
    return e;
  }
  Elem from_rational(const Rational& r) const { return coeff_elem(coeff_field().from_rational(r)); }

  Elem add(const Elem& x, const Elem& y) const {
    check(x);
    check(y);
    Elem r = zero();
    for (long s = 0; s < g(); ++s) r.c[s] = coeff_field().add(x.c[s], y.c[s]);
    return r;
  }
  Elem sub(const Elem& x, const Elem& y) const {
    Elem r = zero();
    for (long s = 0; s < g(); ++s) r.c[s] = coeff_field().sub(x.c[s], y.c[s]);
    return r;
  }
  Elem neg(const Elem& x) const {
    Elem r = zero();
    for (long s = 0; s < g(); ++s) r.c[s] = coeff_field().neg(x.c[s]);
    return r;
  }
  Elem scale(const Rational& r, const Elem& x) const {
    Elem out = zero();
    auto rr = coeff_field().from_rational(r);
    for (long s = 0; s < g(); ++s) out.c[s] = coeff_field().mul(rr, x.c[s]);
    return out;
  }

  // (sigma y)(tau z) = (sigma tau)(y^tau z)
  Elem mul(const Elem& x, const Elem& y) const {
    check(x);
    check(y);
    const auto& L = coeff_field();
    Elem r = zero();
    for (long s = 0; s < g(); ++s) {
      if (L.is_zero(x.c[s])) continue;
      for (long t = 0; t < g(); ++t) {
        if (L.is_zero(y.c[t])) continue;
        int st = group().mul(s, static_cast<int>(t));
        r.c[st] = L.add(r.c[st], L.mul(R_->apply(static_cast<int>(t), x.c[s]), y.c[t]));
      }
    }
    return r;
  }

  // Only central coefficient elements e*y are invertible through this
  // interface; enough for the expression fixtures.
  Elem inv(const Elem& x) const {
    for (long s = 0; s < g(); ++s)
      if (s != group().id() && !coeff_field().is_zero(x.c[s]))
        throw error("cannot invert a general ring element");
    return coeff_elem(coeff_field().inv(x.c[group().id()]));
  }

  bool is_zero(const Elem& x) const {
    for (auto& y : x.c)
      if (!coeff_field().is_zero(y)) return false;
    return true;
  }
  bool eq(const Elem& x, const Elem& y) const { return is_zero(sub(x, y)); }
  bool same_ring(const TwistedRing& o) const { return R_ == o.R_; }

  bool p_integral(const Elem& x, long p) const {
    for (auto& y : x.c)
      if (!coeff_field().p_integral(y, Int(p))) return false;
    return true;
  }

  // Def I0 bilinear form: (xi, eta) = sum_sigma Tr((xi_sigma)^(sigma^-1) * eta_(sigma^-1)).
  Rational form(const Elem& x, const Elem& y) const {
    const auto& L = coeff_field();
    Rational acc(0);
    for (long s = 0; s < g(); ++s) {
      if (L.is_zero(x.c[s])) continue;
      int sinv = group().inv(static_cast<int>(s));
      if (L.is_zero(y.c[sinv])) continue;
      acc += L.trace(L.mul(R_->apply(sinv, x.c[s]), y.c[sinv]));
    }
    return acc;
  }

  // Gram of the form on the full basis {sigma gamma^l}, (gh) x (gh).
  Matrix<Rational> bilinear_gram() const {
    long D = dim();
    Matrix<Rational> gmat(D, D, Rational(0));
    const auto& L = coeff_field();
    for (long s = 0; s < g(); ++s) {
      int sinv = group().inv(static_cast<int>(s));
      for (long l = 0; l < m(); ++l)
        for (long k = 0; k < m(); ++k) {
          auto val = L.trace(L.mul(R_->apply(sinv, L.power_basis(l)), L.power_basis(k)));
          gmat(s * m() + l, sinv * m() + k) = val;
        }
    }
    return gmat;
  }

  std::string to_string(const Elem& x) const {
    std::string out;
    const auto& L = coeff_field();
    for (long s = 0; s < g(); ++s) {
      if (L.is_zero(x.c[s])) continue;
      if (!out.empty()) out += " + ";
      std::string coeff = L.to_string(x.c[s]);
      std::string grp = perm_str(group().elem(static_cast<int>(s)));
      if (coeff == "1")
        out += grp;
      else
        out += grp + "*(" + coeff + ")";
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check(const Elem& x) const {
    if (static_cast<long>(x.c.size()) != g()) throw error("incompatible rings");
  }

  const GaloisNumberRing* R_;
};

// ---- center ---------------------------------------------------------------

struct CenterBasis {
  struct Item {
    int nu;                      // representative in N of a G-conjugation orbit
    long h_sigma;                // dim_K L_nu
    Matrix<Rational> l_basis;    // rows: K-basis of L_nu = Fix_{C_G(nu)} L
    std::vector<TwistedElement> elems;  // one per basis row
  };
  std::vector<Item> items;
  std::vector<TwistedElement> all;  // flattened, item-major
  long dim() const { return static_cast<long>(all.size()); }
};

// Representatives of the G-conjugation orbits on N, least-in-canonical-order.
inline std::vector<int> cl_n_g(const GaloisNumberRing& R) {
  const auto& G = R.group();
  std::vector<int> reps;
  std::vector<bool> seen(G.order(), false);
  for (int nu : R.kernel()) {
    if (seen[nu]) continue;
    reps.push_back(nu);
    for (std::size_t g = 0; g < G.order(); ++g) seen[G.conj(nu, static_cast<int>(g))] = true;
  }
  return reps;
}

// K-linear center basis: for each nu in Cl_N^G and each basis vector y of
// L_nu, the sum of (nu y)^rho over a right transversal of C_G(nu) in G.
inline CenterBasis center_basis(const TwistedRing& T) {
  const auto& R = T.ring_data();
  const auto& G = R.group();
  const auto& L = R.field();
  if (R.fixed_degree() != 1) throw error("fixed field must be Q");
  CenterBasis out;
  for (int nu : cl_n_g(R)) {
    CenterBasis::Item item;
    item.nu = nu;
    auto cent = G.centralizer(nu);
    item.l_basis = R.fixed_subspace_basis(R.group().subgroup_generators(cent));
    item.h_sigma = static_cast<long>(item.l_basis.rows());
    // right transversal of C_G(nu) in G
    std::vector<bool> covered(G.order(), false);
    std::vector<int> transversal;
    for (std::size_t rho = 0; rho < G.order(); ++rho) {
      if (covered[rho]) continue;
      transversal.push_back(static_cast<int>(rho));
      for (int c : cent) covered[G.mul(c, static_cast<int>(rho))] = true;
    }
    for (std::size_t b = 0; b < item.l_basis.rows(); ++b) {
      NumberField::Elem y(item.l_basis.row(b));
      auto z = T.zero();
      for (int rho : transversal) {
        int srho = G.conj(nu, rho);
        z.c[srho] = L.add(z.c[srho], R.apply(rho, y));
      }
      item.elems.push_back(z);
      out.all.push_back(z);
    }
    out.items.push_back(std::move(item));
  }
  return out;
}

// eps_1 = n^{-1} sum_{nu in N} nu.
inline TwistedElement epsilon1(const TwistedRing& T) {
  const auto& R = T.ring_data();
  if (R.n() == 0) throw error("Maschke fails");
  auto e = T.zero();
  for (int nu : R.kernel()) e = T.add(e, T.group_elem(nu));
  return T.scale(Rational(Int(1), Int(R.n())), e);
}

// Assumption: C_G(nu) N = G for all nu in N.
inline bool centralizer_assumption_holds(const GaloisNumberRing& R) {
  const auto& G = R.group();
  for (int nu : R.kernel()) {
    std::vector<bool> prod(G.order(), false);
    std::size_t count = 0;
    for (int c : G.centralizer(nu))
      for (int k : R.kernel()) {
        int x = G.mul(c, k);
        if (!prod[x]) {
          prod[x] = true;
          ++count;
        }
      }
    if (count != G.order()) return false;
  }
  return true;
}

// Central bilinear form via its defining formula: for basis items
// (nu, y), (nu', y'): [N : C_N(nu)] * Tr_{L_nu/K}(y y'^tau) when
// nu = (nu'^{-1})^tau, else 0.
inline Matrix<Rational> central_gram(const TwistedRing& T, const CenterBasis& cb) {
  const auto& R = T.ring_data();
  const auto& G = R.group();
  const auto& L = R.field();
  long D = cb.dim();
  Matrix<Rational> gmat(D, D, Rational(0));
  long row = 0;
  for (auto& it : cb.items) {
    // [N : C_N(nu)]
    long cn = 0;
    for (int k : R.kernel())
      if (G.mul(k, it.nu) == G.mul(it.nu, k)) ++cn;
    Rational index_n(Int(R.n()), Int(cn));
    for (std::size_t b = 0; b < it.elems.size(); ++b, ++row) {
      long col = 0;
      for (auto& jt : cb.items) {
        // find tau with nu = (nu'^{-1})^tau
        int nu_p_inv = G.inv(jt.nu);
        int tau = -1;
        for (std::size_t x = 0; x < G.order(); ++x)
          if (G.conj(nu_p_inv, static_cast<int>(x)) == it.nu) {
            tau = static_cast<int>(x);
            break;
          }
        for (std::size_t bb = 0; bb < jt.elems.size(); ++bb, ++col) {
          if (tau < 0) continue;
          NumberField::Elem y(it.l_basis.row(b));
          NumberField::Elem yp(jt.l_basis.row(bb));
          auto prod = L.mul(y, R.apply(tau, yp));
          // Tr_{L_nu/K}(w) = Tr_{L/K}(w) * h_nu / h
          Rational tr = L.trace(prod) * Rational(Int(it.h_sigma), Int(R.h()));
          gmat(row, col) = index_n * tr;
        }
      }
    }
  }
  return gmat;
}

// ---- principal module and modules generally -------------------------------

// A right module over L wr G, given by the matrices (row convention) of the
// gh ring basis elements sigma gamma^l, indexed sigma-major.
struct RModule {
  long dim = 0;
  std::vector<Matrix<Rational>> act;  // size g*m

  const Matrix<Rational>& of_basis(long sigma, long l, long m) const {
    return act[sigma * m + l];
  }
};

// Matrix of an arbitrary ring element on the module.
inline Matrix<Rational> module_action(const TwistedRing& T, const RModule& M,
                                      const TwistedElement& x) {
  RationalField Q;
  Matrix<Rational> out(M.dim, M.dim, Rational(0));
  for (long s = 0; s < T.g(); ++s)
    for (long l = 0; l < T.m(); ++l) {
      const Rational& c = x.c[s][l];
      if (c.is_zero()) continue;
      out = mat_add(Q, out, mat_scale(Q, c, M.act[s * T.m() + l]));
    }
  return out;
}

// The regular module: the ring acting on itself by right multiplication,
// coordinates on the basis sigma gamma^l.
inline RModule regular_module(const TwistedRing& T) {
  RModule M;
  M.dim = T.dim();
  M.act.reserve(T.g() * T.m());
  // Precompute coordinates of basis_elem(s,l) * basis_elem(t,k).
  for (long t = 0; t < T.g(); ++t)
    for (long k = 0; k < T.m(); ++k) {
      Matrix<Rational> A(M.dim, M.dim, Rational(0));
      auto b = T.basis_elem(static_cast<int>(t), k);
      for (long s = 0; s < T.g(); ++s)
        for (long l = 0; l < T.m(); ++l) {
          auto prod = T.mul(T.basis_elem(static_cast<int>(s), l), b);
          for (long ss = 0; ss < T.g(); ++ss)
            for (long c = 0; c < T.m(); ++c) A(s * T.m() + l, ss * T.m() + c) = prod.c[ss][c];
        }
      M.act.push_back(std::move(A));
    }
  return M;
}

// The principal module L: y * (sigma z) = y^sigma z, on the power basis.
inline RModule principal_module(const TwistedRing& T) {
  const auto& R = T.ring_data();
  const auto& L = R.field();
  RModule M;
  M.dim = T.m();
  for (long s = 0; s < T.g(); ++s) {
    const auto& act = R.action_matrix(static_cast<int>(s));
    for (long l = 0; l < T.m(); ++l) {
      // y -> y^sigma * gamma^l
      Matrix<Rational> A(M.dim, M.dim, Rational(0));
      for (long j = 0; j < M.dim; ++j) {
        NumberField::Elem row(act.row(j));
        auto img = L.mul(row, L.power_basis(l));
        for (long c = 0; c < M.dim; ++c) A(j, c) = img[c];
      }
      M.act.push_back(std::move(A));
    }
  }
  return M;
}

inline Matrix<Rational> principal_rep(const TwistedRing& T, const TwistedElement& x) {
  auto M = principal_module(T);
  return module_action(T, M, x);
}

// Rank of the span of all gh basis images in End_K(L); h^2 iff L wr H maps
// onto End_K L (Dedekind).
inline long principal_span_rank(const TwistedRing& T) {
  RationalField Q;
  auto M = principal_module(T);
  long d = M.dim;
  Matrix<Rational> flat(T.g() * T.m(), d * d, Rational(0));
  for (long i = 0; i < T.g() * T.m(); ++i)
    for (long r = 0; r < d; ++r)
      for (long c = 0; c < d; ++c) flat(i, r * d + c) = M.act[i](r, c);
  return static_cast<long>(mat_rank(Q, flat));
}

// ---- Maschke coretraction --------------------------------------------------

struct MaschkeResult {
  Matrix<Rational> i0;       // coefficient-linear coretraction
  Matrix<Rational> i;        // module-linear map with i f = factor * id
  Rational factor;           // 1 (rational variant) or p^s * n (integral variant)
};

namespace detail {

// Smith-style p-integral solve of x A = b (row convention) for each row b of
// B, i.e. solve X A = B with X p-integral. Throws if no p-integral solution.
inline Matrix<Rational> solve_left_p_integral(const Matrix<Rational>& A, const Matrix<Rational>& B,
                                              long p) {
  RationalField Q;
  // Work with A^T x^T = b^T; full Smith reduction with minimal-valuation pivots.
  Matrix<Rational> M = mat_transpose(Q, A);  // (cols_A x rows_A)
  long rows = static_cast<long>(M.rows()), cols = static_cast<long>(M.cols());
  Matrix<Rational> R = mat_transpose(Q, B);  // (cols_A x rows_B)
  // Column operations on M correspond to mixing solution coordinates: track V
  // with solution = V * y.
  Matrix<Rational> V = Matrix<Rational>::identity(cols, Rational(1), Rational(0));
  Int P(p);
  std::vector<bool> rdone(rows, false), cdone(cols, false);
  std::vector<std::pair<long, long>> pivots;
  while (true) {
    bool found = false;
    long bi = 0, bj = 0, best = 0;
    for (long i = 0; i < rows; ++i) {
      if (rdone[i]) continue;
      for (long j = 0; j < cols; ++j) {
        if (cdone[j] || M(i, j).is_zero()) continue;
        long v = M(i, j).valuation(P);
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) break;
    Rational piv = M(bi, bj);
    for (long i = 0; i < rows; ++i) {
      if (i == bi || M(i, bj).is_zero()) continue;
      Rational f = M(i, bj) / piv;
      for (long j = 0; j < cols; ++j) M(i, j) -= f * M(bi, j);
      for (long j = 0; j < static_cast<long>(R.cols()); ++j) R(i, j) -= f * R(bi, j);
    }
    for (long j = 0; j < cols; ++j) {
      if (j == bj || M(bi, j).is_zero()) continue;
      Rational f = M(bi, j) / piv;
      for (long i = 0; i < rows; ++i) M(i, j) -= f * M(i, bj);
      for (long i = 0; i < cols; ++i) V(i, j) -= f * V(i, bj);
    }
    rdone[bi] = true;
    cdone[bj] = true;
    pivots.emplace_back(bi, bj);
  }
  // Solve diagonal system: y_bj = R_bi / piv must be p-integral; rows without
  // pivots must have zero RHS.
  long nb = static_cast<long>(R.cols());
  Matrix<Rational> Y(cols, nb, Rational(0));
  for (auto& [bi, bj] : pivots)
    for (long t = 0; t < nb; ++t) {
      Rational y = R(bi, t) / M(bi, bj);
      if (!y.is_zero() && y.valuation(P) < 0) throw error("no p-integral solution");
      Y(bj, t) = y;
    }
  for (long i = 0; i < rows; ++i) {
    if (rdone[i]) continue;
    for (long t = 0; t < nb; ++t)
      if (!R(i, t).is_zero()) throw error("no solution");
  }
  auto X = mat_mul(Q, V, Y);  // solution columns
  return mat_transpose(Q, X);
}

}  // namespace detail

// Split an epimorphism f: M -> M2 of modules. Rational variant: u in L with
// Tr(u) = 1, returns i with i f = id. Integral variant (p >= 2): u0 in T with
// Tr(u0) = p^s, returns i with i f = p^s n id and p-integral entries.
inline MaschkeResult maschke_coretraction(const TwistedRing& T, const RModule& M,
                                          const RModule& M2, const Matrix<Rational>& f,
                                          long p = 0) {
  RationalField Q;
  const auto& R = T.ring_data();
  const auto& L = R.field();
  if (R.fixed_degree() != 1) throw error("fixed field must be Q");
  // R-linearity of f and surjectivity.
  for (long b = 0; b < T.g() * T.m(); ++b)
    if (!(mat_mul(Q, M.act[b], f) == mat_mul(Q, f, M2.act[b]))) throw error("not module-linear");
  if (static_cast<long>(mat_rank(Q, f)) != M2.dim) throw error("not an epimorphism");

  // Coefficient-linear coretraction i0: i0 f = id and i0 commutes with the
  // action of gamma (hence of all of L).
  long dM = M.dim, d2 = M2.dim;
  const auto& Agam = M.act[0 * T.m() + (T.m() > 1 ? 1 : 0)];
  const auto& A2gam = M2.act[0 * T.m() + (T.m() > 1 ? 1 : 0)];
  bool need_linearity = T.m() > 1;
  long unknowns = d2 * dM;
  long eqs = d2 * d2 + (need_linearity ? d2 * dM : 0);
  Matrix<Rational> A(unknowns, eqs, Rational(0));  // transposed: columns are equations
  std::vector<Rational> rhs(eqs, Rational(0));
  long eq = 0;
  for (long i = 0; i < d2; ++i)
    for (long j = 0; j < d2; ++j, ++eq) {
      for (long k = 0; k < dM; ++k) A(i * dM + k, eq) = f(k, j);
      rhs[eq] = (i == j) ? Rational(1) : Rational(0);
    }
  if (need_linearity) {
    // (A2gam * I0 - I0 * Agam)(i,j) = 0
    for (long i = 0; i < d2; ++i)
      for (long j = 0; j < dM; ++j, ++eq) {
        for (long k = 0; k < d2; ++k) A(k * dM + j, eq) += A2gam(i, k);
        for (long k = 0; k < dM; ++k) A(i * dM + k, eq) -= Agam(k, j);
      }
  }
  // Solve x^T A = rhs (x indexes unknowns).
  Matrix<Rational> Bm(1, eqs, Rational(0));
  for (long t = 0; t < eqs; ++t) Bm(0, t) = rhs[t];
  Matrix<Rational> x;
  if (p >= 2)
    x = detail::solve_left_p_integral(A, Bm, p);
  else {
    auto At = mat_transpose(Q, A);
    auto res = linear_solve(Q, At, SolveMode::solve, &rhs);
    x = Matrix<Rational>(1, unknowns, Rational(0));
    for (long t = 0; t < unknowns; ++t) x(0, t) = (*res.sol)[t];
  }
  Matrix<Rational> I0(d2, dM, Rational(0));
  for (long i = 0; i < d2; ++i)
    for (long k = 0; k < dM; ++k) I0(i, k) = x(0, i * dM + k);

  // u with Tr(u) = 1 (resp. u0 in T with Tr(u0) = p^s): first power-basis
  // element with nonzero (resp. minimal-valuation) trace, scaled.
  MaschkeResult out;
  out.i0 = I0;
  NumberField::Elem u = L.zero();
  Rational factor(1);
  if (p >= 2) {
    auto ld = R.local_data(p);
    long best_l = -1;
    for (long l = 0; l < T.m(); ++l) {
      Rational tr = L.trace(L.power_basis(l));
      if (tr.is_zero()) continue;
      if (best_l < 0 || tr.valuation(Int(p)) < L.trace(L.power_basis(best_l)).valuation(Int(p)))
        best_l = l;
    }
    Rational tr = L.trace(L.power_basis(best_l));
    Rational ps = Rational(Int::power(Int(p), ld.s));
    u = L.mul(L.from_rational(ps / tr), L.power_basis(best_l));
    factor = ps * Rational(R.n());
  } else {
    long best_l = -1;
    for (long l = 0; l < T.m(); ++l)
      if (!L.trace(L.power_basis(l)).is_zero()) {
        best_l = l;
        break;
      }
    u = L.mul(L.from_rational(L.trace(L.power_basis(best_l)).inverse()), L.power_basis(best_l));
  }
  // i : x'' -> c * sum_sigma (x'' sigma) i0 * (u sigma^{-1}),  c = 1/n or 1.
  Matrix<Rational> I(d2, dM, Rational(0));
  for (long s = 0; s < T.g(); ++s) {
    // ring element u * sigma^{-1} = sigma^{-1} * u^(sigma^{-1})
    int sinv = T.group().inv(static_cast<int>(s));
    auto usig = T.zero();
    usig.c[sinv] = R.apply(sinv, u);
    auto right = module_action(T, M, usig);
    I = mat_add(Q, I, mat_mul(Q, mat_mul(Q, M2.act[s * T.m() + 0], I0), right));
  }
  if (p < 2) I = mat_scale(Q, Rational(Int(1), Int(R.n())), I);
  out.i = I;
  out.factor = factor;
  // Verify: module-linearity of i and i*f = factor * id.
  for (long b = 0; b < T.g() * T.m(); ++b)
    if (!(mat_mul(Q, M2.act[b], I) == mat_mul(Q, I, M.act[b])))
      throw error("splitting is not module-linear");
  auto should = mat_scale(Q, factor, Matrix<Rational>::identity(d2, Rational(1), Rational(0)));
  if (!(mat_mul(Q, I, f) == should)) throw error("splitting identity failed");
  return out;
}

}  // namespace wreathe
