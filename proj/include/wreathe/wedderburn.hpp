#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wreathe/quaternion.hpp"
#include "wreathe/twisted.hpp"

namespace wreathe {

// Endomorphism coefficient algebra K_i of a simple module: Q itself, a number
// field, or a rational quaternion algebra. Elements are coordinate vectors
// (length 1, deg, or 4).
class CoeffAlg {
 public:
  enum class Kind { rational, number_field, quaternion };
  using Elem = std::vector<Rational>;

  static CoeffAlg rationals() {
    CoeffAlg k;
    k.kind_ = Kind::rational;
    k.r_ = 1;
    k.c_ = 1;
    k.d_ = 1;
    return k;
  }
  static CoeffAlg number_field(QPoly mu) {
    CoeffAlg k;
    k.kind_ = Kind::number_field;
    k.nf_ = std::make_shared<NumberField>(std::move(mu));
    k.r_ = k.nf_->degree();
    k.c_ = k.r_;
    k.d_ = 1;
    return k;
  }
  static CoeffAlg quaternion(Rational a, Rational b) {
    CoeffAlg k;
    k.kind_ = Kind::quaternion;
    k.quat_ = std::make_shared<QuaternionAlgebra>(std::move(a), std::move(b));
    k.r_ = 4;
    k.c_ = 1;
    k.d_ = 2;
    return k;
  }

  Kind kind() const { return kind_; }
  long r() const { return r_; }  // [K_i : K]
  long c() const { return c_; }  // [Z(K_i) : K]
  long d() const { return d_; }  // Schur-type index, r = c d^2
  const NumberField& nf() const { return *nf_; }
  const QuaternionAlgebra& quat() const { return *quat_; }

  Elem zero() const { return Elem(r_ == 4 && kind_ == Kind::quaternion ? 4 : r_, Rational(0)); }
  Elem one() const {
    auto e = zero();
    e[0] = Rational(1);
    return e;
  }
  Elem from_rational(const Rational& q) const {
    auto e = zero();
    e[0] = q;
    return e;
  }
  Elem add(const Elem& x, const Elem& y) const {
    Elem r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
  }
  Elem sub(const Elem& x, const Elem& y) const {
    Elem r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
  }
  Elem neg(const Elem& x) const {
    Elem r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
    return r;
  }
  Elem mul(const Elem& x, const Elem& y) const {
    switch (kind_) {
      case Kind::rational:
        return {x[0] * y[0]};
      case Kind::number_field:
        return nf_->mul(x, y);
      case Kind::quaternion: {
        auto p = quat_->mul({x[0], x[1], x[2], x[3]}, {y[0], y[1], y[2], y[3]});
        return {p.w, p.x, p.y, p.z};
      }
    }
    throw error("bad coefficient algebra");
  }
  Elem inv(const Elem& x) const {
    switch (kind_) {
      case Kind::rational:
        return {x[0].inverse()};
      case Kind::number_field:
        return nf_->inv(x);
      case Kind::quaternion: {
        auto p = quat_->inv({x[0], x[1], x[2], x[3]});
        return {p.w, p.x, p.y, p.z};
      }
    }
    throw error("bad coefficient algebra");
  }
  bool is_zero(const Elem& x) const {
    for (auto& q : x)
      if (!q.is_zero()) return false;
    return true;
  }
  bool eq(const Elem& x, const Elem& y) const { return x == y; }
  bool same_ring(const CoeffAlg& o) const { return kind_ == o.kind_ && r_ == o.r_; }

  bool is_central(const Elem& x) const {
    if (kind_ != Kind::quaternion) return true;
    return x[1].is_zero() && x[2].is_zero() && x[3].is_zero();
  }

  // Reduced trace tr_{K_i/K} : K_i -> Q.
  Rational reduced_trace(const Elem& x) const {
    switch (kind_) {
      case Kind::rational:
        return x[0];
      case Kind::number_field:
        return nf_->trace(x);
      case Kind::quaternion:
        return x[0] + x[0];
    }
    throw error("bad coefficient algebra");
  }

  // Tr_{Z(K_i)/K} of a central element.
  Rational center_trace(const Elem& x) const {
    if (!is_central(x)) throw error("not central");
    switch (kind_) {
      case Kind::rational:
        return x[0];
      case Kind::number_field:
        return nf_->trace(x);
      case Kind::quaternion:
        return x[0];
    }
    throw error("bad coefficient algebra");
  }

  std::string to_string(const Elem& x) const {
    switch (kind_) {
      case Kind::rational:
        return x[0].str();
      case Kind::number_field:
        return nf_->to_string(x, "w");
      case Kind::quaternion:
        return quat_->to_string({x[0], x[1], x[2], x[3]});
    }
    return "?";
  }

 private:
  Kind kind_ = Kind::rational;
  std::shared_ptr<NumberField> nf_;
  std::shared_ptr<QuaternionAlgebra> quat_;
  long r_ = 1, c_ = 1, d_ = 1;
};

using KMat = Matrix<CoeffAlg::Elem>;

// One Wedderburn block: omega_i as matrices over K_i on the ring basis
// sigma gamma^l (sigma-major).
struct BlockRep {
  CoeffAlg K;
  long x = 0;
  std::vector<KMat> omega;  // g*m matrices, each x by x

  KMat of(const TwistedRing& T, const TwistedElement& xi) const {
    KMat out(x, x, K.zero());
    for (long s = 0; s < T.g(); ++s)
      for (long l = 0; l < T.m(); ++l) {
        const Rational& q = xi.c[s][l];
        if (q.is_zero()) continue;
        out = mat_add(K, out, mat_scale(K, K.from_rational(q), omega[s * T.m() + l]));
      }
    return out;
  }

  CoeffAlg::Elem trace_Ki(const KMat& M) const {
    auto t = K.zero();
    for (long a = 0; a < x; ++a) t = K.add(t, M(a, a));
    return t;
  }
};

struct WedderburnData {
  std::vector<BlockRep> blocks;

  long dim_sum() const {
    long s = 0;
    for (auto& b : blocks) s += b.K.r() * b.x * b.x;
    return s;
  }
  bool complete(const TwistedRing& T) const { return dim_sum() == T.g() * T.m(); }
};

// ---- block constructions ----------------------------------------------------

// Block 1: the principal module L over K = Q, x = h.
inline BlockRep principal_block(const TwistedRing& T) {
  if (T.ring_data().fixed_degree() != 1) throw error("fixed field must be Q");
  BlockRep b;
  b.K = CoeffAlg::rationals();
  b.x = T.m();
  auto M = principal_module(T);
  for (auto& A : M.act) {
    KMat km(b.x, b.x, b.K.zero());
    for (long i = 0; i < b.x; ++i)
      for (long j = 0; j < b.x; ++j) km(i, j) = {A(i, j)};
    b.omega.push_back(std::move(km));
  }
  return b;
}

namespace detail {

// Verify multiplicativity of omega on all group pairs and the twist law
// omega(e gamma) omega(sigma) = omega(sigma) omega(e gamma^sigma).
inline void validate_block(const TwistedRing& T, const BlockRep& b) {
  const auto& K = b.K;
  const auto& G = T.group();
  long m = T.m();
  auto om_group = [&](int s) { return b.omega[s * m + 0]; };
  for (std::size_t s = 0; s < G.order(); ++s)
    for (std::size_t t = 0; t < G.order(); ++t) {
      auto lhs = mat_mul(K, om_group(static_cast<int>(s)), om_group(static_cast<int>(t)));
      if (!(lhs == om_group(G.mul(static_cast<int>(s), static_cast<int>(t)))))
        throw error("inconsistent representation data");
    }
  // omega(e y) for arbitrary y via powers of omega(e gamma)
  auto om_coeff = [&](const NumberField::Elem& y) {
    KMat out(b.x, b.x, K.zero());
    KMat cur = KMat::identity(b.x, K.one(), K.zero());
    const auto& gam = b.omega[G.id() * m + (m > 1 ? 1 : 0)];
    if (m == 1) {
      return mat_scale(K, K.from_rational(y[0]), KMat::identity(b.x, K.one(), K.zero()));
    }
    for (long j = 0; j < m; ++j) {
      out = mat_add(K, out, mat_scale(K, K.from_rational(y[j]), cur));
      cur = mat_mul(K, cur, gam);
    }
    return out;
  };
  for (std::size_t s = 0; s < G.order(); ++s) {
    auto lhs = mat_mul(K, om_coeff(T.coeff_field().gen()), om_group(static_cast<int>(s)));
    auto rhs = mat_mul(K, om_group(static_cast<int>(s)),
                       om_coeff(T.ring_data().action_of(static_cast<int>(s))));
    if (!(lhs == rhs)) throw error("inconsistent representation data");
  }
  // basis entries must match om_group * om_coeff(gamma^l)
  for (std::size_t s = 0; s < G.order(); ++s)
    for (long l = 0; l < m; ++l) {
      auto expect = mat_mul(K, om_group(static_cast<int>(s)),
                            om_coeff(T.coeff_field().power_basis(l)));
      if (!(expect == b.omega[s * m + l])) throw error("inconsistent representation data");
    }
}

}  // namespace detail

// Block from generator matrices: one matrix per group generator plus the
// matrix of multiplication by gamma.
inline BlockRep block_from_generator_matrices(const TwistedRing& T, CoeffAlg K, long x,
                                              const std::vector<KMat>& gen_mats,
                                              const KMat& gamma_mat) {
  const auto& G = T.group();
  long m = T.m();
  if (gen_mats.size() != G.generator_indices().size())
    throw error("one matrix required per generator");
  BlockRep b;
  b.K = K;
  b.x = x;
  // omega on group elements along generator words
  std::vector<KMat> omg(G.order(), KMat());
  std::vector<bool> have(G.order(), false);
  omg[G.id()] = KMat::identity(x, K.one(), K.zero());
  have[G.id()] = true;
  std::vector<int> queue = {G.id()};
  const auto& gens = G.generator_indices();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int cur = queue[head];
    for (std::size_t t = 0; t < gens.size(); ++t) {
      int nxt = G.mul(cur, gens[t]);
      auto prod = mat_mul(K, omg[cur], gen_mats[t]);
      if (!have[nxt]) {
        omg[nxt] = prod;
        have[nxt] = true;
        queue.push_back(nxt);
      } else if (!(omg[nxt] == prod)) {
        throw error("inconsistent representation data");
      }
    }
  }
  // omega(sigma gamma^l) = omega(sigma) * gamma_mat^l
  for (std::size_t s = 0; s < G.order(); ++s) {
    KMat cur = KMat::identity(x, K.one(), K.zero());
    for (long l = 0; l < m; ++l) {
      b.omega.push_back(mat_mul(K, omg[s], cur));
      cur = mat_mul(K, cur, gamma_mat);
    }
  }
  detail::validate_block(T, b);
  return b;
}

// Quaternion block cut out by an idempotent: X = e*A as a right module, with
// K identified along e, eIe, eJe.
inline BlockRep block_from_idempotent(const TwistedRing& T, Rational qa, Rational qb,
                                      const TwistedElement& e, const TwistedElement& Ielem,
                                      const TwistedElement& Jelem) {
  RationalField Q;
  if (!T.eq(T.mul(e, e), e)) throw error("inconsistent representation data");
  long D = T.dim();
  auto to_row = [&](const TwistedElement& v) {
    std::vector<Rational> row;
    row.reserve(D);
    for (long s = 0; s < T.g(); ++s)
      for (long l = 0; l < T.m(); ++l) row.push_back(v.c[s][l]);
    return row;
  };
  // X = e * Lambda
  Matrix<Rational> rows(D, D, Rational(0));
  for (long s = 0; s < T.g(); ++s)
    for (long l = 0; l < T.m(); ++l)
      rows.set_row(s * T.m() + l, to_row(T.mul(e, T.basis_elem(static_cast<int>(s), l))));
  auto xbasis = linear_solve(Q, rows, SolveMode::image).basis;
  long dimX = static_cast<long>(xbasis.rows());
  // quaternion structure of eAe
  auto I2 = T.mul(Ielem, Ielem);
  auto J2 = T.mul(Jelem, Jelem);
  if (!T.eq(I2, T.scale(qa, e)) || !T.eq(J2, T.scale(qb, e)) ||
      !T.eq(T.mul(Ielem, Jelem), T.neg(T.mul(Jelem, Ielem))))
    throw error("inconsistent representation data");
  std::vector<TwistedElement> hbasis = {e, Ielem, Jelem, T.mul(Ielem, Jelem)};
  // K-basis of X: grow by ring basis vectors not in the K-span so far
  std::vector<TwistedElement> vbasis;
  Matrix<Rational> span(0, D, Rational(0));
  auto span_rank = [&](const Matrix<Rational>& M) { return mat_rank(Q, M); };
  auto add_span = [&](const TwistedElement& v) {
    Matrix<Rational> next(span.rows() + 4, D, Rational(0));
    for (std::size_t r = 0; r < span.rows(); ++r) next.set_row(r, span.row(r));
    for (int t = 0; t < 4; ++t) next.set_row(span.rows() + t, to_row(T.mul(hbasis[t], v)));
    return next;
  };
  for (long s = 0; s < T.g() && static_cast<long>(span.rows()) < dimX; ++s)
    for (long l = 0; l < T.m(); ++l) {
      auto cand = T.mul(e, T.basis_elem(static_cast<int>(s), l));
      if (T.is_zero(cand)) continue;
      auto next = add_span(cand);
      if (span_rank(next) == static_cast<std::size_t>(span.rows() + 4)) {
        span = next;
        vbasis.push_back(cand);
        if (static_cast<long>(span.rows()) >= dimX) break;
      }
    }
  long x = static_cast<long>(vbasis.size());
  if (4 * x != dimX) throw error("inconsistent representation data");
  // Express v_a * b = sum_j w_aj v_j with w in eAe: columns are q_t * v_j.
  Matrix<Rational> colmat(4 * x, D, Rational(0));
  for (long j = 0; j < x; ++j)
    for (int t = 0; t < 4; ++t)
      colmat.set_row(j * 4 + t, to_row(T.mul(hbasis[t], vbasis[j])));
  auto colT = mat_transpose(Q, colmat);
  BlockRep b;
  b.K = CoeffAlg::quaternion(qa, qb);
  b.x = x;
  for (long s = 0; s < T.g(); ++s)
    for (long l = 0; l < T.m(); ++l) {
      auto bb = T.basis_elem(static_cast<int>(s), l);
      KMat M(x, x, b.K.zero());
      for (long a = 0; a < x; ++a) {
        auto img = to_row(T.mul(vbasis[a], bb));
        auto sol = linear_solve(Q, colT, SolveMode::solve, &img);
        for (long j = 0; j < x; ++j) {
          CoeffAlg::Elem w = {(*sol.sol)[j * 4 + 0], (*sol.sol)[j * 4 + 1], (*sol.sol)[j * 4 + 2],
                              (*sol.sol)[j * 4 + 3]};
          M(a, j) = w;
        }
      }
      b.omega.push_back(std::move(M));
    }
  detail::validate_block(T, b);
  return b;
}

// ---- the identity engine -----------------------------------------------------

// Dual basis of the power basis with respect to Tr_{L/K}.
inline std::vector<NumberField::Elem> dual_power_basis(const TwistedRing& T) {
  RationalField Q;
  const auto& L = T.coeff_field();
  long m = T.m();
  Matrix<Rational> gram(m, m, Rational(0));
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b) gram(a, b) = L.trace(L.mul(L.power_basis(a), L.power_basis(b)));
  Matrix<Rational> gi;
  try {
    gi = mat_inverse(Q, gram);
  } catch (const error&) {
    throw error("inseparable basis");
  }
  std::vector<NumberField::Elem> dual;
  for (long l = 0; l < m; ++l) {
    auto y = L.zero();
    for (long j = 0; j < m; ++j)
      y = L.add(y, L.mul(L.from_rational(gi(l, j)), L.power_basis(j)));
    dual.push_back(y);
  }
  return dual;
}

struct CheckResult {
  Rational lhs, rhs;
  bool equal;
};

inline CheckResult plancherel_check(const TwistedRing& T, const WedderburnData& W,
                                    const TwistedElement& xi, const TwistedElement& eta) {
  if (!W.complete(T)) throw error("missing blocks");
  CheckResult out;
  out.lhs = T.form(xi, eta);
  out.rhs = Rational(0);
  for (auto& b : W.blocks) {
    auto prod = mat_mul(b.K, b.of(T, xi), b.of(T, eta));
    Rational coeff(Int(b.x * b.K.d()), Int(T.g()));
    out.rhs += coeff * b.K.reduced_trace(b.trace_Ki(prod));
  }
  out.equal = (out.lhs == out.rhs);
  return out;
}

// omega^{-1} applied to a tuple of block matrices.
inline TwistedElement fourier_invert(const TwistedRing& T, const WedderburnData& W,
                                     const std::vector<KMat>& phi) {
  if (!W.complete(T)) throw error("missing blocks");
  if (phi.size() != W.blocks.size()) throw error("missing blocks");
  const auto& G = T.group();
  const auto& L = T.coeff_field();
  auto dual = dual_power_basis(T);
  long h = T.ring_data().h();
  auto out = T.zero();
  for (long s = 0; s < T.g(); ++s) {
    int sinv = G.inv(static_cast<int>(s));
    for (long l = 0; l < T.m(); ++l) {
      // coefficient sum_i (x_i d_i / h) tr_{K_i/K} Tr_{K_i}(omega_i(y*_l sigma^{-1}) phi_i)
      auto ystar_sinv = T.zero();
      ystar_sinv.c[sinv] = T.ring_data().apply(sinv, dual[l]);
      Rational coeff(0);
      for (std::size_t i = 0; i < W.blocks.size(); ++i) {
        const auto& b = W.blocks[i];
        auto prod = mat_mul(b.K, b.of(T, ystar_sinv), phi[i]);
        coeff += Rational(Int(b.x * b.K.d()), Int(h)) * b.K.reduced_trace(b.trace_Ki(prod));
      }
      if (coeff.is_zero()) continue;
      out.c[s] = L.add(out.c[s], L.mul(L.from_rational(coeff), L.power_basis(l)));
    }
  }
  return T.scale(Rational(Int(1), Int(T.ring_data().n())), out);
}

// Schur relation sum for the index tuple; equals (g/(x_i d_i)) * delta.
inline CoeffAlg::Elem schur_sum(const TwistedRing& T, const WedderburnData& W, std::size_t i,
                                long a, long bb, std::size_t ip, long ap, long bp) {
  if (i >= W.blocks.size() || ip >= W.blocks.size()) throw error("index out of range");
  const auto& Bi = W.blocks[i];
  const auto& Bip = W.blocks[ip];
  if (a < 0 || a >= Bi.x || bb < 0 || bb >= Bi.x || ap < 0 || ap >= Bip.x || bp < 0 ||
      bp >= Bip.x)
    throw error("index out of range");
  const auto& G = T.group();
  auto dual = dual_power_basis(T);
  auto acc = Bi.K.zero();
  for (long s = 0; s < T.g(); ++s) {
    int sinv = G.inv(static_cast<int>(s));
    for (long l = 0; l < T.m(); ++l) {
      auto ystar_sinv = T.zero();
      ystar_sinv.c[sinv] = T.ring_data().apply(sinv, dual[l]);
      Rational tr = Bip.K.reduced_trace(Bip.of(T, ystar_sinv)(bp, ap));
      if (tr.is_zero()) continue;
      const auto& entry = Bi.omega[s * T.m() + l](a, bb);
      acc = Bi.K.add(acc, Bi.K.mul(entry, Bi.K.from_rational(tr)));
    }
  }
  return acc;
}

inline Rational character(const TwistedRing& T, const WedderburnData& W, std::size_t i,
                          const TwistedElement& xi) {
  if (i >= W.blocks.size()) throw error("index out of range");
  const auto& b = W.blocks[i];
  return b.K.reduced_trace(b.trace_Ki(b.of(T, xi)));
}

inline Rational orthogonality_sum(const TwistedRing& T, const WedderburnData& W, std::size_t i,
                                  std::size_t ip) {
  if (i >= W.blocks.size() || ip >= W.blocks.size()) throw error("index out of range");
  const auto& G = T.group();
  auto dual = dual_power_basis(T);
  Rational acc(0);
  for (long s = 0; s < T.g(); ++s) {
    int sinv = G.inv(static_cast<int>(s));
    for (long l = 0; l < T.m(); ++l) {
      auto sylt = T.basis_elem(static_cast<int>(s), l);
      auto ystar_sinv = T.zero();
      ystar_sinv.c[sinv] = T.ring_data().apply(sinv, dual[l]);
      acc += character(T, W, i, sylt) * character(T, W, ip, ystar_sinv);
    }
  }
  return acc;
}

// chi_i vanishes on sigma y for sigma outside N.
inline bool character_support_check(const TwistedRing& T, const WedderburnData& W) {
  for (long s = 0; s < T.g(); ++s) {
    if (T.ring_data().in_kernel(static_cast<int>(s))) continue;
    for (long l = 0; l < T.m(); ++l) {
      auto b = T.basis_elem(static_cast<int>(s), l);
      for (std::size_t i = 0; i < W.blocks.size(); ++i)
        if (!character(T, W, i, b).is_zero()) return false;
    }
  }
  return true;
}

// Primitive central idempotents via Fourier coefficients of the characters.
inline std::vector<TwistedElement> central_idempotents(const TwistedRing& T,
                                                       const WedderburnData& W) {
  if (!W.complete(T)) throw error("missing blocks");
  const auto& G = T.group();
  const auto& L = T.coeff_field();
  auto dual = dual_power_basis(T);
  std::vector<TwistedElement> eps;
  for (std::size_t i = 0; i < W.blocks.size(); ++i) {
    const auto& b = W.blocks[i];
    auto e = T.zero();
    for (long s = 0; s < T.g(); ++s) {
      int sinv = G.inv(static_cast<int>(s));
      for (long l = 0; l < T.m(); ++l) {
        // chi_i(y_l sigma^{-1}); the ring element (e y_l)(sigma^{-1})
        auto yl_sinv = T.zero();
        yl_sinv.c[sinv] = T.ring_data().apply(sinv, L.power_basis(l));
        Rational chi = character(T, W, i, yl_sinv);
        if (chi.is_zero()) continue;
        e.c[s] = L.add(e.c[s], L.mul(L.from_rational(chi), dual[l]));
      }
    }
    eps.push_back(T.scale(Rational(Int(b.x * b.K.d()), Int(T.g())), e));
  }
  // verification: orthogonal idempotents summing to 1, central, with
  // omega_j(eps_i) = delta id
  auto sum = T.zero();
  for (auto& e : eps) sum = T.add(sum, e);
  if (!T.eq(sum, T.one())) throw error("inconsistent representation data");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    for (std::size_t j = 0; j < eps.size(); ++j) {
      auto prod = T.mul(eps[i], eps[j]);
      if (i == j ? !T.eq(prod, eps[i]) : !T.is_zero(prod))
        throw error("inconsistent representation data");
    }
    for (long s = 0; s < T.g(); ++s) {
      auto bs = T.group_elem(static_cast<int>(s));
      if (!T.eq(T.mul(eps[i], bs), T.mul(bs, eps[i])))
        throw error("inconsistent representation data");
    }
    for (std::size_t j = 0; j < W.blocks.size(); ++j) {
      const auto& bj = W.blocks[j];
      auto img = bj.of(T, eps[i]);
      auto expect = (i == j) ? KMat::identity(bj.x, bj.K.one(), bj.K.zero())
                             : KMat(bj.x, bj.x, bj.K.zero());
      if (!(img == expect)) throw error("inconsistent representation data");
    }
  }
  return eps;
}

// Noether inversion for a faithful action: phi in End_K(L) pulled back to the
// twisted group ring.
inline TwistedElement noether_invert(const TwistedRing& T, const Matrix<Rational>& phi) {
  const auto& R = T.ring_data();
  if (!R.faithful()) throw error("action not faithful");
  const auto& L = T.coeff_field();
  auto dual = dual_power_basis(T);
  auto lambda_sum = T.zero();
  for (long s = 0; s < T.g(); ++s) lambda_sum = T.add(lambda_sum, T.group_elem(static_cast<int>(s)));
  auto out = T.zero();
  for (long l = 0; l < T.m(); ++l)
    for (long mm = 0; mm < T.m(); ++mm) {
      if (phi(l, mm).is_zero()) continue;
      auto term = T.mul(T.coeff_elem(dual[l]),
                        T.mul(lambda_sum, T.coeff_elem(L.power_basis(mm))));
      out = T.add(out, T.scale(phi(l, mm), term));
    }
  return out;
}

// Central Plancherel: both sides of Prop CB3 plus the Rem CB1 scaling.
struct CentralPlancherelResult {
  Rational lhs, rhs;
  bool equal;
  bool scaling_ok;  // h * (xi,xi')^Z = (xi,xi')
};

inline CentralPlancherelResult central_plancherel_check(const TwistedRing& T,
                                                        const WedderburnData& W,
                                                        const TwistedElement& xi,
                                                        const TwistedElement& xip) {
  if (!W.complete(T)) throw error("missing blocks");
  // centrality of the inputs
  for (long s = 0; s < T.g(); ++s) {
    auto bs = T.group_elem(static_cast<int>(s));
    if (!T.eq(T.mul(xi, bs), T.mul(bs, xi)) || !T.eq(T.mul(xip, bs), T.mul(bs, xip)))
      throw error("not central");
  }
  auto gamma_e = T.coeff_elem(T.coeff_field().gen());
  if (!T.eq(T.mul(xi, gamma_e), T.mul(gamma_e, xi))) throw error("not central");

  // lhs via the definitional central form: expand in the center basis
  auto cb = center_basis(T);
  RationalField Q;
  long D = T.dim();
  Matrix<Rational> basis(cb.dim(), D, Rational(0));
  auto to_row = [&](const TwistedElement& v) {
    std::vector<Rational> row;
    for (long s = 0; s < T.g(); ++s)
      for (long l = 0; l < T.m(); ++l) row.push_back(v.c[s][l]);
    return row;
  };
  for (long r = 0; r < cb.dim(); ++r) basis.set_row(r, to_row(cb.all[r]));
  auto bt = mat_transpose(Q, basis);
  auto v1 = to_row(xi);
  auto v2 = to_row(xip);
  auto c1 = *linear_solve(Q, bt, SolveMode::solve, &v1).sol;
  auto c2 = *linear_solve(Q, bt, SolveMode::solve, &v2).sol;
  auto zg = central_gram(T, cb);
  CentralPlancherelResult out;
  out.lhs = Rational(0);
  for (long i = 0; i < cb.dim(); ++i)
    for (long j = 0; j < cb.dim(); ++j) out.lhs += c1[i] * c2[j] * zg(i, j);
  // rhs via the block sum
  out.rhs = Rational(0);
  long h = T.ring_data().h();
  long n = T.ring_data().n();
  for (auto& b : W.blocks) {
    auto m1 = b.of(T, xi);
    auto m2 = b.of(T, xip);
    // central elements act as central scalars
    auto z1 = m1(0, 0);
    auto z2 = m2(0, 0);
    auto scalar_check = [&](const KMat& M, const CoeffAlg::Elem& z) {
      for (long r = 0; r < b.x; ++r)
        for (long c = 0; c < b.x; ++c) {
          if (r == c ? !b.K.eq(M(r, c), z) : !b.K.is_zero(M(r, c)))
            throw error("not central");
        }
      if (!b.K.is_central(z)) throw error("not central");
    };
    scalar_check(m1, z1);
    scalar_check(m2, z2);
    Rational coeff = Rational(Int(1), Int(n)) *
                     Rational(Int(b.x * b.K.d()), Int(h)) * Rational(Int(b.x * b.K.d()), Int(h));
    out.rhs += coeff * b.K.center_trace(b.K.mul(z1, z2));
  }
  out.equal = (out.lhs == out.rhs);
  out.scaling_ok = (Rational(h) * out.lhs == T.form(xi, xip));
  return out;
}

struct DimensionAudit {
  bool dims_ok;          // gh = sum r_i x_i^2
  bool center_ok;        // sum c_i = #classes(N)
  bool morita_ok;        // gh = h^2 n
  bool xdh_integral;     // x_i d_i / h in Z
  bool xdh_unit_ok;      // p does not divide x_i d_i / h for given primes with p coprime to n
};

inline DimensionAudit dimension_audits(const TwistedRing& T, const WedderburnData& W,
                                       const std::vector<long>& primes) {
  DimensionAudit out{};
  const auto& R = T.ring_data();
  out.dims_ok = W.complete(T);
  const auto& G = R.group();
  std::vector<bool> seen(G.order(), false);
  long classes = 0;
  for (int nu : R.kernel()) {
    if (seen[nu]) continue;
    ++classes;
    for (int nu2 : R.kernel()) seen[G.conj(nu, nu2)] = true;
  }
  long csum = 0;
  for (auto& b : W.blocks) csum += b.K.c();
  out.center_ok = (csum == classes);
  out.morita_ok = (T.g() * T.m() == R.h() * R.h() * R.n());
  out.xdh_integral = true;
  out.xdh_unit_ok = true;
  for (auto& b : W.blocks) {
    long xd = b.x * b.K.d();
    if (xd % R.h() != 0) out.xdh_integral = false;
    for (long p : primes)
      if (R.n() % p != 0 && xd % R.h() == 0 && (xd / R.h()) % p == 0) out.xdh_unit_ok = false;
  }
  return out;
}

}  // namespace wreathe
