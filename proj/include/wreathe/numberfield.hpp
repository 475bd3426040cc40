#pragma once

#include <cmath>
#include <set>

#include "wreathe/factor.hpp"
#include "wreathe/linalg.hpp"
#include "wreathe/poly.hpp"

namespace wreathe {

using QPoly = Poly<RationalField>;

inline QPoly qpoly_from_longs(const std::vector<long>& c) {
  RationalField Q;
  std::vector<Rational> v;
  v.reserve(c.size());
  for (long x : c) v.emplace_back(x);
  return QPoly::from(Q, std::move(v));
}

// Irreducibility over Q: modular degree patterns first, then a bounded
// search for low-degree integer factors (Gauss + Mignotte).
inline bool irreducible_over_Q(const QPoly& mu) {
  RationalField Q;
  long m = mu.degree();
  if (m <= 0) return false;
  if (m == 1) return true;
  // Clear denominators to a primitive integer polynomial.
  Int den(1);
  for (auto& c : mu.coeffs()) den = lcm(den, c.den());
  std::vector<Int> f(m + 1);
  for (long i = 0; i <= m; ++i) f[i] = (mu.coeffs()[i] * Rational(den)).num();
  Int content(0);
  for (auto& c : f) content = gcd(content, c);
  for (auto& c : f) c = c / content;

  // Degree patterns mod small primes not dividing the leading coefficient.
  std::set<long> possible;
  for (long d = 0; d <= m; ++d) possible.insert(d);
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L}) {
    if (f[m].divisible_by(Int(p))) continue;
    FpCtx k(p);
    std::vector<FpCtx::Elem> red(m + 1);
    for (long i = 0; i <= m; ++i) red[i] = k.from_long((f[i] % Int(p)).to_long());
    auto fp = Poly<FpCtx>::from(k, red);
    if (fp.degree() != m) continue;
    auto fac = factor_poly_fq(k, fp, 0);
    // Degrees realizable by products of the modular factors.
    std::set<long> sums = {0};
    for (auto& [g, mult] : fac.factors)
      for (long t = 0; t < mult; ++t) {
        std::set<long> next = sums;
        for (long s : sums) next.insert(s + g.degree());
        sums = next;
      }
    std::set<long> inter;
    for (long d : possible)
      if (sums.count(d)) inter.insert(d);
    possible = inter;
    bool proper = false;
    for (long d : possible) proper |= (d != 0 && d != m);
    if (!proper) return true;
  }

  // Bounded search over candidate monic integer factors of degree d <= m/2.
  // Mignotte-style bound handled in exact integer arithmetic: an integer
  // upper bound for the 2-norm of f suffices.
  Int norm_sq(0);
  for (auto& c : f) norm_sq += c * c;
  Int norm_ceil = isqrt(norm_sq) + Int(1);
  auto divides = [&](const QPoly& h) {
    auto [q, r] = poly_divmod(Q, mu, h);
    (void)q;
    return r.is_zero();
  };
  for (long d = 1; 2 * d <= m; ++d) {
    if (!possible.count(d) && !possible.count(m - d)) continue;
    Int binom(1);
    Int boundi(0);
    for (long j = 0; j < d; ++j) {
      Int cand = binom * (norm_ceil + Int(1));
      if (cand > boundi) boundi = cand;
      binom = (binom * Int(d - 1 - j)) / Int(j + 1);
      if (binom < Int(1)) binom = Int(1);
    }
    Int width = boundi + boundi + Int(3);  // 2B + 1 with B = bound + 1
    Int total(1);
    for (long j = 0; j < d && total <= Int(5000000); ++j) total *= width;
    if (total > Int(5000000)) throw error("cannot certify irreducibility");
    long B = boundi.to_long() + 1;
    std::vector<long> coef(d, -B);
    while (true) {
      std::vector<Rational> hc;
      for (long c : coef) hc.emplace_back(c);
      hc.emplace_back(1);
      auto h = QPoly::from(Q, hc);
      if (divides(h)) return false;
      long i = 0;
      while (i < d && ++coef[i] > B) coef[i++] = -B;
      if (i == d) break;
    }
  }
  return true;
}

// The number field L = Q[X]/(mu), mu monic irreducible. Elements are reduced
// polynomials of degree < m over Q.
class NumberField {
 public:
  using Elem = std::vector<Rational>;

  explicit NumberField(QPoly mu, bool check_irreducible = true) : mu_(std::move(mu)) {
    RationalField Q;
    if (!mu_.is_monic(Q)) throw error("defining polynomial must be monic");
    if (check_irreducible && !irreducible_over_Q(mu_)) throw error("not a field");
    m_ = mu_.degree();
    // Power sums of the roots via Newton's identities; traces of gamma^k for
    // k < 2m-1 cover products of basis elements.
    power_traces_.assign(2 * m_ - 1, Rational(0));
    power_traces_[0] = Rational(m_);
    for (long k = 1; k < 2 * m_ - 1; ++k) {
      // s_k = -k a_{m-k} - sum_{i=1}^{k-1} a_{m-i} s_{k-i}, a_j = coeff of X^j
      Rational s(0);
      if (k <= m_) s = Rational(-k) * mu_.coeff(Q, m_ - k);
      for (long i = 1; i < k; ++i) {
        if (k - i < 1) continue;
        if (m_ - i >= 0 && i <= m_)
          s -= mu_.coeff(Q, m_ - i) * power_traces_[k - i];
      }
      power_traces_[k] = s;
    }
  }

  long degree() const { return m_; }
  const QPoly& modulus() const { return mu_; }

  Elem zero() const { return Elem(m_, Rational(0)); }
  Elem one() const {
    Elem e(m_, Rational(0));
    e[0] = Rational(1);
    return e;
  }
  Elem gen() const {
    Elem e(m_, Rational(0));
    if (m_ > 1)
      e[1] = Rational(1);
    else
      e[0] = -mu_.coeffs()[0];  // degree-1 field: gamma is the root itself
    return e;
  }
  Elem from_rational(const Rational& r) const {
    Elem e(m_, Rational(0));
    e[0] = r;
    return e;
  }
  Elem power_basis(long k) const {
    // gamma^k reduced
    RationalField Q;
    auto r = poly_mod(Q, poly_powmod(Q, QPoly::x(Q), Int(k), mu_), mu_);
    return from_poly(r);
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(m_);
    for (long i = 0; i < m_; ++i) r[i] = a[i] + b[i];
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(m_);
    for (long i = 0; i < m_; ++i) r[i] = a[i] - b[i];
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(m_);
    for (long i = 0; i < m_; ++i) r[i] = -a[i];
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    RationalField Q;
    return from_poly(poly_mod(Q, poly_mul(Q, to_poly(a), to_poly(b)), mu_));
  }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw error("division by zero");
    RationalField Q;
    auto [g, u, v] = poly_xgcd(Q, to_poly(a), mu_);
    (void)v;
    if (g.degree() != 0) throw error("not a field");
    return from_poly(poly_mod(Q, u, mu_));
  }
  bool is_zero(const Elem& a) const {
    for (auto& c : a)
      if (!c.is_zero()) return false;
    return true;
  }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool same_ring(const NumberField& o) const {
    RationalField Q;
    return poly_eq(Q, mu_, o.mu_);
  }

  // Tr_{L/Q} via precomputed power traces.
  Rational trace(const Elem& a) const {
    Rational t(0);
    for (long i = 0; i < m_; ++i) t += a[i] * power_traces_[i];
    return t;
  }

  // Substitute X -> s into a (i.e. evaluate the coordinate polynomial at the
  // field element s); realizes ring endomorphisms X -> a_sigma(X).
  Elem substitute(const Elem& a, const Elem& s) const {
    Elem r = zero();
    for (long i = m_ - 1; i >= 0; --i) {
      r = mul(r, s);
      r[0] += a[i];
    }
    return r;
  }

  bool p_integral(const Elem& a, const Int& p) const {
    for (auto& c : a)
      if (!c.p_integral(p)) return false;
    return true;
  }

  QPoly to_poly(const Elem& a) const {
    RationalField Q;
    return QPoly::from(Q, a);
  }
  Elem from_poly(const QPoly& f) const {
    Elem e(m_, Rational(0));
    for (long i = 0; i <= f.degree(); ++i) e[i] = f.coeffs()[i];
    return e;
  }

  std::string to_string(const Elem& a, const std::string& var = "X") const {
    RationalField Q;
    return poly_str(Q, to_poly(a), var);
  }

 private:
  QPoly mu_;
  long m_ = 0;
  std::vector<Rational> power_traces_;
};

}  // namespace wreathe
