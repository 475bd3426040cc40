#pragma once

#include <vector>

#include "wreathe/fp.hpp"
#include "wreathe/poly.hpp"

namespace wreathe {

// Irreducibility over F_p via the Rabin criterion:
// f irreducible of degree n iff X^{p^n} = X mod f and gcd(X^{p^{n/r}} - X, f) = 1
// for every prime r | n.
inline bool irreducible_mod_p(const FpCtx& k, const Poly<FpCtx>& f) {
  long n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  Int p(k.p());
  auto X = Poly<FpCtx>::x(k);
  auto xq = poly_powmod(k, X, pow(p, n), f);
  if (!poly_eq(k, xq, poly_mod(k, X, f))) return false;
  for (long r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime_small(r)) continue;
    auto xr = poly_powmod(k, X, pow(p, n / r), f);
    auto g = poly_gcd(k, poly_sub(k, xr, X), f);
    if (g.degree() != 0) return false;
  }
  return true;
}

// Finite field F_q, q = p^a, as F_p[Y]/(defining). Elements are coefficient
// vectors of length a over F_p.
class FqField {
 public:
  using Elem = std::vector<std::int64_t>;

  FqField(long p, long a) : fp_(p), a_(a) { set_defining(find_irreducible(fp_, a)); }

  FqField(long p, Poly<FpCtx> defining) : fp_(p), a_(defining.degree()) {
    if (!irreducible_mod_p(fp_, defining)) throw error("defining polynomial not irreducible");
    set_defining(std::move(defining));
  }

  long p() const { return fp_.p(); }
  long a() const { return a_; }
  Int q() const { return Int::power(Int(p()), a_); }
  const FpCtx& prime_field() const { return fp_; }
  const Poly<FpCtx>& defining() const { return def_; }

  Elem zero() const { return Elem(a_, 0); }
  Elem one() const {
    Elem e(a_, 0);
    e[0] = 1;
    return e;
  }
  Elem gen() const {
    Elem e(a_, 0);
    if (a_ > 1)
      e[1] = 1;
    else
      e[0] = poly_eval(fp_, def_, fp_.zero()) == 0 ? 0 : fp_.neg(def_.coeff(fp_, 0));
    return e;
  }
  Elem from_long(long v) const {
    Elem e(a_, 0);
    e[0] = fp_.from_long(v);
    return e;
  }
  Elem add(const Elem& x, const Elem& y) const {
    Elem r(a_);
    for (long i = 0; i < a_; ++i) r[i] = fp_.add(x[i], y[i]);
    return r;
  }
  Elem sub(const Elem& x, const Elem& y) const {
    Elem r(a_);
    for (long i = 0; i < a_; ++i) r[i] = fp_.sub(x[i], y[i]);
    return r;
  }
  Elem neg(const Elem& x) const {
    Elem r(a_);
    for (long i = 0; i < a_; ++i) r[i] = fp_.neg(x[i]);
    return r;
  }
  Elem mul(const Elem& x, const Elem& y) const {
    auto prod = poly_mod(fp_, poly_mul(fp_, to_poly(x), to_poly(y)), def_);
    return from_poly(prod);
  }
  Elem inv(const Elem& x) const {
    if (is_zero(x)) throw error("division by zero");
    auto [g, u, v] = poly_xgcd(fp_, to_poly(x), def_);
    (void)v;
    if (g.degree() != 0) throw error("defining polynomial not irreducible");
    return from_poly(poly_mod(fp_, u, def_));
  }
  Elem pow(Elem x, Int e) const {
    if (e.sign() < 0) return pow(inv(x), -e);
    Elem r = one();
    while (e.sign() > 0) {
      auto [q2, rem] = divmod(e, Int(2));
      if (!rem.is_zero()) r = mul(r, x);
      x = mul(x, x);
      e = q2;
    }
    return r;
  }
  Elem frobenius(const Elem& x, long iterations = 1) const {
    Elem r = x;
    for (long i = 0; i < iterations; ++i) r = pow(r, Int(p()));
    return r;
  }
  bool is_zero(const Elem& x) const {
    for (auto c : x)
      if (c != 0) return false;
    return true;
  }
  bool eq(const Elem& x, const Elem& y) const { return x == y; }
  bool same_ring(const FqField& o) const {
    return p() == o.p() && a_ == o.a_ && poly_eq(fp_, def_, o.def_);
  }

  // All q elements, in lexicographic coefficient order.
  std::vector<Elem> enumerate() const {
    Int qq = q();
    if (!qq.fits_long() || qq.to_long() > (1L << 24)) throw error("field too large to enumerate");
    long n = qq.to_long();
    std::vector<Elem> out;
    out.reserve(n);
    for (long v = 0; v < n; ++v) {
      Elem e(a_);
      long t = v;
      for (long i = 0; i < a_; ++i) {
        e[i] = t % p();
        t /= p();
      }
      out.push_back(std::move(e));
    }
    return out;
  }

  std::string to_string(const Elem& x) const {
    return poly_str(fp_, to_poly(x), "y");
  }

  Poly<FpCtx> to_poly(const Elem& x) const { return Poly<FpCtx>::from(fp_, x); }
  Elem from_poly(const Poly<FpCtx>& f) const {
    Elem e(a_, 0);
    for (long i = 0; i <= f.degree(); ++i) e[i] = f.coeffs()[i];
    return e;
  }

  static Poly<FpCtx> find_irreducible(const FpCtx& k, long a) {
    if (a == 1) return Poly<FpCtx>::x(k);
    // Deterministic scan over monic polynomials in lexicographic order.
    std::vector<std::int64_t> c(a + 1, 0);
    c[a] = 1;
    while (true) {
      auto f = Poly<FpCtx>::from(k, c);
      if (f.degree() == a && irreducible_mod_p(k, f)) return f;
      long i = 0;
      while (i < a && ++c[i] == k.p()) c[i++] = 0;
      if (i == a) throw error("no irreducible polynomial found");
    }
  }

 private:
  void set_defining(Poly<FpCtx> f) {
    if (!f.is_monic(fp_)) {
      auto s = fp_.inv(f.lead());
      f = poly_scale(fp_, s, f);
    }
    def_ = std::move(f);
  }

  FpCtx fp_;
  long a_;
  Poly<FpCtx> def_;
};

}  // namespace wreathe
