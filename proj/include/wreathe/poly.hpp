#pragma once

#include <vector>

#include "wreathe/linalg.hpp"

namespace wreathe {

// Dense univariate polynomial over a field context F, coefficients ascending.
// Invariant: trailing (leading-degree) coefficient nonzero unless empty (zero
// polynomial).
template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;

  Poly() = default;
  explicit Poly(std::vector<Elem> c) : c_(std::move(c)) {}

  static Poly zero() { return Poly(); }
  static Poly constant(const F& k, const Elem& e) {
    Poly p;
    if (!k.is_zero(e)) p.c_ = {e};
    return p;
  }
  static Poly x(const F& k) { return Poly({k.zero(), k.one()}); }

  static Poly from(const F& k, std::vector<Elem> c) {
    Poly p(std::move(c));
    p.trim(k);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(const F& k, std::size_t i) const { return i < c_.size() ? c_[i] : k.zero(); }
  const Elem& lead() const { return c_.back(); }

  bool is_monic(const F& k) const { return !is_zero() && k.eq(lead(), k.one()); }

  void trim(const F& k) {
    while (!c_.empty() && k.is_zero(c_.back())) c_.pop_back();
  }

  friend bool poly_eq(const F& k, const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!k.eq(a.c_[i], b.c_[i])) return false;
    return true;
  }

 private:
  std::vector<Elem> c_;
};

template <class F>
Poly<F> poly_add(const F& k, const Poly<F>& a, const Poly<F>& b) {
  std::vector<typename F::Elem> c(std::max(a.coeffs().size(), b.coeffs().size()), k.zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k.add(a.coeff(k, i), b.coeff(k, i));
  return Poly<F>::from(k, std::move(c));
}

template <class F>
Poly<F> poly_sub(const F& k, const Poly<F>& a, const Poly<F>& b) {
  std::vector<typename F::Elem> c(std::max(a.coeffs().size(), b.coeffs().size()), k.zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k.sub(a.coeff(k, i), b.coeff(k, i));
  return Poly<F>::from(k, std::move(c));
}

template <class F>
Poly<F> poly_neg(const F& k, const Poly<F>& a) {
  std::vector<typename F::Elem> c(a.coeffs());
  for (auto& e : c) e = k.neg(e);
  return Poly<F>(std::move(c));
}

template <class F>
Poly<F> poly_mul(const F& k, const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>::zero();
  std::vector<typename F::Elem> c(a.coeffs().size() + b.coeffs().size() - 1, k.zero());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (k.is_zero(a.coeffs()[i])) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] = k.add(c[i + j], k.mul(a.coeffs()[i], b.coeffs()[j]));
  }
  return Poly<F>::from(k, std::move(c));
}

template <class F>
Poly<F> poly_scale(const F& k, const typename F::Elem& s, const Poly<F>& a) {
  std::vector<typename F::Elem> c(a.coeffs());
  for (auto& e : c) e = k.mul(s, e);
  return Poly<F>::from(k, std::move(c));
}

template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& k, Poly<F> a, const Poly<F>& b) {
  if (b.is_zero()) throw error("division by zero");
  if (a.degree() < b.degree()) return {Poly<F>::zero(), a};
  auto lead_inv = k.inv(b.lead());
  std::vector<typename F::Elem> q(a.degree() - b.degree() + 1, k.zero());
  std::vector<typename F::Elem> r(a.coeffs());
  for (long d = a.degree(); d >= b.degree(); --d) {
    auto f = k.mul(r[d], lead_inv);
    if (k.is_zero(f)) continue;
    q[d - b.degree()] = f;
    for (long j = 0; j <= b.degree(); ++j)
      r[d - b.degree() + j] = k.sub(r[d - b.degree() + j], k.mul(f, b.coeffs()[j]));
  }
  return {Poly<F>::from(k, std::move(q)), Poly<F>::from(k, std::move(r))};
}

template <class F>
Poly<F> poly_mod(const F& k, const Poly<F>& a, const Poly<F>& b) {
  return poly_divmod(k, a, b).second;
}

template <class F>
Poly<F> poly_gcd(const F& k, Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = poly_mod(k, a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = poly_scale(k, k.inv(a.lead()), a);
  return a;
}

// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> poly_xgcd(const F& k, Poly<F> a, Poly<F> b) {
  Poly<F> u0 = Poly<F>::constant(k, k.one()), v0 = Poly<F>::zero();
  Poly<F> u1 = Poly<F>::zero(), v1 = Poly<F>::constant(k, k.one());
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(k, a, b);
    a = b;
    b = r;
    auto u2 = poly_sub(k, u0, poly_mul(k, q, u1));
    auto v2 = poly_sub(k, v0, poly_mul(k, q, v1));
    u0 = u1;
    v0 = v1;
    u1 = u2;
    v1 = v2;
  }
  if (!a.is_zero()) {
    auto s = k.inv(a.lead());
    a = poly_scale(k, s, a);
    u0 = poly_scale(k, s, u0);
    v0 = poly_scale(k, s, v0);
  }
  return {a, u0, v0};
}

template <class F>
Poly<F> poly_derivative(const F& k, const Poly<F>& a) {
  if (a.degree() <= 0) return Poly<F>::zero();
  std::vector<typename F::Elem> c(a.degree(), k.zero());
  for (long i = 1; i <= a.degree(); ++i) {
    auto m = k.zero();
    for (long t = 0; t < i; ++t) m = k.add(m, k.one());  // i * coeff in the field
    c[i - 1] = k.mul(m, a.coeffs()[i]);
  }
  return Poly<F>::from(k, std::move(c));
}

template <class F>
typename F::Elem poly_eval(const F& k, const Poly<F>& a, const typename F::Elem& x) {
  auto r = k.zero();
  for (long i = a.degree(); i >= 0; --i) r = k.add(k.mul(r, x), a.coeffs()[i]);
  return r;
}

// a(b) mod m
template <class F>
Poly<F> poly_compose_mod(const F& k, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  Poly<F> r = Poly<F>::zero();
  for (long i = a.degree(); i >= 0; --i) {
    r = poly_mul(k, r, b);
    r = poly_add(k, r, Poly<F>::constant(k, a.coeffs()[i]));
    r = poly_mod(k, r, m);
  }
  return r;
}

template <class F>
Poly<F> poly_powmod(const F& k, Poly<F> base, Int e, const Poly<F>& m) {
  Poly<F> r = Poly<F>::constant(k, k.one());
  base = poly_mod(k, base, m);
  while (e.sign() > 0) {
    auto [q, rem] = divmod(e, Int(2));
    if (!rem.is_zero()) r = poly_mod(k, poly_mul(k, r, base), m);
    base = poly_mod(k, poly_mul(k, base, base), m);
    e = q;
  }
  return r;
}

template <class F>
std::string poly_str(const F& k, const Poly<F>& a, const std::string& var = "X") {
  if (a.is_zero()) return "0";
  std::string s;
  for (long i = 0; i <= a.degree(); ++i) {
    if (k.is_zero(a.coeffs()[i])) continue;
    if (!s.empty()) s += " + ";
    std::string c = k.to_string(a.coeffs()[i]);
    if (i == 0)
      s += c;
    else if (k.eq(a.coeffs()[i], k.one()))
      s += var + (i == 1 ? "" : "^" + std::to_string(i));
    else
      s += c + "*" + var + (i == 1 ? "" : "^" + std::to_string(i));
  }
  return s;
}

}  // namespace wreathe
