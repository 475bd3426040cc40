#pragma once

#include <algorithm>
#include <cstdint>

#include "wreathe/fqfield.hpp"

namespace wreathe {

// Deterministic splittable RNG for the randomized factorization steps.
struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t bounded(std::uint64_t n) { return next() % n; }
};

namespace detail {

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<FpCtx> {
  static long characteristic(const FpCtx& k) { return k.p(); }
  static long ext_degree(const FpCtx&) { return 1; }
  static Int card(const FpCtx& k) { return Int(k.p()); }
  static FpCtx::Elem pth_root(const FpCtx&, FpCtx::Elem e) { return e; }
  static FpCtx::Elem rand_elem(const FpCtx& k, SplitMix64& rng) {
    return static_cast<FpCtx::Elem>(rng.bounded(k.p()));
  }
};

template <>
struct FieldTraits<FqField> {
  static long characteristic(const FqField& k) { return k.p(); }
  static long ext_degree(const FqField& k) { return k.a(); }
  static Int card(const FqField& k) { return k.q(); }
  static FqField::Elem pth_root(const FqField& k, const FqField::Elem& e) {
    return k.frobenius(e, k.a() - 1);  // x^(p^(a-1)) inverts x -> x^p
  }
  static FqField::Elem rand_elem(const FqField& k, SplitMix64& rng) {
    FqField::Elem e(k.a());
    for (long i = 0; i < k.a(); ++i) e[i] = static_cast<std::int64_t>(rng.bounded(k.p()));
    return e;
  }
};

// f with f' = 0, i.e. f(X) = g(X^p); recover g.
template <class F>
Poly<F> pth_root_poly(const F& k, const Poly<F>& f) {
  long p = FieldTraits<F>::characteristic(k);
  std::vector<typename F::Elem> c;
  for (long i = 0; i <= f.degree(); i += p) c.push_back(FieldTraits<F>::pth_root(k, f.coeff(k, i)));
  return Poly<F>::from(k, std::move(c));
}

template <class F>
std::vector<std::pair<Poly<F>, long>> squarefree_parts(const F& k, Poly<F> f) {
  std::vector<std::pair<Poly<F>, long>> out;
  if (f.degree() <= 0) return out;
  auto fp = poly_derivative(k, f);
  if (fp.is_zero()) {
    auto g = pth_root_poly(k, f);
    for (auto& [h, m] : squarefree_parts(k, g))
      out.emplace_back(h, m * FieldTraits<F>::characteristic(k));
    return out;
  }
  auto c = poly_gcd(k, f, fp);
  auto w = poly_divmod(k, f, c).first;
  long i = 1;
  while (w.degree() > 0) {
    auto y = poly_gcd(k, w, c);
    auto z = poly_divmod(k, w, y).first;
    if (z.degree() > 0) out.emplace_back(z, i);
    w = y;
    c = poly_divmod(k, c, y).first;
    ++i;
  }
  if (c.degree() > 0) {
    auto g = pth_root_poly(k, c);
    for (auto& [h, m] : squarefree_parts(k, g))
      out.emplace_back(h, m * FieldTraits<F>::characteristic(k));
  }
  return out;
}

// Cantor-Zassenhaus equal-degree split of a squarefree product of degree-d
// irreducibles.
template <class F>
void equal_degree(const F& k, const Poly<F>& f, long d, SplitMix64& rng,
                  std::vector<Poly<F>>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  Int q = FieldTraits<F>::card(k);
  long p = FieldTraits<F>::characteristic(k);
  while (true) {
    std::vector<typename F::Elem> rc(f.degree(), k.zero());
    for (auto& e : rc) e = FieldTraits<F>::rand_elem(k, rng);
    auto r = Poly<F>::from(k, std::move(rc));
    if (r.degree() < 1) continue;
    Poly<F> g;
    if (p == 2) {
      // Trace map over F_{2^a}: r + r^2 + r^4 + ... (a*d summands).
      long iters = FieldTraits<F>::ext_degree(k) * d;
      auto t = r;
      auto acc = r;
      for (long i = 1; i < iters; ++i) {
        t = poly_mod(k, poly_mul(k, t, t), f);
        acc = poly_add(k, acc, t);
      }
      g = poly_gcd(k, acc, f);
    } else {
      Int e = (pow(q, d) - Int(1)) / Int(2);
      auto s = poly_powmod(k, r, e, f);
      g = poly_gcd(k, poly_sub(k, s, Poly<F>::constant(k, k.one())), f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(k, g, d, rng, out);
      equal_degree(k, poly_divmod(k, f, g).first, d, rng, out);
      return;
    }
  }
}

template <class F>
std::vector<Poly<F>> factor_squarefree(const F& k, Poly<F> f, SplitMix64& rng) {
  std::vector<Poly<F>> out;
  Int q = FieldTraits<F>::card(k);
  auto X = Poly<F>::x(k);
  auto h = X;
  long d = 0;
  while (f.degree() > 0) {
    ++d;
    if (2 * d > f.degree()) {
      out.push_back(f);
      break;
    }
    h = poly_powmod(k, h, q, f);
    auto g = poly_gcd(k, poly_sub(k, h, X), f);
    if (g.degree() > 0) {
      equal_degree(k, g, d, rng, out);
      f = poly_divmod(k, f, g).first;
      h = poly_mod(k, h, f);
    }
  }
  return out;
}

template <class F>
bool poly_less(const F& k, const Poly<F>& a, const Poly<F>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (long i = a.degree(); i >= 0; --i) {
    auto sa = k.to_string(a.coeff(k, i));
    auto sb = k.to_string(b.coeff(k, i));
    if (sa != sb) return sa < sb;
  }
  return false;
}

}  // namespace detail

// Factorization of f over a finite field into monic irreducibles with
// multiplicities, plus the leading unit. Deterministic for a fixed seed;
// factors sorted canonically.
template <class F>
struct PolyFactorization {
  typename F::Elem unit;
  std::vector<std::pair<Poly<F>, long>> factors;
};

template <class F>
PolyFactorization<F> factor_poly_fq(const F& k, Poly<F> f, std::uint64_t seed = 0) {
  if (f.is_zero()) throw error("zero input");
  PolyFactorization<F> out;
  out.unit = f.lead();
  f = poly_scale(k, k.inv(f.lead()), f);
  SplitMix64 rng(seed ^ 0x5eedf00dULL);
  for (auto& [part, mult] : detail::squarefree_parts(k, f)) {
    for (auto& irr : detail::factor_squarefree(k, part, rng)) out.factors.emplace_back(irr, mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [&](const auto& x, const auto& y) {
    if (x.second != y.second && x.first.degree() == y.first.degree() &&
        poly_eq(k, x.first, y.first))
      return x.second < y.second;
    return detail::poly_less(k, x.first, y.first);
  });
  return out;
}

template <class F>
Poly<F> factorization_product(const F& k, const PolyFactorization<F>& fac) {
  auto r = Poly<F>::constant(k, fac.unit);
  for (auto& [g, m] : fac.factors)
    for (long i = 0; i < m; ++i) r = poly_mul(k, r, g);
  return r;
}

}  // namespace wreathe
