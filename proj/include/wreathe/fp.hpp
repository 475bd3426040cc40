#pragma once

#include <cstdint>
#include <string>

#include "wreathe/rational.hpp"

namespace wreathe {

inline bool is_prime_small(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime field F_p, p < 2^31. Elements are canonical residues in [0, p).
class FpCtx {
 public:
  using Elem = std::int64_t;

  explicit FpCtx(long p) : p_(p) {
    if (!is_prime_small(p) || p >= (1L << 31)) throw error("invalid prime");
  }

  long p() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_long(long v) const {
    Elem r = v % p_;
    return r < 0 ? r + p_ : r;
  }
  Elem from_rational(const Rational& q) const {
    // Requires q p-integral; reduces mod p.
    Int p(p_);
    if (!q.p_integral(p)) throw error("not p-integral");
    Elem n = mod_int(q.num());
    Elem d = mod_int(q.den());
    return mul(n, inv(d));
  }
  Elem add(Elem a, Elem b) const {
    Elem r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  Elem sub(Elem a, Elem b) const {
    Elem r = a - b;
    return r < 0 ? r + p_ : r;
  }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw error("division by zero");
    return pow(a, p_ - 2);
  }
  Elem pow(Elem a, std::int64_t e) const {
    if (e < 0) return inv(pow(a, -e));
    Elem r = 1, b = a % p_;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  bool same_ring(const FpCtx& o) const { return p_ == o.p_; }
  std::string to_string(Elem a) const { return std::to_string(a); }

 private:
  Elem mod_int(const Int& n) const {
    Int r = n % Int(p_);
    long v = r.to_long();
    return v < 0 ? v + p_ : v;
  }

  long p_;
};

}  // namespace wreathe
