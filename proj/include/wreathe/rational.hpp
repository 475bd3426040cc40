#pragma once

#include <gmp.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace wreathe {

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Arbitrary-precision signed integer, value semantics over GMP's mpz.
class Int {
 public:
  Int() { mpz_init(z_); }
  Int(long v) { mpz_init_set_si(z_, v); }  // NOLINT(google-explicit-constructor)
  Int(int v) : Int(static_cast<long>(v)) {}
  explicit Int(const std::string& s) {
    if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
      mpz_clear(z_);
      throw error("bad integer literal: " + s);
    }
  }
  Int(const Int& o) { mpz_init_set(z_, o.z_); }
  Int(Int&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Int& operator=(const Int& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Int& operator=(Int&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Int() { mpz_clear(z_); }

  friend Int operator+(const Int& a, const Int& b) {
    Int r;
    mpz_add(r.z_, a.z_, b.z_);
    return r;
  }
  friend Int operator-(const Int& a, const Int& b) {
    Int r;
    mpz_sub(r.z_, a.z_, b.z_);
    return r;
  }
  friend Int operator*(const Int& a, const Int& b) {
    Int r;
    mpz_mul(r.z_, a.z_, b.z_);
    return r;
  }
  Int operator-() const {
    Int r;
    mpz_neg(r.z_, z_);
    return r;
  }
  Int& operator+=(const Int& o) {
    mpz_add(z_, z_, o.z_);
    return *this;
  }
  Int& operator-=(const Int& o) {
    mpz_sub(z_, z_, o.z_);
    return *this;
  }
  Int& operator*=(const Int& o) {
    mpz_mul(z_, z_, o.z_);
    return *this;
  }

  // Truncated division; (quot, rem) with sign of rem following the numerator.
  friend std::pair<Int, Int> divmod(const Int& a, const Int& b) {
    if (mpz_sgn(b.z_) == 0) throw error("division by zero");
    Int q, r;
    mpz_tdiv_qr(q.z_, r.z_, a.z_, b.z_);
    return {std::move(q), std::move(r)};
  }
  friend Int operator/(const Int& a, const Int& b) { return divmod(a, b).first; }
  friend Int operator%(const Int& a, const Int& b) { return divmod(a, b).second; }

  friend Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }
  friend Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.z_, a.z_, b.z_);
    return r;
  }
  friend Int abs(const Int& a) {
    Int r;
    mpz_abs(r.z_, a.z_);
    return r;
  }
  friend Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.z_, a.z_);  // floor of the square root
    return r;
  }
  friend Int pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.z_, a.z_, e);
    return r;
  }
  static Int power(const Int& a, unsigned long e) { return pow(a, e); }

  friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) == 0; }
  friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
  friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) < 0; }
  friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
  friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) > 0; }
  friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return mpz_cmp_si(z_, 1) == 0; }
  bool divisible_by(const Int& d) const { return mpz_divisible_p(z_, d.z_) != 0; }
  bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
  long to_long() const {
    if (!fits_long()) throw error("integer too large for machine word");
    return mpz_get_si(z_);
  }

  // Largest k with p^k | *this (requires nonzero value, p >= 2).
  long valuation(const Int& p) const {
    if (is_zero()) throw error("valuation of zero");
    Int rest;
    unsigned long k = mpz_remove(rest.z_, z_, p.z_);
    return static_cast<long>(k);
  }

  std::string str() const {
    char* raw = mpz_get_str(nullptr, 10, z_);
    std::string s(raw);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(raw, s.size() + 1);
    return s;
  }

  const mpz_t& raw() const { return z_; }
  mpz_t& raw() { return z_; }

 private:
  mpz_t z_;
};

// Rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}  // NOLINT
  Rational(int v) : num_(v), den_(1) {}   // NOLINT
  Rational(Int n) : num_(std::move(n)), den_(1) {}
  Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  // Accepts "a", "a/b", optional leading '-'.
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_integer() const { return den_.is_one(); }
  int sign() const { return num_.sign(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw error("division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (a - b).sign() < 0;
  }

  Rational inverse() const {
    if (is_zero()) throw error("division by zero");
    return Rational(den_, num_);
  }

  // p-adic valuation v_p(num) - v_p(den); throws on zero.
  long valuation(const Int& p) const {
    if (is_zero()) throw error("valuation of zero");
    return num_.valuation(p) - den_.valuation(p);
  }
  bool p_integral(const Int& p) const { return is_zero() || valuation(p) >= 0; }

  std::string str() const {
    if (den_.is_one()) return num_.str();
    return num_.str() + "/" + den_.str();
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw error("division by zero");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = gcd(num_, den_);
    if (!g.is_one() && !g.is_zero()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    if (num_.is_zero()) den_ = Int(1);
  }

  Int num_;
  Int den_;
};

// Field-context adapter for the generic linear algebra.
struct RationalField {
  using Elem = Rational;
  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem from_rational(const Rational& r) const { return r; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool same_ring(const RationalField&) const { return true; }
  std::string to_string(const Elem& a) const { return a.str(); }
};

}  // namespace wreathe
