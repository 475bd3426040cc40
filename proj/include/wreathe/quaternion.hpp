#pragma once

#include "wreathe/rational.hpp"

namespace wreathe {

// Quaternion algebra (a,b / Q): basis 1, I, J, IJ with I^2 = a, J^2 = b,
// JI = -IJ. Elements are 4-tuples of rationals.
class QuaternionAlgebra {
 public:
  struct Elem {
    Rational w, x, y, z;  // w + x I + y J + z IJ
    friend bool operator==(const Elem& p, const Elem& q) {
      return p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z;
    }
  };

  QuaternionAlgebra(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  Elem zero() const { return {0, 0, 0, 0}; }
  Elem one() const { return {1, 0, 0, 0}; }
  Elem I() const { return {0, 1, 0, 0}; }
  Elem J() const { return {0, 0, 1, 0}; }
  Elem from_rational(const Rational& r) const { return {r, 0, 0, 0}; }

  Elem add(const Elem& p, const Elem& q) const {
    return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
  }
  Elem sub(const Elem& p, const Elem& q) const {
    return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
  }
  Elem neg(const Elem& p) const { return {-p.w, -p.x, -p.y, -p.z}; }
  Elem mul(const Elem& p, const Elem& q) const {
    // (w1 + x1 I + y1 J + z1 IJ)(w2 + x2 I + y2 J + z2 IJ)
    return {p.w * q.w + a_ * p.x * q.x + b_ * p.y * q.y - a_ * b_ * p.z * q.z,
            p.w * q.x + p.x * q.w - b_ * p.y * q.z + b_ * p.z * q.y,
            p.w * q.y + p.y * q.w + a_ * p.x * q.z - a_ * p.z * q.x,
            p.w * q.z + p.z * q.w + p.x * q.y - p.y * q.x};
  }
  Elem conjugate(const Elem& p) const { return {p.w, -p.x, -p.y, -p.z}; }
  Rational norm(const Elem& p) const {
    return p.w * p.w - a_ * p.x * p.x - b_ * p.y * p.y + a_ * b_ * p.z * p.z;
  }
  Rational reduced_trace(const Elem& p) const { return p.w + p.w; }
  Elem inv(const Elem& p) const {
    Rational n = norm(p);
    if (n.is_zero()) throw error("division by zero");
    auto c = conjugate(p);
    auto ni = n.inverse();
    return {c.w * ni, c.x * ni, c.y * ni, c.z * ni};
  }
  bool is_zero(const Elem& p) const {
    return p.w.is_zero() && p.x.is_zero() && p.y.is_zero() && p.z.is_zero();
  }
  bool eq(const Elem& p, const Elem& q) const { return p == q; }
  bool same_ring(const QuaternionAlgebra& o) const { return a_ == o.a_ && b_ == o.b_; }

  std::string to_string(const Elem& p) const {
    std::string s = p.w.str();
    if (!p.x.is_zero()) s += " + " + p.x.str() + "*I";
    if (!p.y.is_zero()) s += " + " + p.y.str() + "*J";
    if (!p.z.is_zero()) s += " + " + p.z.str() + "*IJ";
    return s;
  }

 private:
  Rational a_, b_;
};

}  // namespace wreathe
