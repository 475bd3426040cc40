#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "wreathe/factor.hpp"
#include "wreathe/fp.hpp"
#include "wreathe/linalg.hpp"

namespace wreathe {

using FpVec = std::vector<std::int64_t>;
using FpMat = Matrix<std::int64_t>;

// Row-echelon subspace of F_p^n with canonical reduced basis.
class FpSubspace {
 public:
  explicit FpSubspace(const FpCtx& F, long ambient) : F_(F), ambient_(ambient) {}

  long ambient() const { return ambient_; }
  long dim() const { return static_cast<long>(rows_.size()); }
  const std::vector<FpVec>& rows() const { return rows_; }

  // Inserts v; returns true if the dimension grew.
  bool insert(FpVec v) {
    reduce(v);
    long p = pivot_of(v);
    if (p < 0) return false;
    auto inv = F_.inv(v[p]);
    for (auto& x : v) x = F_.mul(x, inv);
    // back-substitute into existing rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r][p] == 0) continue;
      auto f = rows_[r][p];
      for (long j = 0; j < ambient_; ++j) rows_[r][j] = F_.sub(rows_[r][j], F_.mul(f, v[j]));
    }
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto idx = it - pivots_.begin();
    pivots_.insert(it, p);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
  }

  bool contains(FpVec v) const {
    reduce(v);
    return pivot_of(v) < 0;
  }

  // Residue of v modulo the subspace.
  FpVec residue(FpVec v) const {
    reduce(v);
    return v;
  }

  const std::vector<long>& pivots() const { return pivots_; }

  // Complement coordinates: indices not used as pivots.
  std::vector<long> complement_indices() const {
    std::vector<bool> used(ambient_, false);
    for (long p : pivots_) used[p] = true;
    std::vector<long> out;
    for (long j = 0; j < ambient_; ++j)
      if (!used[j]) out.push_back(j);
    return out;
  }

 private:
  void reduce(FpVec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto f = v[pivots_[r]];
      if (f == 0) continue;
      for (long j = 0; j < ambient_; ++j) v[j] = F_.sub(v[j], F_.mul(f, rows_[r][j]));
    }
  }
  long pivot_of(const FpVec& v) const {
    for (long j = 0; j < ambient_; ++j)
      if (v[j] != 0) return j;
    return -1;
  }

  FpCtx F_;
  long ambient_;
  std::vector<FpVec> rows_;     // reduced, sorted by pivot
  std::vector<long> pivots_;
};

// Characteristic polynomial of a square matrix over F_p (Hessenberg method);
// returned ascending, degree n, monic.
inline std::vector<std::int64_t> charpoly_fp(const FpCtx& F, FpMat H) {
  long n = static_cast<long>(H.rows());
  // reduce to upper Hessenberg by similarity
  for (long c = 0; c + 2 < n + 1 && c < n - 1; ++c) {
    long piv = -1;
    for (long r = c + 1; r < n; ++r)
      if (H(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != c + 1) {
      for (long j = 0; j < n; ++j) std::swap(H(piv, j), H(c + 1, j));
      for (long i = 0; i < n; ++i) std::swap(H(i, piv), H(i, c + 1));
    }
    auto inv = F.inv(H(c + 1, c));
    for (long r = c + 2; r < n; ++r) {
      if (H(r, c) == 0) continue;
      auto f = F.mul(H(r, c), inv);
      for (long j = 0; j < n; ++j) H(r, j) = F.sub(H(r, j), F.mul(f, H(c + 1, j)));
      for (long i = 0; i < n; ++i) H(i, c + 1) = F.add(H(i, c + 1), F.mul(f, H(i, r)));
    }
  }
  // p_0 = 1, p_k = charpoly of leading k x k Hessenberg block
  std::vector<std::vector<std::int64_t>> p(n + 1);
  p[0] = {1};
  for (long k = 1; k <= n; ++k) {
    // p_k(x) = (x - H_kk) p_{k-1}(x) - sum_{i<k} H_{i,k} (prod subdiag) p_{i-1}...
    std::vector<std::int64_t> cur(k + 1, 0);
    // (x - H(k-1,k-1)) * p[k-1]
    for (long j = 0; j < k; ++j) {
      cur[j + 1] = F.add(cur[j + 1], p[k - 1][j]);
      cur[j] = F.sub(cur[j], F.mul(H(k - 1, k - 1), p[k - 1][j]));
    }
    std::int64_t prod = 1;
    for (long i = k - 2; i >= 0; --i) {
      prod = F.mul(prod, H(i + 1, i));
      auto coef = F.mul(H(i, k - 1), prod);
      if (coef != 0)
        for (long j = 0; j <= i; ++j) cur[j] = F.sub(cur[j], F.mul(coef, p[i][j]));
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

// Finite-dimensional unital algebra over F_p given by structure constants
// b_i b_j = sum_k c_{ijk} b_k.
class FqAlgebra {
 public:
  FqAlgebra(FpCtx F, long n, std::vector<std::int64_t> sc, FpVec unit, bool check = true,
            std::uint64_t seed = 0)
      : F_(F), n_(n), sc_(std::move(sc)), unit_(std::move(unit)) {
    if (static_cast<long>(sc_.size()) != n_ * n_ * n_) throw error("bad structure constants");
    tr_.assign(n_, 0);
    for (long i = 0; i < n_; ++i) {
      std::int64_t t = 0;
      for (long k = 0; k < n_; ++k) t = F_.add(t, sc_[(k * n_ + i) * n_ + k]);
      tr_[i] = t;
    }
    if (check) validate(seed);
  }

  const FpCtx& field() const { return F_; }
  long p() const { return F_.p(); }
  long dim() const { return n_; }
  const FpVec& unit() const { return unit_; }

  FpVec zero() const { return FpVec(n_, 0); }
  FpVec basis(long i) const {
    FpVec v(n_, 0);
    v[i] = 1;
    return v;
  }
  std::int64_t sc(long i, long j, long k) const { return sc_[(i * n_ + j) * n_ + k]; }

  FpVec mul(const FpVec& x, const FpVec& y) const {
    FpVec r(n_, 0);
    for (long i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (long j = 0; j < n_; ++j) {
        if (y[j] == 0) continue;
        auto f = F_.mul(x[i], y[j]);
        const std::int64_t* row = &sc_[(i * n_ + j) * n_];
        for (long k = 0; k < n_; ++k)
          if (row[k] != 0) r[k] = F_.add(r[k], F_.mul(f, row[k]));
      }
    }
    return r;
  }

  FpVec power(FpVec x, Int e) const {
    FpVec r = unit_;
    while (e.sign() > 0) {
      auto [q, rem] = divmod(e, Int(2));
      if (!rem.is_zero()) r = mul(r, x);
      x = mul(x, x);
      e = q;
    }
    return r;
  }

  // x^p via the right-multiplication matrix (cheap for dense x).
  FpVec pth_power(const FpVec& x) const {
    auto R = right_mult(x);
    FpVec v = x;
    for (long t = 1; t < F_.p(); ++t) v = vec_mat(F_, v, R);
    return v;
  }

  // Matrix of right multiplication by y: rows index the input basis.
  FpMat right_mult(const FpVec& y) const {
    FpMat M(n_, n_, 0);
    for (long i = 0; i < n_; ++i)
      for (long j = 0; j < n_; ++j) {
        if (y[j] == 0) continue;
        const std::int64_t* row = &sc_[(i * n_ + j) * n_];
        for (long k = 0; k < n_; ++k)
          if (row[k] != 0) M(i, k) = F_.add(M(i, k), F_.mul(y[j], row[k]));
      }
    return M;
  }
  FpMat left_mult(const FpVec& x) const {
    FpMat M(n_, n_, 0);
    for (long j = 0; j < n_; ++j)
      for (long i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        const std::int64_t* row = &sc_[(i * n_ + j) * n_];
        for (long k = 0; k < n_; ++k)
          if (row[k] != 0) M(j, k) = F_.add(M(j, k), F_.mul(x[i], row[k]));
      }
    return M;
  }

  // Regular trace of x: trace of right multiplication.
  std::int64_t reg_trace(const FpVec& x) const {
    std::int64_t t = 0;
    for (long i = 0; i < n_; ++i)
      if (x[i] != 0) t = F_.add(t, F_.mul(x[i], tr_[i]));
    return t;
  }

  // Center: elements commuting with a generating set (hint) and verified
  // against the full basis.
  std::vector<FpVec> center(const std::vector<FpVec>& gen_hint = {}) const;

  // Two-sided ideal generated by the given vectors.
  FpSubspace ideal_closure(const std::vector<FpVec>& gens) const {
    FpSubspace S(F_, n_);
    std::vector<FpVec> queue;
    for (auto& gv : gens)
      if (S.insert(gv)) queue.push_back(gv);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto v = queue[head];
      for (long i = 0; i < n_; ++i) {
        auto a = mul(basis(i), v);
        if (S.insert(a)) queue.push_back(a);
        auto b = mul(v, basis(i));
        if (S.insert(b)) queue.push_back(b);
      }
    }
    return S;
  }

  bool is_two_sided_ideal(const FpSubspace& S) const {
    for (auto& v : S.rows())
      for (long i = 0; i < n_; ++i) {
        if (!S.contains(mul(basis(i), v))) return false;
        if (!S.contains(mul(v, basis(i)))) return false;
      }
    return true;
  }

  // For a two-sided ideal S: is it nilpotent? (squaring chain S, S^2, S^4, ...)
  bool subspace_nilpotent(const FpSubspace& S) const {
    std::vector<FpVec> cur(S.rows());
    while (!cur.empty()) {
      FpSubspace next(F_, n_);
      for (auto& b : cur) {
        auto R = right_mult(b);
        for (auto& a : cur) next.insert(vec_mat(F_, a, R));
      }
      if (next.dim() == 0) return true;
      if (next.dim() >= static_cast<long>(cur.size())) return false;  // stabilized
      cur = next.rows();
    }
    return true;
  }

  struct Quotient;

  // Quotient algebra A / W for a two-sided ideal W.
  Quotient quotient(const FpSubspace& W) const;
  FpVec lift_from_quotient(const Quotient& Q, const FpVec& v) const;

 private:
  void validate(std::uint64_t seed) {
    // unit axioms
    for (long i = 0; i < n_; ++i) {
      if (mul(unit_, basis(i)) != basis(i) || mul(basis(i), unit_) != basis(i))
        throw error("unit axiom fails");
    }
    // associativity: exhaustive for small algebras, sampled otherwise
    auto check_triple = [&](long i, long j, long k) {
      auto lhs = mul(mul(basis(i), basis(j)), basis(k));
      auto rhs = mul(basis(i), mul(basis(j), basis(k)));
      if (lhs != rhs) throw error("not associative");
    };
    if (n_ <= 40) {
      for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j)
          for (long k = 0; k < n_; ++k) check_triple(i, j, k);
    } else {
      SplitMix64 rng(seed ^ 0xa55ccaULL);
      for (int t = 0; t < 1000; ++t)
        check_triple(rng.bounded(n_), rng.bounded(n_), rng.bounded(n_));
    }
  }

  FpCtx F_;
  long n_;
  std::vector<std::int64_t> sc_;
  FpVec unit_;
  FpVec tr_;
};

struct FqAlgebra::Quotient {
  FqAlgebra alg;
  std::vector<long> complement;  // ambient indices giving the section
};

inline FqAlgebra::Quotient FqAlgebra::quotient(const FpSubspace& W) const {
  auto comp = W.complement_indices();
  long q = static_cast<long>(comp.size());
  auto project = [&](const FpVec& v) {
    auto r = W.residue(v);
    FpVec out(q, 0);
    for (long t = 0; t < q; ++t) out[t] = r[comp[t]];
    return out;
  };
  std::vector<std::int64_t> qsc(q * q * q, 0);
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      auto prod = project(mul(basis(comp[a]), basis(comp[b])));
      for (long c = 0; c < q; ++c) qsc[(a * q + b) * q + c] = prod[c];
    }
  return Quotient{FqAlgebra(F_, q, std::move(qsc), project(unit_), false), comp};
}

inline FpVec FqAlgebra::lift_from_quotient(const Quotient& Q, const FpVec& v) const {
  FpVec out(n_, 0);
  for (std::size_t t = 0; t < Q.complement.size(); ++t) out[Q.complement[t]] = v[t];
  return out;
}

inline std::vector<FpVec> FqAlgebra::center(const std::vector<FpVec>& gen_hint) const {
  // Incrementally intersect kernels of (R_g - L_g) over candidate space.
  std::vector<FpVec> cand;
  for (long i = 0; i < n_; ++i) cand.push_back(basis(i));
  auto constrain = [&](const FpVec& gelem) {
    auto D = right_mult(gelem);
    auto L = left_mult(gelem);
    for (std::size_t i = 0; i < D.rows(); ++i)
      for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) = F_.sub(D(i, j), L(i, j));
    // rows of cand act: condition cand_r * D = 0
    FpMat C(cand.size(), n_, 0);
    for (std::size_t r = 0; r < cand.size(); ++r) {
      auto img = vec_mat(F_, cand[r], D);
      C.set_row(r, img);
    }
    auto K = kernel_basis(F_, mat_transpose(F_, C));
    std::vector<FpVec> next;
    for (std::size_t r = 0; r < K.rows(); ++r) {
      FpVec v(n_, 0);
      for (std::size_t c = 0; c < K.cols(); ++c) {
        if (K(r, c) == 0) continue;
        for (long t = 0; t < n_; ++t) v[t] = F_.add(v[t], F_.mul(K(r, c), cand[c][t]));
      }
      next.push_back(std::move(v));
    }
    cand = std::move(next);
  };
  if (!gen_hint.empty()) {
    for (auto& g : gen_hint) constrain(g);
  } else {
    for (long i = 0; i < n_ && !cand.empty(); ++i) constrain(basis(i));
  }
  // verify against the full basis (cheap; shrinks further if the hint was
  // not generating)
  for (long i = 0; i < n_ && !cand.empty(); ++i) {
    bool all_ok = true;
    for (auto& z : cand)
      if (mul(z, basis(i)) != mul(basis(i), z)) {
        all_ok = false;
        break;
      }
    if (!all_ok) constrain(basis(i));
  }
  return cand;
}

}  // namespace wreathe
