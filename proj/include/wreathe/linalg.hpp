#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "wreathe/rational.hpp"

namespace wreathe {

// Dense matrix over an arbitrary coefficient type. Maps act on ROW vectors
// from the right (x -> x*M), matching the composition-on-the-right convention
// used throughout.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c, T fill = T()) : rows_(r), cols_(c), a_(r * c, fill) {}

  static Matrix identity(std::size_t n, const T& one, const T& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

template <class F>
using Mat = Matrix<typename F::Elem>;

template <class F>
Mat<F> mat_mul(const F& k, const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.rows()) throw error("dimension mismatch");
  Mat<F> c(a.rows(), b.cols(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (k.is_zero(a(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = k.add(c(i, j), k.mul(a(i, l), b(l, j)));
    }
  return c;
}

template <class F>
Mat<F> mat_add(const F& k, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> c(a.rows(), a.cols(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = k.add(a(i, j), b(i, j));
  return c;
}

template <class F>
Mat<F> mat_sub(const F& k, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> c(a.rows(), a.cols(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = k.sub(a(i, j), b(i, j));
  return c;
}

template <class F>
Mat<F> mat_scale(const F& k, const typename F::Elem& s, const Mat<F>& a) {
  Mat<F> c(a.rows(), a.cols(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = k.mul(s, a(i, j));
  return c;
}

template <class F>
std::vector<typename F::Elem> vec_mat(const F& k, const std::vector<typename F::Elem>& v,
                                      const Mat<F>& m) {
  if (v.size() != m.rows()) throw error("dimension mismatch");
  std::vector<typename F::Elem> r(m.cols(), k.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (k.is_zero(v[i])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = k.add(r[j], k.mul(v[i], m(i, j)));
  }
  return r;
}

template <class F>
Mat<F> mat_transpose(const F& k, const Mat<F>& a) {
  Mat<F> c(a.cols(), a.rows(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
  return c;
}

// Reduced row echelon form, in place. Returns pivot column per pivot row.
template <class F>
std::vector<std::size_t> rref(const F& k, Mat<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && k.is_zero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(sel, j));
    auto piv_inv = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(piv_inv, m(r, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = k.sub(m(i, j), k.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t mat_rank(const F& k, Mat<F> m) {
  return rref(k, m).size();
}

// Basis of the left kernel {x : x*M = 0} would be kernel of transpose; we
// expose the solution space of M as a map on row vectors, i.e. vectors v with
// v*M = 0 are rows of kernel_rows(transpose). The plain kernel here is
// {x (column sense) : M x = 0}, returned as rows of the output.
template <class F>
Mat<F> kernel_basis(const F& k, Mat<F> m) {
  std::size_t n = m.cols();
  auto pivots = rref(k, m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat<F> ker(free_cols.size(), n, k.zero());
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    std::size_t fc = free_cols[fi];
    ker(fi, fc) = k.one();
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      ker(fi, pivots[pr]) = k.neg(m(pr, fc));
  }
  return ker;
}

enum class SolveMode { kernel, image, solve };

// linear_solve over a field: kernel basis, image (row-space) basis, or one
// solution of x*M = b ... here in the column convention: M x = b.
template <class F>
struct LinearSolveResult {
  Mat<F> basis;                                      // kernel or image rows
  std::optional<std::vector<typename F::Elem>> sol;  // solve mode
};

template <class F>
LinearSolveResult<F> linear_solve(const F& k, const Mat<F>& m, SolveMode mode,
                                  const std::vector<typename F::Elem>* b = nullptr) {
  LinearSolveResult<F> res;
  if (mode == SolveMode::kernel) {
    res.basis = kernel_basis(k, m);
    return res;
  }
  if (mode == SolveMode::image) {
    Mat<F> t = m;
    auto pivots = rref(k, t);
    Mat<F> img(pivots.size(), m.cols(), k.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) img.set_row(i, t.row(i));
    res.basis = img;
    return res;
  }
  if (b == nullptr) throw error("no solution");
  // Augment [M | b], eliminate, read a particular solution of M x = b.
  Mat<F> aug(m.rows(), m.cols() + 1, k.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = (*b)[i];
  }
  auto pivots = rref(k, aug);
  std::vector<typename F::Elem> x(m.cols(), k.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) throw error("no solution");
    x[pivots[r]] = aug(r, m.cols());
  }
  res.sol = std::move(x);
  return res;
}

template <class F>
typename F::Elem det(const F& k, Mat<F> m) {
  if (m.rows() != m.cols()) throw error("dimension mismatch");
  auto d = k.one();
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && k.is_zero(m(sel, c))) ++sel;
    if (sel == n) return k.zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(sel, j));
      d = k.neg(d);
    }
    d = k.mul(d, m(c, c));
    auto piv_inv = k.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (k.is_zero(m(i, c))) continue;
      auto f = k.mul(piv_inv, m(i, c));
      for (std::size_t j = c; j < n; ++j) m(i, j) = k.sub(m(i, j), k.mul(f, m(c, j)));
    }
  }
  return d;
}

template <class F>
Mat<F> mat_inverse(const F& k, const Mat<F>& m) {
  if (m.rows() != m.cols()) throw error("dimension mismatch");
  std::size_t n = m.rows();
  Mat<F> aug(n, 2 * n, k.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = k.one();
  }
  auto pivots = rref(k, aug);
  if (pivots.size() != n || pivots.back() != n - 1) throw error("singular matrix");
  Mat<F> inv(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// ---- p-local machinery over Q ------------------------------------------

struct SmithValuations {
  std::vector<long> finite;  // ascending valuations of the nonzero elementary divisors
  std::size_t infinite;      // rank deficiency
  long sum() const {
    long s = 0;
    for (long v : finite) s += v;
    return s;
  }
  long max_finite() const { return finite.empty() ? 0 : finite.back(); }
};

// Valuations of the elementary divisors of a matrix over Z_(p), computed by
// local elimination with minimal-valuation pivoting. Entries must be
// p-integral.
inline SmithValuations smith_valuations(Matrix<Rational> m, const Int& p) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).p_integral(p)) throw error("not p-integral");
  SmithValuations out;
  std::size_t n = std::min(m.rows(), m.cols());
  std::vector<bool> row_done(m.rows(), false), col_done(m.cols(), false);
  for (std::size_t step = 0; step < n; ++step) {
    long best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (col_done[j] || m(i, j).is_zero()) continue;
        long v = m(i, j).valuation(p);
        if (best < 0 || v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best < 0) break;  // remaining block is zero
    out.finite.push_back(best);
    const Rational piv = m(bi, bj);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_done[i] || i == bi || m(i, bj).is_zero()) continue;
      Rational f = m(i, bj) / piv;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (col_done[j]) continue;
        m(i, j) -= f * m(bi, j);
      }
    }
    row_done[bi] = true;
    col_done[bj] = true;
  }
  std::sort(out.finite.begin(), out.finite.end());
  out.infinite = n - out.finite.size();
  return out;
}

// p-local row echelon: returns a basis (rows) of the saturation of the
// Z_(p)-lattice spanned by the rows of m inside Z_(p)^cols. Output rows are
// p-integral with unit pivots.
inline Matrix<Rational> saturate_rows(Matrix<Rational> m, const Int& p) {
  std::size_t r = 0;
  std::vector<std::size_t> piv_cols;
  for (std::size_t step = 0; step < m.rows(); ++step) {
    long best = 0;
    bool found = false;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = r; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j).is_zero()) continue;
        long v = m(i, j).valuation(p);
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(bi, j));
    Rational piv = m(r, bj);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) /= piv;  // unit pivot; saturates
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, bj).is_zero()) continue;
      Rational f = m(i, bj);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv_cols.push_back(bj);
    ++r;
  }
  Matrix<Rational> out(r, m.cols());
  for (std::size_t i = 0; i < r; ++i) out.set_row(i, m.row(i));
  return out;
}

// True iff the Z_(p)-lattices spanned by the rows of a and b coincide:
// mutual p-integral expressibility plus equal rank.
inline bool same_p_lattice(const Matrix<Rational>& a, const Matrix<Rational>& b, const Int& p) {
  RationalField Q;
  auto expressible = [&](const Matrix<Rational>& rows, const Matrix<Rational>& basis) {
    Matrix<Rational> bt = mat_transpose(Q, basis);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
      auto v = rows.row(i);
      try {
        auto res = linear_solve(Q, bt, SolveMode::solve, &v);
        for (auto& c : *res.sol)
          if (!c.p_integral(p)) return false;
      } catch (const error&) {
        return false;
      }
    }
    return true;
  };
  return mat_rank(Q, a) == mat_rank(Q, b) && expressible(a, b) && expressible(b, a);
}

}  // namespace wreathe
