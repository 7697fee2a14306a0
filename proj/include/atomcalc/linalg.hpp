#pragma once

// Exact dense linear algebra on row vectors.
//
// Convention used across the library: module elements are row vectors and
// maps act on the right, x |-> x * M.  "Kernel" therefore means left kernel.
// Reduction uses the first nonzero pivot in column order, no pivoting
// heuristics, so every reduced form is canonical: two subspaces are equal
// iff their Subspace bases are identical matrices.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "atomcalc/error.hpp"
#include "atomcalc/scalar.hpp"

namespace atomcalc {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVecX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Index = Eigen::Index;

template <typename Scalar>
MatrixX<Scalar> zeros(Index r, Index c, const FieldSpec& f) {
  MatrixX<Scalar> m(r, c);
  m.setConstant(scalar_from<Scalar>(0, f));
  return m;
}

template <typename Scalar>
MatrixX<Scalar> eye(Index n, const FieldSpec& f) {
  MatrixX<Scalar> m = zeros<Scalar>(n, n, f);
  for (Index i = 0; i < n; ++i) m(i, i) = scalar_from<Scalar>(1, f);
  return m;
}

template <typename Scalar>
bool matrix_is_zero(const MatrixX<Scalar>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <typename Scalar>
bool matrix_equal(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <typename Scalar>
MatrixX<Scalar> vstack(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  MatrixX<Scalar> m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(b.rows()) = b;
  return m;
}

template <typename Scalar>
MatrixX<Scalar> hstack(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  MatrixX<Scalar> m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

// In-place reduced row echelon form.  Returns the pivot columns in order.
template <typename Scalar>
std::vector<Index> rref(MatrixX<Scalar>& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = -1;
    for (Index r = row; r < m.rows(); ++r)
      if (!is_zero(m(r, col))) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != row) m.row(row).swap(m.row(piv));
    Scalar inv = scalar_from<Scalar>(1, FieldSpec{}) / m(row, col);
    // For Fp the literal 1 adopts the modulus of the pivot on contact.
    m.row(row) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      m.row(r) -= m(r, col) * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
Index rank(MatrixX<Scalar> m) {
  return static_cast<Index>(rref(m).size());
}

// Row space of a matrix in canonical reduced form.
template <typename Scalar>
class Subspace {
public:
  Subspace() : ambient_(0) {}
  explicit Subspace(Index ambient, const FieldSpec& f)
      : basis_(zeros<Scalar>(0, ambient, f)), ambient_(ambient), field_(f) {}

  static Subspace row_space(MatrixX<Scalar> m, const FieldSpec& f) {
    auto pivots = rref(m);
    Subspace s;
    s.ambient_ = m.cols();
    s.field_ = f;
    s.basis_ = m.topRows(static_cast<Index>(pivots.size()));
    s.pivots_ = std::move(pivots);
    return s;
  }

  Index dim() const { return basis_.rows(); }
  Index ambient() const { return ambient_; }
  const MatrixX<Scalar>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  const FieldSpec& field() const { return field_; }
  bool is_zero() const { return dim() == 0; }

  // Reduce v by the basis; the residue is zero iff v lies in the span.
  RowVecX<Scalar> reduce(RowVecX<Scalar> v) const {
    for (Index i = 0; i < basis_.rows(); ++i) {
      Scalar c = v(pivots_[static_cast<size_t>(i)]);
      if (!atomcalc::is_zero(c)) v -= c * basis_.row(i);
    }
    return v;
  }

  bool contains(const RowVecX<Scalar>& v) const {
    return matrix_is_zero<Scalar>(reduce(v));
  }
  bool contains(const Subspace& other) const {
    for (Index i = 0; i < other.basis_.rows(); ++i)
      if (!contains(RowVecX<Scalar>(other.basis_.row(i)))) return false;
    return true;
  }

  // Coordinates of v in this basis (pivot columns of a reduced basis carry
  // the coefficients directly).  Requires contains(v).
  RowVecX<Scalar> coordinates(const RowVecX<Scalar>& v) const {
    RowVecX<Scalar> c = zeros<Scalar>(1, dim(), field_);
    for (Index i = 0; i < dim(); ++i) c(i) = v(pivots_[static_cast<size_t>(i)]);
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && matrix_equal(a.basis_, b.basis_);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    return row_space(vstack(a.basis_, b.basis_), a.field_);
  }

private:
  MatrixX<Scalar> basis_;
  Index ambient_;
  FieldSpec field_;
  std::vector<Index> pivots_;
};

// Left kernel of m: all row vectors x with x * m = 0, as a canonical subspace.
template <typename Scalar>
Subspace<Scalar> left_kernel(const MatrixX<Scalar>& m, const FieldSpec& f) {
  MatrixX<Scalar> t = m.transpose();
  auto pivots = rref(t);
  Index n = m.rows();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  Index nfree = n - static_cast<Index>(pivots.size());
  MatrixX<Scalar> basis = zeros<Scalar>(nfree, n, f);
  Index row = 0;
  for (Index fcol = 0; fcol < n; ++fcol) {
    if (is_pivot[static_cast<size_t>(fcol)]) continue;
    basis(row, fcol) = scalar_from<Scalar>(1, f);
    for (size_t i = 0; i < pivots.size(); ++i)
      basis(row, pivots[i]) = -t(static_cast<Index>(i), fcol);
    ++row;
  }
  return Subspace<Scalar>::row_space(std::move(basis), f);
}

// U ∩ W via the left kernel of [U; W]: a kernel row (u | w) has
// u·U = -w·W, which is exactly an element of the intersection.
template <typename Scalar>
Subspace<Scalar> intersect(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  MatrixX<Scalar> stacked = vstack(a.basis(), b.basis());
  Subspace<Scalar> ker = left_kernel(stacked, a.field());
  MatrixX<Scalar> vecs = zeros<Scalar>(ker.dim(), a.ambient(), a.field());
  for (Index i = 0; i < ker.dim(); ++i)
    vecs.row(i) = ker.basis().row(i).leftCols(a.dim()) * a.basis();
  return Subspace<Scalar>::row_space(std::move(vecs), a.field());
}

// Enumerate coefficient vectors of length r.  Over F_p the digits run over
// the whole field, or over {0..grid} when a nonzero grid smaller than p is
// given; over the rationals they run over the integer grid {0..grid}.  Calls
// fn on each; stops early when fn returns true.  Returns true iff some call
// returned true.  Throws once the candidate count exceeds the budget.
template <typename Scalar>
bool enumerate_vectors(Index r, const FieldSpec& f, std::uint64_t budget,
                       const std::function<bool(const RowVecX<Scalar>&)>& fn,
                       std::uint64_t grid = 0) {
  std::uint64_t base = f.is_rational() ? grid + 1
                       : grid != 0     ? std::min<std::uint64_t>(f.p, grid + 1)
                                       : f.p;
  double total = 1;
  for (Index i = 0; i < r; ++i) total *= static_cast<double>(base);
  if (total > static_cast<double>(budget))
    throw BudgetExceeded("vector enumeration needs " + std::to_string(total) +
                         " candidates, budget is " + std::to_string(budget));
  std::vector<std::uint64_t> digits(static_cast<size_t>(r), 0);
  RowVecX<Scalar> v = zeros<Scalar>(1, r, f);
  for (;;) {
    if (fn(v)) return true;
    Index i = 0;
    for (; i < r; ++i) {
      auto& d = digits[static_cast<size_t>(i)];
      if (++d < base) { v(i) = scalar_from<Scalar>(static_cast<long long>(d), f); break; }
      d = 0;
      v(i) = scalar_from<Scalar>(0, f);
    }
    if (i == r) return false;
  }
}

// Solve x * a = b.  Free coordinates are set to zero, so the solution is
// canonical.  Returns nothing when the system is inconsistent.
template <typename Scalar>
std::optional<RowVecX<Scalar>> solve_left(const MatrixX<Scalar>& a,
                                          const RowVecX<Scalar>& b,
                                          const FieldSpec& f) {
  MatrixX<Scalar> aug = hstack<Scalar>(a.transpose(), b.transpose());
  auto pivots = rref(aug);
  RowVecX<Scalar> x = zeros<Scalar>(1, a.rows(), f);
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == a.rows()) return std::nullopt;  // pivot in the rhs column
    x(pivots[i]) = aug(static_cast<Index>(i), a.rows());
  }
  return x;
}

}  // namespace atomcalc
