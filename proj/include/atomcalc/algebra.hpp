#pragma once

// Finite dimensional associative algebras given by structure constants, and
// their right modules.
//
// Basis products are e_i * e_j = sum_k c[i][j][k] e_k.  Elements are row
// vectors of coordinates; a right module action is a list of dim x dim
// matrices rho(e_j) acting on the right of row vectors, so
// rho(a b) = rho(a) rho(b).

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "atomcalc/error.hpp"
#include "atomcalc/linalg.hpp"
#include "atomcalc/scalar.hpp"

namespace atomcalc {

template <typename Scalar>
class RightModule;

template <typename Scalar>
class Algebra {
public:
  Algebra() = default;
  // right_mult[j](i,k) = c[i][j][k]; row i of right_mult[j] is e_i * e_j.
  Algebra(FieldSpec field, std::vector<MatrixX<Scalar>> right_mult,
          RowVecX<Scalar> unit)
      : field_(field), rm_(std::move(right_mult)), unit_(std::move(unit)) {
    n_ = static_cast<Index>(rm_.size());
    lm_.assign(static_cast<size_t>(n_), zeros<Scalar>(n_, n_, field_));
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        lm_[static_cast<size_t>(i)].row(j) = rm_[static_cast<size_t>(j)].row(i);
  }

  Index dim() const { return n_; }
  const FieldSpec& field() const { return field_; }
  const RowVecX<Scalar>& unit() const { return unit_; }
  // x |-> x * e_j and x |-> e_i * x as matrices on row vectors.
  const MatrixX<Scalar>& right_mult(Index j) const { return rm_[static_cast<size_t>(j)]; }
  const MatrixX<Scalar>& left_mult(Index i) const { return lm_[static_cast<size_t>(i)]; }

  RowVecX<Scalar> mul(const RowVecX<Scalar>& x, const RowVecX<Scalar>& y) const {
    RowVecX<Scalar> r = zeros<Scalar>(1, n_, field_);
    for (Index j = 0; j < n_; ++j)
      if (!is_zero(y(j))) r += y(j) * (x * rm_[static_cast<size_t>(j)]);
    return r;
  }

  RowVecX<Scalar> basis_vector(Index i) const {
    RowVecX<Scalar> v = zeros<Scalar>(1, n_, field_);
    v(i) = scalar_from<Scalar>(1, field_);
    return v;
  }

  // Associativity on basis triples and two-sided unit; throws on failure.
  void validate() const {
    for (Index i = 0; i < n_; ++i) {
      RowVecX<Scalar> ei = basis_vector(i);
      if (!matrix_equal<Scalar>(mul(unit_, ei), ei) ||
          !matrix_equal<Scalar>(mul(ei, unit_), ei))
        throw ModelError("unit fails on basis element " + std::to_string(i));
      for (Index j = 0; j < n_; ++j)
        for (Index k = 0; k < n_; ++k) {
          RowVecX<Scalar> ej = basis_vector(j), ek = basis_vector(k);
          if (!matrix_equal<Scalar>(mul(mul(ei, ej), ek), mul(ei, mul(ej, ek))))
            throw ModelError("associativity fails on basis triple (" +
                             std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(k) + ")");
        }
    }
  }

  // Opposite algebra: c_op[i][j][k] = c[j][i][k], so the right multiplication
  // matrices of A^op are the left multiplication matrices of A.
  Algebra opposite() const {
    return Algebra(field_, lm_, unit_);
  }

  // Right regular module A_A.
  RightModule<Scalar> regular_module() const;

private:
  Index n_ = 0;
  FieldSpec field_;
  std::vector<MatrixX<Scalar>> rm_, lm_;
  RowVecX<Scalar> unit_;
};

template <typename Scalar>
class RightModule {
public:
  RightModule() = default;
  RightModule(const Algebra<Scalar>* alg, std::vector<MatrixX<Scalar>> action)
      : alg_(alg), action_(std::move(action)) {
    dim_ = action_.empty() ? 0 : action_[0].rows();
  }

  static RightModule zero(const Algebra<Scalar>* alg) {
    std::vector<MatrixX<Scalar>> act(static_cast<size_t>(alg->dim()),
                                     zeros<Scalar>(0, 0, alg->field()));
    return RightModule(alg, std::move(act));
  }

  const Algebra<Scalar>& algebra() const { return *alg_; }
  const Algebra<Scalar>* algebra_ptr() const { return alg_; }
  Index dim() const { return dim_; }
  bool is_zero() const { return dim_ == 0; }
  const FieldSpec& field() const { return alg_->field(); }
  const MatrixX<Scalar>& action(Index j) const { return action_[static_cast<size_t>(j)]; }
  const std::vector<MatrixX<Scalar>>& actions() const { return action_; }

  // rho(a) for an arbitrary element a of the algebra.
  MatrixX<Scalar> act(const RowVecX<Scalar>& a) const {
    MatrixX<Scalar> m = zeros<Scalar>(dim_, dim_, field());
    for (Index j = 0; j < alg_->dim(); ++j)
      if (!atomcalc::is_zero(a(j))) m += a(j) * action_[static_cast<size_t>(j)];
    return m;
  }

  // rho is an algebra map sending the unit to the identity; throws otherwise.
  void validate() const {
    Index n = alg_->dim();
    if (static_cast<Index>(action_.size()) != n)
      throw ModelError("module has wrong number of action matrices");
    for (const auto& m : action_)
      if (m.rows() != dim_ || m.cols() != dim_)
        throw ModelError("module action matrix is not square of the module dimension");
    if (!matrix_equal<Scalar>(act(alg_->unit()), eye<Scalar>(dim_, field())))
      throw ModelError("module unit does not act as identity");
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        MatrixX<Scalar> lhs = action(i) * action(j);
        RowVecX<Scalar> prod = alg_->mul(alg_->basis_vector(i), alg_->basis_vector(j));
        if (!matrix_equal<Scalar>(lhs, act(prod)))
          throw ModelError("module action does not respect structure constants at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }

private:
  const Algebra<Scalar>* alg_ = nullptr;
  std::vector<MatrixX<Scalar>> action_;
  Index dim_ = 0;
};

template <typename Scalar>
RightModule<Scalar> Algebra<Scalar>::regular_module() const {
  return RightModule<Scalar>(this, rm_);
}

// A-linear map; row vectors map by x |-> x * mat.
template <typename Scalar>
struct ModuleMap {
  const RightModule<Scalar>* src = nullptr;
  const RightModule<Scalar>* dst = nullptr;
  MatrixX<Scalar> mat;

  bool is_intertwiner() const {
    for (Index j = 0; j < src->algebra().dim(); ++j)
      if (!matrix_equal<Scalar>(src->action(j) * mat, mat * dst->action(j)))
        return false;
    return true;
  }
  Subspace<Scalar> image() const {
    return Subspace<Scalar>::row_space(mat, src->field());
  }
  Subspace<Scalar> kernel() const { return left_kernel(mat, src->field()); }
};

// Basis of Hom_A(M, N) as matrices F with rho_M(a) F = F rho_N(a).
template <typename Scalar>
std::vector<MatrixX<Scalar>> hom_space(const RightModule<Scalar>& M,
                                       const RightModule<Scalar>& N) {
  const FieldSpec& f = M.field();
  Index mm = M.dim(), mn = N.dim(), n = M.algebra().dim();
  if (mm == 0 || mn == 0) return {};
  // Unknown F vectorized row-major; one constraint row per (j, r, s).
  MatrixX<Scalar> C = zeros<Scalar>(n * mm * mn, mm * mn, f);
  Index row = 0;
  for (Index j = 0; j < n; ++j) {
    const MatrixX<Scalar>& a = M.action(j);
    const MatrixX<Scalar>& b = N.action(j);
    for (Index r = 0; r < mm; ++r)
      for (Index s = 0; s < mn; ++s) {
        for (Index t = 0; t < mm; ++t) C(row, t * mn + s) += a(r, t);
        for (Index t = 0; t < mn; ++t) C(row, r * mn + t) -= b(t, s);
        ++row;
      }
  }
  Subspace<Scalar> sols = left_kernel<Scalar>(MatrixX<Scalar>(C.transpose()), f);
  std::vector<MatrixX<Scalar>> basis;
  basis.reserve(static_cast<size_t>(sols.dim()));
  for (Index i = 0; i < sols.dim(); ++i) {
    MatrixX<Scalar> F = zeros<Scalar>(mm, mn, f);
    for (Index r = 0; r < mm; ++r)
      for (Index s = 0; s < mn; ++s) F(r, s) = sols.basis()(i, r * mn + s);
    basis.push_back(std::move(F));
  }
  return basis;
}

// Smallest action-closed subspace containing the given rows.
template <typename Scalar>
Subspace<Scalar> submodule_generated(const RightModule<Scalar>& M,
                                     const MatrixX<Scalar>& gens) {
  Subspace<Scalar> s = Subspace<Scalar>::row_space(gens, M.field());
  for (;;) {
    MatrixX<Scalar> next = s.basis();
    for (Index j = 0; j < M.algebra().dim(); ++j)
      next = vstack<Scalar>(next, s.basis() * M.action(j));
    Subspace<Scalar> grown = Subspace<Scalar>::row_space(next, M.field());
    if (grown.dim() == s.dim()) return grown;
    s = grown;
  }
}

template <typename Scalar>
bool is_submodule(const RightModule<Scalar>& M, const Subspace<Scalar>& U) {
  for (Index j = 0; j < M.algebra().dim(); ++j)
    for (Index i = 0; i < U.dim(); ++i)
      if (!U.contains(RowVecX<Scalar>(U.basis().row(i) * M.action(j)))) return false;
  return true;
}

// The module structure on an action-closed subspace, with its inclusion.
template <typename Scalar>
std::pair<RightModule<Scalar>, MatrixX<Scalar>> restrict_to(
    const RightModule<Scalar>& M, const Subspace<Scalar>& U) {
  const FieldSpec& f = M.field();
  Index r = U.dim(), n = M.algebra().dim();
  std::vector<MatrixX<Scalar>> act;
  act.reserve(static_cast<size_t>(n));
  for (Index j = 0; j < n; ++j) {
    MatrixX<Scalar> aj = zeros<Scalar>(r, r, f);
    for (Index i = 0; i < r; ++i) {
      RowVecX<Scalar> w = U.basis().row(i) * M.action(j);
      if (!U.contains(w)) throw ModelError("subspace is not action-closed");
      aj.row(i) = U.coordinates(w);
    }
    act.push_back(std::move(aj));
  }
  return {RightModule<Scalar>(M.algebra_ptr(), std::move(act)), U.basis()};
}

// The quotient module M/U, with the projection matrix (dim M x dim M/U).
// Quotient coordinates are the non-pivot columns of U's reduced basis.
template <typename Scalar>
std::pair<RightModule<Scalar>, MatrixX<Scalar>> quotient_by(
    const RightModule<Scalar>& M, const Subspace<Scalar>& U) {
  const FieldSpec& f = M.field();
  Index m = M.dim(), n = M.algebra().dim();
  std::vector<bool> is_pivot(static_cast<size_t>(m), false);
  for (Index p : U.pivots()) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < m; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
  Index q = static_cast<Index>(free_cols.size());

  auto project = [&](RowVecX<Scalar> v) {
    v = U.reduce(std::move(v));
    RowVecX<Scalar> out = zeros<Scalar>(1, q, f);
    for (Index t = 0; t < q; ++t) out(t) = v(free_cols[static_cast<size_t>(t)]);
    return out;
  };

  MatrixX<Scalar> proj = zeros<Scalar>(m, q, f);
  for (Index c = 0; c < m; ++c) {
    RowVecX<Scalar> e = zeros<Scalar>(1, m, f);
    e(c) = scalar_from<Scalar>(1, f);
    proj.row(c) = project(std::move(e));
  }
  std::vector<MatrixX<Scalar>> act;
  act.reserve(static_cast<size_t>(n));
  for (Index j = 0; j < n; ++j) {
    MatrixX<Scalar> aj = zeros<Scalar>(q, q, f);
    for (Index t = 0; t < q; ++t) {
      RowVecX<Scalar> rep = zeros<Scalar>(1, m, f);
      rep(free_cols[static_cast<size_t>(t)]) = scalar_from<Scalar>(1, f);
      aj.row(t) = project(rep * M.action(j));
    }
    act.push_back(std::move(aj));
  }
  return {RightModule<Scalar>(M.algebra_ptr(), std::move(act)), proj};
}

template <typename Scalar>
RightModule<Scalar> direct_sum(const RightModule<Scalar>& M,
                               const RightModule<Scalar>& N) {
  const FieldSpec& f = M.field();
  Index n = M.algebra().dim();
  std::vector<MatrixX<Scalar>> act;
  act.reserve(static_cast<size_t>(n));
  for (Index j = 0; j < n; ++j) {
    MatrixX<Scalar> aj = zeros<Scalar>(M.dim() + N.dim(), M.dim() + N.dim(), f);
    aj.topLeftCorner(M.dim(), M.dim()) = M.action(j);
    aj.bottomRightCorner(N.dim(), N.dim()) = N.action(j);
    act.push_back(std::move(aj));
  }
  return RightModule<Scalar>(M.algebra_ptr(), std::move(act));
}

// Quotient by a two-sided ideal: an algebra on the non-pivot coordinates of
// the ideal's reduced basis, with the projection matrix A -> A/I.
template <typename Scalar>
struct QuotientAlgebra {
  Algebra<Scalar> alg;
  MatrixX<Scalar> proj;            // dim A x dim A/I
  std::vector<Index> section;      // quotient basis t lifts to e_{section[t]}
};

template <typename Scalar>
QuotientAlgebra<Scalar> quotient_algebra(const Algebra<Scalar>& A,
                                         const Subspace<Scalar>& I) {
  const FieldSpec& f = A.field();
  Index n = A.dim();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (Index p : I.pivots()) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
  Index q = static_cast<Index>(free_cols.size());

  auto project = [&](RowVecX<Scalar> v) {
    v = I.reduce(std::move(v));
    RowVecX<Scalar> out = zeros<Scalar>(1, q, f);
    for (Index t = 0; t < q; ++t) out(t) = v(free_cols[static_cast<size_t>(t)]);
    return out;
  };

  MatrixX<Scalar> proj = zeros<Scalar>(n, q, f);
  for (Index c = 0; c < n; ++c) proj.row(c) = project(A.basis_vector(c));

  std::vector<MatrixX<Scalar>> rm;
  rm.reserve(static_cast<size_t>(q));
  for (Index j = 0; j < q; ++j) {
    MatrixX<Scalar> m = zeros<Scalar>(q, q, f);
    for (Index i = 0; i < q; ++i)
      m.row(i) = project(A.mul(A.basis_vector(free_cols[static_cast<size_t>(i)]),
                               A.basis_vector(free_cols[static_cast<size_t>(j)])));
    rm.push_back(std::move(m));
  }
  RowVecX<Scalar> unit = project(A.unit());
  return {Algebra<Scalar>(f, std::move(rm), std::move(unit)), std::move(proj),
          std::move(free_cols)};
}

// Pull an A-module back along a surjection A -> B given by the quotient data:
// a B-module is an A-module via the projection.
template <typename Scalar>
RightModule<Scalar> inflate_module(const RightModule<Scalar>& M,
                                   const QuotientAlgebra<Scalar>& Q,
                                   const Algebra<Scalar>* A) {
  std::vector<MatrixX<Scalar>> act;
  act.reserve(static_cast<size_t>(A->dim()));
  for (Index j = 0; j < A->dim(); ++j) {
    RowVecX<Scalar> img = Q.proj.row(j);
    act.push_back(M.act(img));
  }
  return RightModule<Scalar>(A, std::move(act));
}

// k-dual as a right module over the opposite algebra: rho*(e_j) = rho(e_j)^T.
template <typename Scalar>
RightModule<Scalar> dual_module(const RightModule<Scalar>& M,
                                const Algebra<Scalar>* opposite) {
  std::vector<MatrixX<Scalar>> act;
  act.reserve(M.actions().size());
  for (const auto& a : M.actions()) act.push_back(a.transpose());
  return RightModule<Scalar>(opposite, std::move(act));
}

}  // namespace atomcalc
