#pragma once

// Jacobson radical of a finite dimensional algebra, with structural
// post-verification, plus the socle/top constructions built on it.
//
// Two computation paths:
//   - characteristic 0 or p > dim A: the kernel of the trace form
//     (x, y) |-> tr(rho_reg(x y)) is the radical.
//   - p <= dim A (prime field): a descending chain of ideals R_0 = A,
//     R_{i+1} = {x in R_i : g_i(x y) = 0 for all y}, where g_i is computed
//     from tr(Z^(p^i)) on the canonical integer lift Z of the regular
//     representation; after m+1 steps with p^m <= dim < p^(m+1) the chain
//     ends at the radical.
//
// Every result is verified structurally before being returned: two-sided
// ideal, nilpotent, and semisimple quotient.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "atomcalc/algebra.hpp"
#include "atomcalc/error.hpp"
#include "atomcalc/linalg.hpp"

namespace atomcalc {

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

// Plain integer matrices; Eigen is avoided here so that cpp_int never meets
// Eigen's conversion probes.
using BigMat = std::vector<std::vector<BigInt>>;

inline BigMat big_mul(const BigMat& a, const BigMat& b) {
  size_t n = a.size();
  BigMat c(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline BigMat big_pow(BigMat base, std::uint64_t e) {
  size_t n = base.size();
  BigMat r(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  while (e > 0) {
    if (e & 1) r = big_mul(r, base);
    e >>= 1;
    if (e) base = big_mul(base, base);
  }
  return r;
}

}  // namespace detail

// Gram matrix of (x, y) |-> tr(rho_reg(x y)) on the basis.
template <typename Scalar>
MatrixX<Scalar> trace_form_gram(const Algebra<Scalar>& A) {
  const FieldSpec& f = A.field();
  Index n = A.dim();
  RowVecX<Scalar> traces = zeros<Scalar>(1, n, f);
  for (Index k = 0; k < n; ++k) {
    Scalar t = scalar_from<Scalar>(0, f);
    for (Index i = 0; i < n; ++i) t += A.right_mult(k)(i, i);
    traces(k) = t;
  }
  MatrixX<Scalar> G = zeros<Scalar>(n, n, f);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      RowVecX<Scalar> prod = A.mul(A.basis_vector(i), A.basis_vector(j));
      Scalar t = scalar_from<Scalar>(0, f);
      for (Index k = 0; k < n; ++k) t += prod(k) * traces(k);
      G(i, j) = t;
    }
  return G;
}

namespace detail {

template <typename Scalar>
Subspace<Scalar> radical_trace_form(const Algebra<Scalar>& A) {
  return left_kernel(trace_form_gram(A), A.field());
}

// Small-characteristic chain on canonical integer lifts.  Only meaningful
// over a prime field.
inline Subspace<Fp> radical_small_char(const Algebra<Fp>& A) {
  const FieldSpec& f = A.field();
  std::uint64_t p = f.p;
  Index d = A.dim();

  // g_i of an element z (coordinates over F_p): lift rho_reg(z) entrywise to
  // {0..p-1}, take tr(Z^(p^i)) mod p^(i+1); the theorem guarantees p^i
  // divides it on the current chain member, and g_i is the quotient mod p.
  auto g = [&](const RowVecX<Fp>& z, int i) -> Fp {
    std::uint64_t q = 1;
    for (int t = 0; t < i; ++t) q *= p;  // q = p^i
    BigMat Z(static_cast<size_t>(d), std::vector<BigInt>(static_cast<size_t>(d), 0));
    for (Index j = 0; j < d; ++j) {
      if (z(j).is_zero()) continue;
      const MatrixX<Fp>& Rj = A.right_mult(j);
      for (Index r = 0; r < d; ++r)
        for (Index c = 0; c < d; ++c) {
          Fp v = z(j) * Rj(r, c);
          Z[static_cast<size_t>(r)][static_cast<size_t>(c)] += v.value();
        }
    }
    for (auto& row : Z)
      for (auto& e : row) e %= p;  // canonical lift of the reduced matrix
    BigMat P = big_pow(Z, q);
    BigInt tr = 0;
    for (Index r = 0; r < d; ++r) tr += P[static_cast<size_t>(r)][static_cast<size_t>(r)];
    BigInt mod = BigInt(q) * p;  // p^(i+1)
    BigInt rem = tr % mod;
    if (rem < 0) rem += mod;
    if (rem % q != 0)
      throw std::logic_error("radical chain: trace not divisible by p^i");
    return Fp(static_cast<long long>(rem / q), static_cast<std::uint32_t>(p));
  };

  Subspace<Fp> R = Subspace<Fp>::row_space(eye<Fp>(d, f), f);
  int m = 0;
  for (std::uint64_t q = p; q <= static_cast<std::uint64_t>(d); q *= p) ++m;
  for (int i = 0; i <= m; ++i) {
    if (R.dim() == 0) break;
    MatrixX<Fp> M = zeros<Fp>(R.dim(), d, f);
    for (Index r = 0; r < R.dim(); ++r)
      for (Index j = 0; j < d; ++j) {
        RowVecX<Fp> prod = A.mul(RowVecX<Fp>(R.basis().row(r)), A.basis_vector(j));
        M(r, j) = g(prod, i);
      }
    Subspace<Fp> lam = left_kernel(M, f);
    MatrixX<Fp> next = lam.basis() * R.basis();
    R = Subspace<Fp>::row_space(std::move(next), f);
  }
  return R;
}

inline Subspace<Rational> radical_small_char(const Algebra<Rational>&) {
  throw std::logic_error("small characteristic chain is meaningless over the rationals");
}

}  // namespace detail

// Span of all products x*y with x in U, y in V (as subspaces of the algebra).
template <typename Scalar>
Subspace<Scalar> product_span(const Algebra<Scalar>& A, const Subspace<Scalar>& U,
                              const Subspace<Scalar>& V) {
  MatrixX<Scalar> rows = zeros<Scalar>(U.dim() * V.dim(), A.dim(), A.field());
  Index r = 0;
  for (Index i = 0; i < U.dim(); ++i)
    for (Index j = 0; j < V.dim(); ++j)
      rows.row(r++) = A.mul(RowVecX<Scalar>(U.basis().row(i)),
                            RowVecX<Scalar>(V.basis().row(j)));
  return Subspace<Scalar>::row_space(std::move(rows), A.field());
}

template <typename Scalar>
bool is_two_sided_ideal(const Algebra<Scalar>& A, const Subspace<Scalar>& I) {
  for (Index i = 0; i < I.dim(); ++i)
    for (Index j = 0; j < A.dim(); ++j) {
      RowVecX<Scalar> b = I.basis().row(i);
      if (!I.contains(RowVecX<Scalar>(b * A.right_mult(j)))) return false;
      if (!I.contains(RowVecX<Scalar>(b * A.left_mult(j)))) return false;
    }
  return true;
}

template <typename Scalar>
bool is_nilpotent_ideal(const Algebra<Scalar>& A, const Subspace<Scalar>& I) {
  Subspace<Scalar> power = I;
  for (Index step = 0; step < A.dim() + 1; ++step) {
    if (power.dim() == 0) return true;
    Subspace<Scalar> next = product_span(A, power, I);
    if (next.dim() == power.dim()) return false;  // stabilized above zero
    power = next;
  }
  return power.dim() == 0;
}

// Jacobson radical.  The result is always post-verified: two-sided ideal,
// nilpotent, semisimple quotient; a failure is a logic error, not a value.
template <typename Scalar>
Subspace<Scalar> radical(const Algebra<Scalar>& A, bool verify = true) {
  const FieldSpec& f = A.field();
  Subspace<Scalar> rad;
  if (f.is_rational() || static_cast<Index>(f.p) > A.dim())
    rad = detail::radical_trace_form(A);
  else
    rad = detail::radical_small_char(A);

  if (verify) {
    if (!is_two_sided_ideal(A, rad))
      throw std::logic_error("radical verification: not a two-sided ideal");
    if (!is_nilpotent_ideal(A, rad))
      throw std::logic_error("radical verification: not nilpotent");
    auto Q = quotient_algebra(A, rad);
    Q.alg.validate();
    if (radical(Q.alg, false).dim() != 0)
      throw std::logic_error("radical verification: quotient is not semisimple");
  }
  return rad;
}

// M * rad(A) as a subspace of M: the sum of the images of the radical action.
template <typename Scalar>
Subspace<Scalar> module_radical_part(const RightModule<Scalar>& M,
                                     const Subspace<Scalar>& rad) {
  MatrixX<Scalar> rows = zeros<Scalar>(0, M.dim(), M.field());
  for (Index i = 0; i < rad.dim(); ++i)
    rows = vstack<Scalar>(rows, M.act(RowVecX<Scalar>(rad.basis().row(i))));
  return Subspace<Scalar>::row_space(std::move(rows), M.field());
}

// soc M = {x : x * rad = 0}, the largest semisimple submodule.
template <typename Scalar>
Subspace<Scalar> socle_subspace(const RightModule<Scalar>& M,
                                const Subspace<Scalar>& rad) {
  MatrixX<Scalar> stacked = zeros<Scalar>(M.dim(), 0, M.field());
  for (Index i = 0; i < rad.dim(); ++i)
    stacked = hstack<Scalar>(stacked, M.act(RowVecX<Scalar>(rad.basis().row(i))));
  if (stacked.cols() == 0)
    return Subspace<Scalar>::row_space(eye<Scalar>(M.dim(), M.field()), M.field());
  return left_kernel(stacked, M.field());
}

}  // namespace atomcalc
