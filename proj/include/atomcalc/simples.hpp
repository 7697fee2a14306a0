#pragma once

// Enumeration of the simple right modules of a finite dimensional algebra,
// annihilators, and the module isomorphism test.
//
// Simples are found in the semisimple quotient: split its center into
// primitive idempotents (exhaustive idempotent enumeration over F_p; rational
// root splitting of minimal polynomials over the rationals), then take a
// minimal-dimension cyclic right ideal of each block.  A cyclic submodule of
// minimal dimension is simple, so no probabilistic splitting is needed at
// these sizes.  Blocks the method cannot split are refused loudly, never
// guessed.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "atomcalc/algebra.hpp"
#include "atomcalc/error.hpp"
#include "atomcalc/linalg.hpp"
#include "atomcalc/radical.hpp"

namespace atomcalc {

template <typename Scalar>
Subspace<Scalar> center(const Algebra<Scalar>& A) {
  MatrixX<Scalar> stacked = zeros<Scalar>(A.dim(), 0, A.field());
  for (Index j = 0; j < A.dim(); ++j)
    stacked = hstack<Scalar>(stacked,
                             MatrixX<Scalar>(A.right_mult(j) - A.left_mult(j)));
  return left_kernel(stacked, A.field());
}

// Two-sided annihilator {a : M * a = 0} as a subspace of the algebra.
template <typename Scalar>
Subspace<Scalar> annihilator(const RightModule<Scalar>& M) {
  const Algebra<Scalar>& A = M.algebra();
  Index m = M.dim();
  MatrixX<Scalar> rows = zeros<Scalar>(A.dim(), m * m, A.field());
  for (Index j = 0; j < A.dim(); ++j)
    for (Index r = 0; r < m; ++r)
      for (Index c = 0; c < m; ++c) rows(j, r * m + c) = M.action(j)(r, c);
  return left_kernel(rows, A.field());
}

// Stable sort key: dimension first, then the action matrices rendered to
// text.  Fixes a canonical order for simples and atoms.
template <typename Scalar>
std::string module_sort_key(const RightModule<Scalar>& M) {
  std::string key;
  for (const auto& a : M.actions())
    for (Index r = 0; r < a.rows(); ++r)
      for (Index c = 0; c < a.cols(); ++c) {
        key += scalar_to_string(a(r, c));
        key += ',';
      }
  return key;
}

namespace detail {

// All idempotents in a commutative subspace (given by its basis inside the
// algebra), found exhaustively over F_p.
inline std::vector<RowVecX<Fp>> idempotents_in_span(const Algebra<Fp>& A,
                                                    const Subspace<Fp>& Z,
                                                    std::uint64_t budget) {
  std::vector<RowVecX<Fp>> found;
  enumerate_vectors<Fp>(Z.dim(), A.field(), budget, [&](const RowVecX<Fp>& lam) {
    RowVecX<Fp> v = lam * Z.basis();
    if (matrix_is_zero<Fp>(v)) return false;
    if (matrix_equal<Fp>(MatrixX<Fp>(A.mul(v, v)), MatrixX<Fp>(v)))
      found.push_back(v);
    return false;
  });
  return found;
}

// Primitive central idempotents over F_p: the minimal nonzero elements of the
// idempotent order e <= f iff ef = e.
inline std::vector<RowVecX<Fp>> central_primitive_idempotents(
    const Algebra<Fp>& A, std::uint64_t budget) {
  Subspace<Fp> Z = center(A);
  auto idem = idempotents_in_span(A, Z, budget);
  std::vector<RowVecX<Fp>> prim;
  for (const auto& e : idem) {
    bool minimal = true;
    for (const auto& g : idem) {
      if (matrix_equal<Fp>(MatrixX<Fp>(g), MatrixX<Fp>(e))) continue;
      if (matrix_equal<Fp>(MatrixX<Fp>(A.mul(g, e)), MatrixX<Fp>(g))) {
        minimal = false;
        break;
      }
    }
    if (minimal) prim.push_back(e);
  }
  // They must be orthogonal and sum to the unit.
  RowVecX<Fp> s = zeros<Fp>(1, A.dim(), A.field());
  for (const auto& e : prim) s += e;
  if (!matrix_equal<Fp>(MatrixX<Fp>(s), MatrixX<Fp>(A.unit())))
    throw std::logic_error("central idempotents do not sum to the unit");
  for (size_t i = 0; i < prim.size(); ++i)
    for (size_t j = i + 1; j < prim.size(); ++j)
      if (!matrix_is_zero<Fp>(MatrixX<Fp>(A.mul(prim[i], prim[j]))))
        throw std::logic_error("central idempotents are not orthogonal");
  return prim;
}

// Minimal polynomial of w in the unital commutative subalgebra with unit e:
// coefficients c with w^t = sum c_i w^i.  Returns the power stack and c.
template <typename Scalar>
std::pair<MatrixX<Scalar>, RowVecX<Scalar>> minimal_polynomial(
    const Algebra<Scalar>& A, const RowVecX<Scalar>& e, const RowVecX<Scalar>& w) {
  MatrixX<Scalar> stack = zeros<Scalar>(0, A.dim(), A.field());
  RowVecX<Scalar> pw = e;
  for (;;) {
    Subspace<Scalar> span = Subspace<Scalar>::row_space(stack, A.field());
    if (stack.rows() > 0 && span.contains(pw)) {
      auto c = solve_left<Scalar>(stack, pw, A.field());
      return {stack, *c};
    }
    stack = vstack<Scalar>(stack, MatrixX<Scalar>(pw));
    pw = A.mul(pw, w);
  }
}

// One rational root of the monic polynomial lambda^t - sum c_i lambda^i, if
// any; exact search through divisor candidates of the scaled constant term.
inline std::optional<Rational> rational_root(const RowVecX<Rational>& c) {
  Index t = c.cols();
  // p(x) = x^t - c_{t-1} x^{t-1} - ... - c_0
  auto eval = [&](const Rational& x) {
    Rational acc(1);
    for (Index i = t; i-- > 0;) acc = acc * x - c(i);
    return acc;
  };
  if (c(0).is_zero()) return Rational(0);
  // Scale to integer coefficients: roots r/s need r | a_0 and s | a_t.
  Rational::Int lead(1), a0num, a0den;
  Rational::Int L(1);
  for (Index i = 0; i < t; ++i) L = boost::multiprecision::lcm(L, c(i).den());
  Rational::Int a0 = c(0).num() * (L / c(0).den());
  Rational::Int at = L;
  auto fits = [](const Rational::Int& v) {
    return v >= std::numeric_limits<long long>::min() &&
           v <= std::numeric_limits<long long>::max();
  };
  if (!fits(a0) || !fits(at))
    throw BudgetExceeded("rational root search: coefficients too large");
  long long A0 = std::abs(static_cast<long long>(a0));
  long long AT = std::abs(static_cast<long long>(at));
  for (long long r = 1; r <= A0; ++r) {
    if (A0 % r != 0) continue;
    for (long long s = 1; s <= AT; ++s) {
      if (AT % s != 0) continue;
      Rational cand{Rational::Int(r), Rational::Int(s)};
      if (eval(cand).is_zero()) return cand;
      if (eval(-cand).is_zero()) return -cand;
    }
  }
  return std::nullopt;
}

inline std::optional<Fp> rational_root(const RowVecX<Fp>&) {
  throw std::logic_error("rational root search is for the rationals only");
}

// Primitive central idempotents over the rationals by repeated splitting
// along rational roots of central minimal polynomials.  Refuses blocks it
// cannot split.
template <typename Scalar>
std::vector<RowVecX<Scalar>> central_primitive_idempotents_split(
    const Algebra<Scalar>& A) {
  Subspace<Scalar> Z = center(A);
  std::vector<RowVecX<Scalar>> eps{A.unit()};
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t which = 0; which < eps.size() && !progress; ++which) {
      RowVecX<Scalar> e = eps[which];
      for (Index zb = 0; zb < Z.dim() && !progress; ++zb) {
        RowVecX<Scalar> w = A.mul(RowVecX<Scalar>(Z.basis().row(zb)), e);
        auto [stack, c] = minimal_polynomial(A, e, w);
        Index t = c.cols();
        if (t < 2) continue;
        auto root = rational_root(c);
        if (!root) continue;
        // p = (lambda - root) q; the projector is q(w)/q(root).
        // Synthetic division of x^t - sum c_i x^i by (x - root).
        std::vector<Scalar> q(static_cast<size_t>(t));
        Scalar carry = scalar_from<Scalar>(1, A.field());  // leading 1
        for (Index i = t; i-- > 0;) {
          q[static_cast<size_t>(i)] = carry;
          carry = carry * *root - c(i);
        }
        if (!is_zero(carry)) throw std::logic_error("deflation remainder nonzero");
        RowVecX<Scalar> qa = zeros<Scalar>(1, A.dim(), A.field());
        RowVecX<Scalar> pw = e;
        Scalar qv = scalar_from<Scalar>(0, A.field());
        Scalar rp = scalar_from<Scalar>(1, A.field());
        for (Index i = 0; i < t; ++i) {
          qa += q[static_cast<size_t>(i)] * pw;
          qv += q[static_cast<size_t>(i)] * rp;
          pw = A.mul(pw, w);
          rp = rp * *root;
        }
        if (is_zero(qv))
          throw std::logic_error("repeated root in a semisimple center");
        RowVecX<Scalar> e1 = qa / qv;
        RowVecX<Scalar> e2 = e - e1;
        if (matrix_is_zero<Scalar>(e1) || matrix_is_zero<Scalar>(e2))
          throw std::logic_error("degenerate central splitting");
        eps[which] = e1;
        eps.push_back(e2);
        progress = true;
      }
    }
  }
  return eps;
}

}  // namespace detail

// The simple right modules of A, pairwise non-isomorphic and exhaustive, in
// the canonical (dimension, action text) order.
template <typename Scalar>
std::vector<RightModule<Scalar>> simple_modules(const Algebra<Scalar>& A,
                                                std::uint64_t budget = 1000000) {
  const FieldSpec& f = A.field();
  Subspace<Scalar> rad = radical(A);
  QuotientAlgebra<Scalar> Q = quotient_algebra(A, rad);
  const Algebra<Scalar>& Abar = Q.alg;

  std::vector<RowVecX<Scalar>> eps;
  if constexpr (std::is_same_v<Scalar, Fp>) {
    eps = detail::central_primitive_idempotents(Abar, budget);
  } else {
    eps = detail::central_primitive_idempotents_split(Abar);
  }

  RightModule<Scalar> reg = Abar.regular_module();
  std::vector<RightModule<Scalar>> simples;
  for (const auto& e : eps) {
    Subspace<Scalar> block = submodule_generated(reg, MatrixX<Scalar>(e));
    Subspace<Scalar> best;
    if (block.dim() == 1) {
      best = block;
    } else if constexpr (std::is_same_v<Scalar, Fp>) {
      Index bd = block.dim();
      best = block;
      enumerate_vectors<Fp>(bd, f, budget, [&](const RowVecX<Fp>& lam) {
        if (matrix_is_zero<Fp>(lam)) return false;
        RowVecX<Fp> v = lam * block.basis();
        Subspace<Fp> spun = submodule_generated(reg, MatrixX<Fp>(v));
        if (spun.dim() < best.dim()) best = spun;
        return best.dim() == 1;  // cannot do better than dimension one
      });
    } else {
      throw BudgetExceeded(
          "rational block of dimension > 1: no exhaustive minimal cyclic search");
    }
    auto [mbar, incl] = restrict_to(reg, best);
    simples.push_back(inflate_module(mbar, Q, &A));
  }

  std::sort(simples.begin(), simples.end(),
            [](const RightModule<Scalar>& a, const RightModule<Scalar>& b) {
              if (a.dim() != b.dim()) return a.dim() < b.dim();
              return module_sort_key(a) < module_sort_key(b);
            });
  for (auto& s : simples) s.validate();
  return simples;
}

// End_A(M) as an abstract algebra on a chosen hom basis; composition of
// right-acting maps is the matrix product in application order.
template <typename Scalar>
struct EndoAlgebra {
  Algebra<Scalar> alg;
  std::vector<MatrixX<Scalar>> basis;  // endomorphism matrices, algebra basis order
};

template <typename Scalar>
EndoAlgebra<Scalar> endomorphism_algebra(const RightModule<Scalar>& M) {
  const FieldSpec& f = M.field();
  auto homs = hom_space(M, M);
  Index r = static_cast<Index>(homs.size());
  Index m = M.dim();
  MatrixX<Scalar> stacked = zeros<Scalar>(r, m * m, f);
  for (Index t = 0; t < r; ++t)
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b)
        stacked(t, a * m + b) = homs[static_cast<size_t>(t)](a, b);
  auto coords_of = [&](const MatrixX<Scalar>& F) {
    RowVecX<Scalar> v = zeros<Scalar>(1, m * m, f);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b) v(a * m + b) = F(a, b);
    auto c = solve_left<Scalar>(stacked, v, f);
    if (!c) throw std::logic_error("endomorphism outside the hom space");
    return *c;
  };
  std::vector<MatrixX<Scalar>> rm;
  rm.reserve(static_cast<size_t>(r));
  for (Index j = 0; j < r; ++j) {
    MatrixX<Scalar> mj = zeros<Scalar>(r, r, f);
    for (Index i = 0; i < r; ++i)
      mj.row(i) = coords_of(MatrixX<Scalar>(homs[static_cast<size_t>(i)] *
                                            homs[static_cast<size_t>(j)]));
    rm.push_back(std::move(mj));
  }
  RowVecX<Scalar> unit = coords_of(eye<Scalar>(m, f));
  EndoAlgebra<Scalar> out{Algebra<Scalar>(f, std::move(rm), std::move(unit)),
                          std::move(homs)};
  out.alg.validate();
  return out;
}

template <typename Scalar>
struct IsoWitness {
  bool isomorphic = false;
  MatrixX<Scalar> iso;  // an invertible intertwiner when isomorphic
};

// Module isomorphism test.  Complete within budget: over F_p the coefficient
// space of Hom(M, N) is searched on a grid sized min(p, dim+1) per
// coordinate, over the rationals on {0..dim}; in both cases a vanishing
// determinant on the whole grid forces det = 0 identically, so "no" answers
// are certificates.  Past the budget: a bounded random search that may prove
// "yes", then a loud refusal.
template <typename Scalar>
IsoWitness<Scalar> is_isomorphic(const RightModule<Scalar>& M,
                                 const RightModule<Scalar>& N,
                                 std::uint64_t budget = 1000000,
                                 std::uint64_t seed = 0) {
  const FieldSpec& f = M.field();
  if (M.dim() != N.dim()) return {};
  if (M.dim() == 0) return {true, zeros<Scalar>(0, 0, f)};
  auto homs = hom_space(M, N);
  if (homs.empty()) return {};
  if (hom_space(N, M).empty()) return {};
  Index r = static_cast<Index>(homs.size());
  Index d = M.dim();

  auto combine = [&](const RowVecX<Scalar>& lam) {
    MatrixX<Scalar> F = zeros<Scalar>(d, d, f);
    for (Index i = 0; i < r; ++i)
      if (!is_zero(lam(i))) F += lam(i) * homs[static_cast<size_t>(i)];
    return F;
  };

  IsoWitness<Scalar> out;
  try {
    enumerate_vectors<Scalar>(
        r, f, budget,
        [&](const RowVecX<Scalar>& lam) {
          MatrixX<Scalar> F = combine(lam);
          if (rank<Scalar>(F) == d) {
            out.isomorphic = true;
            out.iso = std::move(F);
            return true;
          }
          return false;
        },
        static_cast<std::uint64_t>(d));
    return out;  // grid exhausted without a unit: certified non-isomorphic
  } catch (const BudgetExceeded&) {
    std::mt19937_64 rng(seed);
    std::uint64_t span = f.is_rational() ? static_cast<std::uint64_t>(2 * d + 1)
                                         : f.p;
    for (int trial = 0; trial < 64; ++trial) {
      RowVecX<Scalar> lam = zeros<Scalar>(1, r, f);
      for (Index i = 0; i < r; ++i)
        lam(i) = scalar_from<Scalar>(
            static_cast<long long>(rng() % span) - (f.is_rational() ? d : 0), f);
      MatrixX<Scalar> F = combine(lam);
      if (rank<Scalar>(F) == d) return {true, std::move(F)};
    }
    throw BudgetExceeded("isomorphism test: coefficient space too large and "
                         "random search found no unit; refusing to guess");
  }
}

}  // namespace atomcalc
