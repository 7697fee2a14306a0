#pragma once

// Primitive idempotents and minimal projective covers.
//
// The regular module of the semisimple quotient is decomposed into an
// explicit direct sum of simple right ideals (greedy accumulation of images
// of homs from the simples); the components of 1 in that decomposition are
// orthogonal primitive idempotents, which lift along the nilpotent radical by
// the Newton map e <- 3e^2 - 2e^3 with sequential orthogonalization.  A cover
// is assembled from the lifted idempotents and verified: surjective,
// intertwining, kernel inside cover * rad.

#include <utility>
#include <vector>

#include "atomcalc/algebra.hpp"
#include "atomcalc/error.hpp"
#include "atomcalc/linalg.hpp"
#include "atomcalc/radical.hpp"
#include "atomcalc/simples.hpp"

namespace atomcalc {

namespace detail {

// Inverse of inflate_module for modules killed by the ideal: the action of a
// quotient basis vector is the action of its canonical lift.
template <typename Scalar>
RightModule<Scalar> deflate_module(const RightModule<Scalar>& M,
                                   const QuotientAlgebra<Scalar>& Q,
                                   const Algebra<Scalar>* quotient_alg) {
  std::vector<MatrixX<Scalar>> act;
  act.reserve(Q.section.size());
  for (Index t : Q.section) act.push_back(M.action(t));
  return RightModule<Scalar>(quotient_alg, std::move(act));
}

// Greedy direct-sum decomposition of a semisimple module into simple images.
// Returns (simple index, image subspace) pairs whose sum is direct and all
// of M; throws if the homs do not span.
template <typename Scalar>
std::vector<std::pair<size_t, Subspace<Scalar>>> semisimple_decomposition(
    const RightModule<Scalar>& M, const std::vector<RightModule<Scalar>>& simples) {
  const FieldSpec& f = M.field();
  Subspace<Scalar> D(M.dim(), f);
  std::vector<std::pair<size_t, Subspace<Scalar>>> parts;
  for (size_t i = 0; i < simples.size(); ++i) {
    for (const auto& F : hom_space(simples[i], M)) {
      Subspace<Scalar> U = Subspace<Scalar>::row_space(F, f);
      if (U.dim() == 0) continue;
      if (intersect(U, D).dim() != 0) continue;
      parts.emplace_back(i, U);
      D = sum(D, U);
      if (D.dim() == M.dim()) return parts;
    }
  }
  if (D.dim() != M.dim())
    throw std::logic_error("semisimple decomposition did not exhaust the module");
  return parts;
}

}  // namespace detail

// Per-algebra cover data: radical, simples (canonical order), and one lifted
// primitive idempotent per simple class.
template <typename Scalar>
struct CoverData {
  const Algebra<Scalar>* alg = nullptr;
  Subspace<Scalar> rad;
  std::vector<RightModule<Scalar>> simples;
  std::vector<RowVecX<Scalar>> idempotents;         // e(i), one per simple
  std::vector<RightModule<Scalar>> proj_of_simple;  // P(S_i) = e(i) A
  std::vector<MatrixX<Scalar>> proj_basis;          // rows: basis of e(i)A in A
};

template <typename Scalar>
CoverData<Scalar> make_cover_data(const Algebra<Scalar>& A,
                                  std::uint64_t budget = 1000000) {
  CoverData<Scalar> out;
  out.alg = &A;
  out.rad = radical(A);
  out.simples = simple_modules(A, budget);
  QuotientAlgebra<Scalar> Q = quotient_algebra(A, out.rad);

  std::vector<RightModule<Scalar>> simples_bar;
  simples_bar.reserve(out.simples.size());
  for (const auto& s : out.simples)
    simples_bar.push_back(detail::deflate_module(s, Q, &Q.alg));

  RightModule<Scalar> reg_bar = Q.alg.regular_module();
  auto parts = detail::semisimple_decomposition(reg_bar, simples_bar);

  // Components of 1 in the right-ideal decomposition are orthogonal
  // primitive idempotents of the quotient.
  MatrixX<Scalar> stacked = zeros<Scalar>(0, Q.alg.dim(), A.field());
  for (const auto& [i, U] : parts) stacked = vstack<Scalar>(stacked, U.basis());
  auto coords = solve_left<Scalar>(stacked, Q.alg.unit(), A.field());
  if (!coords) throw std::logic_error("unit not expressible in decomposition");
  std::vector<RowVecX<Scalar>> comps;
  Index off = 0;
  for (const auto& [i, U] : parts) {
    RowVecX<Scalar> u =
        coords->segment(off, U.dim()) * U.basis();
    comps.push_back(std::move(u));
    off += U.dim();
  }
  for (size_t t = 0; t < comps.size(); ++t) {
    if (matrix_is_zero<Scalar>(comps[t]))
      throw std::logic_error("zero component of the unit in a right-ideal sum");
    if (!matrix_equal<Scalar>(MatrixX<Scalar>(Q.alg.mul(comps[t], comps[t])),
                              MatrixX<Scalar>(comps[t])))
      throw std::logic_error("unit component is not idempotent");
  }

  // Lift along the radical: Newton iteration with sequential
  // orthogonalization against the already lifted idempotents.
  std::vector<RowVecX<Scalar>> lifted;
  auto lift_coords = [&](const RowVecX<Scalar>& vbar) {
    RowVecX<Scalar> v = zeros<Scalar>(1, A.dim(), A.field());
    for (Index t = 0; t < static_cast<Index>(Q.section.size()); ++t)
      v(Q.section[static_cast<size_t>(t)]) = vbar(t);
    return v;
  };
  for (const auto& cbar : comps) {
    RowVecX<Scalar> fpref = A.unit();
    for (const auto& e : lifted) fpref -= e;
    RowVecX<Scalar> y = A.mul(A.mul(fpref, lift_coords(cbar)), fpref);
    bool converged = false;
    for (Index it = 0; it < A.dim() + 2; ++it) {
      RowVecX<Scalar> y2 = A.mul(y, y);
      if (matrix_equal<Scalar>(MatrixX<Scalar>(y2), MatrixX<Scalar>(y))) {
        converged = true;
        break;
      }
      RowVecX<Scalar> y3 = A.mul(y2, y);
      y = scalar_from<Scalar>(3, A.field()) * y2 -
          scalar_from<Scalar>(2, A.field()) * y3;
    }
    if (!converged) throw std::logic_error("idempotent lift did not converge");
    lifted.push_back(y);
  }
  RowVecX<Scalar> total = zeros<Scalar>(1, A.dim(), A.field());
  for (const auto& e : lifted) total += e;
  if (!matrix_equal<Scalar>(MatrixX<Scalar>(total), MatrixX<Scalar>(A.unit())))
    throw std::logic_error("lifted idempotents do not sum to 1");

  // One representative idempotent per simple class.
  out.idempotents.resize(out.simples.size());
  std::vector<bool> have(out.simples.size(), false);
  for (size_t t = 0; t < parts.size(); ++t) {
    size_t i = parts[t].first;
    if (have[i]) continue;
    have[i] = true;
    out.idempotents[i] = lifted[t];
  }
  for (bool h : have)
    if (!h) throw std::logic_error("a simple class has no idempotent");

  RightModule<Scalar> reg = A.regular_module();
  for (size_t i = 0; i < out.simples.size(); ++i) {
    Subspace<Scalar> pi =
        submodule_generated(reg, MatrixX<Scalar>(out.idempotents[i]));
    auto [mod, incl] = restrict_to(reg, pi);
    out.proj_of_simple.push_back(std::move(mod));
    out.proj_basis.push_back(pi.basis());
  }
  return out;
}

template <typename Scalar>
struct ProjectiveCover {
  RightModule<Scalar> cover;        // direct sum of P(S_i)
  MatrixX<Scalar> onto;             // cover -> M, surjective, kernel in cover*rad
  std::vector<Index> multiplicity;  // of P(S_i), per simple index
};

// Minimal projective cover of M, with verification of the minimality
// invariant ker(onto) <= cover * rad.
template <typename Scalar>
ProjectiveCover<Scalar> projective_cover(const RightModule<Scalar>& M,
                                         const CoverData<Scalar>& cd) {
  const Algebra<Scalar>& A = *cd.alg;
  const FieldSpec& f = A.field();

  ProjectiveCover<Scalar> out;
  out.multiplicity.assign(cd.simples.size(), 0);
  if (M.dim() == 0) {
    out.cover = RightModule<Scalar>::zero(&A);
    out.onto = zeros<Scalar>(0, 0, f);
    return out;
  }

  Subspace<Scalar> mrad = module_radical_part(M, cd.rad);
  auto [top, pi] = quotient_by(M, mrad);
  auto parts = detail::semisimple_decomposition(top, cd.simples);

  RightModule<Scalar> cover = RightModule<Scalar>::zero(&A);
  MatrixX<Scalar> onto = zeros<Scalar>(0, M.dim(), f);
  for (const auto& [i, chunk] : parts) {
    ++out.multiplicity[i];
    // A vector of the chunk surviving multiplication by e(i); it exists
    // because Hom(e(i)A, S_i) != 0 forces S_i e(i) != 0.
    MatrixX<Scalar> rho_e = top.act(
        RowVecX<Scalar>(cd.idempotents[i]));
    RowVecX<Scalar> w = zeros<Scalar>(1, top.dim(), f);
    bool found = false;
    for (Index r = 0; r < chunk.dim(); ++r) {
      RowVecX<Scalar> cand = chunk.basis().row(r) * rho_e;
      if (!matrix_is_zero<Scalar>(MatrixX<Scalar>(cand))) {
        w = chunk.basis().row(r);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("chunk is killed by its idempotent");
    auto lift = solve_left<Scalar>(pi, w, f);
    if (!lift) throw std::logic_error("top projection is not surjective");
    RowVecX<Scalar> m_t =
        *lift * M.act(RowVecX<Scalar>(cd.idempotents[i]));
    // Map rows: basis x_r of e(i)A goes to m_t * x_r.
    const MatrixX<Scalar>& pb = cd.proj_basis[i];
    MatrixX<Scalar> block = zeros<Scalar>(pb.rows(), M.dim(), f);
    for (Index r = 0; r < pb.rows(); ++r)
      block.row(r) = m_t * M.act(RowVecX<Scalar>(pb.row(r)));
    cover = cover.is_zero() ? cd.proj_of_simple[i]
                            : direct_sum(cover, cd.proj_of_simple[i]);
    onto = vstack<Scalar>(onto, block);
  }

  // Verification: intertwiner, surjective, minimal.
  ModuleMap<Scalar> map{&cover, &M, onto};
  if (!map.is_intertwiner())
    throw std::logic_error("cover map is not a module map");
  if (map.image().dim() != M.dim())
    throw std::logic_error("cover map is not surjective");
  Subspace<Scalar> ker = map.kernel();
  Subspace<Scalar> crad = module_radical_part(cover, cd.rad);
  if (!crad.contains(ker))
    throw std::logic_error("cover is not minimal: kernel escapes cover * rad");

  out.cover = std::move(cover);
  out.onto = std::move(onto);
  return out;
}

}  // namespace atomcalc
