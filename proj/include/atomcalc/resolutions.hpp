// Injective envelopes, minimal injective and projective resolutions, Bass
// numbers, and Ext dimensions over a finite-dimensional algebra.
//
// Envelopes come from covers over the opposite algebra: the dual of a right
// module is a right module over the opposite algebra, duality is exact, and
// it swaps projective covers with injective envelopes.  Every envelope and
// every resolution step is verified on the spot (essential embeddings,
// surjective minimal covers, complexes that actually compose to zero), so a
// structural bug surfaces as an exception, not as a wrong table entry.

#pragma once

#include <atomcalc/covers.hpp>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace atomcalc {

// Shared per-algebra context: cover data on both sides plus the list of
// indecomposable injectives aligned with the simples.
template <typename Scalar>
struct Engine {
  const Algebra<Scalar>* alg = nullptr;
  std::shared_ptr<Algebra<Scalar>> op;
  CoverData<Scalar> cov;     // over *alg
  CoverData<Scalar> cov_op;  // over *op
  std::vector<RightModule<Scalar>> inj_of_simple;  // E(S_i), same order
  std::vector<Index> end_dim;                      // dim_k End(S_i)
  std::uint64_t budget = 1000000;
  std::uint64_t seed = 0;
};

template <typename Scalar>
Engine<Scalar> make_engine(const Algebra<Scalar>& A,
                           std::uint64_t budget = 1000000,
                           std::uint64_t seed = 0) {
  Engine<Scalar> eng;
  eng.alg = &A;
  eng.budget = budget;
  eng.seed = seed;
  eng.cov = make_cover_data(A, budget);
  eng.op = std::make_shared<Algebra<Scalar>>(A.opposite());
  eng.cov_op = make_cover_data(*eng.op, budget);
  if (eng.cov.simples.size() != eng.cov_op.simples.size())
    throw std::logic_error("opposite algebra has a different simple count");

  for (const auto& S : eng.cov.simples) {
    RightModule<Scalar> DS = dual_module(S, eng.op.get());
    std::optional<size_t> match;
    for (size_t j = 0; j < eng.cov_op.simples.size(); ++j) {
      if (is_isomorphic(DS, eng.cov_op.simples[j], budget, seed).isomorphic) {
        match = j;
        break;
      }
    }
    if (!match) throw std::logic_error("dual simple not found on the opposite side");
    RightModule<Scalar> E =
        dual_module(eng.cov_op.proj_of_simple[*match], &A);
    E.validate();
    // The socle of E(S) must be one copy of S.
    Subspace<Scalar> soc = socle_subspace(E, eng.cov.rad);
    if (soc.dim() != S.dim())
      throw std::logic_error("indecomposable injective has the wrong socle");
    auto socmod = restrict_to(E, soc).first;
    if (!is_isomorphic(socmod, S, budget, seed).isomorphic)
      throw std::logic_error("socle of the injective is not the simple");
    eng.inj_of_simple.push_back(std::move(E));
    eng.end_dim.push_back(static_cast<Index>(hom_space(S, S).size()));
  }
  return eng;
}

// E(M) together with an essential embedding and the multiplicity of each
// indecomposable injective.
template <typename Scalar>
struct Envelope {
  RightModule<Scalar> total;
  MatrixX<Scalar> embedding;  // M.dim() x total.dim(), injective, essential
  std::vector<Index> multiplicity;
};

template <typename Scalar>
Envelope<Scalar> injective_envelope(const RightModule<Scalar>& M,
                                    const Engine<Scalar>& eng) {
  const Algebra<Scalar>& A = *eng.alg;
  const FieldSpec& f = A.field();
  Envelope<Scalar> out;
  out.multiplicity.assign(eng.cov.simples.size(), 0);
  if (M.dim() == 0) {
    out.total = RightModule<Scalar>::zero(&A);
    out.embedding = zeros<Scalar>(0, 0, f);
    return out;
  }

  Subspace<Scalar> soc = socle_subspace(M, eng.cov.rad);
  auto socmod = restrict_to(M, soc).first;
  auto parts = detail::semisimple_decomposition(socmod, eng.cov.simples);

  RightModule<Scalar> total = RightModule<Scalar>::zero(&A);
  // Boundary rows: vectors in M paired with their images in the sum.
  MatrixX<Scalar> bnd_src = zeros<Scalar>(0, M.dim(), f);
  std::vector<std::pair<Index, MatrixX<Scalar>>> bnd_img;  // offset, rows
  Index off = 0;
  for (const auto& [i, chunk] : parts) {
    ++out.multiplicity[i];
    const RightModule<Scalar>& E = eng.inj_of_simple[i];
    auto cmod = restrict_to(socmod, chunk).first;
    Subspace<Scalar> esoc = socle_subspace(E, eng.cov.rad);
    auto emod = restrict_to(E, esoc).first;
    auto w = is_isomorphic(cmod, emod, eng.budget, eng.seed);
    if (!w.isomorphic)
      throw std::logic_error("socle chunk does not match its injective");
    bnd_src = vstack<Scalar>(bnd_src, chunk.basis() * soc.basis());
    bnd_img.emplace_back(off, MatrixX<Scalar>(w.iso * esoc.basis()));
    total = total.is_zero() ? E : direct_sum(total, E);
    off += E.dim();
  }

  // Solve for Phi: M -> total, a module map restricting on the socle to the
  // assembled isomorphism.  Solvability is exactly injectivity of the sum.
  Index m = M.dim(), e = total.dim();
  Index n = A.dim();
  Index unknowns = m * e;
  Index soc_rows = bnd_src.rows();
  Index rows = n * m * e + soc_rows * e;
  MatrixX<Scalar> C = zeros<Scalar>(rows, unknowns, f);
  RowVecX<Scalar> rhs = zeros<Scalar>(1, rows, f);
  Index row = 0;
  for (Index j = 0; j < n; ++j) {
    const MatrixX<Scalar>& mj = M.action(j);
    const MatrixX<Scalar>& ej = total.action(j);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < e; ++b) {
        for (Index r = 0; r < m; ++r) C(row, r * e + b) = C(row, r * e + b) + mj(a, r);
        for (Index s = 0; s < e; ++s)
          C(row, a * e + s) = C(row, a * e + s) - ej(s, b);
        ++row;
      }
  }
  {
    // One row per (socle source vector, target coordinate): the image of a
    // socle vector is pinned to the assembled isomorphism, zero outside the
    // column block of its own summand.
    Index brow = 0;
    for (const auto& [offset, img] : bnd_img) {
      for (Index r = 0; r < img.rows(); ++r) {
        for (Index s = 0; s < e; ++s)
          for (Index c = 0; c < m; ++c) C(row + s, c * e + s) = bnd_src(brow, c);
        for (Index t = 0; t < img.cols(); ++t)
          rhs(row + offset + t) = img(r, t);
        row += e;
        ++brow;
      }
    }
  }

  auto x = solve_left<Scalar>(MatrixX<Scalar>(C.transpose()), rhs, f);
  if (!x) throw std::logic_error("envelope extension system is inconsistent");
  MatrixX<Scalar> phi = zeros<Scalar>(m, e, f);
  for (Index r = 0; r < m; ++r)
    for (Index s = 0; s < e; ++s) phi(r, s) = (*x)(r * e + s);

  ModuleMap<Scalar> map{&M, &total, phi};
  if (!map.is_intertwiner())
    throw std::logic_error("envelope embedding is not a module map");
  if (rank(phi) != m)
    throw std::logic_error("envelope embedding is not injective");
  // Essential: the socle of the sum lies inside the image.
  Subspace<Scalar> tsoc = socle_subspace(total, eng.cov.rad);
  if (!map.image().contains(tsoc))
    throw std::logic_error("embedding misses part of the socle: not essential");

  out.total = std::move(total);
  out.embedding = std::move(phi);
  return out;
}

enum class ResolutionKind { injective, projective };
enum class TailKind { zero, periodic, truncated };

// A minimal resolution out to a degree bound, with enough tail information
// to extrapolate when the computation proved a zero tail or a repeating
// (co)syzygy.  maps[i] is terms[i] -> terms[i+1] for the injective kind and
// terms[i+1] -> terms[i] for the projective kind.
template <typename Scalar>
struct Resolution {
  ResolutionKind kind = ResolutionKind::injective;
  std::vector<RightModule<Scalar>> terms;
  std::vector<MatrixX<Scalar>> maps;
  MatrixX<Scalar> augment;                         // M -> terms[0], or terms[0] -> M
  std::vector<std::vector<Index>> multiplicity;    // per term, per simple
  std::vector<RightModule<Scalar>> syzygies;       // syzygies[0] = M
  TailKind tail = TailKind::truncated;
  Index tail_start = -1;                           // zero tail: terms[i] = 0 for i >= this
  Index period_start = -1;
  Index period_length = 0;
  MatrixX<Scalar> period_witness;                  // syzygy iso matrix

  // Degrees where the term (hence any Bass/Ext count read off it) is
  // certified: every i < terms.size(), plus everything when the tail is known.
  bool certified(Index i) const {
    if (i < static_cast<Index>(terms.size())) return true;
    return tail != TailKind::truncated;
  }
};

namespace detail {

// Scan for a repeat among the (co)syzygies; budget misses are not failures,
// they only leave the tail unknown.
template <typename Scalar>
void note_period(Resolution<Scalar>& R, std::uint64_t budget,
                 std::uint64_t seed) {
  if (R.tail != TailKind::truncated) return;
  size_t last = R.syzygies.size() - 1;
  for (size_t a = 0; a < last; ++a) {
    try {
      auto w = is_isomorphic(R.syzygies[a], R.syzygies[last], budget, seed);
      if (w.isomorphic) {
        R.tail = TailKind::periodic;
        R.period_start = static_cast<Index>(a);
        R.period_length = static_cast<Index>(last - a);
        R.period_witness = w.iso;
        return;
      }
    } catch (const BudgetExceeded&) {
      // Undecided pair; keep scanning.
    }
  }
}

}  // namespace detail

template <typename Scalar>
Resolution<Scalar> minimal_injective_resolution(const RightModule<Scalar>& M,
                                                const Engine<Scalar>& eng,
                                                Index bound) {
  Resolution<Scalar> R;
  R.kind = ResolutionKind::injective;
  R.syzygies.push_back(M);
  MatrixX<Scalar> prev_proj;  // terms[i-1] ->> syzygies[i]
  for (Index i = 0; i <= bound; ++i) {
    const RightModule<Scalar>& C = R.syzygies.back();
    if (C.dim() == 0) {
      R.tail = TailKind::zero;
      R.tail_start = i;
      break;
    }
    auto env = injective_envelope(C, eng);
    if (i == 0)
      R.augment = env.embedding;
    else
      R.maps.push_back(MatrixX<Scalar>(prev_proj * env.embedding));
    auto [quo, proj] =
        quotient_by(env.total, Subspace<Scalar>::row_space(env.embedding,
                                                           M.field()));
    R.terms.push_back(std::move(env.total));
    R.multiplicity.push_back(std::move(env.multiplicity));
    prev_proj = proj;
    R.syzygies.push_back(std::move(quo));
    if (R.tail == TailKind::truncated)
      detail::note_period(R, eng.budget, eng.seed);
  }
  if (!R.syzygies.empty() && R.syzygies.back().dim() == 0 &&
      R.tail == TailKind::truncated) {
    R.tail = TailKind::zero;
    R.tail_start = static_cast<Index>(R.terms.size());
  }

  // The complex must compose to zero and each map must kill the socle of its
  // source: that is minimality.
  for (size_t i = 0; i + 1 < R.maps.size(); ++i)
    if (!matrix_is_zero<Scalar>(MatrixX<Scalar>(R.maps[i] * R.maps[i + 1])))
      throw std::logic_error("injective resolution does not compose to zero");
  for (size_t i = 0; i < R.maps.size(); ++i) {
    Subspace<Scalar> soc = socle_subspace(R.terms[i], eng.cov.rad);
    if (!matrix_is_zero<Scalar>(MatrixX<Scalar>(soc.basis() * R.maps[i])))
      throw std::logic_error("resolution is not minimal: socle survives a map");
  }
  return R;
}

template <typename Scalar>
Resolution<Scalar> minimal_projective_resolution(const RightModule<Scalar>& M,
                                                 const Engine<Scalar>& eng,
                                                 Index bound) {
  Resolution<Scalar> R;
  R.kind = ResolutionKind::projective;
  R.syzygies.push_back(M);
  MatrixX<Scalar> prev_incl;  // syzygies[i] rows inside terms[i-1]
  for (Index i = 0; i <= bound; ++i) {
    const RightModule<Scalar>& C = R.syzygies.back();
    if (C.dim() == 0) {
      R.tail = TailKind::zero;
      R.tail_start = i;
      break;
    }
    auto pc = projective_cover(C, eng.cov);
    if (i == 0)
      R.augment = pc.onto;
    else
      R.maps.push_back(MatrixX<Scalar>(pc.onto * prev_incl));
    ModuleMap<Scalar> map{&pc.cover, &C, pc.onto};
    Subspace<Scalar> K = map.kernel();
    auto sub = restrict_to(pc.cover, K);
    prev_incl = K.basis();
    R.terms.push_back(std::move(pc.cover));
    R.multiplicity.push_back(std::move(pc.multiplicity));
    R.syzygies.push_back(std::move(sub.first));
    if (R.tail == TailKind::truncated)
      detail::note_period(R, eng.budget, eng.seed);
  }
  if (!R.syzygies.empty() && R.syzygies.back().dim() == 0 &&
      R.tail == TailKind::truncated) {
    R.tail = TailKind::zero;
    R.tail_start = static_cast<Index>(R.terms.size());
  }

  for (size_t i = 0; i + 1 < R.maps.size(); ++i)
    if (!matrix_is_zero<Scalar>(MatrixX<Scalar>(R.maps[i + 1] * R.maps[i])))
      throw std::logic_error("projective resolution does not compose to zero");
  // Minimality: every differential lands inside (next term) * rad.
  for (size_t i = 0; i < R.maps.size(); ++i) {
    Subspace<Scalar> rad_part = module_radical_part(R.terms[i], eng.cov.rad);
    if (!rad_part.contains(Subspace<Scalar>::row_space(R.maps[i], M.field())))
      throw std::logic_error("resolution is not minimal: map escapes the radical");
  }
  return R;
}

// Fold a degree into the certified range using tail information.  Returns
// nothing when the degree is beyond what the resolution certifies.
template <typename Scalar>
std::optional<Index> fold_degree(const Resolution<Scalar>& R, Index i) {
  Index have = static_cast<Index>(R.terms.size());
  if (i < have) return i;
  switch (R.tail) {
    case TailKind::zero:
      return std::nullopt;  // caller treats as zero term
    case TailKind::periodic: {
      Index a = R.period_start, L = R.period_length;
      Index k = i;
      while (k >= have && k - L >= a) k -= L;
      if (k < have) return k;
      return std::nullopt;
    }
    case TailKind::truncated:
      return std::nullopt;
  }
  return std::nullopt;
}

// mu_i(alpha, M) = dim Hom(S_alpha, E^i) / dim End(S_alpha), read off a
// minimal injective resolution.  Cross-checked against the envelope
// multiplicity bookkeeping, which arrives by a different route.
template <typename Scalar>
Index bass_number(const Engine<Scalar>& eng, const Resolution<Scalar>& R,
                  size_t alpha, Index i) {
  if (R.kind != ResolutionKind::injective)
    throw std::logic_error("bass numbers read an injective resolution");
  auto fi = fold_degree(R, i);
  if (!fi) {
    if (R.tail == TailKind::zero) return 0;
    throw BudgetExceeded("resolution truncated before the requested degree");
  }
  const RightModule<Scalar>& E = R.terms[static_cast<size_t>(*fi)];
  Index h = E.dim() == 0
                ? 0
                : static_cast<Index>(hom_space(eng.cov.simples[alpha], E).size());
  Index d = eng.end_dim[alpha];
  if (h % d != 0)
    throw std::logic_error("hom dimension is not a multiple of the residue dimension");
  Index mu = h / d;
  if (mu != R.multiplicity[static_cast<size_t>(*fi)][alpha])
    throw std::logic_error("bass number disagrees with envelope multiplicity");
  return mu;
}

// dim_{k(alpha)} Ext^i(S_alpha, M) via a minimal projective resolution of
// the simple and the induced complex of hom spaces.  This pipeline shares
// nothing with the injective side above except the base linear algebra.
template <typename Scalar>
Index ext_dimension(const Engine<Scalar>& eng, size_t alpha,
                    const RightModule<Scalar>& M, Index i) {
  const FieldSpec& f = eng.alg->field();
  Resolution<Scalar> P =
      minimal_projective_resolution(eng.cov.simples[alpha], eng, i + 1);
  auto homs_at = [&](Index t) {
    if (t >= static_cast<Index>(P.terms.size()))
      return std::vector<MatrixX<Scalar>>{};
    if (P.terms[static_cast<size_t>(t)].dim() == 0 || M.dim() == 0)
      return std::vector<MatrixX<Scalar>>{};
    return hom_space(P.terms[static_cast<size_t>(t)], M);
  };
  auto delta_rank = [&](Index t) -> Index {
    // rank of Hom(P_t, M) -> Hom(P_{t+1}, M), phi |-> d_{t+1} . phi
    auto src = homs_at(t);
    auto dst = homs_at(t + 1);
    if (src.empty() || dst.empty()) return 0;
    if (t >= static_cast<Index>(P.maps.size())) return 0;
    const MatrixX<Scalar>& d = P.maps[static_cast<size_t>(t)];
    MatrixX<Scalar> images = zeros<Scalar>(0, d.rows() * M.dim(), f);
    for (const auto& F : src) {
      MatrixX<Scalar> comp = d * F;
      RowVecX<Scalar> v = zeros<Scalar>(1, comp.rows() * comp.cols(), f);
      for (Index a = 0; a < comp.rows(); ++a)
        for (Index b = 0; b < comp.cols(); ++b) v(a * comp.cols() + b) = comp(a, b);
      images = vstack<Scalar>(images, MatrixX<Scalar>(v));
    }
    return rank(images);
  };
  Index h_i = static_cast<Index>(homs_at(i).size());
  Index ker = h_i - delta_rank(i);
  Index im = i == 0 ? 0 : delta_rank(i - 1);
  Index ext_k = ker - im;
  Index d = eng.end_dim[alpha];
  if (ext_k % d != 0)
    throw std::logic_error("ext dimension is not a multiple of the residue dimension");
  return ext_k / d;
}

// One comparison row: every count for a fixed simple and degree.
struct TheoremRow {
  size_t alpha = 0;
  Index degree = 0;
  Index mu_multiplicity = 0;  // envelope bookkeeping
  Index mu_hom = 0;           // dim Hom(S, E^i) / dim End(S)
  Index ext_dim = 0;          // dim over End(S) of Ext^i(S, M)
  Index hom_syzygy = 0;       // dim_k Hom(S, cosyzygy^i)
  Index hom_term = 0;         // dim_k Hom(S, E^i)
  bool match = false;
};

template <typename Scalar>
struct TheoremReport {
  std::vector<TheoremRow> rows;
  bool all_match = true;
  TailKind tail = TailKind::truncated;
  Index certified_through = -1;  // largest degree with constructed terms
};

// Checks mu_i(alpha, M) = dim Ext^i(S_alpha, M) over the residue field for
// every simple and every degree up to the bound, with the two sides computed
// by independent machinery, plus the stepping stone
// dim Hom(S, cosyzygy^i) = dim Hom(S, E^i).
template <typename Scalar>
TheoremReport<Scalar> verify_main_theorem(const RightModule<Scalar>& M,
                                          const Engine<Scalar>& eng,
                                          Index bound) {
  TheoremReport<Scalar> rep;
  Resolution<Scalar> R = minimal_injective_resolution(M, eng, bound);
  rep.tail = R.tail;
  rep.certified_through = static_cast<Index>(R.terms.size()) - 1;
  for (Index i = 0; i <= bound; ++i) {
    bool have_term = i < static_cast<Index>(R.terms.size());
    if (!have_term && R.tail != TailKind::zero) break;
    for (size_t alpha = 0; alpha < eng.cov.simples.size(); ++alpha) {
      TheoremRow row;
      row.alpha = alpha;
      row.degree = i;
      if (have_term) {
        const RightModule<Scalar>& E = R.terms[static_cast<size_t>(i)];
        const RightModule<Scalar>& Z = R.syzygies[static_cast<size_t>(i)];
        row.hom_term = E.dim() == 0 ? 0
                                    : static_cast<Index>(
                                          hom_space(eng.cov.simples[alpha], E)
                                              .size());
        row.hom_syzygy =
            Z.dim() == 0
                ? 0
                : static_cast<Index>(
                      hom_space(eng.cov.simples[alpha], Z).size());
        row.mu_multiplicity = R.multiplicity[static_cast<size_t>(i)][alpha];
        row.mu_hom = bass_number(eng, R, alpha, i);
      }
      row.ext_dim = ext_dimension(eng, alpha, M, i);
      row.match = row.mu_hom == row.ext_dim &&
                  row.mu_multiplicity == row.mu_hom &&
                  row.hom_syzygy == row.hom_term;
      rep.all_match = rep.all_match && row.match;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace atomcalc
