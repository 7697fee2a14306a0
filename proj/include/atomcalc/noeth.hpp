// Module-finite algebras over artinian commutative base rings: prime
// ideals, localization at base primes, and the transfer of multiplicities
// through localization.
//
// The base ring is a finite product of local commutative algebras, so
// localization at a base prime is the projection onto the corresponding
// central block.  That keeps every construction exact and
// finite-dimensional while still separating the two sides of the transfer:
// resolution multiplicities over the big algebra on one side, extension
// groups of a simple over a single block on the other.

#pragma once

#include <atomcalc/supports.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace atomcalc {

// A finite product of local commutative algebras over one field, each
// carried with its maximal ideal.
template <typename Scalar>
struct BaseRing {
  std::vector<Algebra<Scalar>> factors;
  std::vector<Subspace<Scalar>> max_ideals;  // the radical of each factor
  std::vector<Index> residue_dims;           // dim of factor mod its ideal

  size_t count() const { return factors.size(); }
};

template <typename Scalar>
BaseRing<Scalar> make_base_ring(std::vector<Algebra<Scalar>> factors,
                                std::uint64_t budget = 1000000) {
  if (factors.empty()) throw ModelError("base ring needs at least one factor");
  BaseRing<Scalar> R;
  for (const auto& F : factors) {
    F.validate();
    if (F.field() != factors.front().field())
      throw ModelError("base ring factors live over different fields");
    for (Index i = 0; i < F.dim(); ++i)
      for (Index j = i + 1; j < F.dim(); ++j)
        if (!matrix_equal<Scalar>(F.mul(F.basis_vector(i), F.basis_vector(j)),
                                  F.mul(F.basis_vector(j), F.basis_vector(i))))
          throw ModelError("base ring factor is not commutative");
    Subspace<Scalar> rad = radical(F);
    auto Q = quotient_algebra(F, rad);
    if (simple_modules(Q.alg, budget).size() != 1)
      throw ModelError("base ring factor is not local");
    R.max_ideals.push_back(std::move(rad));
    R.residue_dims.push_back(Q.alg.dim());
  }
  R.factors = std::move(factors);
  return R;
}

// An algebra together with a central embedding of the base ring.  The
// factor units land on orthogonal central idempotents that decompose the
// algebra into blocks.
template <typename Scalar>
struct NoethAlgebra {
  std::shared_ptr<Algebra<Scalar>> lambda;
  BaseRing<Scalar> base;
  // central_map[i] is (dim of factor i) x (dim of lambda): row t is the
  // image of the t-th basis element of the factor.
  std::vector<MatrixX<Scalar>> central_map;
  std::vector<RowVecX<Scalar>> idem;  // images of the factor units
};

template <typename Scalar>
NoethAlgebra<Scalar> make_noeth_algebra(
    std::shared_ptr<Algebra<Scalar>> lambda, BaseRing<Scalar> base,
    std::vector<MatrixX<Scalar>> central_map) {
  const Algebra<Scalar>& L = *lambda;
  L.validate();
  if (central_map.size() != base.count())
    throw ModelError("central map count does not match the factor count");

  NoethAlgebra<Scalar> out;
  for (size_t i = 0; i < base.count(); ++i) {
    const Algebra<Scalar>& F = base.factors[i];
    const MatrixX<Scalar>& phi = central_map[i];
    if (phi.rows() != F.dim() || phi.cols() != L.dim())
      throw ModelError("central map has the wrong shape");
    // Centrality of every image.
    for (Index t = 0; t < F.dim(); ++t) {
      RowVecX<Scalar> v = phi.row(t);
      for (Index j = 0; j < L.dim(); ++j)
        if (!matrix_equal<Scalar>(L.mul(v, L.basis_vector(j)),
                                  L.mul(L.basis_vector(j), v)))
          throw ModelError("base ring image is not central");
    }
    // The map is multiplicative on the factor.
    for (Index s = 0; s < F.dim(); ++s)
      for (Index t = 0; t < F.dim(); ++t) {
        RowVecX<Scalar> lhs = L.mul(phi.row(s), phi.row(t));
        RowVecX<Scalar> rhs =
            F.mul(F.basis_vector(s), F.basis_vector(t)) * phi;
        if (!matrix_equal<Scalar>(lhs, rhs))
          throw ModelError("central map is not multiplicative");
      }
    out.idem.push_back(F.unit() * phi);
  }
  // Distinct factors multiply to zero, the units are orthogonal
  // idempotents, and they sum to the identity.
  RowVecX<Scalar> total = zeros<Scalar>(1, L.dim(), L.field());
  for (size_t i = 0; i < base.count(); ++i) {
    for (size_t j = 0; j < base.count(); ++j) {
      RowVecX<Scalar> prod = L.mul(out.idem[i], out.idem[j]);
      RowVecX<Scalar> want = zeros<Scalar>(1, L.dim(), L.field());
      if (i == j) want = out.idem[i];
      if (!matrix_equal<Scalar>(prod, want))
        throw ModelError("factor idempotents are not orthogonal idempotents");
      if (i != j) {
        for (Index s = 0; s < base.factors[i].dim(); ++s)
          for (Index t = 0; t < base.factors[j].dim(); ++t)
            if (!matrix_is_zero<Scalar>(L.mul(central_map[i].row(s),
                                              central_map[j].row(t))))
              throw ModelError("distinct base factors do not annihilate");
      }
    }
    total += out.idem[i];
  }
  if (!matrix_equal<Scalar>(total, L.unit()))
    throw ModelError("factor idempotents do not sum to the identity");

  out.lambda = std::move(lambda);
  out.base = std::move(base);
  out.central_map = std::move(central_map);
  return out;
}

// A proper two-sided ideal whose quotient is a simple algebra, realized as
// the annihilator of a simple module.  `base_prime` is the unique factor
// whose idempotent stays outside.
template <typename Scalar>
struct PrimeIdeal {
  Subspace<Scalar> ideal;
  size_t simple_index = 0;
  size_t base_prime = 0;
};

// Certificate: proper, two-sided, and the quotient algebra is semisimple
// with a single class of simples.  For a finite-dimensional algebra that
// pins exactly the ideals P where a product a*(algebra)*b cannot fall into
// P without a or b doing so.
template <typename Scalar>
bool is_prime_ideal(const Algebra<Scalar>& A, const Subspace<Scalar>& P,
                    std::uint64_t budget = 1000000) {
  if (P.dim() >= A.dim()) return false;
  for (Index r = 0; r < P.dim(); ++r) {
    RowVecX<Scalar> b = P.basis().row(r);
    for (Index j = 0; j < A.dim(); ++j) {
      if (!P.contains(A.mul(b, A.basis_vector(j)))) return false;
      if (!P.contains(A.mul(A.basis_vector(j), b))) return false;
    }
  }
  auto Q = quotient_algebra(A, P);
  if (radical(Q.alg).dim() != 0) return false;
  return simple_modules(Q.alg, budget).size() == 1;
}

// Exhaustive ground truth for primality of the zero ideal: every pair of
// nonzero elements is linked through the algebra.  Finite fields only.
template <typename Scalar>
bool prime_pair_oracle(const Algebra<Scalar>& Q, std::uint64_t budget) {
  const FieldSpec& f = Q.field();
  if (f.is_rational())
    throw BudgetExceeded("pair enumeration needs a finite ground field");
  if (Q.dim() == 0) return false;
  double pairs = 1;
  for (Index i = 0; i < 2 * Q.dim(); ++i) pairs *= static_cast<double>(f.p);
  if (pairs > static_cast<double>(budget))
    throw BudgetExceeded("pair enumeration needs " + std::to_string(pairs) +
                         " candidates, budget is " + std::to_string(budget));
  bool found_dead_pair = enumerate_vectors<Scalar>(
      Q.dim(), f, budget, [&](const RowVecX<Scalar>& a) {
        if (matrix_is_zero<Scalar>(a)) return false;
        return enumerate_vectors<Scalar>(
            Q.dim(), f, budget, [&](const RowVecX<Scalar>& b) {
              if (matrix_is_zero<Scalar>(b)) return false;
              for (Index j = 0; j < Q.dim(); ++j) {
                RowVecX<Scalar> prod =
                    Q.mul(Q.mul(a, Q.basis_vector(j)), b);
                if (!matrix_is_zero<Scalar>(prod)) return false;
              }
              return true;  // a * Q * b = 0 with a, b nonzero
            });
      });
  return !found_dead_pair;
}

// All prime ideals, one per simple class: the annihilators.  At this
// (artinian) scale every prime is maximal, so the list is complete.
template <typename Scalar>
std::vector<PrimeIdeal<Scalar>> prime_ideals(const NoethAlgebra<Scalar>& NA,
                                             const Engine<Scalar>& eng) {
  const Algebra<Scalar>& L = *NA.lambda;
  std::vector<PrimeIdeal<Scalar>> out;
  for (size_t i = 0; i < eng.cov.simples.size(); ++i) {
    PrimeIdeal<Scalar> P;
    P.ideal = annihilator(eng.cov.simples[i]);
    P.simple_index = i;
    if (!is_prime_ideal(L, P.ideal, eng.budget))
      throw std::logic_error("annihilator of a simple fails the prime certificate");
    // Exactly one factor idempotent survives; it names the base prime.
    std::optional<size_t> alive;
    for (size_t p = 0; p < NA.idem.size(); ++p) {
      if (!P.ideal.contains(NA.idem[p])) {
        if (alive) throw std::logic_error("two factor idempotents survive a prime");
        alive = p;
      }
    }
    if (!alive) throw std::logic_error("every factor idempotent died in a prime");
    P.base_prime = *alive;
    out.push_back(std::move(P));
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i].ideal == out[j].ideal)
        throw std::logic_error("two simple classes share an annihilator");
  return out;
}

// The block cut out by one factor idempotent, as an algebra of its own,
// together with the projection homomorphism onto it.
template <typename Scalar>
struct Localization {
  std::shared_ptr<Algebra<Scalar>> alg;
  Subspace<Scalar> carrier;  // the block inside the big algebra
  RowVecX<Scalar> idem;      // its unit, as a big-algebra element
  MatrixX<Scalar> proj;      // big dim x block dim, x -> coordinates of x*idem
  size_t factor = 0;
};

template <typename Scalar>
Localization<Scalar> localize(const NoethAlgebra<Scalar>& NA, size_t p) {
  const Algebra<Scalar>& L = *NA.lambda;
  const FieldSpec& f = L.field();
  Localization<Scalar> out;
  out.factor = p;
  out.idem = NA.idem.at(p);

  MatrixX<Scalar> re = zeros<Scalar>(L.dim(), L.dim(), f);
  for (Index c = 0; c < L.dim(); ++c)
    re.row(c) = L.mul(L.basis_vector(c), out.idem);
  out.carrier = Subspace<Scalar>::row_space(re, f);

  Index q = out.carrier.dim();
  std::vector<MatrixX<Scalar>> rm;
  rm.reserve(static_cast<size_t>(q));
  for (Index j = 0; j < q; ++j) {
    MatrixX<Scalar> m = zeros<Scalar>(q, q, f);
    for (Index i = 0; i < q; ++i)
      m.row(i) = out.carrier.coordinates(
          L.mul(out.carrier.basis().row(i), out.carrier.basis().row(j)));
    rm.push_back(std::move(m));
  }
  out.alg = std::make_shared<Algebra<Scalar>>(
      f, std::move(rm), out.carrier.coordinates(out.idem));
  out.alg->validate();

  out.proj = zeros<Scalar>(L.dim(), q, f);
  for (Index c = 0; c < L.dim(); ++c)
    out.proj.row(c) = out.carrier.coordinates(re.row(c));
  // The projection is multiplicative: the idempotent is central.
  for (Index i = 0; i < L.dim(); ++i)
    for (Index j = 0; j < L.dim(); ++j) {
      RowVecX<Scalar> lhs =
          L.mul(L.basis_vector(i), L.basis_vector(j)) * out.proj;
      RowVecX<Scalar> rhs = out.alg->mul(RowVecX<Scalar>(out.proj.row(i)),
                                         RowVecX<Scalar>(out.proj.row(j)));
      if (!matrix_equal<Scalar>(lhs, rhs))
        throw std::logic_error("block projection is not multiplicative");
    }
  return out;
}

// M restricted to a block: the image of the idempotent's action, as a
// module over the block algebra, plus the canonical map onto it.
template <typename Scalar>
std::pair<RightModule<Scalar>, MatrixX<Scalar>> localize_module(
    const RightModule<Scalar>& M, const Localization<Scalar>& loc) {
  const FieldSpec& f = M.field();
  MatrixX<Scalar> T = M.act(loc.idem);
  Subspace<Scalar> U = Subspace<Scalar>::row_space(T, f);
  Index r = U.dim();
  std::vector<MatrixX<Scalar>> act;
  act.reserve(static_cast<size_t>(loc.alg->dim()));
  for (Index j = 0; j < loc.alg->dim(); ++j) {
    MatrixX<Scalar> rho = M.act(RowVecX<Scalar>(loc.carrier.basis().row(j)));
    MatrixX<Scalar> aj = zeros<Scalar>(r, r, f);
    for (Index i = 0; i < r; ++i)
      aj.row(i) = U.coordinates(RowVecX<Scalar>(U.basis().row(i)) * rho);
    act.push_back(std::move(aj));
  }
  RightModule<Scalar> Mp(loc.alg.get(), std::move(act));
  Mp.validate();
  MatrixX<Scalar> can = zeros<Scalar>(M.dim(), r, f);
  for (Index c = 0; c < M.dim(); ++c)
    can.row(c) = U.coordinates(T.row(c));
  return {std::move(Mp), std::move(can)};
}

// A block together with its own resolution engine.
template <typename Scalar>
struct LocalizedBlock {
  Localization<Scalar> loc;
  Engine<Scalar> eng;
};

template <typename Scalar>
std::vector<LocalizedBlock<Scalar>> localize_all(
    const NoethAlgebra<Scalar>& NA, std::uint64_t budget = 1000000,
    std::uint64_t seed = 0) {
  std::vector<LocalizedBlock<Scalar>> out;
  Index total = 0;
  for (size_t p = 0; p < NA.base.count(); ++p) {
    LocalizedBlock<Scalar> blk;
    blk.loc = localize(NA, p);
    blk.eng = make_engine(*blk.loc.alg, budget, seed);
    total += blk.loc.carrier.dim();
    out.push_back(std::move(blk));
  }
  if (total != NA.lambda->dim())
    throw std::logic_error("blocks do not exhaust the algebra");
  return out;
}

// The simple module over the block that a prime ideal names, found by
// pushing the attached simple through the localization.  The returned
// module lives over blocks[P.base_prime].
template <typename Scalar>
struct BlockSimple {
  size_t factor = 0;        // which block
  size_t block_index = 0;   // which simple class of that block
  RightModule<Scalar> module;
  Index end_dim = 0;        // dim of its endomorphism division algebra
};

template <typename Scalar>
BlockSimple<Scalar> simple_of_prime(const PrimeIdeal<Scalar>& P,
                                    const Engine<Scalar>& eng,
                                    const std::vector<LocalizedBlock<Scalar>>& blocks) {
  const LocalizedBlock<Scalar>& blk = blocks.at(P.base_prime);
  const RightModule<Scalar>& S = eng.cov.simples[P.simple_index];
  auto [Sp, can] = localize_module(S, blk.loc);
  // The surviving idempotent acts as the identity on the simple, so
  // nothing is lost in the passage.
  if (Sp.dim() != S.dim() || rank(can) != S.dim())
    throw std::logic_error("simple module collapses in its own block");
  std::optional<size_t> match;
  for (size_t j = 0; j < blk.eng.cov.simples.size(); ++j)
    if (is_isomorphic(Sp, blk.eng.cov.simples[j], blk.eng.budget,
                      blk.eng.seed)
            .isomorphic) {
      match = j;
      break;
    }
  if (!match)
    throw std::logic_error("localized simple matches no block simple");
  BlockSimple<Scalar> out;
  out.factor = P.base_prime;
  out.block_index = *match;
  out.end_dim = blk.eng.end_dim[*match];
  out.module = std::move(Sp);
  return out;
}

// The elements of the indecomposable injective killed by the prime: they
// form one copy of the block simple, sitting as the socle.
template <typename Scalar>
bool check_killed_part_is_simple(const PrimeIdeal<Scalar>& P,
                                 const Engine<Scalar>& eng,
                                 const std::vector<LocalizedBlock<Scalar>>& blocks) {
  const FieldSpec& f = eng.alg->field();
  const RightModule<Scalar>& I = eng.inj_of_simple[P.simple_index];
  const LocalizedBlock<Scalar>& blk = blocks.at(P.base_prime);

  MatrixX<Scalar> cols = zeros<Scalar>(I.dim(), 0, f);
  for (Index r = 0; r < P.ideal.dim(); ++r)
    cols = hstack<Scalar>(cols, I.act(RowVecX<Scalar>(P.ideal.basis().row(r))));
  Subspace<Scalar> N = P.ideal.dim() == 0
                           ? Subspace<Scalar>::row_space(eye<Scalar>(I.dim(), f), f)
                           : left_kernel(cols, f);
  if (N.dim() != eng.cov.simples[P.simple_index].dim()) return false;

  // The block idempotent fixes the killed part pointwise.
  MatrixX<Scalar> T = I.act(blk.loc.idem);
  for (Index r = 0; r < N.dim(); ++r) {
    RowVecX<Scalar> v = N.basis().row(r);
    if (!matrix_equal<Scalar>(RowVecX<Scalar>(v * T), v)) return false;
  }

  // As a block module it is the simple named by the prime.
  Index r = N.dim();
  std::vector<MatrixX<Scalar>> act;
  for (Index j = 0; j < blk.loc.alg->dim(); ++j) {
    MatrixX<Scalar> rho = I.act(RowVecX<Scalar>(blk.loc.carrier.basis().row(j)));
    MatrixX<Scalar> aj = zeros<Scalar>(r, r, f);
    for (Index i = 0; i < r; ++i)
      aj.row(i) = N.coordinates(RowVecX<Scalar>(N.basis().row(i)) * rho);
    act.push_back(std::move(aj));
  }
  RightModule<Scalar> Nblk(blk.loc.alg.get(), std::move(act));
  Nblk.validate();
  auto sp = simple_of_prime(P, eng, blocks);
  return is_isomorphic(Nblk, sp.module, eng.budget, eng.seed).isomorphic;
}

// One row of the localization transfer: the resolution multiplicity over
// the big algebra against the extension dimension over the block.
struct TransferRow {
  size_t prime = 0;
  Index degree = 0;
  Index mu = 0;        // multiplicity in the minimal injective resolution
  Index ext_dim = 0;   // extension dimension over the block
  bool match = false;
};

template <typename Scalar>
TransferRow bass_via_localization(
    const PrimeIdeal<Scalar>& P, const RightModule<Scalar>& M, Index i,
    const Engine<Scalar>& eng, const std::vector<LocalizedBlock<Scalar>>& blocks) {
  TransferRow row;
  row.prime = P.simple_index;
  row.degree = i;
  Resolution<Scalar> R = minimal_injective_resolution(M, eng, i);
  row.mu = bass_number(eng, R, P.simple_index, i);

  const LocalizedBlock<Scalar>& blk = blocks.at(P.base_prime);
  auto sp = simple_of_prime(P, eng, blocks);
  auto [Mp, can] = localize_module(M, blk.loc);
  row.ext_dim = ext_dimension(blk.eng, sp.block_index, Mp, i);
  row.match = row.mu == row.ext_dim;
  return row;
}

// Associated primes through embeddings: the prime quotient embeds into a
// finite power of M exactly when the attached simple maps into M.  The
// joint kernel over a hom basis is the smallest kernel any tuple of homs
// can reach, and a greedy pass realizes it with at most dim(quotient)
// maps.
struct EmbeddingCheck {
  bool associated = false;  // the attached simple maps nontrivially into M
  bool embeds = false;      // the prime quotient embeds into a power of M
  Index copies = 0;         // how many copies of M the embedding needed
  bool agree = false;
};

template <typename Scalar>
EmbeddingCheck associated_prime_embedding(const PrimeIdeal<Scalar>& P,
                                          const RightModule<Scalar>& M,
                                          const Engine<Scalar>& eng) {
  const FieldSpec& f = eng.alg->field();
  EmbeddingCheck out;
  out.associated =
      M.dim() > 0 && !hom_space(eng.cov.simples[P.simple_index], M).empty();

  RightModule<Scalar> reg = eng.alg->regular_module();
  auto [LP, piq] = quotient_by(reg, P.ideal);
  Index d = LP.dim();
  auto homs = hom_space(LP, M);
  Subspace<Scalar> K = Subspace<Scalar>::row_space(eye<Scalar>(d, f), f);
  for (const auto& h : homs) {
    if (K.dim() == 0) break;
    Subspace<Scalar> next = intersect(K, left_kernel(h, f));
    if (next.dim() < K.dim()) {
      K = std::move(next);
      ++out.copies;
    }
  }
  out.embeds = d > 0 && K.dim() == 0;
  if (out.embeds && out.copies > d)
    throw std::logic_error("embedding needed more copies than the dimension");
  out.agree = out.associated == out.embeds;
  return out;
}

// The algebra of 2x2 lower triangular matrices over the base ring, with
// the base embedded diagonally.  Basis order: all E11*u, then all E21*u,
// then all E22*u, with u running through the concatenated factor bases.
template <typename Scalar>
NoethAlgebra<Scalar> triangular_algebra(const BaseRing<Scalar>& R,
                                        std::uint64_t budget = 1000000) {
  const FieldSpec& f = R.factors.front().field();
  std::vector<Index> offset;
  Index r = 0;
  for (const auto& F : R.factors) {
    offset.push_back(r);
    r += F.dim();
  }
  Index n = 3 * r;

  // Product of two flat base elements; zero across distinct factors.
  auto flat_mul = [&](Index s, Index t) {
    RowVecX<Scalar> out = zeros<Scalar>(1, r, f);
    for (size_t i = 0; i < R.factors.size(); ++i) {
      Index lo = offset[i], hi = lo + R.factors[i].dim();
      if (s >= lo && s < hi && t >= lo && t < hi) {
        RowVecX<Scalar> prod = R.factors[i].mul(
            R.factors[i].basis_vector(s - lo), R.factors[i].basis_vector(t - lo));
        out.segment(lo, R.factors[i].dim()) = prod;
      }
    }
    return out;
  };

  // Matrix-unit composition for the lower-triangular basis {E11, E21, E22}.
  auto unit_prod = [](Index a, Index b) -> std::optional<Index> {
    static constexpr int table[3][3] = {{0, -1, -1},   // E11 * ...
                                        {1, -1, -1},   // E21 * ...
                                        {-1, 1, 2}};   // E22 * ...
    int v = table[a][b];
    return v < 0 ? std::nullopt : std::optional<Index>(v);
  };

  std::vector<MatrixX<Scalar>> rm(static_cast<size_t>(n),
                                  zeros<Scalar>(n, n, f));
  for (Index pa = 0; pa < 3; ++pa)
    for (Index s = 0; s < r; ++s)
      for (Index pb = 0; pb < 3; ++pb)
        for (Index t = 0; t < r; ++t) {
          auto pc = unit_prod(pa, pb);
          if (!pc) continue;
          RowVecX<Scalar> coeff = flat_mul(s, t);
          rm[static_cast<size_t>(pb * r + t)].row(pa * r + s).segment(
              *pc * r, r) = coeff;
        }

  RowVecX<Scalar> unit = zeros<Scalar>(1, n, f);
  std::vector<MatrixX<Scalar>> cmap;
  for (size_t i = 0; i < R.factors.size(); ++i) {
    const Algebra<Scalar>& F = R.factors[i];
    MatrixX<Scalar> phi = zeros<Scalar>(F.dim(), n, f);
    for (Index t = 0; t < F.dim(); ++t) {
      phi(t, 0 * r + offset[i] + t) = scalar_from<Scalar>(1, f);
      phi(t, 2 * r + offset[i] + t) = scalar_from<Scalar>(1, f);
    }
    unit += F.unit() * phi;
    cmap.push_back(std::move(phi));
  }

  auto lambda = std::make_shared<Algebra<Scalar>>(f, std::move(rm),
                                                  std::move(unit));
  return make_noeth_algebra(std::move(lambda), R, std::move(cmap));
}

// The module living in the first matrix column: a module V over the named
// base factor, placed so that only the top-left corner acts.  Validation
// checks V against the factor's structure constants through the corner
// products.
template <typename Scalar>
RightModule<Scalar> column_module(const NoethAlgebra<Scalar>& tri,
                                  const RightModule<Scalar>& V,
                                  size_t factor = 0) {
  const FieldSpec& f = tri.lambda->field();
  Index r = tri.lambda->dim() / 3;
  std::vector<MatrixX<Scalar>> act(static_cast<size_t>(tri.lambda->dim()),
                                   zeros<Scalar>(V.dim(), V.dim(), f));
  Index off = 0;
  for (size_t i = 0; i < factor; ++i) off += tri.base.factors[i].dim();
  const Algebra<Scalar>& F = tri.base.factors.at(factor);
  if (V.algebra().dim() != F.dim())
    throw ModelError("column module does not live over the named factor");
  for (Index t = 0; t < F.dim(); ++t)
    act[static_cast<size_t>(0 * r + off + t)] = V.action(t);
  RightModule<Scalar> M(tri.lambda.get(), std::move(act));
  M.validate();
  return M;
}

// Multiplicities of the column module over the triangular algebra against
// the classical multiplicities of V over the local base ring.  The two
// primes are told apart by whether the top-left corner acts on the
// attached simple.
struct ColumnExampleReport {
  Index mu0_corner = 0;  // degree 0 at the corner prime
  Index mu0_other = 0;
  Index mu1_corner = 0;
  Index mu1_other = 0;
  Index base_mu0 = 0;  // classical multiplicities of V over the base
  Index base_mu1 = 0;
  bool transfer_ok = false;  // block pipeline agrees on every entry
  bool ok = false;

  bool equations_hold() const {
    return mu0_corner == base_mu0 && mu0_other == 0 &&
           mu1_corner == base_mu1 && mu1_other == base_mu0;
  }
};

template <typename Scalar>
ColumnExampleReport verify_column_example(const BaseRing<Scalar>& R,
                                          const RightModule<Scalar>& V,
                                          std::uint64_t budget = 1000000,
                                          std::uint64_t seed = 0) {
  if (R.count() != 1)
    throw ModelError("column example expects a local base ring");
  ColumnExampleReport rep;

  NoethAlgebra<Scalar> tri = triangular_algebra(R, budget);
  Engine<Scalar> eng = make_engine(*tri.lambda, budget, seed);
  if (eng.cov.simples.size() != 2)
    throw std::logic_error("triangular algebra over a local base needs two simples");
  RightModule<Scalar> M = column_module(tri, V);

  // The element E11 * 1: it acts as the identity on the corner simple and
  // as zero on the other one.
  Index r = tri.lambda->dim() / 3;
  RowVecX<Scalar> corner = zeros<Scalar>(1, tri.lambda->dim(),
                                         tri.lambda->field());
  corner.segment(0, r) = R.factors[0].unit();
  auto is_corner = [&](size_t i) {
    return !matrix_is_zero<Scalar>(eng.cov.simples[i].act(corner));
  };
  size_t c1 = is_corner(0) ? 0 : 1;
  size_t c2 = 1 - c1;
  if (!is_corner(c1) || is_corner(c2))
    throw std::logic_error("could not tell the two simple classes apart");

  Resolution<Scalar> RM = minimal_injective_resolution(M, eng, 1);
  rep.mu0_corner = bass_number(eng, RM, c1, 0);
  rep.mu0_other = bass_number(eng, RM, c2, 0);
  rep.mu1_corner = bass_number(eng, RM, c1, 1);
  rep.mu1_other = bass_number(eng, RM, c2, 1);

  Engine<Scalar> engR = make_engine(R.factors[0], budget, seed);
  Resolution<Scalar> RV = minimal_injective_resolution(V, engR, 1);
  rep.base_mu0 = bass_number(engR, RV, 0, 0);
  rep.base_mu1 = bass_number(engR, RV, 0, 1);

  // Cross-check every entry through the block pipeline.
  auto blocks = localize_all(tri, budget, seed);
  auto primes = prime_ideals(tri, eng);
  rep.transfer_ok = true;
  for (const auto& P : primes)
    for (Index i = 0; i <= 1; ++i) {
      auto row = bass_via_localization(P, M, i, eng, blocks);
      rep.transfer_ok = rep.transfer_ok && row.match;
    }

  rep.ok = rep.equations_hold() && rep.transfer_ok;
  return rep;
}

// Localization coherence for one algebra: the blocks exhaust it, each
// prime lands in exactly one block, the primes of each block's factor
// biject with the block's simple classes, residue dimensions agree on the
// two sides, the killed part of each injective is the named simple, and
// the projection onto each block splits on injectives.
struct LocalizationReport {
  bool ok = true;
  size_t primes = 0;
  size_t split_checks = 0;
};

namespace detail {

// The projection of M onto a block image is a split epimorphism of
// modules over the big algebra: the idempotent's action is an
// intertwining projector onto a submodule.
template <typename Scalar>
bool block_projection_splits(const RightModule<Scalar>& M,
                             const Localization<Scalar>& loc) {
  MatrixX<Scalar> T = M.act(loc.idem);
  if (!matrix_equal<Scalar>(MatrixX<Scalar>(T * T), T)) return false;
  ModuleMap<Scalar> tm{&M, &M, T};
  if (!tm.is_intertwiner()) return false;
  Subspace<Scalar> U = Subspace<Scalar>::row_space(T, M.field());
  if (!is_submodule(M, U)) return false;
  // Restricted to its image the projection is the identity, so the
  // inclusion of the image is a section.
  for (Index i = 0; i < U.dim(); ++i) {
    RowVecX<Scalar> v = U.basis().row(i);
    if (!matrix_equal<Scalar>(RowVecX<Scalar>(v * T), v)) return false;
  }
  return true;
}

}  // namespace detail

template <typename Scalar>
LocalizationReport verify_localization(const NoethAlgebra<Scalar>& NA,
                                       const Engine<Scalar>& eng) {
  LocalizationReport rep;
  auto blocks = localize_all(NA, eng.budget, eng.seed);
  auto primes = prime_ideals(NA, eng);
  rep.primes = primes.size();

  // Primes with base p biject with the simple classes of block p.
  std::vector<std::vector<bool>> hit(blocks.size());
  for (size_t p = 0; p < blocks.size(); ++p)
    hit[p].assign(blocks[p].eng.cov.simples.size(), false);
  for (const auto& P : primes) {
    auto sp = simple_of_prime(P, eng, blocks);
    if (hit[sp.factor][sp.block_index]) rep.ok = false;  // not injective
    hit[sp.factor][sp.block_index] = true;
    // Residue dimension agrees between the atom upstairs and the
    // endomorphisms of the block simple.
    Atom<Scalar> atom = make_atom(eng, P.simple_index);
    if (atom.residue_dim != sp.end_dim) rep.ok = false;
    auto endo = endomorphism_algebra(sp.module);
    assert_division_algebra(endo.alg, eng.budget);
    if (endo.alg.dim() != sp.end_dim) rep.ok = false;
    if (!check_killed_part_is_simple(P, eng, blocks)) rep.ok = false;
  }
  for (const auto& row : hit)
    for (bool b : row)
      if (!b) rep.ok = false;  // not surjective

  for (const auto& blk : blocks)
    for (const auto& E : eng.inj_of_simple) {
      if (!detail::block_projection_splits(E, blk.loc)) rep.ok = false;
      ++rep.split_checks;
    }
  return rep;
}

}  // namespace atomcalc
