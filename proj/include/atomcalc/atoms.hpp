// The atom layer: atomic objects inside indecomposable injectives, residue
// fields, the submodule lattice at small scale, and monoform certificates.
//
// For a finite-dimensional algebra the spectrum of atoms is indexed by the
// simple modules.  The atomic object attached to a simple S is the joint
// kernel H of the radical of End(E(S)) acting on the hull E(S); its
// endomorphism ring, the endomorphism ring of S, and End(E(S)) modulo its
// radical are all the same division algebra, and that equality is asserted,
// not assumed.

#pragma once

#include <atomcalc/resolutions.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace atomcalc {

template <typename Scalar>
struct Atom {
  size_t index = 0;                   // position among the simples
  RightModule<Scalar> simple;         // S
  RightModule<Scalar> envelope;       // E(S)
  RightModule<Scalar> atomic;         // H, the atomic object
  Subspace<Scalar> atomic_in_envelope;
  Algebra<Scalar> residue;            // End(E(S)) / rad, a division algebra
  Index residue_dim = 0;              // its dimension over the ground field
};

// Certify that a semisimple algebra is a division algebra: its regular
// module must be simple.
template <typename Scalar>
void assert_division_algebra(const Algebra<Scalar>& D, std::uint64_t budget) {
  if (radical(D).dim() != 0)
    throw std::logic_error("residue algebra has a radical");
  auto simples = simple_modules(D, budget);
  if (simples.size() != 1 || simples[0].dim() != D.dim())
    throw std::logic_error("residue algebra is not a division algebra");
}

template <typename Scalar>
Atom<Scalar> make_atom(const Engine<Scalar>& eng, size_t alpha) {
  const FieldSpec& f = eng.alg->field();
  Atom<Scalar> atom;
  atom.index = alpha;
  atom.simple = eng.cov.simples[alpha];
  atom.envelope = eng.inj_of_simple[alpha];
  const RightModule<Scalar>& E = atom.envelope;

  auto endo = endomorphism_algebra(E);
  Subspace<Scalar> radE = radical(endo.alg);

  // H = the joint kernel of every endomorphism in the radical.
  MatrixX<Scalar> cols = zeros<Scalar>(E.dim(), 0, f);
  for (Index r = 0; r < radE.dim(); ++r) {
    MatrixX<Scalar> F = zeros<Scalar>(E.dim(), E.dim(), f);
    for (Index t = 0; t < radE.basis().cols(); ++t)
      F = F + MatrixX<Scalar>(radE.basis()(r, t) *
                              endo.basis[static_cast<size_t>(t)]);
    cols = hstack<Scalar>(cols, F);
  }
  Subspace<Scalar> H = radE.dim() == 0
                           ? Subspace<Scalar>::row_space(eye<Scalar>(E.dim(), f), f)
                           : left_kernel(cols, f);
  if (H.dim() == 0) throw std::logic_error("atomic object is zero");
  if (!is_submodule(E, H))
    throw std::logic_error("atomic object is not a submodule");
  // It contains the socle: radical endomorphisms kill every simple inside E.
  Subspace<Scalar> soc = socle_subspace(E, eng.cov.rad);
  if (!H.contains(soc))
    throw std::logic_error("atomic object misses the socle");
  atom.atomic = restrict_to(E, H).first;
  atom.atomic_in_envelope = H;

  // Residue division algebra, with the three computations of it compared.
  auto Q = quotient_algebra(endo.alg, radE);
  assert_division_algebra(Q.alg, eng.budget);
  Index d_simple = static_cast<Index>(hom_space(atom.simple, atom.simple).size());
  Index d_atomic = static_cast<Index>(hom_space(atom.atomic, atom.atomic).size());
  if (Q.alg.dim() != d_simple || d_simple != d_atomic)
    throw std::logic_error("residue dimensions disagree");
  atom.residue = Q.alg;
  atom.residue_dim = Q.alg.dim();
  return atom;
}

template <typename Scalar>
std::vector<Atom<Scalar>> atom_spectrum(const Engine<Scalar>& eng) {
  std::vector<Atom<Scalar>> out;
  for (size_t i = 0; i < eng.cov.simples.size(); ++i)
    out.push_back(make_atom(eng, i));
  return out;
}

// Every submodule of M, zero and M included, over a finite ground field:
// spin every vector, then close the collected subspaces under sums.
template <typename Scalar>
std::vector<Subspace<Scalar>> enumerate_submodules(const RightModule<Scalar>& M,
                                                   std::uint64_t budget = 1000000) {
  const FieldSpec& f = M.field();
  if (f.is_rational())
    throw BudgetExceeded("submodule enumeration needs a finite ground field");
  std::map<std::string, Subspace<Scalar>> seen;
  auto key = [](const Subspace<Scalar>& s) {
    std::string k = std::to_string(s.dim()) + ":";
    for (Index r = 0; r < s.basis().rows(); ++r)
      for (Index c = 0; c < s.basis().cols(); ++c)
        k += scalar_to_string(s.basis()(r, c)) + ",";
    return k;
  };
  auto add = [&](const Subspace<Scalar>& s) {
    return seen.emplace(key(s), s).second;
  };
  add(Subspace<Scalar>::row_space(zeros<Scalar>(0, M.dim(), f), f));
  enumerate_vectors<Scalar>(M.dim(), f, budget, [&](const RowVecX<Scalar>& v) {
    if (!matrix_is_zero<Scalar>(MatrixX<Scalar>(v)))
      add(submodule_generated(M, MatrixX<Scalar>(v)));
    return false;
  });
  // Close under sums.
  std::uint64_t work = 0;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subspace<Scalar>> current;
    current.reserve(seen.size());
    for (auto& [k, s] : seen) current.push_back(s);
    for (size_t i = 0; i < current.size() && !grew; ++i)
      for (size_t j = i + 1; j < current.size() && !grew; ++j) {
        if (++work > budget)
          throw BudgetExceeded("submodule lattice exceeds the work budget");
        grew = add(sum(current[i], current[j]));
      }
  }
  std::vector<Subspace<Scalar>> out;
  out.reserve(seen.size());
  for (auto& [k, s] : seen) out.push_back(s);
  std::sort(out.begin(), out.end(),
            [](const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
              return a.dim() < b.dim();
            });
  return out;
}

enum class MonoformVerdict { monoform, uniform_only, not_uniform };

// Witnessed verdict: not_uniform carries two nonzero submodules meeting in
// zero; uniform_only carries the quotient witness (U, and a pair of matching
// subobjects of M and M/U of the recorded dimension).
template <typename Scalar>
struct MonoformReport {
  MonoformVerdict verdict = MonoformVerdict::monoform;
  std::optional<std::pair<Subspace<Scalar>, Subspace<Scalar>>> disjoint_pair;
  std::optional<Subspace<Scalar>> quotient_witness;
  Index shared_dim = 0;
};

// Exhaustive monoform test through the whole submodule lattice.  M is
// monoform when no nonzero subobject of M recurs inside a proper quotient.
template <typename Scalar>
MonoformReport<Scalar> is_monoform(const RightModule<Scalar>& M,
                                   std::uint64_t budget = 1000000,
                                   std::uint64_t seed = 0) {
  if (M.dim() == 0) throw ModelError("the zero module has no monoform verdict");
  MonoformReport<Scalar> rep;
  auto subs = enumerate_submodules(M, budget);

  for (size_t i = 0; i < subs.size(); ++i)
    for (size_t j = i + 1; j < subs.size(); ++j) {
      if (subs[i].dim() == 0 || subs[j].dim() == 0) continue;
      if (intersect(subs[i], subs[j]).dim() == 0) {
        rep.verdict = MonoformVerdict::not_uniform;
        rep.disjoint_pair = {subs[i], subs[j]};
        return rep;
      }
    }

  for (const auto& U : subs) {
    if (U.dim() == 0 || U.dim() == M.dim()) continue;
    auto [Q, pi] = quotient_by(M, U);
    auto qsubs = enumerate_submodules(Q, budget);
    for (const auto& V : subs) {
      if (V.dim() == 0) continue;
      auto vmod = restrict_to(M, V).first;
      for (const auto& W : qsubs) {
        if (W.dim() != V.dim()) continue;
        auto wmod = restrict_to(Q, W).first;
        if (is_isomorphic(vmod, wmod, budget, seed).isomorphic) {
          rep.verdict = MonoformVerdict::uniform_only;
          rep.quotient_witness = U;
          rep.shared_dim = V.dim();
          return rep;
        }
      }
    }
  }
  rep.verdict = MonoformVerdict::monoform;
  return rep;
}

// The atom of a uniform (in particular monoform) module: the class of its
// simple socle.
template <typename Scalar>
size_t atom_of(const RightModule<Scalar>& M, const Engine<Scalar>& eng) {
  if (M.dim() == 0) throw ModelError("the zero module has no atom");
  Subspace<Scalar> soc = socle_subspace(M, eng.cov.rad);
  auto socmod = restrict_to(M, soc).first;
  std::optional<size_t> found;
  for (size_t i = 0; i < eng.cov.simples.size(); ++i) {
    if (eng.cov.simples[i].dim() != socmod.dim()) continue;
    if (is_isomorphic(socmod, eng.cov.simples[i], eng.budget, eng.seed)
            .isomorphic) {
      found = i;
      break;
    }
  }
  if (!found)
    throw ModelError("socle is not simple: the module is not uniform");
  return *found;
}

// Exhaustive check for a common nonzero subobject, the ground truth behind
// atom equivalence of monoform modules.
template <typename Scalar>
bool share_nonzero_subobject(const RightModule<Scalar>& M,
                             const RightModule<Scalar>& N,
                             std::uint64_t budget = 1000000,
                             std::uint64_t seed = 0) {
  auto ms = enumerate_submodules(M, budget);
  auto ns = enumerate_submodules(N, budget);
  for (const auto& V : ms) {
    if (V.dim() == 0) continue;
    auto vmod = restrict_to(M, V).first;
    for (const auto& W : ns) {
      if (W.dim() != V.dim()) continue;
      auto wmod = restrict_to(N, W).first;
      if (is_isomorphic(vmod, wmod, budget, seed).isomorphic) return true;
    }
  }
  return false;
}

}  // namespace atomcalc
