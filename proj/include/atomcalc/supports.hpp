// Atom supports and the correspondence between subsets of the spectrum and
// resolution-stable module classes.
//
// The associated atoms of M are the classes of its simple submodules.  The
// small atom support collects every class whose multiplicity is nonzero
// somewhere in the minimal injective resolution; it is complete only when
// the resolution was certified (zero tail or a full period scanned).  A
// subset of the spectrum cuts out the class of modules whose small support
// it contains, and at this scale the verifier below checks exhaustively
// that distinct subsets cut out distinct classes, with the indecomposable
// injectives as separating witnesses.

#pragma once

#include <atomcalc/atoms.hpp>

#include <utility>
#include <vector>

namespace atomcalc {

// A subset of the atom spectrum.  `complete` records whether the
// computation that produced it covered every degree it needed; socle data
// is always complete, truncated resolutions are not.
struct AtomSet {
  std::vector<bool> member;
  bool complete = true;

  explicit AtomSet(size_t n = 0, bool all = false)
      : member(n, all) {}

  size_t size() const { return member.size(); }
  bool contains(size_t i) const { return member.at(i); }
  void add(size_t i) { member.at(i) = true; }
  size_t count() const {
    size_t c = 0;
    for (bool b : member) c += b ? 1 : 0;
    return c;
  }
  bool subset_of(const AtomSet& other) const {
    for (size_t i = 0; i < member.size(); ++i)
      if (member[i] && !other.member.at(i)) return false;
    return true;
  }
  friend AtomSet set_union(const AtomSet& a, const AtomSet& b) {
    AtomSet u(a.member.size());
    u.complete = a.complete && b.complete;
    for (size_t i = 0; i < u.member.size(); ++i)
      u.member[i] = a.member[i] || b.member.at(i);
    return u;
  }
  friend bool operator==(const AtomSet& a, const AtomSet& b) {
    return a.member == b.member;
  }
};

// Classes of the simple submodules of M.
template <typename Scalar>
AtomSet associated_atoms(const RightModule<Scalar>& M,
                         const Engine<Scalar>& eng) {
  AtomSet out(eng.cov.simples.size());
  if (M.dim() == 0) return out;
  for (size_t i = 0; i < eng.cov.simples.size(); ++i)
    if (!hom_space(eng.cov.simples[i], M).empty()) out.add(i);
  return out;
}

// Multiplicity of each simple among the composition factors of M, read off
// the radical filtration layer by layer.  This is unrelated to the small
// support: a class can appear here and nowhere in the resolution, or in the
// resolution without ever being a composition factor.
template <typename Scalar>
std::vector<Index> composition_multiset(const RightModule<Scalar>& M,
                                        const Engine<Scalar>& eng) {
  std::vector<Index> counts(eng.cov.simples.size(), 0);
  RightModule<Scalar> cur = M;
  while (cur.dim() > 0) {
    Subspace<Scalar> radpart = module_radical_part(cur, eng.cov.rad);
    auto [top, pi] = quotient_by(cur, radpart);
    for (const auto& [i, chunk] : detail::semisimple_decomposition(
             top, eng.cov.simples))
      ++counts[i];
    if (radpart.dim() == cur.dim())
      throw std::logic_error("radical filtration does not descend");
    cur = restrict_to(cur, radpart).first;
  }
  return counts;
}

// Classes with a nonzero multiplicity somewhere in the minimal injective
// resolution of M: the small atom support.  The scan stops at `bound`
// unless the tail was certified earlier; a certified periodic tail covers a
// full period, so the union over the computed window is already the whole
// support.
template <typename Scalar>
AtomSet small_atom_support(const RightModule<Scalar>& M,
                           const Engine<Scalar>& eng, Index bound = 6) {
  AtomSet out(eng.cov.simples.size());
  Resolution<Scalar> R = minimal_injective_resolution(M, eng, bound);
  out.complete = R.tail != TailKind::truncated;
  for (size_t t = 0; t < R.multiplicity.size(); ++t)
    for (size_t i = 0; i < R.multiplicity[t].size(); ++i)
      if (R.multiplicity[t][i] > 0) out.add(i);
  return out;
}

enum class Membership { in, out, unknown };

// Membership of M in the module class carried by the subset Phi.  A
// partial support that already escapes Phi settles the question; a partial
// support inside Phi does not.
template <typename Scalar>
Membership estable_membership(const RightModule<Scalar>& M, const AtomSet& phi,
                              const Engine<Scalar>& eng, Index bound = 6) {
  AtomSet supp = small_atom_support(M, eng, bound);
  if (!supp.subset_of(phi)) return Membership::out;
  return supp.complete ? Membership::in : Membership::unknown;
}

struct ClassificationReport {
  bool ok = true;
  size_t subsets_checked = 0;
  size_t sums_checked = 0;
};

// The subset-to-class correspondence, checked over every subset Phi of the
// spectrum.  Each indecomposable injective is its own resolution, so its
// support is exactly its class; the family of injectives indexed by Phi
// then witnesses that the class cut out by Phi has support exactly Phi,
// and that distinct subsets cut out distinct classes.  Supports add over
// direct sums, which closes membership under finite sums and summands;
// that additivity is checked on a corpus of simples and injectives.
template <typename Scalar>
ClassificationReport verify_classification(const Engine<Scalar>& eng,
                                           Index bound = 6) {
  ClassificationReport rep;
  size_t s = eng.cov.simples.size();
  if (s > 20) throw BudgetExceeded("spectrum too large for subset sweep");

  std::vector<AtomSet> hull_supp;
  for (size_t i = 0; i < s; ++i) {
    AtomSet supp = small_atom_support(eng.inj_of_simple[i], eng, bound);
    AtomSet expect(s);
    expect.add(i);
    rep.ok = rep.ok && supp.complete && supp == expect;
    hull_supp.push_back(std::move(supp));
  }

  for (size_t mask = 0; mask < (size_t{1} << s); ++mask) {
    AtomSet phi(s);
    AtomSet recovered(s);
    for (size_t i = 0; i < s; ++i)
      if (mask & (size_t{1} << i)) {
        phi.add(i);
        recovered = set_union(recovered, hull_supp[i]);
      }
    bool ok = recovered == phi;
    // The injectives separate: E_i lies in the class of phi exactly when
    // phi contains its class.
    for (size_t i = 0; i < s; ++i) {
      Membership m = estable_membership(eng.inj_of_simple[i], phi, eng, bound);
      ok = ok && m == (phi.contains(i) ? Membership::in : Membership::out);
    }
    rep.ok = rep.ok && ok;
    ++rep.subsets_checked;
  }

  std::vector<RightModule<Scalar>> corpus;
  for (const auto& S : eng.cov.simples) corpus.push_back(S);
  for (const auto& E : eng.inj_of_simple) corpus.push_back(E);
  std::vector<AtomSet> csupp;
  for (const auto& M : corpus) csupp.push_back(small_atom_support(M, eng, bound));
  for (size_t a = 0; a < corpus.size(); ++a)
    for (size_t b = a; b < corpus.size(); ++b) {
      if (!csupp[a].complete || !csupp[b].complete) continue;
      AtomSet ssum = small_atom_support(direct_sum(corpus[a], corpus[b]), eng,
                                        bound);
      if (!ssum.complete) continue;
      rep.ok = rep.ok && ssum == set_union(csupp[a], csupp[b]);
      ++rep.sums_checked;
    }
  return rep;
}

// A short exact sequence with verified exactness.
template <typename Scalar>
struct ShortExact {
  const RightModule<Scalar>* sub = nullptr;
  const RightModule<Scalar>* mid = nullptr;
  const RightModule<Scalar>* quot = nullptr;
  MatrixX<Scalar> incl;  // sub -> mid
  MatrixX<Scalar> proj;  // mid -> quot
};

template <typename Scalar>
void validate_ses(const ShortExact<Scalar>& s) {
  ModuleMap<Scalar> i{s.sub, s.mid, s.incl};
  ModuleMap<Scalar> p{s.mid, s.quot, s.proj};
  if (!i.is_intertwiner() || !p.is_intertwiner())
    throw ModelError("sequence maps are not module maps");
  if (rank(s.incl) != s.sub->dim())
    throw ModelError("left map is not injective");
  if (p.image().dim() != s.quot->dim())
    throw ModelError("right map is not surjective");
  if (!(i.image() == p.kernel()))
    throw ModelError("sequence is not exact in the middle");
}

struct ClosureReport {
  // Each small support sits inside the union of the other two; the long
  // exact sequence of derived homs makes any escape impossible.
  bool sub_in_union = false;
  bool mid_in_union = false;
  bool quot_in_union = false;
  bool ass_sub_in_mid = false;    // associated atoms of L inside those of M
  bool ass_mid_in_union = false;  // associated atoms of M inside union of
                                  // those of L and N
  bool complete = true;           // false: some support truncated, the three
                                  // support bits were skipped
  bool all() const {
    return complete && sub_in_union && mid_in_union && quot_in_union &&
           ass_sub_in_mid && ass_mid_in_union;
  }
};

// The support inclusions carried by a short exact sequence 0 -> L -> M ->
// N -> 0.  Note the subtlety: asupp L need not sit inside asupp M (the
// triangular algebra separates them), only inside the union with asupp N.
template <typename Scalar>
ClosureReport verify_closure(const ShortExact<Scalar>& s,
                             const Engine<Scalar>& eng, Index bound = 6) {
  validate_ses(s);
  ClosureReport rep;
  AtomSet aL = small_atom_support(*s.sub, eng, bound);
  AtomSet aM = small_atom_support(*s.mid, eng, bound);
  AtomSet aN = small_atom_support(*s.quot, eng, bound);
  if (aL.complete && aM.complete && aN.complete) {
    rep.sub_in_union = aL.subset_of(set_union(aM, aN));
    rep.mid_in_union = aM.subset_of(set_union(aL, aN));
    rep.quot_in_union = aN.subset_of(set_union(aL, aM));
  } else {
    rep.complete = false;
  }
  AtomSet sL = associated_atoms(*s.sub, eng);
  AtomSet sM = associated_atoms(*s.mid, eng);
  AtomSet sN = associated_atoms(*s.quot, eng);
  rep.ass_sub_in_mid = sL.subset_of(sM);
  rep.ass_mid_in_union = sM.subset_of(set_union(sL, sN));
  return rep;
}

// The canonical sequence 0 -> U -> M -> M/U -> 0 for a submodule U.
template <typename Scalar>
struct OwnedShortExact {
  RightModule<Scalar> sub, quot;
  MatrixX<Scalar> incl, proj;
  ShortExact<Scalar> view(const RightModule<Scalar>& mid) const {
    return ShortExact<Scalar>{&sub, &mid, &quot, incl, proj};
  }
};

template <typename Scalar>
OwnedShortExact<Scalar> sequence_from_submodule(const RightModule<Scalar>& M,
                                                const Subspace<Scalar>& U) {
  OwnedShortExact<Scalar> s;
  auto r = restrict_to(M, U);
  s.sub = std::move(r.first);
  s.incl = r.second;
  auto q = quotient_by(M, U);
  s.quot = std::move(q.first);
  s.proj = q.second;
  return s;
}

}  // namespace atomcalc
