#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomcalc/resolutions.hpp>

#include "fixture_algebras.hpp"

using namespace atomcalc;
using namespace atomcalc::testing;

namespace {

template <typename Scalar>
size_t simple_index_at(const Engine<Scalar>& eng, Index j) {
  for (size_t i = 0; i < eng.cov.simples.size(); ++i)
    if (!matrix_is_zero<Scalar>(eng.cov.simples[i].action(j))) return i;
  throw std::logic_error("no simple sees that basis element");
}

}  // namespace

TEST_CASE("indecomposable injectives of the triangular algebra") {
  for (int fc = 0; fc < 2; ++fc) {
    auto run = [&](auto tag, FieldSpec f) {
      using S = decltype(tag);
      auto A = triangular2<S>(f);
      auto eng = make_engine(A);
      size_t i1 = simple_index_at(eng, 0);
      size_t i2 = simple_index_at(eng, 2);
      // E(S_1) is the two-dimensional hull with top S_2; S_2 is injective.
      CHECK(eng.inj_of_simple[i1].dim() == 2);
      CHECK(eng.inj_of_simple[i2].dim() == 1);
      CHECK(eng.end_dim[i1] == 1);
      CHECK(eng.end_dim[i2] == 1);
    };
    if (fc == 0)
      run(Fp{}, FieldSpec{2});
    else
      run(Rational{}, FieldSpec{});
  }
}

TEST_CASE("envelope of the regular module of the triangular algebra") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto eng = make_engine(A);
  size_t i1 = simple_index_at(eng, 0);
  size_t i2 = simple_index_at(eng, 2);
  auto reg = A.regular_module();
  auto env = injective_envelope(reg, eng);
  CHECK(env.total.dim() == 4);  // E(S_1)^2
  CHECK(env.multiplicity[i1] == 2);
  CHECK(env.multiplicity[i2] == 0);
  CHECK(rank(env.embedding) == 3);

  // Envelope of S_1 + S_2 mixes one copy of each injective.
  auto ss = direct_sum(eng.cov.simples[i1], eng.cov.simples[i2]);
  auto env2 = injective_envelope(ss, eng);
  CHECK(env2.total.dim() == 3);
  CHECK(env2.multiplicity[i1] == 1);
  CHECK(env2.multiplicity[i2] == 1);
}

TEST_CASE("finite injective resolutions over the triangular algebra") {
  for (int fc = 0; fc < 2; ++fc) {
    auto run = [&](auto tag, FieldSpec f) {
      using S = decltype(tag);
      auto A = triangular2<S>(f);
      auto eng = make_engine(A);
      size_t i1 = simple_index_at(eng, 0);
      size_t i2 = simple_index_at(eng, 2);

      // 0 -> S_1 -> E(S_1) -> E(S_2) -> 0.
      auto R1 = minimal_injective_resolution(eng.cov.simples[i1], eng, 4);
      REQUIRE(R1.tail == TailKind::zero);
      CHECK(R1.tail_start == 2);
      REQUIRE(R1.terms.size() == 2);
      CHECK(R1.terms[0].dim() == 2);
      CHECK(R1.terms[1].dim() == 1);
      CHECK(bass_number(eng, R1, i1, 0) == 1);
      CHECK(bass_number(eng, R1, i2, 0) == 0);
      CHECK(bass_number(eng, R1, i1, 1) == 0);
      CHECK(bass_number(eng, R1, i2, 1) == 1);
      CHECK(bass_number(eng, R1, i1, 3) == 0);  // beyond the zero tail

      // S_2 is already injective.
      auto R2 = minimal_injective_resolution(eng.cov.simples[i2], eng, 4);
      REQUIRE(R2.tail == TailKind::zero);
      CHECK(R2.tail_start == 1);
      CHECK(R2.terms[0].dim() == 1);

      // The regular module embeds in E(S_1)^2 with cokernel S_2.
      auto reg = A.regular_module();
      auto RA = minimal_injective_resolution(reg, eng, 4);
      REQUIRE(RA.tail == TailKind::zero);
      CHECK(RA.tail_start == 2);
      CHECK(RA.terms[0].dim() == 4);
      CHECK(RA.terms[1].dim() == 1);
      CHECK(bass_number(eng, RA, i1, 0) == 2);
      CHECK(bass_number(eng, RA, i2, 1) == 1);
    };
    if (fc == 0)
      run(Fp{}, FieldSpec{2});
    else
      run(Rational{}, FieldSpec{});
  }
}

TEST_CASE("projective resolutions over the triangular algebra") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto eng = make_engine(A);
  size_t i1 = simple_index_at(eng, 0);
  size_t i2 = simple_index_at(eng, 2);

  // S_1 = e11 A is projective simple.
  auto P1 = minimal_projective_resolution(eng.cov.simples[i1], eng, 4);
  REQUIRE(P1.tail == TailKind::zero);
  CHECK(P1.tail_start == 1);
  CHECK(P1.terms[0].dim() == 1);

  // 0 -> P(S_1) -> P(S_2) -> S_2 -> 0.
  auto P2 = minimal_projective_resolution(eng.cov.simples[i2], eng, 4);
  REQUIRE(P2.tail == TailKind::zero);
  CHECK(P2.tail_start == 2);
  CHECK(P2.terms[0].dim() == 2);
  CHECK(P2.terms[1].dim() == 1);
  CHECK(P2.multiplicity[0][i2] == 1);
  CHECK(P2.multiplicity[1][i1] == 1);
}

TEST_CASE("self-injective local algebras give periodic resolutions") {
  // k[x]/(x^2) over F_2: the simple has hull the regular module, cosyzygy
  // the simple again, so the resolution repeats with period 1.
  auto A = group_c2_f2();
  auto eng = make_engine(A);
  auto& S = eng.cov.simples[0];
  auto R = minimal_injective_resolution(S, eng, 4);
  REQUIRE(R.tail == TailKind::periodic);
  CHECK(R.period_start == 0);
  CHECK(R.period_length == 1);
  REQUIRE(R.terms.size() == 5);
  for (const auto& t : R.terms) CHECK(t.dim() == 2);
  for (Index i = 0; i < 12; ++i) CHECK(bass_number(eng, R, 0, i) == 1);

  // k[x]/(x^3) over F_3: cosyzygies alternate between dimensions 2 and 1,
  // giving period 2.
  auto B = kx_mod_x3<Fp>(FieldSpec{3});
  auto engB = make_engine(B);
  auto RB = minimal_injective_resolution(engB.cov.simples[0], engB, 4);
  REQUIRE(RB.tail == TailKind::periodic);
  CHECK(RB.period_start == 0);
  CHECK(RB.period_length == 2);
  CHECK(RB.syzygies[1].dim() == 2);
  for (Index i = 0; i < 9; ++i) CHECK(bass_number(engB, RB, 0, i) == 1);
}

TEST_CASE("semisimple algebras have length-one resolutions") {
  auto A = f4_over_f2();
  auto eng = make_engine(A);
  CHECK(eng.end_dim[0] == 2);  // End of the simple is the quartic field
  auto R = minimal_injective_resolution(eng.cov.simples[0], eng, 4);
  REQUIRE(R.tail == TailKind::zero);
  CHECK(R.tail_start == 1);
  CHECK(bass_number(eng, R, 0, 0) == 1);  // hom dim 2 over residue dim 2
  CHECK(bass_number(eng, R, 0, 1) == 0);

  auto P = minimal_projective_resolution(eng.cov.simples[0], eng, 4);
  CHECK(P.tail == TailKind::zero);
  CHECK(P.tail_start == 1);
}

TEST_CASE("ext dimensions against hand-counted values") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto eng = make_engine(A);
  size_t i1 = simple_index_at(eng, 0);
  size_t i2 = simple_index_at(eng, 2);
  auto& S1 = eng.cov.simples[i1];
  auto& S2 = eng.cov.simples[i2];

  CHECK(ext_dimension(eng, i1, S1, 0) == 1);
  CHECK(ext_dimension(eng, i2, S1, 0) == 0);
  CHECK(ext_dimension(eng, i2, S1, 1) == 1);  // the nonsplit extension H
  CHECK(ext_dimension(eng, i1, S1, 1) == 0);
  CHECK(ext_dimension(eng, i1, S2, 1) == 0);
  CHECK(ext_dimension(eng, i2, S2, 0) == 1);
  CHECK(ext_dimension(eng, i2, S2, 1) == 0);
  for (Index i = 2; i < 5; ++i) {
    CHECK(ext_dimension(eng, i1, S1, i) == 0);
    CHECK(ext_dimension(eng, i2, S1, i) == 0);
  }

  // Over k[x]/(x^2) every degree contributes one dimension.
  auto B = group_c2_f2();
  auto engB = make_engine(B);
  for (Index i = 0; i < 5; ++i)
    CHECK(ext_dimension(engB, 0, engB.cov.simples[0], i) == 1);
}

TEST_CASE("multiplicity and hom and ext counts agree everywhere") {
  auto check_algebra = [](auto&& A, Index bound) {
    auto eng = make_engine(A);
    std::vector<RightModule<std::decay_t<decltype(A.unit()(0))>>> mods;
    for (auto& S : eng.cov.simples) mods.push_back(S);
    mods.push_back(A.regular_module());
    for (auto& M : mods) {
      auto rep = verify_main_theorem(M, eng, bound);
      CHECK(rep.all_match);
      CHECK(!rep.rows.empty());
    }
  };
  check_algebra(triangular2<Fp>(FieldSpec{2}), 4);
  check_algebra(triangular2<Rational>(FieldSpec{}), 4);
  check_algebra(group_c2_f2(), 4);
  check_algebra(kx_mod_x3<Fp>(FieldSpec{3}), 4);
  check_algebra(f4_over_f2(), 4);
  check_algebra(k_times_k<Rational>(FieldSpec{}), 4);
  check_algebra(kx_mod_x2<Rational>(FieldSpec{}), 4);
}
