#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomcalc/radical.hpp>
#include <atomcalc/simples.hpp>

#include "fixture_algebras.hpp"

using namespace atomcalc;
using namespace atomcalc::testing;

namespace {

// Intersection of annihilators of all simples must equal the radical.
template <typename Scalar>
void check_radical_via_annihilators(const Algebra<Scalar>& A) {
  auto rad = radical(A);
  auto simples = simple_modules(A);
  REQUIRE(!simples.empty());
  Subspace<Scalar> cap = annihilator(simples[0]);
  for (size_t i = 1; i < simples.size(); ++i)
    cap = intersect(cap, annihilator(simples[i]));
  CHECK(cap == rad);
}

}  // namespace

TEST_CASE("center dimensions") {
  auto t2 = triangular2<Fp>(FieldSpec{2});
  CHECK(center(t2).dim() == 1);  // scalar matrices only

  auto f4 = f4_over_f2();
  CHECK(center(f4).dim() == 2);  // commutative

  auto kk = k_times_k<Rational>(FieldSpec{});
  CHECK(center(kk).dim() == 2);

  auto t2q = triangular2<Rational>(FieldSpec{});
  CHECK(center(t2q).dim() == 1);
}

TEST_CASE("simples of the 2x2 triangular algebra over F_2") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto simples = simple_modules(A);
  REQUIRE(simples.size() == 2);
  CHECK(simples[0].dim() == 1);
  CHECK(simples[1].dim() == 1);

  // The two characters: one where e11 acts as 1 and e22 as 0, one swapped.
  // e21 acts as 0 on both.
  auto acts_as = [](const RightModule<Fp>& S, Index j) {
    return !atomcalc::is_zero(S.action(j)(0, 0));
  };
  for (const auto& S : simples) CHECK(!acts_as(S, 1));
  bool first_is_e11 = acts_as(simples[0], 0);
  CHECK(acts_as(simples[0], first_is_e11 ? 0 : 2));
  CHECK(!acts_as(simples[0], first_is_e11 ? 2 : 0));
  CHECK(acts_as(simples[1], first_is_e11 ? 2 : 0));

  auto w = is_isomorphic(simples[0], simples[1]);
  CHECK(!w.isomorphic);

  check_radical_via_annihilators(A);
}

TEST_CASE("simples of the 2x2 triangular algebra over Q") {
  auto A = triangular2<Rational>(FieldSpec{});
  auto simples = simple_modules(A);
  REQUIRE(simples.size() == 2);
  CHECK(simples[0].dim() == 1);
  CHECK(simples[1].dim() == 1);
  CHECK(!is_isomorphic(simples[0], simples[1]).isomorphic);
  check_radical_via_annihilators(A);
}

TEST_CASE("local commutative algebras have one simple") {
  auto kx2 = kx_mod_x2<Fp>(FieldSpec{2});
  auto s2 = simple_modules(kx2);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].dim() == 1);
  check_radical_via_annihilators(kx2);

  auto kx3 = kx_mod_x3<Fp>(FieldSpec{3});
  auto s3 = simple_modules(kx3);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].dim() == 1);
  check_radical_via_annihilators(kx3);

  auto kx2q = kx_mod_x2<Rational>(FieldSpec{});
  auto sq = simple_modules(kx2q);
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].dim() == 1);
  check_radical_via_annihilators(kx2q);
}

TEST_CASE("group algebra of C_2 over F_2 is local with trivial simple") {
  auto A = group_c2_f2();
  auto simples = simple_modules(A);
  REQUIRE(simples.size() == 1);
  CHECK(simples[0].dim() == 1);
  // g acts as 1 on the trivial module.
  CHECK(!atomcalc::is_zero(simples[0].action(1)(0, 0)));
  check_radical_via_annihilators(A);
}

TEST_CASE("the field F_4 has one simple of dimension 2 over F_2") {
  auto A = f4_over_f2();
  auto simples = simple_modules(A);
  REQUIRE(simples.size() == 1);
  CHECK(simples[0].dim() == 2);
  check_radical_via_annihilators(A);
}

TEST_CASE("split semisimple products") {
  auto kk2 = k_times_k<Fp>(FieldSpec{2});
  auto s = simple_modules(kk2);
  REQUIRE(s.size() == 2);
  CHECK(s[0].dim() == 1);
  CHECK(s[1].dim() == 1);
  CHECK(!is_isomorphic(s[0], s[1]).isomorphic);

  auto kkq = k_times_k<Rational>(FieldSpec{});
  auto sq = simple_modules(kkq);
  REQUIRE(sq.size() == 2);
  CHECK(!is_isomorphic(sq[0], sq[1]).isomorphic);
}

TEST_CASE("isomorphism witnesses inside the regular module") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto reg = A.regular_module();
  const FieldSpec f{2};

  // Both e11*A and e21*A are copies of the simple with e11 acting as 1.
  RowVecX<Fp> e11 = zeros<Fp>(1, 3, f), e21 = zeros<Fp>(1, 3, f);
  e11(0) = Fp(1, 2);
  e21(1) = Fp(1, 2);
  auto u1 = submodule_generated(reg, MatrixX<Fp>(e11));
  auto u2 = submodule_generated(reg, MatrixX<Fp>(e21));
  REQUIRE(u1.dim() == 1);
  REQUIRE(u2.dim() == 1);
  auto m1 = restrict_to(reg, u1).first;
  auto m2 = restrict_to(reg, u2).first;
  auto w = is_isomorphic(m1, m2);
  REQUIRE(w.isomorphic);
  REQUIRE(w.iso.rows() == 1);
  ModuleMap<Fp> phi{&m1, &m2, w.iso};
  CHECK(phi.is_intertwiner());

  // The regular row module e21,e22 has a nonsplit radical series: it is not
  // isomorphic to the direct sum of its composition factors.
  auto H = triangular2_row_module(&A);
  auto simples = simple_modules(A);
  auto ss = direct_sum(simples[0], simples[1]);
  auto nope = is_isomorphic(H, ss);
  CHECK(!nope.isomorphic);
}

TEST_CASE("isomorphism over the rationals uses the coefficient grid") {
  auto A = kx_mod_x2<Rational>(FieldSpec{});
  auto reg = A.regular_module();
  auto reg2 = A.regular_module();
  auto w = is_isomorphic(reg, reg2);
  REQUIRE(w.isomorphic);
  ModuleMap<Rational> phi{&reg, &reg2, w.iso};
  CHECK(phi.is_intertwiner());
  CHECK(rank(w.iso) == 2);
}

TEST_CASE("endomorphism algebras") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto reg = A.regular_module();
  auto endo = endomorphism_algebra(reg);
  // End(A_A) = A acting by left multiplication, so dimension 3.
  CHECK(endo.alg.dim() == 3);
  CHECK(radical(endo.alg).dim() == 1);

  auto simples = simple_modules(A);
  auto es = endomorphism_algebra(simples[0]);
  CHECK(es.alg.dim() == 1);

  // End of the 2-dimensional simple over F_4's regular module is F_4 itself.
  auto f4 = f4_over_f2();
  auto s4 = simple_modules(f4);
  auto e4 = endomorphism_algebra(s4[0]);
  CHECK(e4.alg.dim() == 2);
  CHECK(radical(e4.alg).dim() == 0);
}
