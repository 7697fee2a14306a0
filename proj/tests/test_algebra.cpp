#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atomcalc/algebra.hpp"
#include "fixture_algebras.hpp"

using namespace atomcalc;
using namespace atomcalc::testing;

TEST_CASE("fixture algebras validate, as do their opposites and regular modules") {
  FieldSpec f2{2}, f3{3}, fq{0};
  auto check = [](const auto& alg) {
    alg.validate();
    alg.opposite().validate();
    auto reg = alg.regular_module();
    reg.validate();
    auto op = alg.opposite();
    auto opreg = op.regular_module();
    opreg.validate();
  };
  check(triangular2<Fp>(f2));
  check(triangular2<Rational>(fq));
  check(kx_mod_x2<Fp>(f2));
  check(kx_mod_x3<Fp>(f3));
  check(f4_over_f2());
  check(group_c2_f2());
  check(k_times_k<Fp>(f2));
}

TEST_CASE("opposite is an involution") {
  auto alg = triangular2<Fp>(FieldSpec{2});
  auto opop = alg.opposite().opposite();
  for (Index j = 0; j < alg.dim(); ++j)
    CHECK(matrix_equal<Fp>(alg.right_mult(j), opop.right_mult(j)));
}

TEST_CASE("named modules over the triangular algebra validate") {
  auto alg = triangular2<Fp>(FieldSpec{2});
  triangular2_simple<Fp>(&alg, 0).validate();
  triangular2_simple<Fp>(&alg, 1).validate();
  triangular2_row_module<Fp>(&alg).validate();
}

TEST_CASE("hom spaces over the triangular algebra have the expected dimensions") {
  auto alg = triangular2<Fp>(FieldSpec{2});
  auto s1 = triangular2_simple<Fp>(&alg, 0);
  auto s2 = triangular2_simple<Fp>(&alg, 1);
  auto h = triangular2_row_module<Fp>(&alg);

  CHECK(hom_space(s1, s1).size() == 1);
  CHECK(hom_space(s1, s2).size() == 0);
  CHECK(hom_space(s2, s1).size() == 0);
  CHECK(hom_space(s1, h).size() == 1);   // the inclusion [K 0] -> [K K]
  CHECK(hom_space(h, s1).size() == 0);   // top of [K K] is the other simple
  CHECK(hom_space(h, s2).size() == 1);   // the projection
  // End(A_A) is isomorphic to A acting by left multiplication.
  auto reg = alg.regular_module();
  auto endos = hom_space(reg, reg);
  CHECK(endos.size() == static_cast<size_t>(alg.dim()));
  for (const auto& e : endos) {
    ModuleMap<Fp> m{&reg, &reg, e};
    CHECK(m.is_intertwiner());
  }
}

TEST_CASE("hom spaces over the rationals") {
  auto alg = triangular2<Rational>(FieldSpec{0});
  auto s1 = triangular2_simple<Rational>(&alg, 0);
  auto h = triangular2_row_module<Rational>(&alg);
  CHECK(hom_space(s1, h).size() == 1);
  CHECK(hom_space(h, s1).size() == 0);
  CHECK(hom_space(alg.regular_module(), alg.regular_module()).size() == 3);
}

TEST_CASE("submodule generation by spinning") {
  FieldSpec f2{2};
  auto alg = triangular2<Fp>(f2);
  auto h = triangular2_row_module<Fp>(&alg);
  MatrixX<Fp> g1 = zeros<Fp>(1, 2, f2);
  g1(0, 0) = Fp(1, 2);
  auto sub1 = submodule_generated(h, g1);
  CHECK(sub1.dim() == 1);  // [K 0] is already closed
  CHECK(is_submodule(h, sub1));

  MatrixX<Fp> g2 = zeros<Fp>(1, 2, f2);
  g2(0, 1) = Fp(1, 2);
  auto sub2 = submodule_generated(h, g2);
  CHECK(sub2.dim() == 2);  // (0,1) * e21 = (1,0): spins to everything
}

TEST_CASE("restriction and quotient carry module structure and canonical maps") {
  FieldSpec f2{2};
  auto alg = triangular2<Fp>(f2);
  auto h = triangular2_row_module<Fp>(&alg);
  MatrixX<Fp> g = zeros<Fp>(1, 2, f2);
  g(0, 0) = Fp(1, 2);
  auto sub = submodule_generated(h, g);

  auto [restricted, incl] = restrict_to(h, sub);
  restricted.validate();
  CHECK(restricted.dim() == 1);
  ModuleMap<Fp> inc{&restricted, &h, incl};
  CHECK(inc.is_intertwiner());
  // The submodule [K 0] is the simple with e11 acting as identity.
  CHECK(matrix_equal<Fp>(restricted.action(0), eye<Fp>(1, f2)));

  auto [quot, proj] = quotient_by(h, sub);
  quot.validate();
  CHECK(quot.dim() == 1);
  ModuleMap<Fp> pr{&h, &quot, proj};
  CHECK(pr.is_intertwiner());
  // The quotient is the simple with e22 acting as identity.
  CHECK(matrix_equal<Fp>(quot.action(2), eye<Fp>(1, f2)));
  CHECK(matrix_is_zero<Fp>(quot.action(0)));
}

TEST_CASE("direct sums and duals") {
  FieldSpec f2{2};
  auto alg = triangular2<Fp>(f2);
  auto op = alg.opposite();
  auto s1 = triangular2_simple<Fp>(&alg, 0);
  auto h = triangular2_row_module<Fp>(&alg);

  auto ds = direct_sum(s1, h);
  ds.validate();
  CHECK(ds.dim() == 3);

  auto d = dual_module(h, &op);
  d.validate();
  auto dd = dual_module(d, &alg);
  dd.validate();
  for (Index j = 0; j < alg.dim(); ++j)
    CHECK(matrix_equal<Fp>(dd.action(j), h.action(j)));
}

TEST_CASE("zero module behaves") {
  auto alg = kx_mod_x2<Fp>(FieldSpec{2});
  auto z = RightModule<Fp>::zero(&alg);
  z.validate();
  CHECK(z.is_zero());
  CHECK(hom_space(z, alg.regular_module()).empty());
}
