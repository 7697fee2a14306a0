#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomcalc/covers.hpp>

#include "fixture_algebras.hpp"

using namespace atomcalc;
using namespace atomcalc::testing;

namespace {

// Index of the simple on which basis element j acts as identity.
template <typename Scalar>
size_t simple_where_acts(const CoverData<Scalar>& cd, Index j) {
  for (size_t i = 0; i < cd.simples.size(); ++i)
    if (!matrix_is_zero<Scalar>(cd.simples[i].action(j))) return i;
  throw std::logic_error("no simple sees that basis element");
}

template <typename Scalar>
void check_idempotents(const CoverData<Scalar>& cd) {
  const Algebra<Scalar>& A = *cd.alg;
  for (const auto& e : cd.idempotents) {
    CHECK(matrix_equal<Scalar>(MatrixX<Scalar>(A.mul(e, e)),
                               MatrixX<Scalar>(e)));
    CHECK(!matrix_is_zero<Scalar>(MatrixX<Scalar>(e)));
  }
}

}  // namespace

TEST_CASE("cover data for the triangular algebra over F_2") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto cd = make_cover_data(A);
  REQUIRE(cd.simples.size() == 2);
  check_idempotents(cd);

  size_t i1 = simple_where_acts(cd, 0);  // e11 acts as 1
  size_t i2 = simple_where_acts(cd, 2);  // e22 acts as 1
  REQUIRE(i1 != i2);
  CHECK(cd.proj_of_simple[i1].dim() == 1);
  CHECK(cd.proj_of_simple[i2].dim() == 2);

  // P(S_i) is projective indecomposable: its top is S_i.
  for (size_t i = 0; i < 2; ++i) {
    auto [top, pi] = quotient_by(
        cd.proj_of_simple[i],
        module_radical_part(cd.proj_of_simple[i], cd.rad));
    CHECK(top.dim() == 1);
    CHECK(is_isomorphic(top, cd.simples[i]).isomorphic);
  }
}

TEST_CASE("projective covers over the triangular algebra") {
  for (int field_case = 0; field_case < 2; ++field_case) {
    FieldSpec f = field_case == 0 ? FieldSpec{2} : FieldSpec{};
    CAPTURE(field_case);
    auto run = [&](auto tag) {
      using S = decltype(tag);
      auto A = triangular2<S>(f);
      auto cd = make_cover_data(A);
      size_t i1 = simple_where_acts(cd, 0);
      size_t i2 = simple_where_acts(cd, 2);

      // Cover of a simple is the matching indecomposable projective.
      auto c1 = projective_cover(cd.simples[i1], cd);
      CHECK(c1.cover.dim() == 1);
      CHECK(c1.multiplicity[i1] == 1);
      CHECK(c1.multiplicity[i2] == 0);

      auto c2 = projective_cover(cd.simples[i2], cd);
      CHECK(c2.cover.dim() == 2);
      CHECK(c2.multiplicity[i2] == 1);
      ModuleMap<S> m2{&c2.cover, &cd.simples[i2], c2.onto};
      CHECK(m2.kernel().dim() == 1);
      // That kernel is rad P(S_2) = a copy of S_1.
      auto kmod = restrict_to(c2.cover, m2.kernel()).first;
      CHECK(is_isomorphic(kmod, cd.simples[i1]).isomorphic);

      // The row module (x, y) with x e11 = x, y e22 = y, y e21 = x is
      // already projective: its cover map is bijective.
      auto H = triangular2_row_module(&A);
      auto ch = projective_cover(H, cd);
      CHECK(ch.cover.dim() == 2);
      CHECK(ch.multiplicity[i2] == 1);
      CHECK(ch.multiplicity[i1] == 0);
      ModuleMap<S> mh{&ch.cover, &H, ch.onto};
      CHECK(mh.kernel().dim() == 0);

      // Cover of the regular module is itself.
      auto reg = A.regular_module();
      auto cr = projective_cover(reg, cd);
      CHECK(cr.cover.dim() == 3);
      CHECK(cr.multiplicity[i1] == 1);
      CHECK(cr.multiplicity[i2] == 1);
      ModuleMap<S> mr{&cr.cover, &reg, cr.onto};
      CHECK(mr.kernel().dim() == 0);

      // Multiplicities add over direct sums.
      auto ss = direct_sum(cd.simples[i1], cd.simples[i1]);
      auto cs = projective_cover(ss, cd);
      CHECK(cs.cover.dim() == 2);
      CHECK(cs.multiplicity[i1] == 2);
    };
    if (field_case == 0)
      run(Fp{});
    else
      run(Rational{});
  }
}

TEST_CASE("local algebras lift only the unit idempotent") {
  auto A = group_c2_f2();
  auto cd = make_cover_data(A);
  REQUIRE(cd.simples.size() == 1);
  REQUIRE(cd.idempotents.size() == 1);
  CHECK(matrix_equal<Fp>(MatrixX<Fp>(cd.idempotents[0]),
                         MatrixX<Fp>(A.unit())));
  CHECK(cd.proj_of_simple[0].dim() == 2);

  auto c = projective_cover(cd.simples[0], cd);
  CHECK(c.cover.dim() == 2);
  ModuleMap<Fp> m{&c.cover, &cd.simples[0], c.onto};
  CHECK(m.kernel().dim() == 1);
}

TEST_CASE("semisimple algebras are their own covers") {
  auto A = f4_over_f2();
  auto cd = make_cover_data(A);
  REQUIRE(cd.simples.size() == 1);
  CHECK(cd.proj_of_simple[0].dim() == 2);
  auto c = projective_cover(cd.simples[0], cd);
  ModuleMap<Fp> m{&c.cover, &cd.simples[0], c.onto};
  CHECK(m.kernel().dim() == 0);

  auto kk = k_times_k<Rational>(FieldSpec{});
  auto cdk = make_cover_data(kk);
  REQUIRE(cdk.simples.size() == 2);
  CHECK(cdk.proj_of_simple[0].dim() == 1);
  CHECK(cdk.proj_of_simple[1].dim() == 1);
  check_idempotents(cdk);
}

TEST_CASE("covers over a local ring with nilpotents") {
  auto A = kx_mod_x3<Fp>(FieldSpec{3});
  auto cd = make_cover_data(A);
  REQUIRE(cd.simples.size() == 1);
  CHECK(cd.proj_of_simple[0].dim() == 3);

  auto c = projective_cover(cd.simples[0], cd);
  CHECK(c.cover.dim() == 3);
  ModuleMap<Fp> m{&c.cover, &cd.simples[0], c.onto};
  CHECK(m.kernel().dim() == 2);

  // The quotient k[x]/x^2 viewed as a module over k[x]/x^3 also has the
  // regular module as cover, with one-dimensional kernel.
  auto reg = A.regular_module();
  RowVecX<Fp> x2 = zeros<Fp>(1, 3, FieldSpec{3});
  x2(2) = Fp(1, 3);
  auto [quo, pi] = quotient_by(reg, submodule_generated(reg, MatrixX<Fp>(x2)));
  REQUIRE(quo.dim() == 2);
  auto cq = projective_cover(quo, cd);
  CHECK(cq.cover.dim() == 3);
  ModuleMap<Fp> mq{&cq.cover, &quo, cq.onto};
  CHECK(mq.kernel().dim() == 1);
}

TEST_CASE("semisimple decomposition splits the socle of the regular module") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto cd = make_cover_data(A);
  size_t i1 = simple_where_acts(cd, 0);
  auto reg = A.regular_module();
  auto soc = socle_subspace(reg, cd.rad);
  REQUIRE(soc.dim() == 2);
  auto socmod = restrict_to(reg, soc).first;
  auto parts = detail::semisimple_decomposition(socmod, cd.simples);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == i1);
  CHECK(parts[1].first == i1);
  CHECK(parts[0].second.dim() == 1);
}

TEST_CASE("cover of the zero module is zero") {
  auto A = triangular2<Fp>(FieldSpec{2});
  auto cd = make_cover_data(A);
  auto z = RightModule<Fp>::zero(&A);
  auto c = projective_cover(z, cd);
  CHECK(c.cover.dim() == 0);
}
