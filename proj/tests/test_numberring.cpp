#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wreathe/numberring.hpp"

using namespace wreathe;

namespace {

GaloisNumberRing gauss_ring() {
  // Q(i) with C2 acting by conjugation
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 2)}, 2);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({1, 0, 1}), G, {"-X"});
}

GaloisNumberRing exi26_ring() {
  // Q(i) with S3 acting through the sign character
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({1, 0, 1}), G, {"-X", "X"});
}

GaloisNumberRing exmod2_ring() {
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)}, 4);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({1, -3, 7, -9, 7, -3, 1}), G,
                                              {"1 - X", "1/X"});
}

GaloisNumberRing exmod2gal_ring() {
  // same field, faithful S3 = Gal(L/Q)
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({1, -3, 7, -9, 7, -3, 1}), G,
                                              {"1 - X", "1 - 1/X"});
}

}  // namespace

TEST_CASE("build_and_validate kernels") {
  SUBCASE("exi26: N = C3") {
    auto R = exi26_ring();
    CHECK(R.n() == 3);
    CHECK(R.h() == 2);
    CHECK(R.fixed_degree() == 1);
    for (int nu : R.kernel()) CHECK(R.group().element_order(nu) % 2 != 0);
  }
  SUBCASE("exmod2: N = Klein four group, h = 6") {
    auto R = exmod2_ring();
    CHECK(R.n() == 4);
    CHECK(R.h() == 6);
    CHECK(R.fixed_degree() == 1);
    for (int nu : R.kernel()) {
      long o = R.group().element_order(nu);
      CHECK((o == 1 || o == 2));
    }
  }
  SUBCASE("trivial action has N = G") {
    auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
    auto R = GaloisNumberRing::build_and_validate(qpoly_from_longs({1, 0, 1}), G, {"X", "X"});
    CHECK(R.n() == 6);
    CHECK(R.h() == 1);
    CHECK(R.fixed_degree() == 2);  // K = L = Q(i)
  }
  SUBCASE("faithful Galois S3 on the degree-6 field") {
    auto R = exmod2gal_ring();
    CHECK(R.n() == 1);
    CHECK(R.h() == 6);
    CHECK(R.faithful());
  }
  SUBCASE("rejects non-automorphisms") {
    auto G = FiniteGroup::generate({parse_perm("(1,2)", 2)}, 2);
    CHECK_THROWS_WITH_AS(
        GaloisNumberRing::build_and_validate(qpoly_from_longs({1, 0, 1}), G, {"X + 1"}),
        "not an automorphism", error);
  }
  SUBCASE("rejects group-law violations") {
    auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
    CHECK_THROWS_WITH_AS(
        GaloisNumberRing::build_and_validate(qpoly_from_longs({1, 0, 1}), G, {"-X", "-X"}),
        "not a right action", error);
  }
}

TEST_CASE("fixed_subring_basis") {
  auto R = exi26_ring();
  const auto& G = R.group();
  SUBCASE("full group fixes only Q") {
    std::vector<int> gens(G.generator_indices().begin(), G.generator_indices().end());
    auto B = R.fixed_lattice_basis(gens, 2);
    REQUIRE(B.rows() == 1);
    Matrix<Rational> expect(1, 2, Rational(0));
    expect(0, 0) = Rational(1);
    CHECK(same_p_lattice(B, expect, Int(2)));
  }
  SUBCASE("A3 fixes all of Q(i)") {
    int c = G.index_of(parse_perm("(1,2,3)", 3));
    auto B = R.fixed_lattice_basis({c}, 2);
    CHECK(B.rows() == 2);
    CHECK(same_p_lattice(B, Matrix<Rational>::identity(2, Rational(1), Rational(0)), Int(2)));
  }
  SUBCASE("trivial subgroup gives the power basis") {
    auto B = R.fixed_lattice_basis({}, 2);
    CHECK(same_p_lattice(B, Matrix<Rational>::identity(2, Rational(1), Rational(0)), Int(2)));
  }
  SUBCASE("every saturated fixed lattice sits p-integrally inside T") {
    for (long p : {2L, 3L}) {
      for (std::size_t s = 0; s < G.order(); ++s) {
        auto cent = G.centralizer(static_cast<int>(s));
        auto B = R.fixed_lattice_basis(G.subgroup_generators(cent), p);
        for (std::size_t i = 0; i < B.rows(); ++i)
          for (std::size_t j = 0; j < B.cols(); ++j) CHECK(B(i, j).p_integral(Int(p)));
      }
    }
  }
}

TEST_CASE("dedekind_pmaximal") {
  CHECK(dedekind_pmaximal(qpoly_from_longs({1, 0, 1}), 2));          // Z[i] at 2
  CHECK(dedekind_pmaximal(qpoly_from_longs({1, -3, 7, -9, 7, -3, 1}), 31));
  CHECK(dedekind_pmaximal(qpoly_from_longs({-2, 0, 1}), 2));         // Eisenstein X^2 - 2
  CHECK_FALSE(dedekind_pmaximal(qpoly_from_longs({3, 0, 1}), 2));    // Z[sqrt(-3)] not 2-maximal
}

TEST_CASE("local_data against the worked examples") {
  SUBCASE("Z_(2)[i]") {
    auto R = gauss_ring();
    auto ld = R.local_data(2);
    CHECK(ld.e == 2);
    CHECK(ld.f == 1);
    CHECK(ld.d == 1);
    CHECK(ld.s == 1);
    CHECK(ld.t == 1);
    CHECK(ld.delta == 2);
  }
  SUBCASE("Z_(3)[i] is unramified") {
    auto R = gauss_ring();
    auto ld = R.local_data(3);
    CHECK(ld.e == 1);
    CHECK(ld.f == 2);
    CHECK(ld.d == 1);
    CHECK(ld.s == 0);
    CHECK(ld.t == 0);
    CHECK(ld.delta == 0);
  }
  SUBCASE("degree-6 field at p = 31") {
    auto R = exmod2_ring();
    auto ld = R.local_data(31);
    CHECK(ld.e == 2);
    CHECK(ld.f == 1);
    CHECK(ld.d == 3);
    CHECK(ld.delta == 3);
    CHECK(ld.t == 1);
    CHECK(ld.s == 0);
  }
  SUBCASE("degree-6 field at p = 3") {
    auto R = exmod2_ring();
    auto ld = R.local_data(3);
    CHECK(ld.e == 1);
    CHECK(ld.f == 2);
    CHECK(ld.d == 3);
    CHECK(ld.t == 0);
    CHECK(ld.delta == 0);
  }
  SUBCASE("degree-6 field at p = 2") {
    auto R = exmod2_ring();
    auto ld = R.local_data(2);
    CHECK(ld.e == 1);
    CHECK(ld.f == 3);
    CHECK(ld.d == 2);
    CHECK(ld.t == 0);
  }
  SUBCASE("efd, s <= t, t = 0 iff e = 1, across scenario pairs") {
    auto check_ring = [&](const GaloisNumberRing& R, std::vector<long> primes) {
      for (long p : primes) {
        auto ld = R.local_data(p);
        CHECK(ld.e * ld.f * ld.d == R.m());
        CHECK(ld.s <= ld.t);
        CHECK((ld.t == 0) == (ld.e == 1));
        CHECK((ld.delta == 0) == (ld.t == 0));
      }
    };
    check_ring(gauss_ring(), {2, 3});
    check_ring(exmod2_ring(), {2, 3, 31});
    check_ring(exmod2gal_ring(), {2, 3, 31});
  }
}

TEST_CASE("projectivity_check") {
  SUBCASE("wild at p = 2 for Z_(2)[i] with faithful C2") {
    auto R = gauss_ring();
    auto pr = R.projectivity_check(2);
    CHECK_FALSE(pr.projective);
    CHECK(pr.p_coprime_to_n);
    CHECK_FALSE(pr.tame);
  }
  SUBCASE("degree-6 example, p = 31: tame, projective") {
    auto R = exmod2_ring();
    auto pr = R.projectivity_check(31);
    CHECK(pr.projective);
  }
  SUBCASE("degree-6 example, p = 3: unramified, projective") {
    auto R = exmod2_ring();
    CHECK(R.projectivity_check(3).projective);
  }
  SUBCASE("p = 2 divides n = 4: not projective") {
    auto R = exmod2_ring();
    auto pr = R.projectivity_check(2);
    CHECK_FALSE(pr.projective);
    CHECK_FALSE(pr.p_coprime_to_n);
  }
}

TEST_CASE("reduce_mod_p residue data") {
  SUBCASE("Z_(3)[i]: Tbar = Tbar0 = F9") {
    auto R = gauss_ring();
    auto rd = R.reduce_mod_p(3);
    CHECK(rd.dim_tbar == 2);
    CHECK(rd.dim_t0 == 2);
    CHECK(rd.e == 1);
    CHECK(rd.irreducibles.size() == 1);
    CHECK(rd.irreducibles[0].degree() == 2);
    CHECK(R.describe_residue(rd, true) == "F9");
  }
  SUBCASE("degree-6 field at 31: Tbar = F31[eps]^3, Tbar0 = F31^3") {
    auto R = exmod2_ring();
    auto rd = R.reduce_mod_p(31);
    CHECK(rd.dim_tbar == 6);
    CHECK(rd.dim_t0 == 3);
    CHECK(rd.e == 2);
    CHECK(rd.irreducibles.size() == 3);
    CHECK(R.describe_residue(rd, true) == "F31 x F31 x F31");
  }
  SUBCASE("degree-6 field at 2: Tbar = Tbar0 = F8 x F8") {
    auto R = exmod2_ring();
    auto rd = R.reduce_mod_p(2);
    CHECK(rd.dim_tbar == 6);
    CHECK(rd.dim_t0 == 6);
    CHECK(R.describe_residue(rd, true) == "F8 x F8");
  }
  SUBCASE("G-action permutes the T0 idempotents transitively") {
    for (long p : {2L, 3L, 31L}) {
      auto R = exmod2_ring();
      auto rd = R.reduce_mod_p(p);
      FpCtx k(p);
      std::size_t d = rd.t0_idempotents.size();
      // orbit of the first idempotent under the action matrices
      std::set<std::vector<FpCtx::Elem>> orbit;
      for (std::size_t s = 0; s < R.group().order(); ++s)
        orbit.insert(vec_mat(k, rd.t0_idempotents[0], rd.act_t0[s]));
      CHECK(orbit.size() == d);
      for (auto& e : rd.t0_idempotents) CHECK(orbit.count(e) == 1);
    }
  }
  SUBCASE("sum of T0 idempotents is 1 and they are orthogonal projections") {
    auto R = exmod2_ring();
    auto rd = R.reduce_mod_p(31);
    FpCtx k(31);
    // in the polynomial model, multiply mod radpoly
    auto mulmod = [&](const std::vector<FpCtx::Elem>& x, const std::vector<FpCtx::Elem>& y) {
      auto prod = poly_mod(k, poly_mul(k, Poly<FpCtx>::from(k, x), Poly<FpCtx>::from(k, y)),
                           rd.radpoly);
      std::vector<FpCtx::Elem> out(rd.dim_t0, 0);
      for (long i = 0; i <= prod.degree(); ++i) out[i] = prod.coeffs()[i];
      return out;
    };
    std::vector<FpCtx::Elem> sum(rd.dim_t0, 0);
    for (auto& e : rd.t0_idempotents) {
      CHECK(mulmod(e, e) == e);
      for (long i = 0; i < rd.dim_t0; ++i) sum[i] = k.add(sum[i], e[i]);
    }
    std::vector<FpCtx::Elem> one(rd.dim_t0, 0);
    one[0] = 1;
    CHECK(sum == one);
  }
}

TEST_CASE("degree-1 coefficient field (untwisted group ring)") {
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
  auto R = GaloisNumberRing::build_and_validate(qpoly_from_longs({0, 1}), G, {"X", "X"});
  CHECK(R.m() == 1);
  CHECK(R.n() == 6);
  CHECK(R.h() == 1);
  auto ld = R.local_data(2);
  CHECK(ld.e == 1);
  CHECK(ld.f == 1);
  CHECK(ld.d == 1);
  CHECK(ld.s == 0);
  CHECK(ld.t == 0);
  CHECK(ld.delta == 0);
}
