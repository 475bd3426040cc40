#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wreathe/colength.hpp"

using namespace wreathe;

namespace {

GaloisNumberRing gauss_ring() {
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 2)}, 2);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({1, 0, 1}), G, {"-X"});
}
GaloisNumberRing exmod2gal_ring() {
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({1, -3, 7, -9, 7, -3, 1}), G,
                                              {"1 - X", "1 - 1/X"});
}
GaloisNumberRing untwisted_s3() {
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({0, 1}), G, {"X", "X"});
}
GaloisNumberRing untwisted_c2() {
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 2)}, 2);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({0, 1}), G, {"X"});
}
GaloisNumberRing exi26_ring() {
  auto G = FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({1, 0, 1}), G, {"-X", "X"});
}
GaloisNumberRing exi25_ring() {
  auto G = FiniteGroup::generate({parse_perm("(1,2,3,4,5,6,7,8,9)", 9)}, 9);
  return GaloisNumberRing::build_and_validate(qpoly_from_longs({-3, 9, -6, 1}), G,
                                              {"X^2 - 5*X + 6"});
}

BlockInvariants faithful_block(long h) { return {h, 1, 1, 1, 0, 0}; }

WedderburnData s3_blocks(const TwistedRing& T) {
  WedderburnData W;
  auto K = CoeffAlg::rationals();
  auto mk1 = [&](long v1, long v2) {
    auto a = KMat(1, 1, K.zero());
    a(0, 0) = {Rational(v1)};
    auto b = KMat(1, 1, K.zero());
    b(0, 0) = {Rational(v2)};
    return block_from_generator_matrices(T, K, 1, {a, b}, KMat(1, 1, K.zero()));
  };
  W.blocks.push_back(mk1(1, 1));   // trivial
  W.blocks.push_back(mk1(-1, 1));  // sign
  auto m_s = KMat(2, 2, K.zero());
  m_s(0, 0) = {Rational(-1)};
  m_s(1, 0) = {Rational(1)};
  m_s(1, 1) = {Rational(1)};
  auto m_c = KMat(2, 2, K.zero());
  m_c(0, 1) = {Rational(1)};
  m_c(1, 0) = {Rational(-1)};
  m_c(1, 1) = {Rational(-1)};
  W.blocks.push_back(block_from_generator_matrices(T, K, 2, {m_s, m_c}, KMat(2, 2, K.zero())));
  return W;
}

}  // namespace

TEST_CASE("delta_for_field") {
  CHECK(delta_for_field(qpoly_from_longs({-3, 0, 1}), 2) == 2);  // Q(sqrt 3) at 2
  CHECK(delta_for_field(qpoly_from_longs({-3, 0, 1}), 3) == 1);  // at 3
  CHECK(delta_for_field(qpoly_from_longs({1, 1, 1}), 3) == 1);   // Q(zeta_3) at 3
  CHECK(delta_for_field(qpoly_from_longs({1, 0, 1}), 3) == 0);   // Q(i) unramified at 3
}

TEST_CASE("wedderburn colength formula") {
  SUBCASE("faithful Q(i) wr C2") {
    CHECK(wedderburn_colength(2, 2, 1, 0, 2, {faithful_block(2)}, 2) == Rational(2));
    CHECK(wedderburn_colength(2, 2, 1, 0, 0, {faithful_block(2)}, 3) == Rational(0));
  }
  SUBCASE("untwisted Z_(2) C_2") {
    std::vector<BlockInvariants> blocks = {{1, 1, 1, 1, 0, 0}, {1, 1, 1, 1, 0, 0}};
    CHECK(wedderburn_colength(2, 1, 2, 1, 0, blocks, 2) == Rational(1));
  }
  SUBCASE("faithful S3 on the degree-6 field at 31") {
    CHECK(wedderburn_colength(6, 6, 1, 0, 3, {faithful_block(6)}, 31) == Rational(9));
  }
  SUBCASE("exi26 at 2 and 3") {
    auto R = exi26_ring();
    std::vector<BlockInvariants> b2 = {
        {2, 1, 1, 1, 0, 0}, {2, 1, 2, 2, delta_for_field(qpoly_from_longs({-3, 0, 1}), 2), 0}};
    auto ld2 = R.local_data(2);
    CHECK(wedderburn_colength(6, 2, 3, 0, ld2.delta, b2, 2) == Rational(2));
    std::vector<BlockInvariants> b3 = {
        {2, 1, 1, 1, 0, 0}, {2, 1, 2, 2, delta_for_field(qpoly_from_longs({-3, 0, 1}), 3), 0}};
    auto ld3 = R.local_data(3);
    CHECK(wedderburn_colength(6, 2, 3, 1, ld3.delta, b3, 3) == Rational(4));
  }
  SUBCASE("exi25 at 3") {
    auto R = exi25_ring();
    auto ld = R.local_data(3);
    CHECK(ld.delta == 4);  // wild Eisenstein cubic: different exponent 4
    std::vector<BlockInvariants> blocks = {
        {3, 1, 1, 1, 0, 0}, {3, 1, 2, 2, delta_for_field(qpoly_from_longs({1, 1, 1}), 3), 1}};
    CHECK(wedderburn_colength(9, 3, 3, 1, ld.delta, blocks, 3) == Rational(27));
  }
  SUBCASE("inconsistent data is rejected") {
    // block dimensions do not sum to gh
    CHECK_THROWS_WITH_AS(wedderburn_colength(2, 2, 1, 0, 1, {faithful_block(1)}, 2),
                         "inconsistent invariants", error);
    // negative formula value from an overstated block different
    std::vector<BlockInvariants> bad = {{2, 1, 1, 1, 99, 0}};
    CHECK_THROWS_WITH_AS(wedderburn_colength(2, 2, 1, 0, 2, bad, 2), "inconsistent invariants",
                         error);
  }
}

TEST_CASE("direct embedding oracle") {
  SUBCASE("Q(i) wr C2 at 2: colength 2, annihilation within v(n)+t") {
    auto R = gauss_ring();
    TwistedRing T(R);
    auto o = direct_embedding_colength(T, 2);
    CHECK(o.colength == 2);
    CHECK(o.annihilation_ok);
    long nonzero = 0;
    for (long v : o.cokernel_valuations)
      if (v > 0) ++nonzero;
    CHECK(nonzero == 2);  // observed [1,1] among the nonzero exponents
    CHECK(o.chain_ok);
    CHECK(o.l_gamma_over_lambda == 2);
    CHECK(o.l_lambda_plus_over_lambda == 2 * 2);  // g * delta
    auto ann = annihilation_check(T, 2);
    CHECK(ann.ok);
    CHECK(ann.bound == 1);
  }
  SUBCASE("Q(i) wr C2 at 3: maximal (colength 0, onto)") {
    auto R = gauss_ring();
    TwistedRing T(R);
    auto o = direct_embedding_colength(T, 3);
    CHECK(o.colength == 0);
    for (long v : o.cokernel_valuations) CHECK(v == 0);
    CHECK(o.chain_ok);
  }
  SUBCASE("degree-6 Galois ring") {
    auto R = exmod2gal_ring();
    TwistedRing T(R);
    auto o31 = direct_embedding_colength(T, 31);
    CHECK(o31.colength == 9);
    CHECK(o31.chain_ok);
    CHECK(o31.annihilation_ok);
    for (long p : {2L, 3L}) {
      auto o = direct_embedding_colength(T, p);
      CHECK(o.colength == 0);  // unramified: the embedding is onto
      CHECK(o.chain_ok);
    }
  }
  SUBCASE("formula = oracle for every faithful pair") {
    struct Case {
      GaloisNumberRing R;
      long p;
    };
    std::vector<Case> cases;
    cases.push_back({gauss_ring(), 2});
    cases.push_back({gauss_ring(), 3});
    cases.push_back({exmod2gal_ring(), 2});
    cases.push_back({exmod2gal_ring(), 3});
    cases.push_back({exmod2gal_ring(), 31});
    for (auto& c : cases) {
      TwistedRing T(c.R);
      auto ld = c.R.local_data(c.p);
      auto f = wedderburn_colength(c.R.g(), c.R.h(), 1, 0, ld.delta,
                                   {faithful_block(c.R.h())}, c.p);
      auto o = direct_embedding_colength(T, c.p);
      CHECK(f == Rational(o.colength));
    }
  }
  SUBCASE("non-faithful input rejected") {
    auto R = exi26_ring();
    TwistedRing T(R);
    CHECK_THROWS_WITH_AS(direct_embedding_colength(T, 2), "action not faithful", error);
  }
}

TEST_CASE("central colength") {
  SUBCASE("trivial group") {
    auto G1 = FiniteGroup::generate({}, 1);
    auto R = GaloisNumberRing::build_and_validate(qpoly_from_longs({0, 1}), G1, {});
    TwistedRing T(R);
    auto cc = central_colength(T, 2, {{1, 1, 1, 1, 0, 0}});
    CHECK(cc.formula == Rational(0));
  }
  SUBCASE("untwisted Z_(3) S_3: formula 2 = central oracle") {
    auto R = untwisted_s3();
    TwistedRing T(R);
    auto W = s3_blocks(T);
    std::vector<BlockInvariants> blocks = {{1, 1, 1, 1, 0, 0}, {1, 1, 1, 1, 0, 0},
                                           {2, 1, 1, 1, 0, 0}};
    auto cc = central_colength(T, 3, blocks, &W);
    CHECK(cc.formula == Rational(2));
    REQUIRE(cc.has_oracle);
    CHECK(cc.oracle == 2);
    auto cc2 = central_colength(T, 2, blocks, &W);
    CHECK(cc2.formula == Rational(1));
    REQUIRE(cc2.has_oracle);
    CHECK(cc2.oracle == 1);
  }
  SUBCASE("untwisted C2 at 2") {
    auto R = untwisted_c2();
    TwistedRing T(R);
    std::vector<BlockInvariants> blocks = {{1, 1, 1, 1, 0, 0}, {1, 1, 1, 1, 0, 0}};
    auto cc = central_colength(T, 2, blocks);
    CHECK(cc.formula == Rational(1));  // Z(Z_(2)C_2) = Z_(2)C_2 inside Z^2
  }
  SUBCASE("p coprime to g: zero") {
    auto R = untwisted_s3();
    TwistedRing T(R);
    std::vector<BlockInvariants> blocks = {{1, 1, 1, 1, 0, 0}, {1, 1, 1, 1, 0, 0},
                                           {2, 1, 1, 1, 0, 0}};
    auto cc = central_colength(T, 5, blocks);
    CHECK(cc.formula == Rational(0));
  }
  SUBCASE("exi25 at 3: formula 1") {
    auto R = exi25_ring();
    TwistedRing T(R);
    std::vector<BlockInvariants> blocks = {
        {3, 1, 1, 1, 0, 0}, {3, 1, 2, 2, 1, delta_for_field(qpoly_from_longs({1, 1, 1}), 3)}};
    auto cc = central_colength(T, 3, blocks);
    CHECK(cc.formula == Rational(1));
  }
  SUBCASE("exi26 at 3: formula 1") {
    auto R = exi26_ring();
    TwistedRing T(R);
    std::vector<BlockInvariants> blocks = {
        {2, 1, 1, 1, 0, 0}, {2, 1, 2, 2, 1, delta_for_field(qpoly_from_longs({-3, 0, 1}), 3)}};
    auto cc = central_colength(T, 3, blocks);
    CHECK(cc.formula == Rational(1));
  }
}

TEST_CASE("bound check") {
  SUBCASE("exi25 block data at 3") {
    std::vector<BlockInvariants> blocks = {{3, 1, 1, 1, 0, 0}, {3, 1, 2, 2, 1, 1}};
    auto bc = bound_check(blocks, 9, 3, 3, 2, 3);
    CHECK(bc.ok);
    CHECK(bc.integrality_ok);
  }
  SUBCASE("untwisted S3 at 2, standard block: equality case") {
    std::vector<BlockInvariants> blocks = {{1, 1, 1, 1, 0, 0}, {1, 1, 1, 1, 0, 0},
                                           {2, 1, 1, 1, 0, 0}};
    auto bc = bound_check(blocks, 6, 1, 6, 0, 2);
    CHECK(bc.ok);  // v(2) + 0 = 1 <= v(6) + 0 = 1
  }
  SUBCASE("trivial group") {
    std::vector<BlockInvariants> blocks = {{1, 1, 1, 1, 0, 0}};
    CHECK(bound_check(blocks, 1, 1, 1, 0, 2).ok);
  }
}
