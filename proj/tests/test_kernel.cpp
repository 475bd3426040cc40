#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wreathe/factor.hpp"
#include "wreathe/fqfield.hpp"
#include "wreathe/linalg.hpp"
#include "wreathe/poly.hpp"
#include "wreathe/rational.hpp"

using namespace wreathe;

TEST_CASE("Int and Rational basics") {
  Int a("123456789012345678901234567890");
  Int b(41);
  CHECK((a * b - a * b).is_zero());
  CHECK(gcd(Int(12), Int(18)) == Int(6));
  CHECK(Int(-7) % Int(3) == Int(-1));
  CHECK(Int(360).valuation(Int(2)) == 3);
  CHECK(Int(360).valuation(Int(3)) == 2);

  Rational r(Int(6), Int(-4));
  CHECK(r.num() == Int(-3));
  CHECK(r.den() == Int(2));
  CHECK(Rational::parse("3/2") + Rational::parse("1/2") == Rational(2));
  CHECK(Rational::parse("-5/10") == Rational(Int(-1), Int(2)));
  CHECK(Rational(Int(9), Int(8)).valuation(Int(2)) == -3);
  CHECK(Rational(Int(4), Int(3)).p_integral(Int(2)));
  CHECK_FALSE(Rational(Int(4), Int(3)).p_integral(Int(3)));
  CHECK_THROWS_AS(Rational(1) / Rational(0), error);
}

TEST_CASE("linear_solve examples") {
  SUBCASE("kernel of 3x3 identity over F2 is empty") {
    FpCtx F2(2);
    auto id = Matrix<FpCtx::Elem>::identity(3, F2.one(), F2.zero());
    auto res = linear_solve(F2, id, SolveMode::kernel);
    CHECK(res.basis.rows() == 0);
  }
  SUBCASE("kernel of [1 1] over F2 is {(1,1)}") {
    FpCtx F2(2);
    Matrix<FpCtx::Elem> m(1, 2, 0);
    m(0, 0) = 1;
    m(0, 1) = 1;
    auto res = linear_solve(F2, m, SolveMode::kernel);
    REQUIRE(res.basis.rows() == 1);
    CHECK(res.basis(0, 0) == 1);
    CHECK(res.basis(0, 1) == 1);
  }
  SUBCASE("Gram matrix of {1,i} under trace has rank 2 over Q") {
    RationalField Q;
    Matrix<Rational> g(2, 2, Rational(0));
    g(0, 0) = Rational(2);
    g(1, 1) = Rational(-2);
    auto res = linear_solve(Q, g, SolveMode::image);
    CHECK(res.basis.rows() == 2);
    CHECK(det(Q, g) == Rational(-4));
  }
  SUBCASE("solve mode reports inconsistent systems") {
    RationalField Q;
    Matrix<Rational> m(2, 1, Rational(0));
    m(0, 0) = Rational(1);
    m(1, 0) = Rational(1);
    std::vector<Rational> b = {Rational(1), Rational(2)};
    CHECK_THROWS_WITH_AS(linear_solve(Q, m, SolveMode::solve, &b), "no solution", error);
  }
  SUBCASE("kernel vectors annihilate the matrix exactly") {
    RationalField Q;
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix<Rational> m(4, 6, Rational(0));
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j)
          m(i, j) = Rational(static_cast<long>(rng.bounded(11)) - 5);
      auto ker = linear_solve(Q, m, SolveMode::kernel).basis;
      auto img = linear_solve(Q, m, SolveMode::image).basis;
      CHECK(ker.rows() + img.rows() == 6);
      for (std::size_t r = 0; r < ker.rows(); ++r) {
        // kernel rows satisfy M x = 0 in the column sense
        for (std::size_t i = 0; i < m.rows(); ++i) {
          Rational acc(0);
          for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * ker(r, j);
          CHECK(acc.is_zero());
        }
      }
    }
  }
}

TEST_CASE("smith_valuations examples and det property") {
  SUBCASE("identity") {
    Matrix<Rational> m = Matrix<Rational>::identity(3, Rational(1), Rational(0));
    auto sv = smith_valuations(m, Int(5));
    CHECK(sv.finite == std::vector<long>{0, 0, 0});
    CHECK(sv.infinite == 0);
  }
  SUBCASE("diag(1,p,p^2)") {
    Matrix<Rational> m(3, 3, Rational(0));
    m(0, 0) = Rational(1);
    m(1, 1) = Rational(3);
    m(2, 2) = Rational(9);
    auto sv = smith_valuations(m, Int(3));
    CHECK(sv.finite == std::vector<long>{0, 1, 2});
  }
  SUBCASE("Gram of Z_(2)[i]") {
    Matrix<Rational> m(2, 2, Rational(0));
    m(0, 0) = Rational(2);
    m(1, 1) = Rational(-2);
    auto sv = smith_valuations(m, Int(2));
    CHECK(sv.finite == std::vector<long>{1, 1});
  }
  SUBCASE("non p-integral input rejected") {
    Matrix<Rational> m(1, 1, Rational(Int(1), Int(2)));
    CHECK_THROWS_WITH_AS(smith_valuations(m, Int(2)), "not p-integral", error);
  }
  SUBCASE("sum of valuations equals v_p(det)") {
    RationalField Q;
    SplitMix64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t n = 2 + rng.bounded(3);
      Matrix<Rational> m(n, n, Rational(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m(i, j) = Rational(static_cast<long>(rng.bounded(40)) - 20);
      auto d = det(Q, m);
      if (d.is_zero()) continue;
      for (Int p : {Int(2), Int(3), Int(5)}) {
        auto sv = smith_valuations(m, p);
        CHECK(sv.sum() == d.valuation(p));
      }
    }
  }
}

TEST_CASE("poly arithmetic over Q") {
  RationalField Q;
  auto f = Poly<RationalField>::from(Q, {Rational(1), Rational(0), Rational(1)});  // X^2+1
  auto g = Poly<RationalField>::from(Q, {Rational(-1), Rational(1)});              // X-1
  auto [q, r] = poly_divmod(Q, f, g);
  CHECK(poly_eq(Q, poly_add(Q, poly_mul(Q, q, g), r), f));
  CHECK(r.degree() == 0);
  CHECK(r.coeffs()[0] == Rational(2));  // f(1) = 2
  auto [gg, u, v] = poly_xgcd(Q, f, g);
  CHECK(gg.degree() == 0);
  auto comb = poly_add(Q, poly_mul(Q, u, f), poly_mul(Q, v, g));
  CHECK(poly_eq(Q, comb, gg));
}

TEST_CASE("factor_poly_fq") {
  SUBCASE("X^2+1 over F2 is (X+1)^2") {
    FpCtx F2(2);
    auto f = Poly<FpCtx>::from(F2, {1, 0, 1});
    auto fac = factor_poly_fq(F2, f, 0);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].second == 2);
    CHECK(poly_eq(F2, fac.factors[0].first, Poly<FpCtx>::from(F2, {1, 1})));
  }
  SUBCASE("mu of the degree-6 example over F2") {
    FpCtx F2(2);
    // X^6 - 3X^5 + 7X^4 - 9X^3 + 7X^2 - 3X + 1 mod 2
    auto mu = Poly<FpCtx>::from(F2, {1, 1, 1, 1, 1, 1, 1});
    auto fac = factor_poly_fq(F2, mu, 0);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].second == 1);
    CHECK(fac.factors[1].second == 1);
    auto c1 = Poly<FpCtx>::from(F2, {1, 1, 0, 1});  // X^3+X+1
    auto c2 = Poly<FpCtx>::from(F2, {1, 0, 1, 1});  // X^3+X^2+1
    bool match = (poly_eq(F2, fac.factors[0].first, c1) && poly_eq(F2, fac.factors[1].first, c2)) ||
                 (poly_eq(F2, fac.factors[0].first, c2) && poly_eq(F2, fac.factors[1].first, c1));
    CHECK(match);
  }
  SUBCASE("mu of the degree-6 example over F31") {
    FpCtx F31(31);
    auto from_z = [&](std::initializer_list<long> v) {
      std::vector<FpCtx::Elem> c;
      for (long x : v) c.push_back(F31.from_long(x));
      return Poly<FpCtx>::from(F31, std::move(c));
    };
    auto mu = from_z({1, -3, 7, -9, 7, -3, 1});
    auto fac = factor_poly_fq(F31, mu, 0);
    REQUIRE(fac.factors.size() == 3);
    for (auto& [g, m] : fac.factors) {
      CHECK(m == 2);
      CHECK(g.degree() == 1);
    }
    // roots 2, -15, -1
    std::vector<FpCtx::Elem> roots;
    for (auto& [g, m] : fac.factors) roots.push_back(F31.neg(g.coeffs()[0]));
    std::sort(roots.begin(), roots.end());
    CHECK(roots == std::vector<FpCtx::Elem>{2, 16, 30});
  }
  SUBCASE("zero polynomial rejected") {
    FpCtx F2(2);
    CHECK_THROWS_WITH_AS(factor_poly_fq(F2, Poly<FpCtx>::zero(), 0), "zero input", error);
  }
  SUBCASE("deterministic for a fixed seed") {
    FpCtx F31(31);
    std::vector<FpCtx::Elem> c = {7, 3, 0, 11, 1, 5, 1, 0, 2, 1};
    auto f = Poly<FpCtx>::from(F31, c);
    auto f1 = factor_poly_fq(F31, f, 42);
    auto f2 = factor_poly_fq(F31, f, 42);
    REQUIRE(f1.factors.size() == f2.factors.size());
    for (std::size_t i = 0; i < f1.factors.size(); ++i) {
      CHECK(poly_eq(F31, f1.factors[i].first, f2.factors[i].first));
      CHECK(f1.factors[i].second == f2.factors[i].second);
    }
  }
}

template <class F>
static void roundtrip_many(const F& k, int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int done = 0;
  while (done < count) {
    long deg = 1 + rng.bounded(12);
    std::vector<typename F::Elem> c(deg + 1, k.zero());
    for (auto& e : c) e = detail::FieldTraits<F>::rand_elem(k, rng);
    auto f = Poly<F>::from(k, std::move(c));
    if (f.degree() < 1) continue;
    auto fac = factor_poly_fq(k, f, seed + done);
    auto back = factorization_product(k, fac);
    REQUIRE(poly_eq(k, back, f));
    for (auto& [g, m] : fac.factors) {
      CHECK(g.is_monic(k));
      if constexpr (std::is_same_v<F, FpCtx>)
        CHECK(irreducible_mod_p(k, g));
    }
    ++done;
  }
}

TEST_CASE("factoring roundtrip, 200 random polynomials per field") {
  roundtrip_many(FpCtx(2), 200, 1001);
  roundtrip_many(FpCtx(3), 200, 1002);
  roundtrip_many(FpCtx(31), 200, 1003);
  roundtrip_many(FqField(3, 2), 200, 1004);  // F9
}

TEST_CASE("FqField F9 arithmetic") {
  FqField F9(3, 2);
  CHECK(F9.q() == Int(9));
  auto g = F9.gen();
  auto elems = F9.enumerate();
  CHECK(elems.size() == 9);
  // Multiplicative order of the unit group is 8.
  auto x = F9.one();
  int ord = 0;
  auto t = g;
  for (int i = 1; i <= 9; ++i) {
    if (F9.eq(t, F9.one())) {
      ord = i;
      break;
    }
    t = F9.mul(t, g);
  }
  CHECK((8 % ord) == 0);
  for (auto& e : elems) {
    if (F9.is_zero(e)) continue;
    CHECK(F9.eq(F9.mul(e, F9.inv(e)), F9.one()));
    CHECK(F9.eq(F9.frobenius(e, 2), e));  // x^(q) = x
  }
  (void)x;
}

TEST_CASE("saturate_rows gives a p-saturated lattice basis") {
  Matrix<Rational> m(2, 3, Rational(0));
  m(0, 0) = Rational(2);
  m(0, 1) = Rational(4);
  m(0, 2) = Rational(6);
  m(1, 0) = Rational(0);
  m(1, 1) = Rational(2);
  m(1, 2) = Rational(2);
  auto s = saturate_rows(m, Int(2));
  CHECK(s.rows() == 2);
  // saturation contains (1,2,3) and (0,1,1)
  Matrix<Rational> expect(2, 3, Rational(0));
  expect(0, 0) = Rational(1);
  expect(0, 1) = Rational(2);
  expect(0, 2) = Rational(3);
  expect(1, 1) = Rational(1);
  expect(1, 2) = Rational(1);
  CHECK(same_p_lattice(s, expect, Int(2)));
}
