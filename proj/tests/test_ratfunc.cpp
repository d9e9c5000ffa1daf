#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hall/ratfunc.hpp"

using namespace hall;

static RatFunc P() { return RatFunc::P(); }
static RatFunc L() { return RatFunc::L(); }

TEST_CASE("field operations") {
  CHECK(P() + P() == RatFunc(2) * P());
  // L * L^-1 = 1
  CHECK(L() * L().inv() == RatFunc(1));
  // inv(L-1) = 1/(P^2-1)
  RatFunc x = (L() - RatFunc(1)).inv();
  CHECK(x.den() == (L() - RatFunc(1)).num());
  CHECK(x.num() == IntPoly(BigInt(1)));
  CHECK_THROWS_AS(RatFunc(0).inv(), DomainError);
}

TEST_CASE("canonical form idempotence on random fractions") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BigInt> n, d;
    for (int i = 0; i < 5; ++i) n.push_back(BigInt(coef(rng)));
    for (int i = 0; i < 4; ++i) d.push_back(BigInt(coef(rng)));
    IntPoly np(n), dp(d);
    if (dp.is_zero()) continue;
    RatFunc once(np, dp);
    RatFunc twice(once.num(), once.den());
    CHECK(once == twice);
    // denominator leading coefficient positive, gcd 1
    CHECK(once.den().leading() > 0);
    CHECK(IntPoly::gcd(once.num(), once.den()).degree() <= 0);
    if (!once.is_zero()) {
      IntPoly g = IntPoly::gcd(once.num(), once.den());
      CHECK(g.leading() == 1);
    }
  }
}

TEST_CASE("gauss binomials") {
  CHECK(gauss_binomial(2, 1) == L() + RatFunc(1));
  CHECK(gauss_binomial(3, 0) == RatFunc(1));
  // (4,2) = (L^2+1)(L^2+L+1), via the independent expansion
  RatFunc expect = (L() * L() + RatFunc(1)) * (L() * L() + L() + RatFunc(1));
  CHECK(gauss_binomial(4, 2) == expect);
  CHECK_THROWS_AS(gauss_binomial(2, 3), DomainError);

  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      CHECK(gauss_binomial(n, k) == gauss_binomial(n, n - k));
      // pi specialization is the binomial coefficient
      BigInt num, den(1);
      mpz_bin_uiui(num.get_mpz_t(), n, k);
      CHECK(gauss_binomial(n, k).pi_eval() == BigRat(num, den));
    }
}

TEST_CASE("lambda-circ membership") {
  // (L^-3 - 1)/(L - 1) has no pole at L=1 after cancellation
  RatFunc x = (RatFunc::L(-3) - RatFunc(1)) / (L() - RatFunc(1));
  CHECK(x.is_lambda_circ());
  CHECK(x.pi_eval() == BigRat(-3));
  CHECK_FALSE((RatFunc(1) / (L() - RatFunc(1))).is_lambda_circ());
  CHECK(RatFunc::L(-5).is_lambda_circ());
  CHECK(RatFunc(BigRat(7, 3)).pi_eval() == BigRat(7, 3));
}

TEST_CASE("pi is a ring morphism on the finite-at-1 subring") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  auto random_circ = [&]() {
    // polynomial in P over (L^2+L+1): always finite at P = +-1
    std::vector<BigInt> n;
    for (int i = 0; i < 4; ++i) n.push_back(BigInt(coef(rng)));
    RatFunc num(IntPoly(n), IntPoly(BigInt(1)));
    RatFunc den = L() * L() + L() + RatFunc(1);
    return num / den;
  };
  for (int t = 0; t < 100; ++t) {
    RatFunc a = random_circ(), b = random_circ();
    REQUIRE(a.is_lambda_circ());
    REQUIRE(b.is_lambda_circ());
    CHECK((a * b).pi_eval() == a.pi_eval() * b.pi_eval());
    CHECK((a + b).pi_eval() == a.pi_eval() + b.pi_eval());
  }
}

TEST_CASE("specialization") {
  CHECK((L() + RatFunc(1)).specialize(BigRat(2)) == BigRat(5));  // at P=2, L=4
  CHECK((P() - RatFunc(1)).specialize(BigRat(1)) == BigRat(0));
  CHECK_THROWS_AS(P().inv().specialize(BigRat(0)), DomainError);
}

TEST_CASE("P inversion substitution") {
  RatFunc x = (P() - P().inv()) / (P() + RatFunc(1));
  RatFunc y = x.subst_p_inverse();
  // substituting twice is the identity
  CHECK(y.subst_p_inverse() == x);
  // spot check at P = 3 vs 1/3
  CHECK(y.specialize(BigRat(3)) == x.specialize(BigRat(1, 3)));
}
