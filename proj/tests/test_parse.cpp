#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hall/parse.hpp"

using namespace hall;

namespace {

const HallTable& a2() {
  static HallTable t = [] {
    HallTableOptions o;
    o.max_dim = {2, 2};
    return build_hall_table(Quiver::parse("vertices 2\narrow 1 2\n"), o);
  }();
  return t;
}

}  // namespace

TEST_CASE("ratfunc expressions") {
  CHECK(parse_ratfunc("L") == RatFunc::L());
  CHECK(parse_ratfunc("P^2") == RatFunc::L());
  CHECK(parse_ratfunc("L^-1") == RatFunc::L(-1));
  CHECK(parse_ratfunc("(L-1)/(L-1)") == RatFunc(1));
  CHECK(parse_ratfunc("3/4") == RatFunc(BigRat(3, 4)));
  CHECK(parse_ratfunc("-P + P") == RatFunc(0));
  CHECK(parse_ratfunc("(P+1)*(P-1)") == RatFunc::L() - RatFunc(1));
  CHECK(parse_ratfunc(" 1 + 2*3 ") == RatFunc(7));
  CHECK_THROWS_AS(parse_ratfunc("P +"), DomainError);
  CHECK_THROWS_AS(parse_ratfunc("Q"), DomainError);
  CHECK_THROWS_AS(parse_ratfunc("1/0"), DomainError);
}

TEST_CASE("ratfunc print/parse round trip") {
  std::vector<RatFunc> cases = {
      RatFunc(0), RatFunc(1), RatFunc(BigRat(-7, 3)), RatFunc::P(3),
      (RatFunc::L() - RatFunc(1)) / (RatFunc::L(2) + RatFunc(1)),
      RatFunc::P(-5) * (RatFunc::P() + RatFunc(2))};
  for (const auto& r : cases) CHECK(parse_ratfunc(print_ratfunc(r)) == r);
}

TEST_CASE("cf elements") {
  const HallTable& t = a2();
  CFElem e = parse_cf_elem("d[[1,0]]", t);
  CHECK(e.coeffs().size() == 1);
  CFElem sum = parse_cf_elem("2*d[[1,0]] - 1/2*d[[1,0],[0,1]] + d[]", t);
  CHECK(sum.at(t.id_of(Label{{1, 0}})) == 2);
  CHECK(sum.at(t.id_of(Label{{0, 1}, {1, 0}})) == BigRat(-1, 2));
  CHECK(sum.at(t.zero_class()) == 1);
  // order of class members does not matter
  CHECK(parse_cf_elem("d[[0,1],[1,0]]", t) == parse_cf_elem("d[[1,0],[0,1]]", t));
  CHECK(parse_cf_elem(print_cf_elem(sum, t), t) == sum);
  CHECK_THROWS_AS(parse_cf_elem("d[[9,9]]", t), BoundError);
  CHECK_THROWS_AS(parse_cf_elem("s[[1,0]]", t), DomainError);
  CHECK_THROWS_AS(parse_cf_elem("L*d[[1,0]]", t), DomainError);
  CHECK_THROWS_AS(parse_cf_elem("", t), DomainError);
}

TEST_CASE("sf elements and dbar") {
  const HallTable& t = a2();
  int v1 = t.id_of(Label{{1, 0}});
  SFElem s = parse_sf_elem("(L-1)*s[[1,1]] + s[[1,0],[0,1]]", t);
  CHECK(s.at(t.id_of(Label{{1, 1}})) == RatFunc::L() - RatFunc(1));
  SFElem d = parse_sf_elem("dbar[[1,0]]", t);
  CHECK(d.at(v1) == (RatFunc::L() - RatFunc(1)).inv());
  CHECK(parse_sf_elem(print_sf_elem(s, t), t) == s);
}

TEST_CASE("twisted algebra elements") {
  AElem a = parse_a_elem("a[1,0] + L*a[0,1]", 2);
  CHECK(a.at({DimVec{0, 1}}) == RatFunc::L());
  CHECK(parse_a_elem(print_a_elem(a), 2) == a);
  CHECK_THROWS_AS(parse_a_elem("a[1,0,0]", 2), DomainError);

  BElem b = parse_b_elem("b{[1,0],[0,1]} - (L-1)*b{[1,1]}", 2);
  CHECK(b.at(ik_normalize({{1, 0}, {0, 1}})) == RatFunc(1));
  CHECK(parse_b_elem(print_b_elem(b), 2) == b);
  CHECK_THROWS_AS(parse_b_elem("b{[0,0]}", 2), DomainError);  // zero member

  CElem c = parse_c_elem("c{} + 3*c{[1,1]}", 2);
  CHECK(c.at({}) == 1);
  CHECK(c.at({DimVec{1, 1}}) == 3);
  CHECK(parse_c_elem(print_c_elem(c), 2) == c);
}

TEST_CASE("chi matrices") {
  EulerForm f = parse_chi_matrix("1,-1;0,1");
  CHECK(f.rank() == 2);
  CHECK(f.apply_int({1, 0}, {0, 1}) == -1);
  EulerForm h = parse_chi_matrix("0,1/2;-1/2,0");
  CHECK(h.apply({1, 0}, {0, 1}) == BigRat(1, 2));
  CHECK_THROWS_AS(parse_chi_matrix("1,2;3"), DomainError);
  CHECK_THROWS_AS(parse_chi_matrix(""), DomainError);
}

TEST_CASE("a worked B product") {
  // chi = [[1,-1],[0,1]]: chi(e2,e1) = 0 kills the merged term
  EulerForm chi = parse_chi_matrix("1,-1;0,1");
  BElem lhsb = parse_b_elem("b{[1,0]}", 2);
  BElem rhsb = parse_b_elem("b{[0,1]}", 2);
  BElem prod = b_mult(lhsb, rhsb, chi, BMode::Graph);
  CHECK(print_b_elem(prod) == "b{[0,1],[1,0]}");
}
