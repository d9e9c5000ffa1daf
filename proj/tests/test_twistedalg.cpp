#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hall/twistedalg.hpp"

using namespace hall;

namespace {

EulerForm a2_form() {
  return EulerForm::from_quiver(Quiver::parse("vertices 2\narrow 1 2\n"));
}

EulerForm random_form(std::mt19937_64& rng, int rank) {
  std::uniform_int_distribution<int> entry(-2, 2);
  std::vector<std::vector<BigRat>> m(rank, std::vector<BigRat>(rank));
  for (auto& row : m)
    for (auto& e : row) e = entry(rng);
  return EulerForm::explicit_form(m);
}

const std::vector<DimVec> kSample = {{1, 0}, {0, 1}, {1, 1}};

IKClass random_class(std::mt19937_64& rng, size_t max_size) {
  std::uniform_int_distribution<size_t> len(0, max_size);
  std::uniform_int_distribution<size_t> pick(0, kSample.size() - 1);
  IKClass k;
  size_t n = len(rng);
  for (size_t i = 0; i < n; ++i) k.push_back(kSample[pick(rng)]);
  return ik_normalize(std::move(k));
}

}  // namespace

TEST_CASE("A algebra") {
  EulerForm chi = a2_form();
  DimVec e1 = {1, 0}, e2 = {0, 1};
  AElem p = a_mult(a_basis(e1), a_basis(e2), chi);
  // chi(e2, e1) = 0, so no twist
  CHECK(p == a_basis(DimVec{1, 1}));
  AElem q = a_mult(a_basis(e2), a_basis(e1), chi);
  CHECK(q.at({DimVec{1, 1}}) == RatFunc::L());  // L^{-chi(e1,e2)} = L
  // identity and associativity instance
  DimVec zero = {0, 0};
  CHECK(a_mult(a_basis(zero), p, chi) == p);
  AElem lhs = a_mult(a_mult(a_basis(e1), a_basis(e2), chi), a_basis(e1), chi);
  AElem rhs = a_mult(a_basis(e1), a_mult(a_basis(e2), a_basis(e1), chi), chi);
  CHECK(lhs == rhs);
}

TEST_CASE("A poset operation") {
  EulerForm chi = a2_form();
  DimVec e1 = {1, 0}, e2 = {0, 1};
  std::vector<AElem> in = {a_basis(e1), a_basis(e2)};
  CHECK(a_poset_op(Poset::chain(2), in, chi) == a_mult(in[0], in[1], chi));
  AElem anti = a_poset_op(Poset::antichain(2), in, chi);
  CHECK(anti == a_basis(DimVec{1, 1}));

  // the N poset on 4 elements: 0<2, 0<3, 1<3
  Poset n4 = Poset::antichain(4);
  n4.leq[0][2] = n4.leq[0][3] = n4.leq[1][3] = 1;
  std::vector<AElem> in4 = {a_basis(e1), a_basis(e1), a_basis(e2), a_basis(e2)};
  AElem r = a_poset_op(n4, in4, chi);
  REQUIRE(r.coeffs().size() == 1);
  // single L power on a^{(2,2)}: exponent -(chi(e2,e1)*2 + chi(e2,e1)) = 0... compute
  BigRat expo = -(chi.apply(e2, e1) + chi.apply(e2, e1) + chi.apply(e2, e1));
  CHECK(r.at({DimVec{2, 2}}) == RatFunc::P(static_cast<int>(expo.get_num().get_si()) * 2));

  // substitution identity: chain(antichain(0,1), 2) via certificate equals
  // the direct formula on the induced poset
  SPCert cert = SPCert::make_chain(
      {SPCert::make_antichain({SPCert::make_leaf(0), SPCert::make_leaf(1)}),
       SPCert::make_leaf(2)});
  Poset p3 = replay_certificate(cert, 3);
  std::vector<AElem> in3 = {a_basis(e1), a_basis(e2), a_basis(e1)};
  AElem via_poset = a_poset_op(p3, in3, chi);
  AElem via_steps = a_mult(a_poset_op(Poset::antichain(2), {in3[0], in3[1]}, chi), in3[2], chi);
  CHECK(via_poset == via_steps);
}

TEST_CASE("B multiplication in both modes") {
  EulerForm chi = a2_form();
  DimVec a = {1, 0}, b = {0, 1};
  for (BMode mode : {BMode::Sum, BMode::Graph}) {
    BElem p = b_mult(b_singleton(a), b_singleton(b), chi, mode);
    // chi(b, a) = 0 kills the merged term entirely
    CHECK(p == b_basis({a, b}));
    BElem q = b_mult(b_singleton(b), b_singleton(a), chi, mode);
    CHECK(q.at({dim_add(a, b)}) == (RatFunc::L() - RatFunc(1)) / (RatFunc::L() - RatFunc(1)) *
                                       (RatFunc::L() - RatFunc(1)).inv() *
                                       (RatFunc::L(1) - RatFunc(1)));
    // i.e. (L^{-chi(a,b)} - 1)/(L-1) with chi(a,b) = -1: (L - 1)/(L - 1) = 1
    CHECK(q.at({dim_add(a, b)}) == RatFunc(1));
    CHECK(q.at(ik_normalize({a, b})) == RatFunc(1));
    // identity
    BElem unit = BElem::basis({});
    CHECK(b_mult(unit, p, chi, mode) == p);
    CHECK(b_mult(p, unit, chi, mode) == p);
  }
}

TEST_CASE("closed-form bracket on the B side") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    EulerForm chi = random_form(rng, 2);
    DimVec a = kSample[rng() % 3], b = kSample[rng() % 3];
    BElem lhs = b_mult(b_singleton(a), b_singleton(b), chi, BMode::Graph) -
                b_mult(b_singleton(b), b_singleton(a), chi, BMode::Graph);
    CHECK(lhs == ind_bracket_b(a, b, chi));
  }
}

TEST_CASE("sum mode equals graph mode") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    EulerForm chi = random_form(rng, 2);
    BElem x = BElem::basis(random_class(rng, 3));
    BElem y = BElem::basis(random_class(rng, 3));
    CHECK(b_mult(x, y, chi, BMode::Sum) == b_mult(x, y, chi, BMode::Graph));
  }
}

TEST_CASE("B coefficients stay finite at L=1") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    EulerForm chi = random_form(rng, 2);
    BElem p = b_mult(BElem::basis(random_class(rng, 3)), BElem::basis(random_class(rng, 3)), chi,
                     BMode::Graph);
    CHECK(b_all_lambda_circ(p));
  }
}

TEST_CASE("C multiplication") {
  EulerForm chi = a2_form();
  DimVec a = {1, 0}, b = {0, 1};
  CElem p = c_mult(c_singleton(a), c_singleton(b), chi);
  CHECK(p.at(ik_normalize({a, b})) == 1);
  CHECK(p.at({dim_add(a, b)}) == -chi.apply(b, a));
  CElem unit = CElem::basis({});
  CHECK(c_mult(unit, p, chi) == p);
  // closed-form bracket at L = 1
  CElem br = c_mult(c_singleton(a), c_singleton(b), chi) -
             c_mult(c_singleton(b), c_singleton(a), chi);
  CHECK(br == ind_bracket_c(a, b, chi));
}

TEST_CASE("associativity of A, B (both modes), C on random triples") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    EulerForm chi = random_form(rng, 2);
    IKClass ka = random_class(rng, 2), kb = random_class(rng, 2), kc = random_class(rng, 2);
    BElem ba = BElem::basis(ka), bb = BElem::basis(kb), bc = BElem::basis(kc);
    for (BMode m : {BMode::Sum, BMode::Graph})
      CHECK(b_mult(b_mult(ba, bb, chi, m), bc, chi, m) ==
            b_mult(ba, b_mult(bb, bc, chi, m), chi, m));
    CElem ca = CElem::basis(ka), cb = CElem::basis(kb), cc = CElem::basis(kc);
    CHECK(c_mult(c_mult(ca, cb, chi), cc, chi) == c_mult(ca, c_mult(cb, cc, chi), chi));
    DimVec va = kSample[rng() % 3], vb = kSample[rng() % 3], vc = kSample[rng() % 3];
    AElem aa = a_basis(va), ab = a_basis(vb), ac = a_basis(vc);
    CHECK(a_mult(a_mult(aa, ab, chi), ac, chi) == a_mult(aa, a_mult(ab, ac, chi), chi));
  }
}

TEST_CASE("pi is an algebra morphism") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    EulerForm chi = random_form(rng, 2);
    BElem x = BElem::basis(random_class(rng, 2));
    BElem y = BElem::basis(random_class(rng, 2));
    BElem prod = b_mult(x, y, chi, BMode::Graph);
    REQUIRE(b_all_lambda_circ(prod));
    CHECK(pi_morphism(prod) == c_mult(pi_morphism(x), pi_morphism(y), chi));
  }
  // explicit pole rejection
  BElem bad;
  bad.add({DimVec{1, 0}}, (RatFunc::L() - RatFunc(1)).inv());
  CHECK_THROWS_AS(pi_morphism(bad), DomainError);
}

TEST_CASE("delta to the A algebra is a morphism") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    EulerForm chi = random_form(rng, 2);
    BElem x = BElem::basis(random_class(rng, 2));
    BElem y = BElem::basis(random_class(rng, 2));
    AElem lhs = delta_BA(b_mult(x, y, chi, BMode::Graph), 2);
    AElem rhs = a_mult(delta_BA(x, 2), delta_BA(y, 2), chi);
    CHECK(lhs == rhs);
  }
  EulerForm chi = a2_form();
  DimVec a = {1, 0};
  AElem d = delta_BA(b_singleton(a), 2);
  CHECK(d.at({a}) == (RatFunc::L() - RatFunc(1)).inv());
  CHECK(delta_BA(BElem::basis({}), 2) == a_basis(DimVec{0, 0}));
}

TEST_CASE("rescaled bases") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    EulerForm chi = random_form(rng, 2);
    DimVec a = kSample[rng() % 3], b = kSample[rng() % 3];
    // a-tilde product depends only on the antisymmetrization
    AElem p = a_mult(a_tilde(a, chi), a_tilde(b, chi), chi);
    BigRat anti = chi.antisym(a, b);
    AElem expect = RatFunc::P(static_cast<int>(anti.get_num().get_si() * 2 / 2) *
                              2 / 2 * 2) *  // P^{2*anti/2}... exponent is anti in P^2? no:
                   a_tilde(dim_add(a, b), chi);
    // the coefficient is P^{chi(a,b)-chi(b,a)} as a power of P... in L-halves
    AElem expect2 = RatFunc::P(static_cast<int>(anti.get_num().get_si())) *
                    a_tilde(dim_add(a, b), chi);
    CHECK(p == expect2);
    (void)expect;

    // symmetric perturbation leaves the a-tilde product alone
    std::vector<std::vector<long>> s(2, std::vector<long>(2));
    for (auto& row : s)
      for (auto& e : row) e = static_cast<long>(rng() % 5) - 2;
    EulerForm chi2 = chi.plus_symmetric(s);
    AElem p2 = a_mult(a_tilde(a, chi2), a_tilde(b, chi2), chi2);
    CHECK(p2.at({dim_add(a, b)}) / a_tilde(dim_add(a, b), chi2).at({dim_add(a, b)}) ==
          p.at({dim_add(a, b)}) / a_tilde(dim_add(a, b), chi).at({dim_add(a, b)}));

    // b-tilde bracket: coefficient from the displayed formula, invariant under
    // the perturbation and under P -> P^{-1}
    auto btilde_bracket_coeff = [](const DimVec& x, const DimVec& y, const EulerForm& f) {
      BElem lhs = b_mult(b_tilde(x, f), b_tilde(y, f), f, BMode::Graph) -
                  b_mult(b_tilde(y, f), b_tilde(x, f), f, BMode::Graph);
      RatFunc c = lhs.at({dim_add(x, y)});
      RatFunc unit = b_tilde(dim_add(x, y), f).at({dim_add(x, y)});
      return c / unit;
    };
    RatFunc c1 = btilde_bracket_coeff(a, b, chi);
    RatFunc c2 = btilde_bracket_coeff(a, b, chi2);
    CHECK(c1 == c2);
    CHECK(c1 == c1.subst_p_inverse());
    long m = static_cast<long>(anti.get_num().get_si());
    RatFunc paper = (RatFunc::P(static_cast<int>(m)) - RatFunc::P(static_cast<int>(-m))) /
                    (RatFunc::P(1) - RatFunc::P(-1));
    CHECK(c1 == paper);

    // the Calabi-Yau bracket only sees the antisymmetrization
    CHECK(ind_bracket_cy(a, b, chi) == ind_bracket_cy(a, b, chi2));
  }
}

TEST_CASE("bracket antisymmetry and jacobi via commutators") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    EulerForm chi = random_form(rng, 2);
    DimVec a = kSample[rng() % 3], b = kSample[rng() % 3], c = kSample[rng() % 3];

    auto bbr = [&](const BElem& x, const BElem& y) {
      return b_mult(x, y, chi, BMode::Graph) - b_mult(y, x, chi, BMode::Graph);
    };
    auto cbr = [&](const CElem& x, const CElem& y) {
      return c_mult(x, y, chi) - c_mult(y, x, chi);
    };
    BElem xa = b_singleton(a), xb = b_singleton(b), xc = b_singleton(c);
    // closure on singletons
    BElem bab = bbr(xa, xb);
    for (const auto& [k, v] : bab.coeffs()) {
      (void)v;
      CHECK(k.size() == 1);
    }
    BElem jb = bbr(xa, bbr(xb, xc)) + bbr(xb, bbr(xc, xa)) + bbr(xc, bbr(xa, xb));
    CHECK(jb.is_zero());
    CHECK((bbr(xa, xb) + bbr(xb, xa)).is_zero());

    CElem ya = c_singleton(a), yb = c_singleton(b), yc = c_singleton(c);
    CElem cab = cbr(ya, yb);
    for (const auto& [k, v] : cab.coeffs()) {
      (void)v;
      CHECK(k.size() == 1);
    }
    CElem jc = cbr(ya, cbr(yb, yc)) + cbr(yb, cbr(yc, ya)) + cbr(yc, cbr(ya, yb));
    CHECK(jc.is_zero());

    // CY bracket with the half antisymmetrization: compute via c_mult on
    // chi/2-antisymmetrized form and compare with the closed form
    std::vector<std::vector<BigRat>> half(2, std::vector<BigRat>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        half[i][j] = (chi.matrix()[i][j] - chi.matrix()[j][i]) / 2;
    EulerForm halfform = EulerForm::explicit_form(half);
    CElem cybr = c_mult(c_singleton(a), c_singleton(b), halfform) -
                 c_mult(c_singleton(b), c_singleton(a), halfform);
    CHECK(cybr == ind_bracket_cy(a, b, chi));
    CElem jcy = [&] {
      auto br = [&](const CElem& x, const CElem& y) {
        return c_mult(x, y, halfform) - c_mult(y, x, halfform);
      };
      return br(ya, br(yb, yc)) + br(yb, br(yc, ya)) + br(yc, br(ya, yb));
    }();
    CHECK(jcy.is_zero());
  }
}

TEST_CASE("enveloping filtration of the B algebra") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    EulerForm chi = random_form(rng, 2);
    std::uniform_int_distribution<size_t> pick(0, kSample.size() - 1);
    for (size_t n = 1; n <= 3; ++n) {
      IKClass kappa;
      for (size_t i = 0; i < n; ++i) kappa.push_back(kSample[pick(rng)]);
      BElem prod = BElem::basis({});
      for (const auto& v : kappa) prod = b_mult(prod, b_singleton(v), chi, BMode::Graph);
      IKClass full = ik_normalize(kappa);
      // leading coefficient 1 straight from Eq-(6.21)-style evaluation: the
      // only partition reaching the full class is the all-singletons one
      CHECK(prod.at(full) == RatFunc(1));
      for (const auto& [k, v] : prod.coeffs()) {
        (void)v;
        CHECK(k.size() <= n);
        if (k.size() == n) CHECK(k == full);
      }
    }
  }
}
