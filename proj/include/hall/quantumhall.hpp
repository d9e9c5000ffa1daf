#ifndef HALL_QUANTUMHALL_HPP
#define HALL_QUANTUMHALL_HPP

// The finite-support stack-function Hall algebra over Q(P): generic structure
// constants with a mandatory dual-route cross-check, quantum Serre relations,
// composition-algebra spans, the integral identities and the grading
// morphism into the twisted A algebra.

#include "hall/hallalg.hpp"
#include "hall/twistedalg.hpp"

namespace hall {

// Sparse element on the s_[X] basis with coefficients in Q(P).
class SFElem {
 public:
  SFElem() = default;
  static SFElem s(int cls) {
    SFElem e;
    e.c_[cls] = RatFunc(1);
    return e;
  }
  const std::map<int, RatFunc>& coeffs() const { return c_; }
  RatFunc at(int cls) const {
    auto it = c_.find(cls);
    return it == c_.end() ? RatFunc() : it->second;
  }
  void add(int cls, const RatFunc& v) {
    if (v.is_zero()) return;
    auto it = c_.try_emplace(cls, RatFunc()).first;
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
  bool is_zero() const { return c_.empty(); }
  bool operator==(const SFElem& o) const { return c_ == o.c_; }
  friend SFElem operator+(const SFElem& a, const SFElem& b) {
    SFElem r = a;
    for (const auto& [k, v] : b.c_) r.add(k, v);
    return r;
  }
  friend SFElem operator-(const SFElem& a, const SFElem& b) {
    SFElem r = a;
    for (const auto& [k, v] : b.c_) r.add(k, -v);
    return r;
  }
  friend SFElem operator*(const RatFunc& s, const SFElem& a) {
    SFElem r;
    for (const auto& [k, v] : a.c_) r.add(k, s * v);
    return r;
  }

 private:
  std::map<int, RatFunc> c_;
};

SFElem sf_unit(const HallTable& t);
// The normalized class vector: AutPoly(X)(L)^{-1} s_[X].
SFElem sf_dbar(const HallTable& t, int cls);

// s_X * s_Y = sum_Z #E_Z(X,Y)(L) L^{-hom(Y,X)} s_Z, always cross-validated
// against the subobject route h^Z_{X,Y}(L) AutX(L) AutY(L) / AutZ(L).
SFElem sf_mult(const SFElem& f, const SFElem& g, const HallTable& t);

// Ringel-twist companion product x o y = P^{-chi(|x|,|y|)} x * y on graded
// pieces; this is the multiplication in which the quantum Serre relations
// hold (their proof is a twisted-Hall-algebra statement, and the plain
// product satisfies only the asymmetric integral-power variant).
SFElem sf_mult_twisted(const SFElem& f, const SFElem& g, const HallTable& t);

// Direct-sum (split-configuration) product: s_X . s_Y = s_{X + Y}.
SFElem sf_direct_sum(const SFElem& f, const SFElem& g, const HallTable& t);
SFElem sf_poset_product(const SPCert& cert, const std::vector<SFElem>& inputs,
                        const HallTable& t);

// The integral: sum of the coefficients on the s basis.
RatFunc sf_integral(const SFElem& f);

// Coefficientwise evaluation at L = 1 after Aut-normalization: sends
// dbar-combinations to the q=1 algebra's class basis.
CFElem sf_pi_to_cf(const SFElem& f, const HallTable& t);

// Grading morphism into the twisted A algebra of the quiver Euler form.
AElem sf_phi_lambda(const SFElem& f, const HallTable& t);

// Quantum Serre relation for one vertex pair (Gauss coefficients, half
// powers of L realized as powers of P); also reports the classical limit.
CheckResult qserre_pair(const HallTable& t, int i, int j);

// Span of all words in the normalized simples of each weight: the rank over
// Q(P) must match the number of classes of that weight.
CheckResult composition_span(const HallTable& t);

}  // namespace hall

#endif
