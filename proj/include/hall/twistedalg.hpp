#ifndef HALL_TWISTEDALG_HPP
#define HALL_TWISTEDALG_HPP

// The explicit twisted algebras built from a biadditive form alone: the
// L-power-twisted monoid algebra on dimension vectors, the algebra on
// multisets of nonzero dimension vectors with both the partition-sum and the
// graph-sum multiplication laws, its specialization at L = 1 with the
// spanning-tree law, the morphisms between them, rescaled bases and the
// antisymmetrized-form Lie brackets.

#include <map>

#include "hall/poset.hpp"
#include "hall/quiver.hpp"

namespace hall {

// Multiset of nonzero dimension vectors, kept sorted.
using IKClass = std::vector<DimVec>;

IKClass ik_normalize(IKClass v);            // sorts, rejects zero entries
BigInt ik_aut_order(const IKClass& v);      // product of multiplicities factorial
DimVec ik_sum(const IKClass& v, int rank);
std::string ik_to_string(const IKClass& v);

template <typename Coeff>
class SparseElem {
 public:
  using Map = std::map<std::vector<DimVec>, Coeff>;
  SparseElem() = default;
  static SparseElem basis(std::vector<DimVec> key) {
    SparseElem e;
    e.c_[std::move(key)] = Coeff(1);
    return e;
  }
  const Map& coeffs() const { return c_; }
  Coeff at(const std::vector<DimVec>& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Coeff(0) : it->second;
  }
  void add(const std::vector<DimVec>& k, const Coeff& v) {
    auto it = c_.try_emplace(k, Coeff(0)).first;
    it->second += v;
    normalize_entry(it);
  }
  bool is_zero() const { return c_.empty(); }
  bool operator==(const SparseElem& o) const { return c_ == o.c_; }
  friend SparseElem operator+(const SparseElem& a, const SparseElem& b) {
    SparseElem r = a;
    for (const auto& [k, v] : b.c_) r.add(k, v);
    return r;
  }
  friend SparseElem operator-(const SparseElem& a, const SparseElem& b) {
    SparseElem r = a;
    for (const auto& [k, v] : b.c_) {
      Coeff nv = Coeff(0) - v;
      r.add(k, nv);
    }
    return r;
  }
  friend SparseElem operator*(const Coeff& s, const SparseElem& a) {
    SparseElem r;
    for (const auto& [k, v] : a.c_) r.add(k, s * v);
    return r;
  }

 private:
  void normalize_entry(typename Map::iterator it) {
    if constexpr (std::is_same_v<Coeff, BigRat>) it->second.canonicalize();
    bool zero;
    if constexpr (std::is_same_v<Coeff, BigRat>)
      zero = it->second == 0;
    else
      zero = it->second.is_zero();
    if (zero) c_.erase(it);
  }
  Map c_;
};

// AElem keys are single dimension vectors wrapped in a one-element vector;
// BElem / CElem keys are normalized multiset classes.
using AElem = SparseElem<RatFunc>;
using BElem = SparseElem<RatFunc>;
using CElem = SparseElem<BigRat>;

AElem a_basis(const DimVec& alpha);
BElem b_basis(IKClass k);
BElem b_singleton(const DimVec& alpha);
CElem c_basis(IKClass k);
CElem c_singleton(const DimVec& alpha);

// a^alpha * a^beta = L^{-chi(beta,alpha)} a^{alpha+beta}; half-integer forms
// land in odd powers of P.
AElem a_mult(const AElem& x, const AElem& y, const EulerForm& chi);

// The poset operation on the A side is fully explicit for any finite poset.
AElem a_poset_op(const Poset& p, const std::vector<AElem>& inputs, const EulerForm& chi);

enum class BMode { Sum, Graph };
BElem b_mult(const BElem& x, const BElem& y, const EulerForm& chi, BMode mode);

// Spanning-tree multiplication at L = 1; the form may be rational-valued.
CElem c_mult(const CElem& x, const CElem& y, const EulerForm& chi);

// True iff every coefficient has no pole at L = 1.
bool b_all_lambda_circ(const BElem& x);

// Coefficientwise evaluation at L = 1; rejects non-finite coefficients.
CElem pi_morphism(const BElem& x);

// b_[I,kappa] -> (L-1)^{-|I|} a^{sum kappa}.
AElem delta_BA(const BElem& x, int rank);

// Rescaled basis vectors: P^{-chi(a,a)} a^a and P^{1-chi(a,a)} b^a.
AElem a_tilde(const DimVec& alpha, const EulerForm& chi);
BElem b_tilde(const DimVec& alpha, const EulerForm& chi);

enum class BracketKind { B, C, CY };
// Singleton-class bracket: Eq-(6.20)-style on the B side, its L=1 limit on
// the C side, and the antisymmetrized-form bracket for the Calabi-Yau case.
BElem ind_bracket_b(const DimVec& a, const DimVec& b, const EulerForm& chi);
CElem ind_bracket_c(const DimVec& a, const DimVec& b, const EulerForm& chi);
CElem ind_bracket_cy(const DimVec& a, const DimVec& b, const EulerForm& chi_full);

}  // namespace hall

#endif
