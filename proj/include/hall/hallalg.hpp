#ifndef HALL_HALLALG_HPP
#define HALL_HALLALG_HPP

// The degenerate (q = 1) Ringel-Hall algebra over a finished count table:
// product, Lie bracket of indecomposables, direct-sum and series-parallel
// poset products, comultiplication, PBW and Serre checks, and the flag-module
// actions.

#include <map>

#include "hall/hallnum.hpp"
#include "hall/poset.hpp"

namespace hall {

// Sparse element of the constructible-function algebra: class id -> rational.
class CFElem {
 public:
  CFElem() = default;
  static CFElem delta(int cls) {
    CFElem e;
    e.c_[cls] = 1;
    return e;
  }

  const std::map<int, BigRat>& coeffs() const { return c_; }
  BigRat at(int cls) const {
    auto it = c_.find(cls);
    return it == c_.end() ? BigRat(0) : it->second;
  }
  void add(int cls, const BigRat& v) {
    if (v == 0) return;
    auto it = c_.try_emplace(cls, 0).first;
    it->second += v;
    it->second.canonicalize();
    if (it->second == 0) c_.erase(it);
  }
  bool is_zero() const { return c_.empty(); }
  bool operator==(const CFElem& o) const { return c_ == o.c_; }

  friend CFElem operator+(const CFElem& a, const CFElem& b) {
    CFElem r = a;
    for (const auto& [k, v] : b.c_) r.add(k, v);
    return r;
  }
  friend CFElem operator-(const CFElem& a, const CFElem& b) {
    CFElem r = a;
    for (const auto& [k, v] : b.c_) r.add(k, -v);
    return r;
  }
  friend CFElem operator*(const BigRat& s, const CFElem& a) {
    CFElem r;
    for (const auto& [k, v] : a.c_) r.add(k, s * v);
    return r;
  }

 private:
  std::map<int, BigRat> c_;
};

CFElem cf_unit(const HallTable& t);

// (f*g)(Z) = sum over X,Y of h^Z_{X,Y}(1) f(X) g(Y); throws BoundError when
// a product weight leaves the table.
CFElem cf_mult(const CFElem& f, const CFElem& g, const HallTable& t);
CFElem cf_bracket(const CFElem& f, const CFElem& g, const HallTable& t);

// Commutative product with structure constants from the q=1 splitting counts.
CFElem cf_direct_sum(const CFElem& f, const CFElem& g, const HallTable& t);

// Evaluates a series-parallel certificate: chains via cf_mult, antichains via
// cf_direct_sum, nested by substitution.  inputs are indexed by leaf number.
CFElem cf_poset_product(const SPCert& cert, const std::vector<CFElem>& inputs,
                        const HallTable& t);

using CFTensor = std::map<std::pair<int, int>, BigRat>;
using CFTensor3 = std::map<std::tuple<int, int, int>, BigRat>;

// Delta(delta_Z) = sum over ordered Krull-Schmidt splittings X + Y = Z.
CFTensor cf_comult(const CFElem& f, const HallTable& t);
BigRat cf_counit(const CFElem& f, const HallTable& t);
CFTensor cf_tensor_mult(const CFTensor& a, const CFTensor& b, const HallTable& t);
CFTensor3 cf_comult_then_left(const CFElem& f, const HallTable& t);   // (Delta x id) Delta
CFTensor3 cf_comult_then_right(const CFElem& f, const HallTable& t);  // (id x Delta) Delta

bool cf_supported_on_indecomposables(const CFElem& f, const HallTable& t);

// Flag module: sparse map (ambient class id, pair-class index) -> rational.
class FlagElem {
 public:
  FlagElem() = default;
  static FlagElem delta(int ambient, int pair) {
    FlagElem e;
    e.c_[{ambient, pair}] = 1;
    return e;
  }
  const std::map<std::pair<int, int>, BigRat>& coeffs() const { return c_; }
  void add(std::pair<int, int> key, const BigRat& v) {
    if (v == 0) return;
    auto it = c_.try_emplace(key, 0).first;
    it->second += v;
    it->second.canonicalize();
    if (it->second == 0) c_.erase(it);
  }
  bool is_zero() const { return c_.empty(); }
  bool operator==(const FlagElem& o) const { return c_ == o.c_; }

 private:
  std::map<std::pair<int, int>, BigRat> c_;
};

// Left action: (f *_L r)(S in Z) integrates f(S'/S) r(S' in Z) over
// intermediates S' above S.  Right action mirrors it below S'.
FlagElem cf_flag_left(const CFElem& f, const FlagElem& r, const HallTable& t);
FlagElem cf_flag_right(const FlagElem& r, const CFElem& f, const HallTable& t);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// PBW: for every weight in the table, the matrix of ordered monomials
// delta_{X_1} * ... * delta_{X_n} against the class basis is square and
// invertible; the multiset ordering is lexicographic or its reverse.
CheckResult cf_pbw_check(const HallTable& t, bool reversed_order);

// (ad delta_{V_i})^{1 - a_ij} delta_{V_j} = 0; needs the table to contain
// weight (1 - a_ij) e_i + e_j.
CheckResult cf_serre_pair(const HallTable& t, int i, int j);

}  // namespace hall

#endif
