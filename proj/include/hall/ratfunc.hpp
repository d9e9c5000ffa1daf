#ifndef HALL_RATFUNC_HPP
#define HALL_RATFUNC_HPP

// Exact coefficient arithmetic for the ring Q(P), P a formal square root of
// the symbol L (so L = P^2).  Everything is kept in canonical form: fractions
// of coprime integer polynomials in P, denominator with positive leading
// coefficient.  Membership in the subring of elements finite at L = 1 and the
// evaluation map to Q are provided alongside.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace hall {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};
struct BoundError : std::runtime_error {
  explicit BoundError(const std::string& m) : std::runtime_error(m) {}
};
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& m) : std::runtime_error(m) {}
};
struct InternalCheckError : std::runtime_error {
  explicit InternalCheckError(const std::string& m) : std::runtime_error(m) {}
};
struct UnsupportedQuiverError : std::runtime_error {
  explicit UnsupportedQuiverError(const std::string& m) : std::runtime_error(m) {}
};

using BigInt = mpz_class;
using BigRat = mpq_class;

// Dense integer polynomial in one variable, no trailing zero coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(const BigInt& c) { if (c != 0) coef_ = {c}; }
  explicit IntPoly(long c) : IntPoly(BigInt(c)) {}
  explicit IntPoly(std::vector<BigInt> c) : coef_(std::move(c)) { trim(); }

  static IntPoly monomial(const BigInt& c, int deg);

  bool is_zero() const { return coef_.empty(); }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }  // -1 for 0
  const std::vector<BigInt>& coefficients() const { return coef_; }
  BigInt coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coef_.size())) ? coef_[i] : BigInt(0);
  }
  BigInt leading() const { return is_zero() ? BigInt(0) : coef_.back(); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const { return coef_ == o.coef_; }

  BigInt content() const;            // gcd of coefficients, >= 0
  IntPoly primitive_part() const;    // this / content, sign of leading kept
  BigRat eval(const BigRat& x) const;
  BigInt eval_int(const BigInt& x) const;

  // Exact division; throws InternalCheckError if the remainder is nonzero.
  IntPoly div_exact(const IntPoly& d) const;

  // gcd over Z[x] (primitive PRS), result with positive leading coefficient.
  static IntPoly gcd(IntPoly a, IntPoly b);

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<BigInt> coef_;  // coef_[i] multiplies var^i
};

// Rational function in P over Q, canonical form.
class RatFunc {
 public:
  RatFunc() : num_(), den_(BigInt(1)) {}                       // zero
  RatFunc(const BigInt& c) : num_(c), den_(BigInt(1)) {}       // NOLINT
  RatFunc(long c) : num_(BigInt(c)), den_(BigInt(1)) {}        // NOLINT
  RatFunc(const BigRat& q);                                    // NOLINT
  RatFunc(IntPoly num, IntPoly den);

  static RatFunc P(int power = 1);      // the symbol P^power (power may be <0)
  static RatFunc L(int power = 1);      // L^power = P^(2 power)
  static RatFunc half_L_power(int twice_power);  // L^(twice_power/2) = P^twice_power

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc inv() const;           // throws DomainError on zero
  RatFunc pow(int e) const;      // e may be negative

  // True iff the element lies in the subring of functions finite at L = 1:
  // the canonical denominator is divisible by neither P-1 nor P+1.
  bool is_lambda_circ() const;

  // Evaluation at P = 1 (equivalently L = 1); requires is_lambda_circ().
  BigRat pi_eval() const;

  // Exact evaluation at P = v; throws DomainError on a pole.
  BigRat specialize(const BigRat& v) const;

  // Substitutes P -> 1/P.
  RatFunc subst_p_inverse() const;

  // True iff denominator is 1 (a polynomial in P).
  bool is_polynomial() const { return den_.degree() == 0 && den_.leading() == 1; }

  std::string to_string() const;   // canonical text, variable named P

 private:
  void canonicalize();
  IntPoly num_, den_;
};

// Gauss polynomial (n over k)_L expanded in P; always a polynomial.
// Throws DomainError unless 0 <= k <= n.
RatFunc gauss_binomial(int n, int k);

}  // namespace hall

#endif
