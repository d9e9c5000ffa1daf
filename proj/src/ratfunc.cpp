#include "hall/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace hall {

void IntPoly::trim() {
  while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
}

IntPoly IntPoly::monomial(const BigInt& c, int deg) {
  if (c == 0) return IntPoly();
  std::vector<BigInt> v(static_cast<size_t>(deg) + 1, BigInt(0));
  v.back() = c;
  return IntPoly(std::move(v));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.coef_.size(), b.coef_.size()), BigInt(0));
  for (size_t i = 0; i < a.coef_.size(); ++i) v[i] += a.coef_[i];
  for (size_t i = 0; i < b.coef_.size(); ++i) v[i] += b.coef_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.coef_.size(), b.coef_.size()), BigInt(0));
  for (size_t i = 0; i < a.coef_.size(); ++i) v[i] += a.coef_[i];
  for (size_t i = 0; i < b.coef_.size(); ++i) v[i] -= b.coef_[i];
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<BigInt> v(a.coef_.size() + b.coef_.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.coef_.size(); ++i)
    for (size_t j = 0; j < b.coef_.size(); ++j) v[i + j] += a.coef_[i] * b.coef_[j];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> v = coef_;
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coef_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  BigInt c = content();
  std::vector<BigInt> v = coef_;
  for (auto& x : v) x /= c;
  return IntPoly(std::move(v));
}

BigRat IntPoly::eval(const BigRat& x) const {
  BigRat r = 0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) r = r * x + BigRat(*it);
  r.canonicalize();
  return r;
}

BigInt IntPoly::eval_int(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) r = r * x + *it;
  return r;
}

IntPoly IntPoly::div_exact(const IntPoly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (is_zero()) return IntPoly();
  // Division over Q, then check integrality and zero remainder.
  std::vector<BigRat> rem(coef_.begin(), coef_.end());
  int dd = d.degree();
  int qd = degree() - dd;
  if (qd < 0) throw InternalCheckError("div_exact: degree too small");
  std::vector<BigRat> q(static_cast<size_t>(qd) + 1, BigRat(0));
  BigRat lead(d.leading());
  for (int i = qd; i >= 0; --i) {
    BigRat c = rem[i + dd] / lead;
    c.canonicalize();
    q[i] = c;
    for (int j = 0; j <= dd; ++j) {
      rem[i + j] -= c * BigRat(d.coeff(j));
      rem[i + j].canonicalize();
    }
  }
  for (const auto& r : rem)
    if (r != 0) throw InternalCheckError("div_exact: nonzero remainder");
  std::vector<BigInt> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) throw InternalCheckError("div_exact: non-integer quotient");
    qi[i] = q[i].get_num();
  }
  return IntPoly(std::move(qi));
}

// Pseudo-remainder of a by b (both nonzero, deg a >= deg b).
static IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
  int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    int shift = a.degree() - db;
    IntPoly t = IntPoly::monomial(a.leading(), shift) * b;
    a = a * IntPoly(b.leading()) - t;
  }
  return a;
}

IntPoly IntPoly::gcd(IntPoly a, IntPoly b) {
  if (a.is_zero() && b.is_zero()) return IntPoly();
  BigInt ca = a.content(), cb = b.content();
  BigInt cg = 0;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.is_zero() || b.is_zero()) {
    IntPoly r = (a.is_zero() ? b : a).primitive_part() * IntPoly(cg);
    if (r.leading() < 0) r = -r;
    return r;
  }
  a = a.primitive_part();
  b = b.primitive_part();
  while (!b.is_zero()) {
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.is_zero()) break;
    IntPoly r = pseudo_rem(a, b).primitive_part();
    a = b;
    b = r;
  }
  IntPoly g = a.primitive_part() * IntPoly(cg);
  if (g.leading() < 0) g = -g;
  return g;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    BigInt c = coeff(i);
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? "-" : "+");
    }
    BigInt ac = abs(c);
    if (i == 0) {
      os << ac.get_str();
    } else {
      if (ac != 1) os << ac.get_str() << "*";
      os << var;
      if (i != 1) os << "^" << i;
    }
  }
  return os.str();
}

RatFunc::RatFunc(const BigRat& q) : num_(BigInt(q.get_num())), den_(BigInt(q.get_den())) {
  canonicalize();
}

RatFunc::RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

void RatFunc::canonicalize() {
  if (den_.is_zero()) throw DomainError("zero denominator");
  if (num_.is_zero()) {
    den_ = IntPoly(BigInt(1));
    return;
  }
  IntPoly g = IntPoly::gcd(num_, den_);
  if (!(g.degree() == 0 && g.leading() == 1)) {
    num_ = num_.div_exact(g);
    den_ = den_.div_exact(g);
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RatFunc RatFunc::P(int power) {
  if (power >= 0) return RatFunc(IntPoly::monomial(BigInt(1), power), IntPoly(BigInt(1)));
  return RatFunc(IntPoly(BigInt(1)), IntPoly::monomial(BigInt(1), -power));
}

RatFunc RatFunc::L(int power) { return P(2 * power); }

RatFunc RatFunc::half_L_power(int twice_power) { return P(twice_power); }

bool RatFunc::is_one() const {
  return num_.degree() == 0 && num_.leading() == 1 && den_.degree() == 0 && den_.leading() == 1;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}
RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e == 0) return RatFunc(BigInt(1));
  RatFunc base = e > 0 ? *this : inv();
  int n = e > 0 ? e : -e;
  RatFunc r(BigInt(1));
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

bool RatFunc::is_lambda_circ() const {
  return den_.eval_int(BigInt(1)) != 0 && den_.eval_int(BigInt(-1)) != 0;
}

BigRat RatFunc::pi_eval() const {
  if (!is_lambda_circ()) throw DomainError("element has a pole at L = 1, not in the L=1-finite subring");
  BigRat r = BigRat(num_.eval_int(BigInt(1))) / BigRat(den_.eval_int(BigInt(1)));
  r.canonicalize();
  return r;
}

BigRat RatFunc::specialize(const BigRat& v) const {
  BigRat d = den_.eval(v);
  if (d == 0) throw DomainError("pole at the evaluation point");
  BigRat r = num_.eval(v) / d;
  r.canonicalize();
  return r;
}

RatFunc RatFunc::subst_p_inverse() const {
  // x(1/P) = (rev num * P^(dd)) / (rev den * P^(dn)) after clearing P powers.
  auto rev = [](const IntPoly& p) {
    std::vector<BigInt> v(p.coefficients().rbegin(), p.coefficients().rend());
    return IntPoly(std::move(v));
  };
  int dn = num_.degree(), dd = den_.degree();
  IntPoly n = rev(num_), d = rev(den_);
  if (dn > dd)
    d = d * IntPoly::monomial(BigInt(1), dn - dd);
  else if (dd > dn)
    n = n * IntPoly::monomial(BigInt(1), dd - dn);
  return RatFunc(n, d);
}

std::string RatFunc::to_string() const {
  std::string n = num_.to_string("P");
  if (is_polynomial()) return n;
  std::string d = den_.to_string("P");
  bool nwrap = num_.degree() > 0;
  bool dwrap = den_.degree() > 0;
  std::string out;
  out += nwrap ? "(" + n + ")" : n;
  out += "/";
  out += dwrap ? "(" + d + ")" : d;
  return out;
}

RatFunc gauss_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw DomainError("gauss_binomial requires 0 <= k <= n");
  RatFunc num(BigInt(1)), den(BigInt(1));
  for (int i = 0; i < k; ++i) {
    num *= RatFunc::L(n - i) - RatFunc(BigInt(1));
    den *= RatFunc::L(i + 1) - RatFunc(BigInt(1));
  }
  RatFunc r = num / den;
  if (!r.is_polynomial()) throw InternalCheckError("gauss_binomial: expected a polynomial in L");
  return r;
}

}  // namespace hall
