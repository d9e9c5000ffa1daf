#ifndef HALL_HALLNUM_HPP
#define HALL_HALLNUM_HPP

// Turns per-prime counts into exact polynomials in q and assembles them into
// an immutable table: Hall polynomials h^Z_{X,Y}(q), extension-class counts
// #E_Z(X,Y)(q), automorphism orders #Aut(q), direct-sum splitting counts and
// flag tables.  Counts are measured at every default prime, interpolated,
// and re-verified against a fresh count at a held-out prime.

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hall/repfield.hpp"

namespace hall {

struct NotPolynomialError : std::runtime_error {
  explicit NotPolynomialError(const std::string& m) : std::runtime_error(m) {}
};

// Integer polynomial in the count variable q.
class CountPoly {
 public:
  CountPoly() = default;
  explicit CountPoly(BigInt c) { if (c != 0) c_ = {std::move(c)}; }
  explicit CountPoly(std::vector<BigInt> c) : c_(std::move(c)) { trim(); }

  static CountPoly q_power(int e);
  static CountPoly gl_order(int m);  // |GL_m(F_q)| as a polynomial in q

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return c_; }

  BigInt eval(const BigInt& q) const;
  BigInt at_one() const { return eval(1); }
  RatFunc at_L() const;  // substitute q -> P^2

  friend CountPoly operator+(const CountPoly& a, const CountPoly& b);
  friend CountPoly operator-(const CountPoly& a, const CountPoly& b);
  friend CountPoly operator*(const CountPoly& a, const CountPoly& b);
  bool operator==(const CountPoly& o) const = default;

  // Unique interpolating polynomial through the sample points; throws
  // NotPolynomialError when the coefficients are not integers.
  static CountPoly interpolate(const std::vector<std::pair<uint32_t, BigInt>>& samples);

  std::string to_string() const { return to_ratfunc_q_string(); }

 private:
  std::string to_ratfunc_q_string() const;
  void trim();
  std::vector<BigInt> c_;
};

// Extracts a polynomial in q = L from a RatFunc that is a polynomial in P^2.
CountPoly ratfunc_to_countpoly(const RatFunc& r);

struct HallTableOptions {
  DimVec max_dim;
  int sum_bound = -1;  // negative: no bound on the total dimension
  std::vector<uint32_t> primes = {2, 3, 5, 7, 11};
  uint32_t check_prime = 13;
  std::vector<uint32_t> extension_primes = {17, 19};  // one automatic retry
  EnumLimits limits;
  bool parallel = true;
  bool build_flags = true;
  int flag_end_dim_limit = 5;
  uint64_t flag_aut_budget = 1ull << 21;
};

struct FlagPairTable {
  int ambient = -1;                              // class id
  std::vector<std::pair<int, int>> pair_key;     // (sub class id, quotient class id)
  // down[c]: intermediates above the representative of pair class c,
  // keyed by (class id of S'/S, pair class of S').
  std::vector<std::map<std::pair<int, int>, CountPoly>> down;
  // up[c]: subobjects below the representative of pair class c,
  // keyed by (pair class of S, class id of S'/S).
  std::vector<std::map<std::pair<int, int>, CountPoly>> up;
};

class HallTable {
 public:
  struct ClassEntry {
    Label label;
    DimVec dims;
    CountPoly aut;
  };

  Quiver quiver{1, {}};
  EulerForm form = EulerForm::explicit_form({{BigRat(1)}});
  DimVec max_dim;
  int sum_bound = -1;
  std::vector<uint32_t> primes;
  uint32_t check_prime = 0;

  std::vector<ClassEntry> classes;
  std::vector<std::vector<int>> hom;                    // hom[x][y]
  std::map<std::tuple<int, int, int>, CountPoly> hall;  // (x,y,z) -> h^Z_{X,Y}
  std::map<std::tuple<int, int, int>, CountPoly> ext;   // (x,y,z) -> #E_Z(X,Y)
  std::map<std::tuple<int, int, int>, CountPoly> split; // ordered splittings
  std::vector<FlagPairTable> flags;

  int id_of(const Label& l) const;           // -1 when absent
  int zero_class() const { return id_of(Label{}); }
  bool in_bound(const DimVec& d) const;
  long chi(int x, int y) const;              // Euler form on class dims
  int ext1(int x, int y) const;              // hom - chi
  const FlagPairTable* flag_table(int ambient) const;

  // Polynomial-level consistency: Riedtmann and partition identities.
  // Returns a human-readable description of the first violation, or empty.
  std::string consistency_error() const;

  std::string to_json() const;
  static HallTable from_json(const std::string& text);
};

HallTable build_hall_table(const Quiver& q, const HallTableOptions& opt);
// Serial reference path (plain loops, serial enumeration kernel).
HallTable build_hall_table_serial(const Quiver& q, HallTableOptions opt);

}  // namespace hall

#endif
