#ifndef HALL_PARSE_HPP
#define HALL_PARSE_HPP

// Textual grammar for coefficients and algebra elements.
//
// Coefficients: rational functions in P (L is shorthand for P^2) with
// + - * /, integer powers via ^, and parentheses.
// Elements: linear combinations  [coeff '*'] basis  joined by + and -, with
//   d[CLASS]   dbar[CLASS]   s[CLASS]    CLASS = comma list of [dimvec]
//   a[DIMVEC]  b{CLASS}      c{CLASS}
// Canonical printing uses the same grammar, basis keys in canonical order.

#include "hall/quantumhall.hpp"
#include "hall/twistedalg.hpp"

namespace hall {

RatFunc parse_ratfunc(const std::string& text);

CFElem parse_cf_elem(const std::string& text, const HallTable& t);
SFElem parse_sf_elem(const std::string& text, const HallTable& t);
AElem parse_a_elem(const std::string& text, int rank);
BElem parse_b_elem(const std::string& text, int rank);
CElem parse_c_elem(const std::string& text, int rank);

std::string print_ratfunc(const RatFunc& r);
std::string print_cf_elem(const CFElem& e, const HallTable& t);
std::string print_sf_elem(const SFElem& e, const HallTable& t);
std::string print_a_elem(const AElem& e);
std::string print_b_elem(const BElem& e);
std::string print_c_elem(const CElem& e);

// Row-major integer (or half-integer) matrix: rows separated by ';',
// entries by ','.
EulerForm parse_chi_matrix(const std::string& text);

}  // namespace hall

#endif
