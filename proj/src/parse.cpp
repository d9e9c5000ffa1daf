#include "hall/parse.hpp"

#include <cctype>
#include <sstream>

namespace hall {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) == 0) {
      pos += w.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw DomainError("parse error at offset " + std::to_string(pos) + ": " + msg);
  }
  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail("expected an integer");
    return std::stol(s.substr(start, pos - start));
  }
};

// --- rational function expressions ---------------------------------------

RatFunc rf_expr(Cursor& c);

RatFunc rf_atom(Cursor& c) {
  if (c.eat('(')) {
    RatFunc r = rf_expr(c);
    c.expect(')');
    return r;
  }
  if (c.eat_word("P")) return RatFunc::P();
  if (c.eat_word("L")) return RatFunc::L();
  char ch = c.peek();
  if (std::isdigit(static_cast<unsigned char>(ch))) return RatFunc(BigInt(c.integer()));
  c.fail("expected P, L, an integer or a parenthesized expression");
}

RatFunc rf_factor(Cursor& c) {
  RatFunc base = rf_atom(c);
  if (c.eat('^')) {
    long e = c.integer();
    return base.pow(static_cast<int>(e));
  }
  return base;
}

RatFunc rf_unary(Cursor& c) {
  if (c.eat('-')) return -rf_unary(c);
  if (c.eat('+')) return rf_unary(c);
  return rf_factor(c);
}

RatFunc rf_term(Cursor& c) {
  RatFunc r = rf_unary(c);
  while (true) {
    if (c.eat('*'))
      r = r * rf_unary(c);
    else if (c.eat('/'))
      r = r / rf_unary(c);
    else
      break;
  }
  return r;
}

RatFunc rf_expr(Cursor& c) {
  RatFunc r = rf_term(c);
  while (true) {
    if (c.eat('+'))
      r += rf_term(c);
    else if (c.eat('-'))
      r -= rf_term(c);
    else
      break;
  }
  return r;
}

// --- element grammar -------------------------------------------------------

DimVec parse_dimvec_body(Cursor& c) {
  // after the opening '['
  DimVec v;
  if (c.eat(']')) return v;
  v.push_back(static_cast<int>(c.integer()));
  while (c.eat(',')) v.push_back(static_cast<int>(c.integer()));
  c.expect(']');
  return v;
}

std::vector<DimVec> parse_class_body(Cursor& c, char close) {
  std::vector<DimVec> vs;
  if (c.eat(close)) return vs;
  while (true) {
    c.expect('[');
    vs.push_back(parse_dimvec_body(c));
    if (!c.eat(',')) break;
  }
  c.expect(close);
  return vs;
}

enum class BasisKind { D, DBar, S, A, B, C };

struct BasisToken {
  BasisKind kind;
  std::vector<DimVec> vecs;  // class members, or the single dim vec for A
};

bool try_parse_basis(Cursor& c, BasisToken& out) {
  size_t save = c.pos;
  if (c.eat_word("dbar[")) {
    out.kind = BasisKind::DBar;
    out.vecs = parse_class_body(c, ']');
    return true;
  }
  c.pos = save;
  if (c.eat_word("d[")) {
    out.kind = BasisKind::D;
    out.vecs = parse_class_body(c, ']');
    return true;
  }
  c.pos = save;
  if (c.eat_word("s[")) {
    out.kind = BasisKind::S;
    out.vecs = parse_class_body(c, ']');
    return true;
  }
  c.pos = save;
  if (c.eat_word("a[")) {
    out.kind = BasisKind::A;
    out.vecs = {parse_dimvec_body(c)};
    return true;
  }
  c.pos = save;
  if (c.eat_word("b{")) {
    out.kind = BasisKind::B;
    out.vecs = parse_class_body(c, '}');
    return true;
  }
  c.pos = save;
  if (c.eat_word("c{")) {
    out.kind = BasisKind::C;
    out.vecs = parse_class_body(c, '}');
    return true;
  }
  c.pos = save;
  return false;
}

// coefficient in front of a basis symbol: a product-level expression
RatFunc parse_coeff_prefix(Cursor& c) {
  RatFunc r = rf_unary(c);
  while (true) {
    if (c.eat('/')) {
      r = r / rf_unary(c);
      continue;
    }
    size_t save = c.pos;
    if (c.eat('*')) {
      BasisToken probe;
      size_t probe_save = c.pos;
      if (try_parse_basis(c, probe)) {
        // the '*' belonged to  coeff * basis; rewind to just after '*'
        c.pos = probe_save;
        return r;
      }
      c.pos = save;
      c.expect('*');
      r = r * rf_unary(c);
      continue;
    }
    break;
  }
  c.fail("expected '* <basis>' after a coefficient");
}

template <typename AddFn>
void parse_linear(const std::string& text, BasisKind expect_a, BasisKind expect_b,
                  AddFn&& addfn) {
  Cursor c{text};
  bool first = true;
  while (!c.eof()) {
    int sign = 1;
    if (c.eat('-'))
      sign = -1;
    else if (c.eat('+')) {
      if (first) c.fail("unexpected leading '+'");
    } else if (!first) {
      c.fail("expected '+' or '-' between terms");
    }
    BasisToken tok;
    RatFunc coeff(BigInt(1));
    if (!try_parse_basis(c, tok)) {
      coeff = parse_coeff_prefix(c);
      if (!try_parse_basis(c, tok)) c.fail("expected a basis symbol");
    }
    if (tok.kind != expect_a && tok.kind != expect_b)
      c.fail("basis symbol does not belong to this algebra");
    if (sign < 0) coeff = -coeff;
    addfn(tok, coeff);
    first = false;
  }
  if (first) throw DomainError("empty element expression");
}

int class_id_or_throw(const HallTable& t, std::vector<DimVec> vecs) {
  for (auto& v : vecs)
    if (static_cast<int>(v.size()) != t.quiver.vertex_count())
      throw DomainError("dimension vector rank does not match the table");
  std::sort(vecs.begin(), vecs.end());
  int id = t.id_of(vecs);
  if (id < 0) throw BoundError("class " + label_to_string(vecs) + " is not in the table");
  return id;
}

std::string coeff_prefix_string(const RatFunc& r) {
  if (r.is_one()) return "";
  std::string s = r.to_string();
  bool needs_parens = false;
  for (size_t i = 0; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-' || s[i] == '/') && i > 0) needs_parens = true;
  if (s[0] == '-' && s.find_first_of("+-/", 1) == std::string::npos) needs_parens = false;
  return (needs_parens ? "(" + s + ")" : s) + "*";
}

std::string vecs_string(const std::vector<DimVec>& vecs) {
  std::string s;
  for (size_t i = 0; i < vecs.size(); ++i) {
    if (i) s += ",";
    s += dim_to_string(vecs[i]);
  }
  return s;
}

template <typename Map, typename KeyFn>
std::string print_linear(const Map& coeffs, KeyFn&& keyfn) {
  if (coeffs.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, v] : coeffs) {
    if (!first) out += " + ";
    out += keyfn(k, v);
    first = false;
  }
  return out;
}

}  // namespace

RatFunc parse_ratfunc(const std::string& text) {
  Cursor c{text};
  RatFunc r = rf_expr(c);
  if (!c.eof()) c.fail("trailing input");
  return r;
}

CFElem parse_cf_elem(const std::string& text, const HallTable& t) {
  CFElem e;
  parse_linear(text, BasisKind::D, BasisKind::D, [&](const BasisToken& tok, const RatFunc& co) {
    if (!co.num().is_zero() && co.num().degree() > 0)
      throw DomainError("q=1 algebra takes rational number coefficients");
    if (co.den().degree() > 0)
      throw DomainError("q=1 algebra takes rational number coefficients");
    BigRat r(co.num().coeff(0), co.den().coeff(0));
    r.canonicalize();
    e.add(class_id_or_throw(t, tok.vecs), r);
  });
  return e;
}

SFElem parse_sf_elem(const std::string& text, const HallTable& t) {
  SFElem e;
  parse_linear(text, BasisKind::S, BasisKind::DBar,
               [&](const BasisToken& tok, const RatFunc& co) {
                 int id = class_id_or_throw(t, tok.vecs);
                 if (tok.kind == BasisKind::DBar)
                   e.add(id, co * t.classes[id].aut.at_L().inv());
                 else
                   e.add(id, co);
               });
  return e;
}

AElem parse_a_elem(const std::string& text, int rank) {
  AElem e;
  parse_linear(text, BasisKind::A, BasisKind::A, [&](const BasisToken& tok, const RatFunc& co) {
    if (static_cast<int>(tok.vecs[0].size()) != rank)
      throw DomainError("dimension vector rank does not match the form");
    e.add({tok.vecs[0]}, co);
  });
  return e;
}

BElem parse_b_elem(const std::string& text, int rank) {
  BElem e;
  parse_linear(text, BasisKind::B, BasisKind::B, [&](const BasisToken& tok, const RatFunc& co) {
    for (const auto& v : tok.vecs)
      if (static_cast<int>(v.size()) != rank)
        throw DomainError("dimension vector rank does not match the form");
    e.add(ik_normalize(tok.vecs), co);
  });
  return e;
}

CElem parse_c_elem(const std::string& text, int rank) {
  CElem e;
  parse_linear(text, BasisKind::C, BasisKind::C, [&](const BasisToken& tok, const RatFunc& co) {
    for (const auto& v : tok.vecs)
      if (static_cast<int>(v.size()) != rank)
        throw DomainError("dimension vector rank does not match the form");
    if (co.num().degree() > 0 || co.den().degree() > 0)
      throw DomainError("the L=1 algebra takes rational number coefficients");
    BigRat r(co.num().coeff(0), co.den().coeff(0));
    r.canonicalize();
    e.add(ik_normalize(tok.vecs), r);
  });
  return e;
}

std::string print_ratfunc(const RatFunc& r) { return r.to_string(); }

std::string print_cf_elem(const CFElem& e, const HallTable& t) {
  return print_linear(e.coeffs(), [&](int cls, const BigRat& v) {
    RatFunc co{v};
    return coeff_prefix_string(co) + "d[" + vecs_string(t.classes[cls].label) + "]";
  });
}

std::string print_sf_elem(const SFElem& e, const HallTable& t) {
  return print_linear(e.coeffs(), [&](int cls, const RatFunc& v) {
    return coeff_prefix_string(v) + "s[" + vecs_string(t.classes[cls].label) + "]";
  });
}

std::string print_a_elem(const AElem& e) {
  return print_linear(e.coeffs(), [&](const std::vector<DimVec>& k, const RatFunc& v) {
    std::string body = dim_to_string(k[0]);
    return coeff_prefix_string(v) + "a" + body;
  });
}

std::string print_b_elem(const BElem& e) {
  return print_linear(e.coeffs(), [&](const std::vector<DimVec>& k, const RatFunc& v) {
    return coeff_prefix_string(v) + "b{" + vecs_string(k) + "}";
  });
}

std::string print_c_elem(const CElem& e) {
  return print_linear(e.coeffs(), [&](const std::vector<DimVec>& k, const BigRat& v) {
    RatFunc co{v};
    return coeff_prefix_string(co) + "c{" + vecs_string(k) + "}";
  });
}

EulerForm parse_chi_matrix(const std::string& text) {
  std::vector<std::vector<BigRat>> m;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<BigRat> r;
    std::stringstream entries(row);
    std::string entry;
    while (std::getline(entries, entry, ',')) {
      Cursor c{entry};
      long num = c.integer();
      BigRat v(num);
      if (c.eat('/')) {
        long den = c.integer();
        if (den == 0) c.fail("zero denominator");
        v = BigRat(num, den);
      }
      if (!c.eof()) c.fail("trailing input in matrix entry");
      v.canonicalize();
      r.push_back(v);
    }
    if (r.empty()) throw DomainError("empty matrix row");
    m.push_back(std::move(r));
  }
  if (m.empty()) throw DomainError("empty matrix");
  return EulerForm::explicit_form(std::move(m));
}

}  // namespace hall
