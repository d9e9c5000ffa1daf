#ifndef HALL_QUIVER_HPP
#define HALL_QUIVER_HPP

// Quiver combinatorics: dimension vectors, the positive cone, and the Euler
// form with its antisymmetrization.  Forms may come from a quiver or be given
// as an arbitrary square matrix (needed to exercise the twisted algebras on
// forms unrelated to any quiver).

#include <string>
#include <vector>

#include "hall/ratfunc.hpp"

namespace hall {

using DimVec = std::vector<int>;

inline DimVec dim_add(const DimVec& a, const DimVec& b) {
  DimVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline bool dim_leq(const DimVec& a, const DimVec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
inline bool dim_is_zero(const DimVec& a) {
  for (int x : a)
    if (x != 0) return false;
  return true;
}
inline int dim_total(const DimVec& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}
std::string dim_to_string(const DimVec& a);

struct Arrow {
  int source = 0;  // 0-based
  int target = 0;
};

class Quiver {
 public:
  Quiver(int vertex_count, std::vector<Arrow> arrows);

  int vertex_count() const { return nv_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  uint64_t uid() const { return uid_; }  // unique per instance, for caches

  // Line-oriented text format: "vertices N", then "arrow S T" (1-based),
  // '#' starts a comment.  Round-trips bit-exactly, arrows in input order.
  static Quiver parse(const std::string& text);
  std::string serialize() const;

 private:
  void validate() const;  // rejects self-loops and oriented cycles
  int nv_;
  std::vector<Arrow> arrows_;
  uint64_t uid_ = 0;
};

// Biadditive form on Z^n given by an integer matrix; entries may be
// half-integers for the Calabi-Yau variant, so they are stored as rationals.
class EulerForm {
 public:
  enum class Mode { QuiverDerived, Explicit };

  static EulerForm from_quiver(const Quiver& q);
  static EulerForm explicit_form(std::vector<std::vector<BigRat>> m);

  int rank() const { return static_cast<int>(m_.size()); }
  Mode mode() const { return mode_; }
  const std::vector<std::vector<BigRat>>& matrix() const { return m_; }

  BigRat apply(const DimVec& a, const DimVec& b) const;           // a^T M b
  BigRat antisym(const DimVec& a, const DimVec& b) const;         // chi(a,b)-chi(b,a)
  long apply_int(const DimVec& a, const DimVec& b) const;         // requires integrality
  long cartan_a(int i, int j) const;                              // e_ij + e_ji, i != j
  bool is_integral() const;

  // chi(a,b) + chi(b,a), as a symmetric perturbation helper.
  EulerForm plus_symmetric(const std::vector<std::vector<long>>& s) const;

 private:
  Mode mode_ = Mode::Explicit;
  std::vector<std::vector<BigRat>> m_;
};

}  // namespace hall

#endif
