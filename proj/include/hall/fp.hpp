#ifndef HALL_FP_HPP
#define HALL_FP_HPP

// Dense linear algebra over small prime fields.  Dimensions here are tiny
// (single digits) so everything is straightforward row reduction.

#include <cstdint>
#include <vector>

#include "hall/ratfunc.hpp"

namespace hall {

struct FpMat {
  int rows = 0, cols = 0;
  uint32_t p = 2;
  std::vector<uint32_t> a;  // row-major

  FpMat() = default;
  FpMat(int r, int c, uint32_t prime) : rows(r), cols(c), p(prime), a(static_cast<size_t>(r) * c, 0) {}

  uint32_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  uint32_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  bool operator==(const FpMat& o) const = default;

  static FpMat identity(int n, uint32_t p);
};

uint32_t fp_inv(uint32_t x, uint32_t p);

FpMat fp_mul(const FpMat& A, const FpMat& B);
FpMat fp_add(const FpMat& A, const FpMat& B);
FpMat fp_sub(const FpMat& A, const FpMat& B);
FpMat fp_scale(const FpMat& A, uint32_t c);
FpMat fp_pow(FpMat A, int e);

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> fp_rref(FpMat& A);

int fp_rank(FpMat A);
bool fp_invertible(const FpMat& A);

// Basis of the right kernel, as columns gathered in one matrix (cols = nullity).
FpMat fp_kernel(const FpMat& A);

// Basis of the column space: the subset of A's columns that are pivots of A^T-free
// elimination; returned as a matrix whose columns are independent generators.
FpMat fp_colspace(const FpMat& A);

// Solves A x = b for all columns of b; requires consistency (throws otherwise).
FpMat fp_solve(const FpMat& A, const FpMat& B);

// True iff every column of B lies in the column span of A.
bool fp_in_colspan(const FpMat& A, const FpMat& B);

// Horizontal concatenation.
FpMat fp_hcat(const FpMat& A, const FpMat& B);

// Enumerates all k-dimensional subspaces of F_p^n as reduced row echelon
// bases (k x n matrices, rows = basis).  Canonical and duplicate-free.
std::vector<FpMat> fp_subspaces(int n, int k, uint32_t p);

}  // namespace hall

#endif
