#include "hall/fp.hpp"

namespace hall {

FpMat FpMat::identity(int n, uint32_t p) {
  FpMat m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

uint32_t fp_inv(uint32_t x, uint32_t p) {
  // p is a small prime; extended Euclid.
  int64_t t = 0, newt = 1, r = p, newr = x % p;
  while (newr != 0) {
    int64_t q = r / newr;
    int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw DomainError("fp_inv of non-unit");
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

FpMat fp_mul(const FpMat& A, const FpMat& B) {
  if (A.cols != B.rows || A.p != B.p) throw InternalCheckError("fp_mul shape mismatch");
  FpMat C(A.rows, B.cols, A.p);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      uint64_t av = A.at(i, k);
      if (!av) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = static_cast<uint32_t>((C.at(i, j) + av * B.at(k, j)) % A.p);
    }
  return C;
}

FpMat fp_add(const FpMat& A, const FpMat& B) {
  FpMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = (C.a[i] + B.a[i]) % A.p;
  return C;
}

FpMat fp_sub(const FpMat& A, const FpMat& B) {
  FpMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = (C.a[i] + A.p - B.a[i] % A.p) % A.p;
  return C;
}

FpMat fp_scale(const FpMat& A, uint32_t c) {
  FpMat C = A;
  for (auto& x : C.a) x = static_cast<uint32_t>((static_cast<uint64_t>(x) * c) % A.p);
  return C;
}

FpMat fp_pow(FpMat A, int e) {
  FpMat r = FpMat::identity(A.rows, A.p);
  while (e > 0) {
    if (e & 1) r = fp_mul(r, A);
    A = fp_mul(A, A);
    e >>= 1;
  }
  return r;
}

std::vector<int> fp_rref(FpMat& A) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < A.cols && row < A.rows; ++col) {
    int sel = -1;
    for (int i = row; i < A.rows; ++i)
      if (A.at(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < A.cols; ++j) std::swap(A.at(sel, j), A.at(row, j));
    uint32_t inv = fp_inv(A.at(row, col), A.p);
    for (int j = 0; j < A.cols; ++j)
      A.at(row, j) = static_cast<uint32_t>((static_cast<uint64_t>(A.at(row, j)) * inv) % A.p);
    for (int i = 0; i < A.rows; ++i) {
      if (i == row) continue;
      uint64_t f = A.at(i, col);
      if (!f) continue;
      for (int j = 0; j < A.cols; ++j)
        A.at(i, j) = static_cast<uint32_t>((A.at(i, j) + (A.p - static_cast<uint32_t>(f)) *
                                                             static_cast<uint64_t>(A.at(row, j))) %
                                           A.p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int fp_rank(FpMat A) { return static_cast<int>(fp_rref(A).size()); }

bool fp_invertible(const FpMat& A) {
  if (A.rows != A.cols) return false;
  return fp_rank(A) == A.rows;
}

FpMat fp_kernel(const FpMat& A) {
  FpMat R = A;
  std::vector<int> piv = fp_rref(R);
  std::vector<char> is_piv(A.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  int nf = A.cols - static_cast<int>(piv.size());
  FpMat K(A.cols, nf, A.p);
  int kcol = 0;
  for (int c = 0; c < A.cols; ++c) {
    if (is_piv[c]) continue;
    K.at(c, kcol) = 1;
    for (size_t r = 0; r < piv.size(); ++r) {
      uint32_t v = R.at(static_cast<int>(r), c);
      if (v) K.at(piv[r], kcol) = A.p - v;
    }
    ++kcol;
  }
  return K;
}

FpMat fp_colspace(const FpMat& A) {
  FpMat R = A;
  std::vector<int> piv = fp_rref(R);
  FpMat C(A.rows, static_cast<int>(piv.size()), A.p);
  for (size_t j = 0; j < piv.size(); ++j)
    for (int i = 0; i < A.rows; ++i) C.at(i, static_cast<int>(j)) = A.at(i, piv[j]);
  return C;
}

FpMat fp_solve(const FpMat& A, const FpMat& B) {
  if (A.rows != B.rows) throw InternalCheckError("fp_solve shape mismatch");
  FpMat Aug = fp_hcat(A, B);
  std::vector<int> piv = fp_rref(Aug);
  for (int c : piv)
    if (c >= A.cols) throw InternalCheckError("fp_solve: inconsistent system");
  FpMat X(A.cols, B.cols, A.p);
  for (size_t r = 0; r < piv.size(); ++r)
    for (int j = 0; j < B.cols; ++j) X.at(piv[r], j) = Aug.at(static_cast<int>(r), A.cols + j);
  return X;
}

bool fp_in_colspan(const FpMat& A, const FpMat& B) {
  FpMat Aug = fp_hcat(A, B);
  return fp_rank(A) == fp_rank(Aug);
}

FpMat fp_hcat(const FpMat& A, const FpMat& B) {
  if (A.rows != B.rows) throw InternalCheckError("fp_hcat shape mismatch");
  FpMat C(A.rows, A.cols + B.cols, A.p);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

std::vector<FpMat> fp_subspaces(int n, int k, uint32_t p) {
  std::vector<FpMat> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.emplace_back(0, n, p);
    return out;
  }
  // Choose pivot columns c_1 < ... < c_k, then fill the free entries: in row i
  // the entries to the right of pivot c_i, in non-pivot columns only.
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int c = piv[i] + 1; c < n; ++c)
        if (!is_piv[c]) free_pos.push_back({i, c});
    uint64_t total = 1;
    for (size_t i = 0; i < free_pos.size(); ++i) total *= p;
    for (uint64_t code = 0; code < total; ++code) {
      FpMat M(k, n, p);
      for (int i = 0; i < k; ++i) M.at(i, piv[i]) = 1;
      uint64_t c = code;
      for (auto [r, col] : free_pos) {
        M.at(r, col) = static_cast<uint32_t>(c % p);
        c /= p;
      }
      out.push_back(std::move(M));
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

}  // namespace hall
