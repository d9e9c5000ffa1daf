#include "hall/repfield.hpp"

#include <omp.h>

#include <algorithm>

namespace hall {

std::string label_to_string(const Label& l) {
  std::string s = "{";
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) s += ",";
    s += dim_to_string(l[i]);
  }
  return s + "}";
}

DimVec label_dims(const Label& l, int nv) {
  DimVec d(nv, 0);
  for (const auto& part : l) d = dim_add(d, part);
  return d;
}

Rep zero_rep(const Quiver& q, uint32_t p) {
  Rep r;
  r.quiver = &q;
  r.p = p;
  r.dims.assign(q.vertex_count(), 0);
  for (const auto& a : q.arrows()) {
    (void)a;
    r.maps.emplace_back(0, 0, p);
  }
  return r;
}

Rep direct_sum(const Rep& a, const Rep& b) {
  Rep r;
  r.quiver = a.quiver;
  r.p = a.p;
  r.dims = dim_add(a.dims, b.dims);
  const auto& arrows = a.quiver->arrows();
  for (size_t k = 0; k < arrows.size(); ++k) {
    int s = arrows[k].source, t = arrows[k].target;
    FpMat m(r.dims[t], r.dims[s], a.p);
    for (int i = 0; i < a.dims[t]; ++i)
      for (int j = 0; j < a.dims[s]; ++j) m.at(i, j) = a.maps[k].at(i, j);
    for (int i = 0; i < b.dims[t]; ++i)
      for (int j = 0; j < b.dims[s]; ++j) m.at(a.dims[t] + i, a.dims[s] + j) = b.maps[k].at(i, j);
    r.maps.push_back(std::move(m));
  }
  return r;
}

static FpMat transpose(const FpMat& m) {
  FpMat t(m.cols, m.rows, m.p);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

std::vector<std::vector<FpMat>> hom_basis(const Rep& x, const Rep& y) {
  const Quiver& q = *x.quiver;
  int nv = q.vertex_count();
  uint32_t p = x.p;
  // Unknowns: f_v in Hom(X_v, Y_v), entries row-major, vertices in order.
  std::vector<int> offset(nv + 1, 0);
  for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
  int nvar = offset[nv];
  int neq = 0;
  for (const auto& a : q.arrows()) neq += y.dims[a.target] * x.dims[a.source];
  FpMat sys(neq, nvar, p);
  int row = 0;
  for (size_t k = 0; k < q.arrows().size(); ++k) {
    int s = q.arrows()[k].source, t = q.arrows()[k].target;
    const FpMat& Xa = x.maps[k];
    const FpMat& Ya = y.maps[k];
    // Equation (i,j): sum_m f_t(i,m) Xa(m,j) - sum_m Ya(i,m) f_s(m,j) = 0.
    for (int i = 0; i < y.dims[t]; ++i)
      for (int j = 0; j < x.dims[s]; ++j) {
        for (int m = 0; m < x.dims[t]; ++m)
          if (Xa.at(m, j))
            sys.at(row, offset[t] + i * x.dims[t] + m) =
                (sys.at(row, offset[t] + i * x.dims[t] + m) + Xa.at(m, j)) % p;
        for (int m = 0; m < y.dims[s]; ++m)
          if (Ya.at(i, m))
            sys.at(row, offset[s] + m * x.dims[s] + j) =
                (sys.at(row, offset[s] + m * x.dims[s] + j) + p - Ya.at(i, m) % p) % p;
        ++row;
      }
  }
  FpMat K = fp_kernel(sys);
  std::vector<std::vector<FpMat>> basis;
  for (int c = 0; c < K.cols; ++c) {
    std::vector<FpMat> f;
    for (int v = 0; v < nv; ++v) {
      FpMat m(y.dims[v], x.dims[v], p);
      for (int i = 0; i < y.dims[v]; ++i)
        for (int j = 0; j < x.dims[v]; ++j) m.at(i, j) = K.at(offset[v] + i * x.dims[v] + j, c);
      f.push_back(std::move(m));
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

int hom_dim(const Rep& x, const Rep& y) { return static_cast<int>(hom_basis(x, y).size()); }

// Coboundary map for Ext^1(X, Y): Hom at vertices -> cocycles at arrows,
// f |-> (Y_a f_s - f_t X_a)_a.
static FpMat coboundary_matrix(const Rep& x, const Rep& y, int& cocycle_dim) {
  const Quiver& q = *x.quiver;
  int nv = q.vertex_count();
  uint32_t p = x.p;
  std::vector<int> voff(nv + 1, 0);
  for (int v = 0; v < nv; ++v) voff[v + 1] = voff[v] + y.dims[v] * x.dims[v];
  int nvar = voff[nv];
  std::vector<int> aoff(q.arrows().size() + 1, 0);
  for (size_t k = 0; k < q.arrows().size(); ++k)
    aoff[k + 1] = aoff[k] + y.dims[q.arrows()[k].target] * x.dims[q.arrows()[k].source];
  cocycle_dim = aoff.back();
  FpMat d(cocycle_dim, nvar, p);
  for (size_t k = 0; k < q.arrows().size(); ++k) {
    int s = q.arrows()[k].source, t = q.arrows()[k].target;
    const FpMat& Xa = x.maps[k];
    const FpMat& Ya = y.maps[k];
    for (int i = 0; i < y.dims[t]; ++i)
      for (int j = 0; j < x.dims[s]; ++j) {
        int row = aoff[k] + i * x.dims[s] + j;
        for (int m = 0; m < y.dims[s]; ++m)
          if (Ya.at(i, m))
            d.at(row, voff[s] + m * x.dims[s] + j) =
                (d.at(row, voff[s] + m * x.dims[s] + j) + Ya.at(i, m)) % p;
        for (int m = 0; m < x.dims[t]; ++m)
          if (Xa.at(m, j))
            d.at(row, voff[t] + i * x.dims[t] + m) =
                (d.at(row, voff[t] + i * x.dims[t] + m) + p - Xa.at(m, j) % p) % p;
      }
  }
  return d;
}

int ext1_dim(const Rep& x, const Rep& y) {
  int cdim = 0;
  FpMat d = coboundary_matrix(x, y, cdim);
  return cdim - fp_rank(d);
}

int ext1_dim_checked(const Rep& x, const Rep& y, const EulerForm& chi) {
  int e = ext1_dim(x, y);
  long via_chi = hom_dim(x, y) - chi.apply_int(x.dims, y.dims);
  if (via_chi != e)
    throw InternalCheckError("ext1 routes disagree: cokernel " + std::to_string(e) +
                             " vs hom-chi " + std::to_string(via_chi));
  return e;
}

static SubRep subrep_from_columns(const Rep& z, const std::vector<FpMat>& cols) {
  SubRep s;
  s.dims.resize(z.dims.size());
  for (size_t v = 0; v < z.dims.size(); ++v) {
    FpMat rows = transpose(cols[v]);
    fp_rref(rows);
    // drop zero rows
    int nz = 0;
    for (int i = 0; i < rows.rows; ++i) {
      bool zero = true;
      for (int j = 0; j < rows.cols; ++j)
        if (rows.at(i, j)) zero = false;
      if (!zero) nz = i + 1;
    }
    FpMat b(nz, rows.cols, z.p);
    for (int i = 0; i < nz; ++i)
      for (int j = 0; j < rows.cols; ++j) b.at(i, j) = rows.at(i, j);
    s.dims[v] = nz;
    s.basis.push_back(std::move(b));
  }
  return s;
}

Rep subrep_to_rep(const Rep& z, const SubRep& s) {
  const Quiver& q = *z.quiver;
  Rep r;
  r.quiver = z.quiver;
  r.p = z.p;
  r.dims = s.dims;
  for (size_t k = 0; k < q.arrows().size(); ++k) {
    int sv = q.arrows()[k].source, tv = q.arrows()[k].target;
    FpMat bs = transpose(s.basis[sv]);           // ambient x sub
    FpMat bt = transpose(s.basis[tv]);
    FpMat img = fp_mul(z.maps[k], bs);           // ambient_t x sub_s
    r.maps.push_back(fp_solve(bt, img));         // sub_t x sub_s
  }
  return r;
}

Rep quotient_rep(const Rep& z, const SubRep& s) {
  const Quiver& q = *z.quiver;
  int nv = q.vertex_count();
  uint32_t p = z.p;
  // Complement coordinates: non-pivot columns of the subspace's RREF basis.
  std::vector<std::vector<int>> comp(nv);
  std::vector<std::vector<int>> pivots(nv);
  for (int v = 0; v < nv; ++v) {
    std::vector<char> is_piv(z.dims[v], 0);
    for (int i = 0; i < s.basis[v].rows; ++i)
      for (int j = 0; j < z.dims[v]; ++j)
        if (s.basis[v].at(i, j)) {
          is_piv[j] = 1;
          pivots[v].push_back(j);
          break;
        }
    for (int j = 0; j < z.dims[v]; ++j)
      if (!is_piv[j]) comp[v].push_back(j);
  }
  auto reduce_mod_sub = [&](int v, std::vector<uint32_t>& w) {
    for (int i = 0; i < s.basis[v].rows; ++i) {
      uint32_t c = w[pivots[v][i]];
      if (!c) continue;
      for (int j = 0; j < z.dims[v]; ++j)
        w[j] = (w[j] + (p - c) * static_cast<uint64_t>(s.basis[v].at(i, j))) % p;
    }
  };
  Rep r;
  r.quiver = z.quiver;
  r.p = p;
  r.dims.resize(nv);
  for (int v = 0; v < nv; ++v) r.dims[v] = static_cast<int>(comp[v].size());
  for (size_t k = 0; k < q.arrows().size(); ++k) {
    int sv = q.arrows()[k].source, tv = q.arrows()[k].target;
    FpMat m(r.dims[tv], r.dims[sv], p);
    for (int jc = 0; jc < r.dims[sv]; ++jc) {
      std::vector<uint32_t> w(z.dims[tv], 0);
      int col = comp[sv][jc];
      for (int i = 0; i < z.dims[tv]; ++i) w[i] = z.maps[k].at(i, col);
      reduce_mod_sub(tv, w);
      for (int ic = 0; ic < r.dims[tv]; ++ic) m.at(ic, jc) = w[comp[tv][ic]];
    }
    r.maps.push_back(std::move(m));
  }
  return r;
}

bool subrep_contains(const SubRep& outer, const SubRep& inner, uint32_t p) {
  (void)p;
  for (size_t v = 0; v < outer.basis.size(); ++v) {
    if (inner.dims[v] > outer.dims[v]) return false;
    if (inner.dims[v] == 0) continue;
    if (!fp_in_colspan(transpose(outer.basis[v]), transpose(inner.basis[v]))) return false;
  }
  return true;
}

static bool is_scalar_endo(const std::vector<FpMat>& f, uint32_t p) {
  int lambda = -1;
  for (const auto& m : f) {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) {
        uint32_t want = (i == j) ? (lambda < 0 ? m.at(i, i) : static_cast<uint32_t>(lambda)) : 0;
        if (i == j && lambda < 0) {
          lambda = static_cast<int>(m.at(i, i));
          want = m.at(i, i);
        }
        if (m.at(i, j) != want % p) return false;
      }
  }
  return true;
}

static bool fitting_split(const Rep& x, const std::vector<FpMat>& f, std::vector<Rep>& parts) {
  int nv = static_cast<int>(x.dims.size());
  uint32_t p = x.p;
  int n = x.total_dim();
  for (uint32_t lam = 0; lam < p; ++lam) {
    std::vector<FpMat> gn(nv);
    int kerdim = 0;
    for (int v = 0; v < nv; ++v) {
      FpMat g = f[v];
      for (int i = 0; i < g.rows; ++i) g.at(i, i) = (g.at(i, i) + p - lam) % p;
      gn[v] = fp_pow(g, n > 0 ? n : 1);
    }
    std::vector<FpMat> kcols(nv), icols(nv);
    int imdim = 0;
    for (int v = 0; v < nv; ++v) {
      kcols[v] = fp_kernel(gn[v]);
      icols[v] = fp_colspace(gn[v]);
      kerdim += kcols[v].cols;
      imdim += icols[v].cols;
    }
    if (kerdim == 0 || imdim == 0) continue;
    if (kerdim + imdim != n) throw InternalCheckError("fitting: kernel/image dims do not add up");
    SubRep K = subrep_from_columns(x, kcols);
    SubRep I = subrep_from_columns(x, icols);
    parts.push_back(subrep_to_rep(x, K));
    parts.push_back(subrep_to_rep(x, I));
    return true;
  }
  return false;
}

std::vector<Rep> decompose(const Rep& x) {
  if (x.total_dim() == 0) return {};
  auto endo = hom_basis(x, x);
  if (endo.size() == 1) return {x};
  std::vector<Rep> halves;
  bool split = false;
  for (const auto& f : endo) {
    if (is_scalar_endo(f, x.p)) continue;
    if (fitting_split(x, f, halves)) {
      split = true;
      break;
    }
  }
  if (!split) {
    // products and sums of basis pairs; rescues bases that dodge the
    // single-element Fitting test
    for (size_t i = 0; i < endo.size() && !split; ++i)
      for (size_t j = 0; j < endo.size() && !split; ++j) {
        std::vector<FpMat> prod, sum;
        for (size_t v = 0; v < x.dims.size(); ++v) {
          prod.push_back(fp_mul(endo[i][v], endo[j][v]));
          sum.push_back(fp_add(endo[i][v], endo[j][v]));
        }
        if (!is_scalar_endo(prod, x.p) && fitting_split(x, prod, halves)) split = true;
        if (!split && !is_scalar_endo(sum, x.p) && fitting_split(x, sum, halves)) split = true;
      }
  }
  if (!split)
    throw UnsupportedQuiverError(
        "endomorphism ring with dim > 1 did not split; representation type out of scope");
  std::vector<Rep> out;
  for (const auto& h : halves) {
    auto sub = decompose(h);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

namespace {
std::map<std::vector<uint64_t>, Label>& label_memo() {
  thread_local std::map<std::vector<uint64_t>, Label> memo;
  return memo;
}
}  // namespace

void label_cache_clear() {
#pragma omp parallel
  label_memo().clear();
}

Label label_of(const Rep& x) {
  // Subquotient labelling revisits the same small matrices constantly; a
  // thread-local cache keyed on the full tuple carries most of the load.
  auto& memo = label_memo();
  std::vector<uint64_t> key;
  key.push_back(x.quiver->uid());
  key.push_back(x.p);
  for (int d : x.dims) key.push_back(static_cast<uint64_t>(d));
  for (const auto& m : x.maps) key.insert(key.end(), m.a.begin(), m.a.end());
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Label l;
  for (const auto& s : decompose(x)) l.push_back(s.dims);
  std::sort(l.begin(), l.end());
  if (memo.size() > 1u << 20) memo.clear();
  memo.emplace(std::move(key), l);
  return l;
}

bool is_indecomposable(const Rep& x) {
  if (x.total_dim() == 0) return false;
  return decompose(x).size() == 1;
}

BigInt aut_order(const Rep& x, uint64_t budget) {
  auto endo = hom_basis(x, x);
  size_t k = endo.size();
  uint64_t total = 1;
  for (size_t i = 0; i < k; ++i) {
    if (total > budget / x.p) throw BudgetError("aut_order: endomorphism space too large");
    total *= x.p;
  }
  int nv = static_cast<int>(x.dims.size());
  BigInt count = 0;
  std::vector<uint32_t> c(k, 0);
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t t = code;
    for (size_t i = 0; i < k; ++i) {
      c[i] = static_cast<uint32_t>(t % x.p);
      t /= x.p;
    }
    bool inv = true;
    for (int v = 0; v < nv && inv; ++v) {
      FpMat m(x.dims[v], x.dims[v], x.p);
      for (size_t i = 0; i < k; ++i)
        if (c[i]) m = fp_add(m, fp_scale(endo[i][v], c[i]));
      if (x.dims[v] > 0 && !fp_invertible(m)) inv = false;
    }
    if (inv) ++count;
  }
  return count;
}

// --- cell enumeration ---------------------------------------------------

namespace {

struct CellGeometry {
  std::vector<std::pair<int, int>> shape;  // per arrow: rows, cols
  uint64_t total = 1;
  int entries = 0;
};

CellGeometry cell_geometry(const Quiver& q, const DimVec& d, uint32_t p, const EnumLimits& lim) {
  CellGeometry g;
  BigInt total = 1;
  for (const auto& a : q.arrows()) {
    int r = d[a.target], c = d[a.source];
    g.shape.push_back({r, c});
    g.entries += r * c;
  }
  mpz_ui_pow_ui(total.get_mpz_t(), p, static_cast<unsigned long>(g.entries));
  if (total > BigInt(static_cast<unsigned long>(lim.max_tuples_per_cell)))
    throw BudgetError("enumeration budget exceeded for dimension vector " + dim_to_string(d) +
                      " at p=" + std::to_string(p));
  g.total = total.get_ui();
  return g;
}

Rep decode_rep(const Quiver& q, const DimVec& d, uint32_t p, const CellGeometry& g, uint64_t code) {
  Rep r;
  r.quiver = &q;
  r.p = p;
  r.dims = d;
  for (auto [rows, cols] : g.shape) {
    FpMat m(rows, cols, p);
    for (auto& x : m.a) {
      x = static_cast<uint32_t>(code % p);
      code /= p;
    }
    r.maps.push_back(std::move(m));
  }
  return r;
}

struct Bucket {
  BigInt count = 0;
  uint64_t min_code = 0;
};

std::vector<CellClass> buckets_to_classes(const Quiver& q, const DimVec& d, uint32_t p,
                                          const CellGeometry& g,
                                          const std::map<Label, Bucket>& buckets) {
  std::vector<CellClass> out;
  for (const auto& [label, b] : buckets) {
    CellClass c;
    c.label = label;
    c.count = b.count;
    c.rep = decode_rep(q, d, p, g, b.min_code);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<CellClass> enumerate_cell_serial(const Quiver& q, const DimVec& d, uint32_t p,
                                             const EnumLimits& lim) {
  CellGeometry g = cell_geometry(q, d, p, lim);
  std::map<Label, Bucket> buckets;
  for (uint64_t code = 0; code < g.total; ++code) {
    Rep r = decode_rep(q, d, p, g, code);
    Label l = label_of(r);
    auto it = buckets.find(l);
    if (it == buckets.end())
      buckets.emplace(std::move(l), Bucket{1, code});
    else
      it->second.count += 1;
  }
  return buckets_to_classes(q, d, p, g, buckets);
}

std::vector<CellClass> enumerate_cell_parallel(const Quiver& q, const DimVec& d, uint32_t p,
                                               const EnumLimits& lim) {
  CellGeometry g = cell_geometry(q, d, p, lim);
  int nchunks = std::max(1, std::min<int>(8 * omp_get_max_threads(),
                                          static_cast<int>(std::min<uint64_t>(g.total, 1024))));
  std::vector<std::map<Label, Bucket>> partial(nchunks);
  uint64_t chunk = (g.total + nchunks - 1) / nchunks;
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < nchunks; ++c) {
    try {
      uint64_t lo = chunk * c, hi = std::min(g.total, lo + chunk);
      auto& local = partial[c];
      for (uint64_t code = lo; code < hi; ++code) {
        Rep r = decode_rep(q, d, p, g, code);
        Label l = label_of(r);
        auto it = local.find(l);
        if (it == local.end())
          local.emplace(std::move(l), Bucket{1, code});
        else
          it->second.count += 1;
      }
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  std::map<Label, Bucket> buckets;
  for (auto& part : partial)
    for (auto& [label, b] : part) {
      auto it = buckets.find(label);
      if (it == buckets.end())
        buckets.emplace(label, b);
      else {
        it->second.count += b.count;
        it->second.min_code = std::min(it->second.min_code, b.min_code);
      }
    }
  return buckets_to_classes(q, d, p, g, buckets);
}

// --- subrepresentation machinery -----------------------------------------

static bool arrow_invariant(const Rep& z, const std::vector<const FpMat*>& basis) {
  const Quiver& q = *z.quiver;
  for (size_t k = 0; k < q.arrows().size(); ++k) {
    int s = q.arrows()[k].source, t = q.arrows()[k].target;
    if (basis[s]->rows == 0) continue;
    FpMat img = fp_mul(z.maps[k], transpose(*basis[s]));
    if (basis[t]->rows == 0) {
      for (auto v : img.a)
        if (v) return false;
      continue;
    }
    if (!fp_in_colspan(transpose(*basis[t]), img)) return false;
  }
  return true;
}

// Enumerates arrow-invariant subspace tuples with the given dimensions,
// calling fn on each.
template <typename Fn>
static void for_each_subrep(const Rep& z, const DimVec& dx, Fn&& fn) {
  int nv = static_cast<int>(z.dims.size());
  std::vector<std::vector<FpMat>> per_vertex(nv);
  for (int v = 0; v < nv; ++v) {
    per_vertex[v] = fp_subspaces(z.dims[v], dx[v], z.p);
    if (per_vertex[v].empty()) return;
  }
  std::vector<size_t> idx(nv, 0);
  while (true) {
    std::vector<const FpMat*> basis(nv);
    for (int v = 0; v < nv; ++v) basis[v] = &per_vertex[v][idx[v]];
    if (arrow_invariant(z, basis)) {
      SubRep s;
      s.dims = dx;
      for (int v = 0; v < nv; ++v) s.basis.push_back(*basis[v]);
      fn(std::move(s));
    }
    int v = 0;
    while (v < nv && ++idx[v] == per_vertex[v].size()) {
      idx[v] = 0;
      ++v;
    }
    if (v == nv) break;
  }
}

std::map<std::pair<Label, Label>, uint64_t> hall_count(const Rep& z, const DimVec& dx) {
  if (!dim_leq(dx, z.dims)) throw DomainError("hall_count: subdimension exceeds ambient");
  std::map<std::pair<Label, Label>, uint64_t> out;
  for_each_subrep(z, dx, [&](SubRep s) {
    Label lu = label_of(subrep_to_rep(z, s));
    Label lq = label_of(quotient_rep(z, s));
    out[{std::move(lu), std::move(lq)}]++;
  });
  return out;
}

std::map<Label, uint64_t> ext_classify(const Rep& x, const Rep& y, uint64_t budget) {
  // Extension classes in Ext^1(Y, X): cocycles e_a : Y_s -> X_t modulo
  // coboundaries X_a f_s - f_t Y_a.
  const Quiver& q = *x.quiver;
  uint32_t p = x.p;
  int nv = q.vertex_count();
  std::vector<int> voff(nv + 1, 0);
  for (int v = 0; v < nv; ++v) voff[v + 1] = voff[v] + x.dims[v] * y.dims[v];
  std::vector<int> aoff(q.arrows().size() + 1, 0);
  for (size_t k = 0; k < q.arrows().size(); ++k)
    aoff[k + 1] = aoff[k] + x.dims[q.arrows()[k].target] * y.dims[q.arrows()[k].source];
  int cdim = aoff.back();
  FpMat delta(cdim, voff[nv], p);
  for (size_t k = 0; k < q.arrows().size(); ++k) {
    int s = q.arrows()[k].source, t = q.arrows()[k].target;
    const FpMat& Xa = x.maps[k];
    const FpMat& Ya = y.maps[k];
    // row (i,j) of block k: entry (i,j) of X_a f_s - f_t Y_a, i < x.dims[t], j < y.dims[s]
    for (int i = 0; i < x.dims[t]; ++i)
      for (int j = 0; j < y.dims[s]; ++j) {
        int row = aoff[k] + i * y.dims[s] + j;
        for (int m = 0; m < x.dims[s]; ++m)
          if (Xa.at(i, m))
            delta.at(row, voff[s] + m * y.dims[s] + j) =
                (delta.at(row, voff[s] + m * y.dims[s] + j) + Xa.at(i, m)) % p;
        for (int m = 0; m < y.dims[t]; ++m)
          if (Ya.at(m, j))
            delta.at(row, voff[t] + i * y.dims[t] + m) =
                (delta.at(row, voff[t] + i * y.dims[t] + m) + p - Ya.at(m, j) % p) % p;
      }
  }
  // Complement coordinates of im(delta) inside the cocycle space.
  FpMat img = fp_colspace(delta);
  FpMat imgrows = transpose(img);
  std::vector<int> piv = fp_rref(imgrows);
  std::vector<char> is_piv(cdim, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<int> comp;
  for (int c = 0; c < cdim; ++c)
    if (!is_piv[c]) comp.push_back(c);
  int ext = static_cast<int>(comp.size());
  uint64_t total = 1;
  for (int i = 0; i < ext; ++i) {
    if (total > budget / p)
      throw BudgetError("extension space too large to classify (p^" + std::to_string(ext) + ")");
    total *= p;
  }

  std::map<Label, uint64_t> out;
  for (uint64_t code = 0; code < total; ++code) {
    std::vector<uint32_t> e(cdim, 0);
    uint64_t t = code;
    for (int i = 0; i < ext; ++i) {
      e[comp[i]] = static_cast<uint32_t>(t % p);
      t /= p;
    }
    Rep z;
    z.quiver = x.quiver;
    z.p = p;
    z.dims = dim_add(x.dims, y.dims);
    for (size_t k = 0; k < q.arrows().size(); ++k) {
      int s = q.arrows()[k].source, tv = q.arrows()[k].target;
      FpMat m(z.dims[tv], z.dims[s], p);
      for (int i = 0; i < x.dims[tv]; ++i)
        for (int j = 0; j < x.dims[s]; ++j) m.at(i, j) = x.maps[k].at(i, j);
      for (int i = 0; i < y.dims[tv]; ++i)
        for (int j = 0; j < y.dims[s]; ++j)
          m.at(x.dims[tv] + i, x.dims[s] + j) = y.maps[k].at(i, j);
      for (int i = 0; i < x.dims[tv]; ++i)
        for (int j = 0; j < y.dims[s]; ++j)
          m.at(i, x.dims[s] + j) = e[aoff[k] + i * y.dims[s] + j];
      z.maps.push_back(std::move(m));
    }
    out[label_of(z)]++;
  }
  uint64_t sum = 0;
  for (const auto& [l, c] : out) sum += c;
  if (sum != total) throw InternalCheckError("ext_classify: partition identity failed");
  return out;
}

std::map<std::pair<Label, Label>, uint64_t> direct_sum_splittings(const Rep& z, const DimVec& dx) {
  if (!dim_leq(dx, z.dims)) throw DomainError("splittings: subdimension exceeds ambient");
  DimVec dy(z.dims.size());
  for (size_t i = 0; i < dy.size(); ++i) dy[i] = z.dims[i] - dx[i];
  std::vector<std::pair<SubRep, Label>> lhs, rhs;
  for_each_subrep(z, dx, [&](SubRep s) {
    Label l = label_of(subrep_to_rep(z, s));
    lhs.push_back({std::move(s), std::move(l)});
  });
  for_each_subrep(z, dy, [&](SubRep s) {
    Label l = label_of(subrep_to_rep(z, s));
    rhs.push_back({std::move(s), std::move(l)});
  });
  std::map<std::pair<Label, Label>, uint64_t> out;
  int nv = static_cast<int>(z.dims.size());
  for (const auto& [u, lu] : lhs)
    for (const auto& [w, lw] : rhs) {
      bool direct = true;
      for (int v = 0; v < nv && direct; ++v) {
        if (u.dims[v] + w.dims[v] != z.dims[v]) {
          direct = false;
          break;
        }
        if (u.dims[v] == 0 || w.dims[v] == 0) continue;
        FpMat stacked(u.dims[v] + w.dims[v], z.dims[v], z.p);
        for (int i = 0; i < u.dims[v]; ++i)
          for (int j = 0; j < z.dims[v]; ++j) stacked.at(i, j) = u.basis[v].at(i, j);
        for (int i = 0; i < w.dims[v]; ++i)
          for (int j = 0; j < z.dims[v]; ++j) stacked.at(u.dims[v] + i, j) = w.basis[v].at(i, j);
        if (fp_rank(stacked) != z.dims[v]) direct = false;
      }
      if (direct) out[{lu, lw}]++;
    }
  return out;
}

BigInt gaussian_count(int n, int k, uint32_t p) {
  if (k < 0 || k > n) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    BigInt pn, pk;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(n - i));
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(i + 1));
    num *= pn - 1;
    den *= pk - 1;
  }
  BigInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

std::vector<SubRep> all_subreps(const Rep& z) {
  std::vector<SubRep> out;
  DimVec dx(z.dims.size(), 0);
  while (true) {
    for_each_subrep(z, dx, [&](SubRep s) { out.push_back(std::move(s)); });
    size_t v = 0;
    while (v < dx.size() && ++dx[v] > z.dims[v]) {
      dx[v] = 0;
      ++v;
    }
    if (v == dx.size()) break;
  }
  return out;
}

FlagCell flag_cell(const Rep& z, uint64_t aut_budget) {
  // Pair classes are Aut(Z)-orbits of subrepresentations.  Candidate classes
  // come from the invariant (sub label, quotient label); one streamed pass
  // over End(Z) counts stabilizers, and candidate = orbit is verified by
  // orbit-stabilizer counting.  A mismatch means the invariant conflates
  // orbits, which makes polynomial flag tables ill-keyed, so the ambient is
  // rejected.
  std::vector<SubRep> subs = all_subreps(z);
  std::map<std::pair<Label, Label>, int> cls_index;
  std::vector<int> orbit(subs.size(), -1);
  std::vector<int> reps;
  FlagCell cell;
  for (size_t i = 0; i < subs.size(); ++i) {
    auto key = std::make_pair(label_of(subrep_to_rep(z, subs[i])),
                              label_of(quotient_rep(z, subs[i])));
    auto it = cls_index.find(key);
    if (it == cls_index.end()) {
      it = cls_index.emplace(key, static_cast<int>(reps.size())).first;
      reps.push_back(static_cast<int>(i));
      cell.pair_key.push_back(key);
    }
    orbit[i] = it->second;
  }
  cell.orbit_size.assign(reps.size(), 0);
  for (size_t i = 0; i < subs.size(); ++i) cell.orbit_size[orbit[i]]++;

  // stream End(Z), counting units and per-representative stabilizer sizes
  auto endo = hom_basis(z, z);
  size_t k = endo.size();
  uint64_t total = 1;
  for (size_t i = 0; i < k; ++i) {
    if (total > aut_budget / z.p) throw BudgetError("flag_cell: endomorphism space too large");
    total *= z.p;
  }
  int nv = static_cast<int>(z.dims.size());
  BigInt aut_count = 0;
  std::vector<BigInt> stab(reps.size(), BigInt(0));
  std::vector<uint32_t> c(k);
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t t = code;
    for (size_t i = 0; i < k; ++i) {
      c[i] = static_cast<uint32_t>(t % z.p);
      t /= z.p;
    }
    std::vector<FpMat> g(nv);
    bool inv = true;
    for (int v = 0; v < nv; ++v) {
      FpMat m(z.dims[v], z.dims[v], z.p);
      for (size_t i = 0; i < k; ++i)
        if (c[i]) m = fp_add(m, fp_scale(endo[i][v], c[i]));
      if (z.dims[v] > 0 && !fp_invertible(m)) {
        inv = false;
        break;
      }
      g[v] = std::move(m);
    }
    if (!inv) continue;
    aut_count += 1;
    for (size_t r = 0; r < reps.size(); ++r) {
      const SubRep& s = subs[reps[r]];
      bool fixed = true;
      for (int v = 0; v < nv && fixed; ++v) {
        if (s.dims[v] == 0) continue;
        FpMat b = fp_mul(s.basis[v], transpose(g[v]));
        fp_rref(b);
        if (!(b == s.basis[v])) fixed = false;
      }
      if (fixed) stab[r] += 1;
    }
  }
  for (size_t r = 0; r < reps.size(); ++r) {
    if (stab[r] == 0 || aut_count % stab[r] != 0)
      throw InternalCheckError("flag_cell: stabilizer does not divide the group order");
    if (aut_count / stab[r] != cell.orbit_size[r])
      throw UnsupportedQuiverError(
          "flag pair classes not separated by (sub, quotient) labels on ambient " +
          label_to_string(label_of(z)));
  }

  // relative quotient S'/S: express S inside the representation of S'.
  auto relative_quotient_label = [&](const SubRep& outer, const SubRep& inner) {
    Rep outer_rep = subrep_to_rep(z, outer);
    SubRep rel;
    rel.dims = inner.dims;
    for (int v = 0; v < nv; ++v) {
      if (inner.dims[v] == 0) {
        rel.basis.emplace_back(0, outer.dims[v], z.p);
        continue;
      }
      FpMat coords = fp_solve(transpose(outer.basis[v]), transpose(inner.basis[v]));
      FpMat rows = transpose(coords);
      fp_rref(rows);
      rel.basis.push_back(std::move(rows));
    }
    return label_of(quotient_rep(outer_rep, rel));
  };

  cell.down.resize(reps.size());
  cell.up.resize(reps.size());
  for (size_t c = 0; c < reps.size(); ++c) {
    const SubRep& s = subs[reps[c]];
    for (size_t j = 0; j < subs.size(); ++j) {
      if (subrep_contains(subs[j], s, z.p))
        cell.down[c][{relative_quotient_label(subs[j], s), orbit[j]}]++;
      if (subrep_contains(s, subs[j], z.p))
        cell.up[c][{orbit[j], relative_quotient_label(s, subs[j])}]++;
    }
  }
  return cell;
}

}  // namespace hall
