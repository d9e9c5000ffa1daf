#include "hall/hallnum.hpp"

#include <omp.h>

#include <json.hpp>
#include <set>
#include <sstream>

namespace hall {

using ojson = nlohmann::ordered_json;

void CountPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

CountPoly CountPoly::q_power(int e) {
  std::vector<BigInt> v(static_cast<size_t>(e) + 1, BigInt(0));
  v.back() = 1;
  return CountPoly(std::move(v));
}

CountPoly CountPoly::gl_order(int m) {
  CountPoly r(BigInt(1));
  for (int i = 0; i < m; ++i) {
    std::vector<BigInt> f(static_cast<size_t>(m) + 1, BigInt(0));
    f[m] = 1;
    f[i] -= 1;
    r = r * CountPoly(std::move(f));
  }
  return r;
}

BigInt CountPoly::eval(const BigInt& q) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + *it;
  return r;
}

RatFunc CountPoly::at_L() const {
  RatFunc r;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) r += RatFunc(c_[i]) * RatFunc::L(static_cast<int>(i));
  return r;
}

CountPoly operator+(const CountPoly& a, const CountPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return CountPoly(std::move(v));
}

CountPoly operator-(const CountPoly& a, const CountPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return CountPoly(std::move(v));
}

CountPoly operator*(const CountPoly& a, const CountPoly& b) {
  if (a.is_zero() || b.is_zero()) return CountPoly();
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return CountPoly(std::move(v));
}

CountPoly CountPoly::interpolate(const std::vector<std::pair<uint32_t, BigInt>>& samples) {
  // Lagrange over Q with an exact integrality check.
  size_t n = samples.size();
  if (n == 0) return CountPoly();
  std::vector<BigRat> acc(n, BigRat(0));
  for (size_t i = 0; i < n; ++i) {
    // basis polynomial prod_{j != i} (q - x_j)/(x_i - x_j), times y_i
    std::vector<BigRat> basis = {BigRat(1)};
    BigRat denom(1);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<BigRat> next(basis.size() + 1, BigRat(0));
      for (size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * BigRat(static_cast<long>(samples[j].first));
      }
      basis = std::move(next);
      denom *= BigRat(static_cast<long>(samples[i].first)) -
               BigRat(static_cast<long>(samples[j].first));
    }
    BigRat scale = BigRat(samples[i].second) / denom;
    scale.canonicalize();
    for (size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * scale;
  }
  std::vector<BigInt> coef(n, BigInt(0));
  for (size_t k = 0; k < n; ++k) {
    acc[k].canonicalize();
    if (acc[k].get_den() != 1)
      throw NotPolynomialError("interpolated count has non-integer coefficients");
    coef[k] = acc[k].get_num();
  }
  return CountPoly(std::move(coef));
}

std::string CountPoly::to_ratfunc_q_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (!first)
      os << (c < 0 ? "-" : "+");
    else if (c < 0)
      os << "-";
    first = false;
    BigInt ac = abs(c);
    if (i == 0)
      os << ac.get_str();
    else {
      if (ac != 1) os << ac.get_str() << "*";
      os << "q";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

CountPoly ratfunc_to_countpoly(const RatFunc& r) {
  if (!r.is_polynomial()) throw DomainError("not a polynomial in L");
  std::vector<BigInt> out;
  const auto& c = r.num().coefficients();
  for (size_t i = 0; i < c.size(); ++i) {
    if (i % 2 == 1) {
      if (c[i] != 0) throw DomainError("odd power of P, not a polynomial in L");
      continue;
    }
    out.push_back(c[i]);
  }
  return CountPoly(std::move(out));
}

// --- HallTable lookups ----------------------------------------------------

int HallTable::id_of(const Label& l) const {
  for (size_t i = 0; i < classes.size(); ++i)
    if (classes[i].label == l) return static_cast<int>(i);
  return -1;
}

bool HallTable::in_bound(const DimVec& d) const {
  if (!dim_leq(d, max_dim)) return false;
  if (sum_bound >= 0 && dim_total(d) > sum_bound) return false;
  return true;
}

long HallTable::chi(int x, int y) const {
  return form.apply_int(classes[x].dims, classes[y].dims);
}

int HallTable::ext1(int x, int y) const { return hom[x][y] - static_cast<int>(chi(x, y)); }

const FlagPairTable* HallTable::flag_table(int ambient) const {
  for (const auto& f : flags)
    if (f.ambient == ambient) return &f;
  return nullptr;
}

std::string HallTable::consistency_error() const {
  auto get = [](const std::map<std::tuple<int, int, int>, CountPoly>& m, int x, int y, int z) {
    auto it = m.find({x, y, z});
    return it == m.end() ? CountPoly() : it->second;
  };
  int n = static_cast<int>(classes.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      DimVec dz = dim_add(classes[x].dims, classes[y].dims);
      if (!in_bound(dz)) continue;
      CountPoly esum;
      for (int z = 0; z < n; ++z) {
        if (classes[z].dims != dz) continue;
        CountPoly lhs = get(hall, x, y, z) * classes[x].aut * classes[y].aut *
                        CountPoly::q_power(hom[y][x]);
        CountPoly rhs = get(ext, x, y, z) * classes[z].aut;
        if (!(lhs == rhs))
          return "riedtmann identity fails at (x=" + std::to_string(x) +
                 ",y=" + std::to_string(y) + ",z=" + std::to_string(z) + ")";
        esum = esum + get(ext, x, y, z);
      }
      if (!(esum == CountPoly::q_power(ext1(y, x))))
        return "partition identity fails at (x=" + std::to_string(x) +
               ",y=" + std::to_string(y) + "): sum " + esum.to_string() + " vs q^" +
               std::to_string(ext1(y, x));
    }
  return "";
}

// --- table construction ----------------------------------------------------

namespace {

// Parallel job loop that carries the first exception out of the region.
template <typename F>
void run_jobs(size_t n, bool parallel, F&& f) {
  if (!parallel) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

CountPoly poly_div_exact(const CountPoly& a, const CountPoly& b, const char* what) {
  IntPoly pa(a.coefficients()), pb(b.coefficients());
  try {
    return CountPoly(pa.div_exact(pb).coefficients());
  } catch (const InternalCheckError&) {
    throw InternalCheckError(std::string(what) + ": expected an exact polynomial quotient");
  }
}

std::vector<DimVec> dimvec_list(const Quiver& q, const HallTableOptions& opt) {
  std::vector<DimVec> out;
  DimVec d(q.vertex_count(), 0);
  while (true) {
    if (opt.sum_bound < 0 || dim_total(d) <= opt.sum_bound) out.push_back(d);
    int v = 0;
    while (v < q.vertex_count() && ++d[v] > opt.max_dim[v]) {
      d[v] = 0;
      ++v;
    }
    if (v == q.vertex_count()) break;
  }
  std::sort(out.begin(), out.end(), [](const DimVec& a, const DimVec& b) {
    int ta = dim_total(a), tb = dim_total(b);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return out;
}

struct PrimeData {
  // class label -> (count, representative)
  std::map<Label, CellClass> cells;
};

BigInt gl_product(const DimVec& d, uint32_t p) {
  BigInt r = 1;
  for (int n : d) r *= CountPoly::gl_order(n).eval(p);
  return r;
}

struct Measured {
  // per (x,y,z) triple: one count per prime, aligned with the prime list
  std::map<std::tuple<int, int, int>, std::vector<BigInt>> hall, ext, split;
};

CountPoly fit_family(const std::vector<BigInt>& samples, const std::vector<uint32_t>& fit_primes,
                     size_t nfit, const BigInt& check_value, uint32_t check_prime,
                     const std::string& what) {
  std::vector<std::pair<uint32_t, BigInt>> pts;
  for (size_t i = 0; i < nfit; ++i) pts.push_back({fit_primes[i], samples[i]});
  CountPoly poly = CountPoly::interpolate(pts);
  if (poly.eval(check_prime) != check_value)
    throw NotPolynomialError(what + ": held-out prime check failed at p=" +
                             std::to_string(check_prime));
  // Consistency at the sample primes is automatic for interpolation, but a
  // degree escape (true degree above sample count) shows up at the check
  // prime, which is what the line above guards.
  return poly;
}

HallTable build_attempt(const Quiver& q, const HallTableOptions& opt,
                        const std::vector<uint32_t>& fit_primes) {
  HallTable t;
  t.quiver = q;
  t.form = EulerForm::from_quiver(q);
  t.max_dim = opt.max_dim;
  t.sum_bound = opt.sum_bound;
  t.primes = fit_primes;
  t.check_prime = opt.check_prime;
  if (static_cast<int>(opt.max_dim.size()) != q.vertex_count())
    throw DomainError("max_dim rank does not match the quiver");

  std::vector<uint32_t> all_primes = fit_primes;
  all_primes.push_back(opt.check_prime);
  const size_t np = all_primes.size();
  const std::vector<DimVec> dims = dimvec_list(q, opt);

  // 1. enumerate every (dimension vector, prime) cell
  std::vector<PrimeData> per_prime(np);
  {
    struct Job {
      size_t pi;
      size_t di;
    };
    std::vector<Job> jobs;
    for (size_t pi = 0; pi < np; ++pi)
      for (size_t di = 0; di < dims.size(); ++di) jobs.push_back({pi, di});
    std::vector<std::vector<CellClass>> results(jobs.size());
    run_jobs(jobs.size(), opt.parallel, [&](size_t j) {
      results[j] = opt.parallel
                       ? enumerate_cell_parallel(q, dims[jobs[j].di], all_primes[jobs[j].pi],
                                                 opt.limits)
                       : enumerate_cell_serial(q, dims[jobs[j].di], all_primes[jobs[j].pi],
                                               opt.limits);
    });
    for (size_t j = 0; j < jobs.size(); ++j)
      for (auto& c : results[j]) per_prime[jobs[j].pi].cells.emplace(c.label, std::move(c));
  }

  // 2. the class list must not depend on the prime
  for (size_t pi = 1; pi < np; ++pi) {
    if (per_prime[pi].cells.size() != per_prime[0].cells.size())
      throw UnsupportedQuiverError("class labels differ between primes; not representation-finite "
                                   "at this bound");
    auto it0 = per_prime[0].cells.begin();
    auto itp = per_prime[pi].cells.begin();
    for (; it0 != per_prime[0].cells.end(); ++it0, ++itp)
      if (it0->first != itp->first)
        throw UnsupportedQuiverError("class labels differ between primes; not "
                                     "representation-finite at this bound");
  }
  for (const auto& [label, cell] : per_prime[0].cells) {
    HallTable::ClassEntry e;
    e.label = label;
    e.dims = label_dims(label, q.vertex_count());
    t.classes.push_back(std::move(e));
  }
  std::sort(t.classes.begin(), t.classes.end(), [](const auto& a, const auto& b) {
    int ta = dim_total(a.dims), tb = dim_total(b.dims);
    if (ta != tb) return ta < tb;
    if (a.dims != b.dims) return a.dims < b.dims;
    return a.label < b.label;
  });
  const int ncls = static_cast<int>(t.classes.size());
  std::map<Label, int> index;
  for (int i = 0; i < ncls; ++i) index[t.classes[i].label] = i;
  auto rep_of = [&](int cls, size_t pi) -> const Rep& {
    return per_prime[pi].cells.at(t.classes[cls].label).rep;
  };

  // 3. Hom dimensions between all classes, stable across primes, and the
  // hom - ext = chi identity via the independent cokernel route.
  t.hom.assign(ncls, std::vector<int>(ncls, 0));
  for (int x = 0; x < ncls; ++x)
    for (int y = 0; y < ncls; ++y) {
      int h0 = -1;
      for (size_t pi = 0; pi < np; ++pi) {
        const Rep &rx = rep_of(x, pi), &ry = rep_of(y, pi);
        int h = hom_dim(rx, ry);
        int e = ext1_dim(rx, ry);
        if (h - e != static_cast<int>(t.form.apply_int(rx.dims, ry.dims)))
          throw InternalCheckError("hom - ext != chi for classes " + std::to_string(x) + "," +
                                   std::to_string(y) + " at p=" + std::to_string(all_primes[pi]));
        if (h0 < 0)
          h0 = h;
        else if (h0 != h)
          throw UnsupportedQuiverError("hom dimension varies with the prime");
      }
      t.hom[x][y] = h0;
    }

  // 4. structural automorphism polynomials, verified against the measured
  // orbit sizes at every prime (this is the one-orbit-per-label proof).
  for (int c = 0; c < ncls; ++c) {
    std::vector<std::pair<int, int>> parts;  // (indec class id, multiplicity)
    {
      const Label& l = t.classes[c].label;
      for (size_t i = 0; i < l.size();) {
        size_t j = i;
        while (j < l.size() && l[j] == l[i]) ++j;
        int id = index.count(Label{l[i]}) ? index[Label{l[i]}] : -1;
        if (id < 0) throw InternalCheckError("indecomposable summand class missing from table");
        parts.push_back({id, static_cast<int>(j - i)});
        i = j;
      }
    }
    for (auto [id, mult] : parts) {
      (void)mult;
      if (t.hom[id][id] != 1)
        throw UnsupportedQuiverError("indecomposable with endomorphism ring larger than the "
                                     "base field; out of scope");
    }
    int dim_end = 0, dim_ss = 0;
    for (auto [ki, km] : parts)
      for (auto [li, lm] : parts) dim_end += km * lm * t.hom[ki][li];
    for (auto [ki, km] : parts) {
      (void)ki;
      dim_ss += km * km;
    }
    if (dim_end != t.hom[c][c])
      throw InternalCheckError("endomorphism dimension is not additive over summands");
    CountPoly aut = CountPoly::q_power(dim_end - dim_ss);
    for (auto [ki, km] : parts) {
      (void)ki;
      aut = aut * CountPoly::gl_order(km);
    }
    for (size_t pi = 0; pi < np; ++pi) {
      const BigInt& bucket = per_prime[pi].cells.at(t.classes[c].label).count;
      BigInt glp = gl_product(t.classes[c].dims, all_primes[pi]);
      if (aut.eval(all_primes[pi]) * bucket != glp)
        throw UnsupportedQuiverError(
            "orbit-stabilizer count mismatch for class " + label_to_string(t.classes[c].label) +
            " at p=" + std::to_string(all_primes[pi]) + "; labels do not classify orbits");
    }
    t.classes[c].aut = std::move(aut);
  }

  // 5. measure subobject, extension and splitting counts at every prime
  Measured m;
  {
    struct Job {
      size_t pi;
      int z;  // ambient class for hall/split
    };
    std::vector<Job> jobs;
    for (size_t pi = 0; pi < np; ++pi)
      for (int z = 0; z < ncls; ++z) jobs.push_back({pi, z});
    using TripleCounts = std::map<std::tuple<int, int, int>, BigInt>;
    std::vector<TripleCounts> hall_r(jobs.size()), split_r(jobs.size()), ext_r(jobs.size());
    // Splitting enumeration is quadratic in the subspace counts; cells past
    // this gate get the orbit-stabilizer ratio instead (cross-checked below).
    const BigInt split_gate(static_cast<unsigned long>(1) << 22);
    uint32_t pmax = *std::max_element(all_primes.begin(), all_primes.end());
    auto split_cheap = [&](const DimVec& dz, const DimVec& dx) {
      BigInt a = 1, b = 1;
      for (size_t v = 0; v < dz.size(); ++v) {
        a *= gaussian_count(dz[v], dx[v], pmax);
        b *= gaussian_count(dz[v], dz[v] - dx[v], pmax);
      }
      return a * b <= split_gate;
    };
    auto run_job = [&](size_t j) {
      auto [pi, z] = jobs[j];
      const Rep& zr = rep_of(z, pi);
      DimVec dx(zr.dims.size(), 0);
      while (true) {
        for (const auto& [key, cnt] : hall_count(zr, dx)) {
          int x = index.at(key.first), y = index.at(key.second);
          hall_r[j][{x, y, z}] = BigInt(static_cast<unsigned long>(cnt));
        }
        if (split_cheap(zr.dims, dx))
          for (const auto& [key, cnt] : direct_sum_splittings(zr, dx)) {
            int x = index.at(key.first), y = index.at(key.second);
            split_r[j][{x, y, z}] = BigInt(static_cast<unsigned long>(cnt));
          }
        size_t v = 0;
        while (v < dx.size() && ++dx[v] > zr.dims[v]) {
          dx[v] = 0;
          ++v;
        }
        if (v == dx.size()) break;
      }
      // extension classes for every ordered pair (x, y) whose dimension sum
      // matches this ambient's dimension; attributed to the first class of
      // that dimension so each pair is measured once per prime
      for (int z2 = 0; z2 < z; ++z2)
        if (t.classes[z2].dims == t.classes[z].dims) return;
      for (int x = 0; x < ncls; ++x)
        for (int y = x; y < ncls; ++y) {
          if (dim_add(t.classes[x].dims, t.classes[y].dims) != t.classes[z].dims) continue;
          std::vector<std::pair<int, int>> dirs = {{x, y}};
          if (x != y) dirs.push_back({y, x});
          for (auto [a, b] : dirs) {
            auto counts = ext_classify(rep_of(a, pi), rep_of(b, pi), opt.limits.max_tuples_per_cell);
            for (const auto& [zl, cnt] : counts)
              ext_r[j][{a, b, index.at(zl)}] = BigInt(static_cast<unsigned long>(cnt));
          }
        }
    };
    run_jobs(jobs.size(), opt.parallel, run_job);
    auto merge = [&](std::vector<TripleCounts>& results,
                     std::map<std::tuple<int, int, int>, std::vector<BigInt>>& into) {
      for (size_t j = 0; j < jobs.size(); ++j)
        for (const auto& [key, cnt] : results[j]) {
          auto it = into.find(key);
          if (it == into.end()) it = into.emplace(key, std::vector<BigInt>(np, BigInt(0))).first;
          it->second[jobs[j].pi] = cnt;
        }
    };
    merge(hall_r, m.hall);
    merge(ext_r, m.ext);
    merge(split_r, m.split);
  }

  // 6. interpolate and verify at the held-out prime
  const size_t nfit = fit_primes.size();
  auto fit_all = [&](const std::map<std::tuple<int, int, int>, std::vector<BigInt>>& src,
                     std::map<std::tuple<int, int, int>, CountPoly>& dst, const char* what) {
    for (const auto& [key, samples] : src) {
      CountPoly poly = fit_family(samples, fit_primes, nfit, samples[np - 1], opt.check_prime,
                                  what + std::string(" ") + std::to_string(std::get<0>(key)) + "," +
                                      std::to_string(std::get<1>(key)) + "," +
                                      std::to_string(std::get<2>(key)));
      if (!poly.is_zero()) dst[key] = std::move(poly);
    }
  };
  fit_all(m.hall, t.hall, "hall");
  fit_all(m.ext, t.ext, "ext");
  fit_all(m.split, t.split, "split");

  // Splittings via the second route: Z decomposes as X + Y exactly when the
  // labels merge, and then the ordered splittings form one Aut(Z)-orbit with
  // stabilizer Aut(X) x Aut(Y).  Gate-skipped cells are filled in from this
  // ratio; measured cells must agree with it identically.
  for (int x = 0; x < ncls; ++x)
    for (int y = 0; y < ncls; ++y) {
      Label merged = t.classes[x].label;
      merged.insert(merged.end(), t.classes[y].label.begin(), t.classes[y].label.end());
      std::sort(merged.begin(), merged.end());
      auto mit = index.find(merged);
      if (mit == index.end()) continue;
      int z = mit->second;
      CountPoly ratio = poly_div_exact(t.classes[z].aut, t.classes[x].aut * t.classes[y].aut,
                                       "splitting ratio");
      auto it = t.split.find({x, y, z});
      if (it != t.split.end()) {
        if (!(it->second == ratio))
          throw InternalCheckError("measured splittings disagree with the orbit-stabilizer "
                                   "ratio at (" + std::to_string(x) + "," + std::to_string(y) +
                                   "," + std::to_string(z) + ")");
      } else {
        t.split[{x, y, z}] = std::move(ratio);
      }
    }

  // 7. flag tables for small ambients
  if (opt.build_flags) {
    std::vector<int> cand;
    for (int z = 0; z < ncls; ++z)
      if (t.hom[z][z] <= opt.flag_end_dim_limit) cand.push_back(z);
    std::vector<std::vector<FlagCell>> cell_results(cand.size(), std::vector<FlagCell>(np));
    std::vector<char> skip(cand.size(), 0);
    run_jobs(cand.size() * np, opt.parallel, [&](size_t j) {
      size_t ci = j / np, pi = j % np;
      try {
        cell_results[ci][pi] = flag_cell(rep_of(cand[ci], pi), opt.flag_aut_budget);
      } catch (const BudgetError&) {
        skip[ci] = 1;
      }
    });
    for (size_t ci = 0; ci < cand.size(); ++ci) {
      if (skip[ci]) continue;
      int z = cand[ci];
      std::vector<FlagCell>& cells = cell_results[ci];
      // align pair classes across primes via (sub label, quot label)
      FlagPairTable ft;
      ft.ambient = z;
      std::vector<std::map<std::pair<Label, Label>, int>> key_at(np);
      for (size_t pi = 0; pi < np; ++pi)
        for (size_t c = 0; c < cells[pi].pair_key.size(); ++c)
          key_at[pi][cells[pi].pair_key[c]] = static_cast<int>(c);
      for (size_t pi = 1; pi < np; ++pi)
        if (key_at[pi].size() != key_at[0].size())
          throw UnsupportedQuiverError("flag pair classes differ between primes");
      std::map<std::pair<Label, Label>, int> canon;  // sorted pair-class index
      for (const auto& [key, c0] : key_at[0]) {
        (void)c0;
        canon.emplace(key, static_cast<int>(ft.pair_key.size()));
        ft.pair_key.push_back({index.at(key.first), index.at(key.second)});
      }
      size_t npairs = ft.pair_key.size();
      ft.down.resize(npairs);
      ft.up.resize(npairs);
      size_t pci = 0;
      for (const auto& [key, c0] : key_at[0]) {
        (void)c0;
        // gather (mid, to) keys from all primes
        std::set<std::pair<int, int>> down_keys, up_keys;
        std::vector<int> local(np);
        for (size_t pi = 0; pi < np; ++pi) local[pi] = key_at[pi].at(key);
        for (size_t pi = 0; pi < np; ++pi) {
          for (const auto& [k, cnt] : cells[pi].down[local[pi]]) {
            (void)cnt;
            const auto& other_key = cells[pi].pair_key[k.second];
            down_keys.insert({index.at(k.first), canon.at(other_key)});
          }
          for (const auto& [k, cnt] : cells[pi].up[local[pi]]) {
            (void)cnt;
            const auto& other_key = cells[pi].pair_key[k.first];
            up_keys.insert({canon.at(other_key), index.at(k.second)});
          }
        }
        auto canon_pair_index = [&](size_t pi, int cls) {
          return canon.at(cells[pi].pair_key[cls]);
        };
        for (auto [mid, to] : down_keys) {
          std::vector<BigInt> samples(np, BigInt(0));
          for (size_t pi = 0; pi < np; ++pi)
            for (const auto& [k, cnt] : cells[pi].down[local[pi]])
              if (index.at(k.first) == mid && canon_pair_index(pi, k.second) == to)
                samples[pi] += BigInt(static_cast<unsigned long>(cnt));
          ft.down[pci][{mid, to}] = fit_family(samples, fit_primes, nfit, samples[np - 1],
                                               opt.check_prime, "flag-down");
        }
        for (auto [from, mid] : up_keys) {
          std::vector<BigInt> samples(np, BigInt(0));
          for (size_t pi = 0; pi < np; ++pi)
            for (const auto& [k, cnt] : cells[pi].up[local[pi]])
              if (canon_pair_index(pi, k.first) == from && index.at(k.second) == mid)
                samples[pi] += BigInt(static_cast<unsigned long>(cnt));
          ft.up[pci][{from, mid}] = fit_family(samples, fit_primes, nfit, samples[np - 1],
                                             opt.check_prime, "flag-up");
        }
        ++pci;
      }
      t.flags.push_back(std::move(ft));
    }
  }

  // 8. closing polynomial-level cross checks
  std::string err = t.consistency_error();
  if (!err.empty()) throw InternalCheckError("table self-check failed: " + err);
  return t;
}

}  // namespace

HallTable build_hall_table(const Quiver& q, const HallTableOptions& opt) {
  try {
    return build_attempt(q, opt, opt.primes);
  } catch (const NotPolynomialError&) {
    // one automatic extension of the prime set
    std::vector<uint32_t> extended = opt.primes;
    for (uint32_t p : opt.extension_primes) extended.push_back(p);
    return build_attempt(q, opt, extended);
  }
}

HallTable build_hall_table_serial(const Quiver& q, HallTableOptions opt) {
  opt.parallel = false;
  return build_hall_table(q, opt);
}

// --- JSON -------------------------------------------------------------------

namespace {

const BigInt kJsonMax = BigInt("9007199254740992");  // 2^53

ojson json_int(const BigInt& v) {
  if (abs(v) <= kJsonMax) return ojson(v.get_si());
  return ojson(v.get_str());
}

BigInt parse_int(const ojson& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(static_cast<long>(j.get<int64_t>()));
}

ojson poly_to_json(const CountPoly& p) {
  ojson a = ojson::array();
  for (const auto& c : p.coefficients()) a.push_back(json_int(c));
  return a;
}

CountPoly poly_from_json(const ojson& j) {
  std::vector<BigInt> c;
  for (const auto& e : j) c.push_back(parse_int(e));
  return CountPoly(std::move(c));
}

ojson label_to_json(const Label& l) {
  ojson a = ojson::array();
  for (const auto& d : l) a.push_back(d);
  return a;
}

Label label_from_json(const ojson& j) {
  Label l;
  for (const auto& e : j) l.push_back(e.get<DimVec>());
  return l;
}

ojson triples_to_json(const std::map<std::tuple<int, int, int>, CountPoly>& m) {
  ojson a = ojson::array();
  for (const auto& [key, poly] : m) {
    ojson e;
    e["x"] = std::get<0>(key);
    e["y"] = std::get<1>(key);
    e["z"] = std::get<2>(key);
    e["poly"] = poly_to_json(poly);
    a.push_back(std::move(e));
  }
  return a;
}

void triples_from_json(const ojson& a, std::map<std::tuple<int, int, int>, CountPoly>& m) {
  for (const auto& e : a)
    m[{e.at("x").get<int>(), e.at("y").get<int>(), e.at("z").get<int>()}] =
        poly_from_json(e.at("poly"));
}

}  // namespace

std::string HallTable::to_json() const {
  ojson j;
  j["quiver"]["vertices"] = quiver.vertex_count();
  {
    ojson arr = ojson::array();
    for (const auto& a : quiver.arrows()) arr.push_back({a.source + 1, a.target + 1});
    j["quiver"]["arrows"] = std::move(arr);
  }
  j["max_dim"] = max_dim;
  if (sum_bound >= 0)
    j["sum_bound"] = sum_bound;
  else
    j["sum_bound"] = nullptr;
  j["primes"] = primes;
  j["check_prime"] = check_prime;
  {
    ojson rows = ojson::array();
    for (const auto& row : form.matrix()) {
      ojson r = ojson::array();
      for (const auto& e : row) r.push_back(static_cast<long>(e.get_num().get_si()));
      rows.push_back(std::move(r));
    }
    j["euler"] = std::move(rows);
  }
  {
    ojson cls = ojson::array();
    for (size_t i = 0; i < classes.size(); ++i) {
      ojson e;
      e["id"] = static_cast<int>(i);
      e["label"] = label_to_json(classes[i].label);
      e["dims"] = classes[i].dims;
      cls.push_back(std::move(e));
    }
    j["classes"] = std::move(cls);
  }
  j["hall"] = triples_to_json(hall);
  j["ext"] = triples_to_json(ext);
  {
    ojson a = ojson::array();
    for (size_t i = 0; i < classes.size(); ++i) {
      ojson e;
      e["z"] = static_cast<int>(i);
      e["poly"] = poly_to_json(classes[i].aut);
      a.push_back(std::move(e));
    }
    j["aut"] = std::move(a);
  }
  j["split"] = triples_to_json(split);
  j["hom"] = hom;
  {
    ojson fl = ojson::array();
    for (const auto& f : flags) {
      ojson e;
      e["ambient"] = f.ambient;
      ojson pairs = ojson::array();
      for (const auto& [sub, quot] : f.pair_key) {
        ojson pe;
        pe["sub"] = sub;
        pe["quot"] = quot;
        pairs.push_back(std::move(pe));
      }
      e["pairs"] = std::move(pairs);
      ojson down = ojson::array(), up = ojson::array();
      for (size_t c = 0; c < f.down.size(); ++c) {
        for (const auto& [k, poly] : f.down[c]) {
          ojson de;
          de["pair"] = static_cast<int>(c);
          de["mid"] = k.first;
          de["to"] = k.second;
          de["poly"] = poly_to_json(poly);
          down.push_back(std::move(de));
        }
        for (const auto& [k, poly] : f.up[c]) {
          ojson ue;
          ue["pair"] = static_cast<int>(c);
          ue["from"] = k.first;
          ue["mid"] = k.second;
          ue["poly"] = poly_to_json(poly);
          up.push_back(std::move(ue));
        }
      }
      e["down"] = std::move(down);
      e["up"] = std::move(up);
      fl.push_back(std::move(e));
    }
    j["flags"] = std::move(fl);
  }
  return j.dump(1);
}

HallTable HallTable::from_json(const std::string& text) {
  ojson j = ojson::parse(text);
  HallTable t;
  {
    int nv = j.at("quiver").at("vertices").get<int>();
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("quiver").at("arrows"))
      arrows.push_back({a.at(0).get<int>() - 1, a.at(1).get<int>() - 1});
    t.quiver = Quiver(nv, std::move(arrows));
  }
  t.form = EulerForm::from_quiver(t.quiver);
  t.max_dim = j.at("max_dim").get<DimVec>();
  t.sum_bound = j.at("sum_bound").is_null() ? -1 : j.at("sum_bound").get<int>();
  t.primes = j.at("primes").get<std::vector<uint32_t>>();
  t.check_prime = j.at("check_prime").get<uint32_t>();
  for (const auto& e : j.at("classes")) {
    ClassEntry c;
    c.label = label_from_json(e.at("label"));
    c.dims = e.at("dims").get<DimVec>();
    t.classes.push_back(std::move(c));
  }
  for (const auto& e : j.at("aut"))
    t.classes.at(e.at("z").get<size_t>()).aut = poly_from_json(e.at("poly"));
  triples_from_json(j.at("hall"), t.hall);
  triples_from_json(j.at("ext"), t.ext);
  triples_from_json(j.at("split"), t.split);
  t.hom = j.at("hom").get<std::vector<std::vector<int>>>();
  for (const auto& e : j.at("flags")) {
    FlagPairTable f;
    f.ambient = e.at("ambient").get<int>();
    for (const auto& pe : e.at("pairs"))
      f.pair_key.push_back({pe.at("sub").get<int>(), pe.at("quot").get<int>()});
    f.down.resize(f.pair_key.size());
    f.up.resize(f.pair_key.size());
    for (const auto& de : e.at("down"))
      f.down.at(de.at("pair").get<size_t>())[{de.at("mid").get<int>(), de.at("to").get<int>()}] =
          poly_from_json(de.at("poly"));
    for (const auto& ue : e.at("up"))
      f.up.at(ue.at("pair").get<size_t>())[{ue.at("from").get<int>(), ue.at("mid").get<int>()}] =
          poly_from_json(ue.at("poly"));
    t.flags.push_back(std::move(f));
  }
  return t;
}

}  // namespace hall
