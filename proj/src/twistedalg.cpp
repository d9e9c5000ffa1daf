#include "hall/twistedalg.hpp"

#include <algorithm>
#include <sstream>

namespace hall {

namespace {

// L^e for rational e with 2e integral, realized as a power of P.
RatFunc l_power(const BigRat& e) {
  BigRat twice = e * 2;
  twice.canonicalize();
  if (twice.get_den() != 1)
    throw DomainError("form value with denominator beyond 2 cannot be realized in Q(P)");
  long k = twice.get_num().get_si();
  return RatFunc::P(static_cast<int>(k));
}

RatFunc l_minus_one_power(int k) { return (RatFunc::L() - RatFunc(1)).pow(k); }

}  // namespace

IKClass ik_normalize(IKClass v) {
  for (const auto& d : v)
    if (dim_is_zero(d)) throw DomainError("zero dimension vector is not a class member");
  std::sort(v.begin(), v.end());
  return v;
}

BigInt ik_aut_order(const IKClass& v) {
  BigInt r = 1;
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j - i));
    r *= f;
    i = j;
  }
  return r;
}

DimVec ik_sum(const IKClass& v, int rank) {
  DimVec s(rank, 0);
  for (const auto& d : v) s = dim_add(s, d);
  return s;
}

std::string ik_to_string(const IKClass& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += dim_to_string(v[i]);
  }
  return s + "}";
}

AElem a_basis(const DimVec& alpha) { return AElem::basis({alpha}); }
BElem b_basis(IKClass k) { return BElem::basis(ik_normalize(std::move(k))); }
BElem b_singleton(const DimVec& alpha) { return b_basis({alpha}); }
CElem c_basis(IKClass k) { return CElem::basis(ik_normalize(std::move(k))); }
CElem c_singleton(const DimVec& alpha) { return c_basis({alpha}); }

AElem a_mult(const AElem& x, const AElem& y, const EulerForm& chi) {
  AElem out;
  for (const auto& [ka, va] : x.coeffs())
    for (const auto& [kb, vb] : y.coeffs()) {
      const DimVec &a = ka[0], &b = kb[0];
      RatFunc w = l_power(-chi.apply(b, a));
      out.add({dim_add(a, b)}, va * vb * w);
    }
  return out;
}

AElem a_poset_op(const Poset& p, const std::vector<AElem>& inputs, const EulerForm& chi) {
  if (static_cast<int>(inputs.size()) != p.n) throw DomainError("input count != poset size");
  AElem out;
  // one choice of support key per input
  std::vector<std::vector<std::pair<std::vector<DimVec>, RatFunc>>> terms;
  for (const auto& e : inputs) {
    terms.emplace_back(e.coeffs().begin(), e.coeffs().end());
    if (terms.back().empty()) return out;  // a zero factor kills the product
  }
  std::vector<size_t> idx(inputs.size(), 0);
  while (true) {
    RatFunc coef(BigInt(1));
    BigRat exp(0);
    DimVec total(chi.rank(), 0);
    for (int i = 0; i < p.n; ++i) {
      coef *= terms[i][idx[i]].second;
      total = dim_add(total, terms[i][idx[i]].first[0]);
    }
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j) {
        if (i == j || !p.leq[i][j]) continue;
        exp -= chi.apply(terms[j][idx[j]].first[0], terms[i][idx[i]].first[0]);
      }
    out.add({total}, coef * l_power(exp));
    size_t v = 0;
    while (v < idx.size() && ++idx[v] == terms[v].size()) {
      idx[v] = 0;
      ++v;
    }
    if (v == idx.size()) break;
  }
  return out;
}

// --- B multiplication -------------------------------------------------------

namespace {

// Laurent polynomial in P with rational coefficients; the workhorse that
// keeps the partition sums in integer-exponent arithmetic until one final
// conversion per output class.
using LaurentP = std::map<int, BigRat>;

void laurent_add(LaurentP& a, int exp, const BigRat& c) {
  auto it = a.try_emplace(exp, 0).first;
  it->second += c;
  it->second.canonicalize();
  if (it->second == 0) a.erase(it);
}

// multiply by (P^a - 1), a != 0
LaurentP laurent_mul_factor(const LaurentP& m, int a) {
  LaurentP out;
  for (const auto& [e, c] : m) {
    laurent_add(out, e + a, c);
    laurent_add(out, e, -c);
  }
  return out;
}

// exact division by (P^a - 1), a != 0
LaurentP laurent_div_factor(LaurentP m, int a) {
  if (a < 0) {
    // P^a - 1 = -P^a (P^{-a} - 1)
    LaurentP shifted;
    for (const auto& [e, c] : m) shifted[e - a] = -c;
    m = std::move(shifted);
    a = -a;
  }
  LaurentP q;
  while (!m.empty()) {
    auto top = m.rbegin();
    int e = top->first;
    BigRat c = top->second;
    laurent_add(q, e - a, c);
    laurent_add(m, e, -c);
    laurent_add(m, e - a, c);
  }
  return q;
}

LaurentP laurent_mul(const LaurentP& x, const LaurentP& y) {
  LaurentP out;
  for (const auto& [e1, c1] : x)
    for (const auto& [e2, c2] : y) laurent_add(out, e1 + e2, c1 * c2);
  return out;
}

RatFunc laurent_to_ratfunc(const LaurentP& m) {
  RatFunc r;
  for (const auto& [e, c] : m) r += RatFunc(c) * RatFunc::P(e);
  return r;
}

constexpr int kEdgeSlotCap = 20;

// P-exponent of L^{-chi}; the form may take half-integer values.
int p_exponent(const BigRat& chi_value) {
  BigRat twice = chi_value * -2;
  twice.canonicalize();
  if (twice.get_den() != 1)
    throw DomainError("form value with denominator beyond 2 cannot be realized in Q(P)");
  return static_cast<int>(twice.get_num().get_si());
}

// Sum over edge subsets of the complete bipartite graph on (a, b) vertices
// that connect all of them, of prod_e (P^{w_e} - 1); the caller divides by
// (L-1)^{a+b-1}.  Edges with weight exponent 0 contribute a zero factor and
// are dropped up front.
LaurentP connected_subset_sum(const std::vector<std::vector<int>>& pexp, int a, int b) {
  int v = a + b;
  std::vector<std::pair<int, int>> edges;  // (i, a+j)
  std::vector<int> w;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (pexp[i][j] != 0) {
        edges.push_back({i, a + j});
        w.push_back(pexp[i][j]);
      }
  int m = static_cast<int>(edges.size());
  LaurentP total;
  if (m < v - 1) return total;
  // Gray-code walk: one multiply or exact divide per step.
  LaurentP cur;
  cur[0] = 1;
  uint32_t gray = 0;
  std::vector<int> parent(v);
  uint64_t count = 1ull << m;
  for (uint64_t i = 1; i < count; ++i) {
    uint32_t next = static_cast<uint32_t>(i ^ (i >> 1));
    uint32_t diff = next ^ gray;
    int bit = __builtin_ctz(diff);
    if (next & diff)
      cur = laurent_mul_factor(cur, w[bit]);
    else
      cur = laurent_div_factor(cur, w[bit]);
    gray = next;
    if (__builtin_popcount(gray) < v - 1) continue;
    for (int x = 0; x < v; ++x) parent[x] = x;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int comps = v;
    for (int e = 0; e < m; ++e) {
      if (!(gray & (1u << e))) continue;
      int ri = find(edges[e].first), rj = find(edges[e].second);
      if (ri != rj) {
        parent[ri] = rj;
        --comps;
      }
    }
    if (comps != 1) continue;
    for (const auto& [e, c] : cur) laurent_add(total, e, c);
  }
  return total;
}

// Spanning-forest extension with cycle detection; counts trees on the block.
void tree_sum_rec(const std::vector<std::pair<int, int>>& edges, size_t next, int v, int used,
                  std::vector<int>& parent, const std::vector<std::vector<BigRat>>& weight,
                  int isize, const BigRat& acc, BigRat& total) {
  if (used == v - 1) {
    total += acc;
    return;
  }
  if (next >= edges.size()) return;
  if (static_cast<int>(edges.size() - next) < v - 1 - used) return;
  // skip edge
  tree_sum_rec(edges, next + 1, v, used, parent, weight, isize, acc, total);
  // take edge unless it closes a cycle
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  int ri = find(edges[next].first), rj = find(edges[next].second);
  if (ri == rj) return;
  std::vector<int> saved = parent;
  parent[ri] = rj;
  int i = edges[next].first, j = edges[next].second;
  BigRat w = weight[i][j - isize];
  tree_sum_rec(edges, next + 1, v, used + 1, parent, weight, isize, acc * w, total);
  parent = saved;
}

BigRat tree_block_factor(const std::vector<std::vector<BigRat>>& minus_chi_ij, int a, int b) {
  int v = a + b;
  if (v == 1) return 1;
  if (a == 0 || b == 0) return 0;
  if (a * b > kEdgeSlotCap) throw BudgetError("bipartite block exceeds the edge-slot cap");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
  std::vector<int> parent(v);
  for (int i = 0; i < v; ++i) parent[i] = i;
  BigRat total = 0;
  tree_sum_rec(edges, 0, v, 0, parent, minus_chi_ij, a, BigRat(1), total);
  total.canonicalize();
  return total;
}

struct PartitionView {
  std::vector<std::vector<int>> iblocks, jblocks;  // element indices per block
};

PartitionView split_partition(const std::vector<int>& assign, size_t isize) {
  int nb = 0;
  for (int a : assign) nb = std::max(nb, a + 1);
  PartitionView pv;
  pv.iblocks.assign(nb, {});
  pv.jblocks.assign(nb, {});
  for (size_t e = 0; e < assign.size(); ++e) {
    if (e < isize)
      pv.iblocks[assign[e]].push_back(static_cast<int>(e));
    else
      pv.jblocks[assign[e]].push_back(static_cast<int>(e - isize));
  }
  return pv;
}

// Unordered coarsenings of b labelled blocks with the factorial/sign weight
// of the partition-sum law, grouped by the resulting class key.  Depends only
// on the block values, so it is memoized.
struct CoarseTerm {
  IKClass key;
  int kblocks;
  BigRat signfact;
};

const std::vector<CoarseTerm>& coarsening_terms(const std::vector<DimVec>& block_values) {
  thread_local std::map<std::vector<DimVec>, std::vector<CoarseTerm>> memo;
  auto it = memo.find(block_values);
  if (it != memo.end()) return it->second;
  int b = static_cast<int>(block_values.size());
  int rank = b ? static_cast<int>(block_values[0].size()) : 0;
  std::vector<CoarseTerm> out;
  for (const auto& coarse : set_partitions(b)) {
    int kblocks = 0;
    for (int c : coarse) kblocks = std::max(kblocks, c + 1);
    std::vector<int> csize(kblocks, 0);
    std::vector<DimVec> kval(kblocks, DimVec(rank, 0));
    for (int blk = 0; blk < b; ++blk) {
      csize[coarse[blk]]++;
      kval[coarse[blk]] = dim_add(kval[coarse[blk]], block_values[blk]);
    }
    BigRat sf((b - kblocks) % 2 ? -1 : 1);
    for (int c = 0; c < kblocks; ++c) {
      BigInt f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(csize[c] - 1));
      sf *= BigRat(f);
    }
    IKClass key(kval.begin(), kval.end());
    std::sort(key.begin(), key.end());
    out.push_back({std::move(key), kblocks, sf});
  }
  return memo.emplace(block_values, std::move(out)).first->second;
}

// accumulated coefficient per class: (L-1)-power -> Laurent part
using KeyAccum = std::map<IKClass, std::map<int, LaurentP>>;

void finalize_accum(BElem& out, const KeyAccum& acc, const RatFunc& scale) {
  for (const auto& [key, parts] : acc) {
    RatFunc coef;
    for (const auto& [lmpow, lp] : parts)
      coef += laurent_to_ratfunc(lp) * (RatFunc::L() - RatFunc(1)).pow(lmpow);
    if (!coef.is_zero()) out.add(key, scale * coef);
  }
}

}  // namespace

BElem b_mult(const BElem& x, const BElem& y, const EulerForm& chi, BMode mode) {
  BElem out;
  for (const auto& [I, vx] : x.coeffs())
    for (const auto& [J, vy] : y.coeffs()) {
      if (static_cast<long>(I.size()) * static_cast<long>(J.size()) > kEdgeSlotCap)
        throw BudgetError("class pair exceeds the edge-slot cap");
      RatFunc scale = vx * vy;
      int n = static_cast<int>(I.size() + J.size());
      // P-exponents of L^{-chi(lambda(j), kappa(i))}
      std::vector<std::vector<int>> pexp(I.size(), std::vector<int>(J.size(), 0));
      for (size_t ii = 0; ii < I.size(); ++ii)
        for (size_t jj = 0; jj < J.size(); ++jj) pexp[ii][jj] = p_exponent(chi.apply(J[jj], I[ii]));
      KeyAccum acc;
      if (mode == BMode::Graph) {
        for (const auto& assign : set_partitions(n)) {
          PartitionView pv = split_partition(assign, I.size());
          LaurentP factor;
          factor[0] = 1;
          int lmpow = 0;
          bool zero = false;
          IKClass key;
          for (size_t blk = 0; blk < pv.iblocks.size() && !zero; ++blk) {
            int a = static_cast<int>(pv.iblocks[blk].size());
            int b = static_cast<int>(pv.jblocks[blk].size());
            DimVec val(chi.rank(), 0);
            for (int ii : pv.iblocks[blk]) val = dim_add(val, I[ii]);
            for (int jj : pv.jblocks[blk]) val = dim_add(val, J[jj]);
            key.push_back(std::move(val));
            if (a + b == 1) continue;
            if (a == 0 || b == 0) {
              zero = true;
              break;
            }
            if (a * b > kEdgeSlotCap) throw BudgetError("bipartite block exceeds the edge-slot cap");
            std::vector<std::vector<int>> block_exp(a, std::vector<int>(b));
            for (int ii = 0; ii < a; ++ii)
              for (int jj = 0; jj < b; ++jj)
                block_exp[ii][jj] = pexp[pv.iblocks[blk][ii]][pv.jblocks[blk][jj]];
            LaurentP bf = connected_subset_sum(block_exp, a, b);
            if (bf.empty()) {
              zero = true;
              break;
            }
            factor = laurent_mul(factor, bf);
            lmpow -= a + b - 1;
          }
          if (zero) continue;
          std::sort(key.begin(), key.end());
          auto& slot = acc[key][lmpow];
          for (const auto& [e, c] : factor) laurent_add(slot, e, c);
        }
      } else {
        // Partition-sum form: fibers of (phi, psi) up to relabelling of L are
        // the set partitions P1; the map theta up to relabelling of K is a
        // coarsening P2, with weight (-1)^{|P1|-|P2|} prod (block-1)! and the
        // L-product over same-fiber (i, j) pairs.
        for (const auto& assign : set_partitions(n)) {
          PartitionView pv = split_partition(assign, I.size());
          int b = static_cast<int>(pv.iblocks.size());
          int wexp = 0;
          std::vector<DimVec> bval(b, DimVec(chi.rank(), 0));
          for (int blk = 0; blk < b; ++blk) {
            for (int ii : pv.iblocks[blk]) bval[blk] = dim_add(bval[blk], I[ii]);
            for (int jj : pv.jblocks[blk]) bval[blk] = dim_add(bval[blk], J[jj]);
            for (int ii : pv.iblocks[blk])
              for (int jj : pv.jblocks[blk]) wexp += pexp[ii][jj];
          }
          for (const auto& term : coarsening_terms(bval)) {
            int lmpow = term.kblocks - static_cast<int>(I.size()) - static_cast<int>(J.size());
            laurent_add(acc[term.key][lmpow], wexp, term.signfact);
          }
        }
      }
      finalize_accum(out, acc, scale);
    }
  return out;
}

CElem c_mult(const CElem& x, const CElem& y, const EulerForm& chi) {
  CElem out;
  for (const auto& [I, vx] : x.coeffs())
    for (const auto& [J, vy] : y.coeffs()) {
      if (static_cast<long>(I.size()) * static_cast<long>(J.size()) > 16)
        throw BudgetError("class pair exceeds the 16-edge-slot cap");
      BigRat scale = vx * vy;
      int n = static_cast<int>(I.size() + J.size());
      for (const auto& assign : set_partitions(n)) {
        PartitionView pv = split_partition(assign, I.size());
        BigRat factor(1);
        IKClass key;
        for (size_t blk = 0; blk < pv.iblocks.size(); ++blk) {
          std::vector<std::vector<BigRat>> cm(pv.iblocks[blk].size(),
                                              std::vector<BigRat>(pv.jblocks[blk].size()));
          DimVec val(chi.rank(), 0);
          for (int ii : pv.iblocks[blk]) val = dim_add(val, I[ii]);
          for (int jj : pv.jblocks[blk]) val = dim_add(val, J[jj]);
          for (size_t ii = 0; ii < pv.iblocks[blk].size(); ++ii)
            for (size_t jj = 0; jj < pv.jblocks[blk].size(); ++jj)
              cm[ii][jj] = -chi.apply(J[pv.jblocks[blk][jj]], I[pv.iblocks[blk][ii]]);
          factor *= tree_block_factor(cm, static_cast<int>(pv.iblocks[blk].size()),
                                      static_cast<int>(pv.jblocks[blk].size()));
          if (factor == 0) break;
          key.push_back(std::move(val));
        }
        if (factor == 0) continue;
        std::sort(key.begin(), key.end());
        out.add(key, scale * factor);
      }
    }
  return out;
}

bool b_all_lambda_circ(const BElem& x) {
  for (const auto& [k, v] : x.coeffs()) {
    (void)k;
    if (!v.is_lambda_circ()) return false;
  }
  return true;
}

CElem pi_morphism(const BElem& x) {
  CElem out;
  for (const auto& [k, v] : x.coeffs()) out.add(k, v.pi_eval());
  return out;
}

AElem delta_BA(const BElem& x, int rank) {
  AElem out;
  for (const auto& [k, v] : x.coeffs())
    out.add({ik_sum(k, rank)}, v * l_minus_one_power(-static_cast<int>(k.size())));
  return out;
}

AElem a_tilde(const DimVec& alpha, const EulerForm& chi) {
  // P^{-chi(a,a)} a^a: the exponent is a power of P itself, not of L.
  BigRat e = -chi.apply(alpha, alpha);
  e.canonicalize();
  if (e.get_den() != 1) throw DomainError("rescaling needs an integral chi(a,a)");
  AElem out;
  out.add({alpha}, RatFunc::P(static_cast<int>(e.get_num().get_si())));
  return out;
}

BElem b_tilde(const DimVec& alpha, const EulerForm& chi) {
  BigRat e = BigRat(1) - chi.apply(alpha, alpha);
  e.canonicalize();
  if (e.get_den() != 1) throw DomainError("rescaling needs an integral chi(a,a)");
  BElem out;
  out.add({alpha}, RatFunc::P(static_cast<int>(e.get_num().get_si())));
  return out;
}

BElem ind_bracket_b(const DimVec& a, const DimVec& b, const EulerForm& chi) {
  RatFunc coef = (l_power(-chi.apply(b, a)) - l_power(-chi.apply(a, b))) /
                 (RatFunc::L() - RatFunc(1));
  BElem out;
  out.add({dim_add(a, b)}, coef);
  return out;
}

CElem ind_bracket_c(const DimVec& a, const DimVec& b, const EulerForm& chi) {
  CElem out;
  out.add({dim_add(a, b)}, chi.apply(a, b) - chi.apply(b, a));
  return out;
}

CElem ind_bracket_cy(const DimVec& a, const DimVec& b, const EulerForm& chi_full) {
  BigRat v = chi_full.antisym(a, b);
  if (v.get_den() != 1)
    throw InternalCheckError("antisymmetrized form value must be an integer");
  CElem out;
  out.add({dim_add(a, b)}, v);
  return out;
}

}  // namespace hall
