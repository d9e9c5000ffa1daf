#include "hall/poset.hpp"

#include <algorithm>
#include <map>

namespace hall {

Poset Poset::chain(int n) {
  Poset p;
  p.n = n;
  p.leq.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.leq[i][j] = 1;
  return p;
}

Poset Poset::antichain(int n) {
  Poset p;
  p.n = n;
  p.leq.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) p.leq[i][i] = 1;
  return p;
}

namespace {

// Merges child posets: in a chain every element of an earlier child precedes
// every element of a later one; in an antichain children stay incomparable.
Poset replay_node(const SPCert& cert) {
  if (cert.kind == SPCert::Kind::Leaf) {
    Poset p = Poset::antichain(1);
    return p;
  }
  std::vector<Poset> parts;
  std::vector<std::vector<int>> leaves;
  for (const auto& ch : cert.children) {
    parts.push_back(replay_node(ch));
    std::vector<int> l;
    ch.collect_leaves(l);
    leaves.push_back(std::move(l));
  }
  std::vector<int> all;
  cert.collect_leaves(all);
  int n = static_cast<int>(all.size());
  // local index of each leaf in the concatenated order
  std::map<int, int> pos;
  for (int i = 0; i < n; ++i) pos[all[i]] = i;
  Poset p = Poset::antichain(n);
  int base = 0;
  for (size_t c = 0; c < parts.size(); ++c) {
    for (int i = 0; i < parts[c].n; ++i)
      for (int j = 0; j < parts[c].n; ++j)
        if (parts[c].leq[i][j]) p.leq[base + i][base + j] = 1;
    base += parts[c].n;
  }
  if (cert.kind == SPCert::Kind::Chain) {
    int lo = 0;
    for (size_t c = 0; c < parts.size(); ++c) {
      int hi = lo + parts[c].n;
      for (int i = lo; i < hi; ++i)
        for (int j = hi; j < n; ++j) p.leq[i][j] = 1;
      lo = hi;
    }
  }
  return p;
}

}  // namespace

Poset replay_certificate(const SPCert& cert, int n) {
  std::vector<int> leaves;
  cert.collect_leaves(leaves);
  std::vector<int> sorted = leaves;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (i >= static_cast<int>(sorted.size()) || sorted[i] != i)
      throw DomainError("certificate leaves are not exactly 0..n-1");
  if (static_cast<int>(sorted.size()) != n)
    throw DomainError("certificate leaves are not exactly 0..n-1");
  Poset local = replay_node(cert);
  // local is indexed by concatenation order; permute to leaf identity
  Poset p = Poset::antichain(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.leq[leaves[i]][leaves[j]] = local.leq[i][j];
  return p;
}

const std::vector<std::vector<int>>& set_partitions(int n) {
  static std::map<int, std::vector<std::vector<int>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out = {{}};
    return cache.emplace(n, std::move(out)).first->second;
  }
  std::vector<int> a(n, 0);
  // restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1
  while (true) {
    out.push_back(a);
    int i = n - 1;
    for (; i > 0; --i) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, a[j]);
      if (a[i] <= mx) break;
    }
    if (i == 0) break;
    a[i]++;
    for (int j = i + 1; j < n; ++j) a[j] = 0;
  }
  return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace hall
