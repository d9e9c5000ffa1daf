#ifndef HALL_POSET_HPP
#define HALL_POSET_HPP

// Finite posets and series-parallel build certificates.  A certificate is a
// tree of chain/antichain constructions over leaves 0..n-1; replaying it
// yields the order relation, and the poset products evaluate by folding the
// tree (chains multiply, antichains direct-sum), nested by substitution.

#include <vector>

#include "hall/ratfunc.hpp"

namespace hall {

struct Poset {
  int n = 0;
  std::vector<std::vector<char>> leq;  // leq[i][j]: i precedes-or-equals j

  static Poset chain(int n);
  static Poset antichain(int n);
  bool less(int i, int j) const { return i != j && leq[i][j]; }
};

struct SPCert {
  enum class Kind { Leaf, Chain, Antichain };
  Kind kind = Kind::Leaf;
  int leaf = -1;
  std::vector<SPCert> children;

  static SPCert make_leaf(int i) {
    SPCert c;
    c.kind = Kind::Leaf;
    c.leaf = i;
    return c;
  }
  static SPCert make_chain(std::vector<SPCert> ch) {
    SPCert c;
    c.kind = Kind::Chain;
    c.children = std::move(ch);
    return c;
  }
  static SPCert make_antichain(std::vector<SPCert> ch) {
    SPCert c;
    c.kind = Kind::Antichain;
    c.children = std::move(ch);
    return c;
  }

  void collect_leaves(std::vector<int>& out) const {
    if (kind == Kind::Leaf) {
      out.push_back(leaf);
      return;
    }
    for (const auto& ch : children) ch.collect_leaves(out);
  }
};

// Replays a certificate over leaves 0..n-1 into the order relation it
// defines.  Throws DomainError when the leaf set is not exactly 0..n-1.
Poset replay_certificate(const SPCert& cert, int n);

// All unordered set partitions of {0..n-1}, as block-assignment vectors
// (assignment[i] = block index, restricted growth form).  Cached per n.
const std::vector<std::vector<int>>& set_partitions(int n);

}  // namespace hall

#endif
