#ifndef HALL_REPFIELD_HPP
#define HALL_REPFIELD_HPP

// Brute-force laboratory for quiver representations over small prime fields:
// enumeration up to isomorphism, Hom/Ext computations, subrepresentation
// counts, extension-class classification, direct-sum splittings and flags.
//
// Isomorphism classes are keyed by their Krull-Schmidt label: the sorted
// multiset of dimension vectors of the indecomposable summands.  For
// representation-finite quivers an indecomposable is determined by its
// dimension vector; this is not assumed blindly -- the enumeration verifies
// one GL-orbit per label by exact counting and rejects quivers where the
// check fails.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hall/fp.hpp"
#include "hall/quiver.hpp"

namespace hall {

using Label = std::vector<DimVec>;  // sorted

std::string label_to_string(const Label& l);
DimVec label_dims(const Label& l, int nv);

struct Rep {
  const Quiver* quiver = nullptr;
  uint32_t p = 2;
  DimVec dims;
  std::vector<FpMat> maps;  // maps[a]: dims[target] x dims[source]

  int total_dim() const { return dim_total(dims); }
};

Rep zero_rep(const Quiver& q, uint32_t p);
Rep direct_sum(const Rep& a, const Rep& b);

// Morphism space Hom(X, Y): each basis element is one matrix per vertex
// (dims_Y[v] x dims_X[v]) intertwining the arrow maps.
std::vector<std::vector<FpMat>> hom_basis(const Rep& x, const Rep& y);
int hom_dim(const Rep& x, const Rep& y);

// dim Ext^1(X, Y) computed as the cokernel dimension of the coboundary map;
// cross-checked against hom_dim(x,y) - chi([x],[y]) when a form is supplied.
int ext1_dim(const Rep& x, const Rep& y);
int ext1_dim_checked(const Rep& x, const Rep& y, const EulerForm& chi);

// Krull-Schmidt decomposition into indecomposable summand representations.
// Throws UnsupportedQuiverError if an endomorphism ring cannot be split.
std::vector<Rep> decompose(const Rep& x);
Label label_of(const Rep& x);
void label_cache_clear();  // resets the per-thread labelling cache (benchmarks)
bool is_indecomposable(const Rep& x);

// #Aut(X) by direct enumeration of End(X); requires p^dim End <= budget.
BigInt aut_order(const Rep& x, uint64_t budget = 1ull << 21);

// A subrepresentation, stored as one reduced-row-echelon basis per vertex
// (rows are basis vectors of the subspace).
struct SubRep {
  DimVec dims;
  std::vector<FpMat> basis;  // basis[v]: dims[v] x ambient_dims[v]
};

Rep subrep_to_rep(const Rep& z, const SubRep& s);
Rep quotient_rep(const Rep& z, const SubRep& s);
bool subrep_contains(const SubRep& outer, const SubRep& inner, uint32_t p);

// All arrow-invariant subspace tuples of Z (every dimension vector).
std::vector<SubRep> all_subreps(const Rep& z);

// Enumeration of one (dimension vector, prime) cell: every matrix tuple is
// generated and classified; `count` is the number of tuples in each class
// and `rep` the representative with the smallest generation index.
struct CellClass {
  Label label;
  BigInt count = 0;
  Rep rep;
};

struct EnumLimits {
  uint64_t max_tuples_per_cell = 1ull << 26;
  uint64_t max_aut_enum = 1ull << 21;
  int max_total_dim = 8;
};

// Serial reference kernel.
std::vector<CellClass> enumerate_cell_serial(const Quiver& q, const DimVec& d, uint32_t p,
                                             const EnumLimits& lim);
// OpenMP kernel over chunked tuple ranges; byte-identical result by
// construction (same classes, same minimal-index representatives).
std::vector<CellClass> enumerate_cell_parallel(const Quiver& q, const DimVec& d, uint32_t p,
                                               const EnumLimits& lim);

// Subrepresentation counts of Z with sub-dimension dX, keyed by
// (label of U, label of Z/U).
std::map<std::pair<Label, Label>, uint64_t> hall_count(const Rep& z, const DimVec& dx);

// Extension classes e in Ext^1(Y, X) (sequences 0 -> X -> Z -> Y -> 0),
// classified by the label of the middle term.  The counts add up to
// p^ext1_dim(Y, X) exactly; violation is an internal error.
std::map<Label, uint64_t> ext_classify(const Rep& x, const Rep& y,
                                       uint64_t budget = 1ull << 26);

// Ordered pairs (U, W) of subrepresentations with U + W = Z direct,
// dims(U) = dX, keyed by (label U, label W).
std::map<std::pair<Label, Label>, uint64_t> direct_sum_splittings(const Rep& z, const DimVec& dx);

// Number of k-dimensional subspaces of F_p^n.
BigInt gaussian_count(int n, int k, uint32_t p);

// Flags inside one ambient representative Z.  Pair classes are orbits of
// subrepresentations under Aut(Z); the key (sub label, quotient label) must
// separate orbits, otherwise the ambient is reported unsupported.
struct FlagCell {
  std::vector<std::pair<Label, Label>> pair_key;    // per pair class
  std::vector<int> orbit_size;                      // subreps per class
  // down[c]: for the representative (S in Z) of pair class c, counts of
  // intermediates S' with S <= S' <= Z keyed by (label S'/S, pair class S').
  std::vector<std::map<std::pair<Label, int>, uint64_t>> down;
  // up[c]: for representative (S' in Z), counts of S <= S' keyed by
  // (pair class S, label S'/S).
  std::vector<std::map<std::pair<int, Label>, uint64_t>> up;
};

FlagCell flag_cell(const Rep& z, uint64_t aut_budget);

}  // namespace hall

#endif
