#pragma once

#include "hqec/reconstruction.hpp"

namespace hqec {

// How one hole's algebra splits across a bipartition, read off the
// achievable subgroup s and the confusion subgroup c of the region.
// Any subgroup pair yields mutually-commutant single-hole algebras:
// this side is generated by {S~sigma : sigma in s} plus the sector
// projector sums over cosets of c, the other side by the same with s
// and c exchanged. The names follow the three mixed cases; the pairs
// with s = c get their own labels.
enum class SplitType {
  FullHere,    // (full, trivial): hole inside the region's wedge
  FullThere,   // (trivial, full): hole inside the complement's wedge
  Type1Here,   // (pair sigma, full): rotation S~sigma acts on this side
  Type1There,  // (full, pair sigma)
  Type2Here,   // (trivial, pair sigma): only sector pair-sums here
  Type2There,  // (pair sigma, trivial)
  Type3,       // (pair u, pair v), u != v: one rotation each side
  Classical,   // (trivial, trivial): both sides resolve all four sectors
  SharedPair,  // (pair sigma, pair sigma): same rotation both sides
  SharedFull,  // (full, full): every rotation on both sides
};

struct HoleSplit {
  int hole = -1;
  KleinSubgroup s, c;
  SplitType type = SplitType::Classical;
  int sigma = 0;     // type-1/2 and shared-pair label
  int u = 0, v = 0;  // type-3 labels: u acts on this side, v on the other

  // structure constants of the split, all fixed by (s, c)
  int join_order() const { return s.order() * c.order() / meet_order(); }
  int meet_order() const { return __builtin_popcount(s.mask & c.mask); }
  int dim_here() const { return s.order() * 4 / c.order(); }
  int dim_there() const { return c.order() * 4 / s.order(); }
  int n_sectors() const { return meet_order() * 4 / join_order(); }
  int sector_dim_here() const { return join_order() / c.order(); }
  int sector_dim_there() const { return join_order() / s.order(); }
  int dim_center() const { return n_sectors(); }
};

struct WedgeReport {
  gf2::BitVec region;
  std::vector<HoleSplit> splits;  // one per hole
  std::vector<int> wedge_here;    // holes with FullHere
  std::vector<int> wedge_there;   // holes with FullThere
  std::vector<int> edge_holes;    // everything else: the entangling surface
  // The region's operator algebra factors over holes exactly when the
  // visible and invisible pattern actions are products of their
  // single-hole parts; disconnected regions can break this.
  bool product_split = true;

  bool geometric_complementarity() const { return edge_holes.empty(); }
};

WedgeReport compute_wedges(const PatternEngine& eng, const gf2::BitVec& region);

// Central elements of the region algebra contributed by edge holes.
// type 1: the rotation S~sigma (sigma in both s and c); type 2: the two
// sector projector sums over the cosets of {0, sigma} (= join of s and
// c); type 0: all four sector projectors (join trivial).
struct CenterGenerator {
  int hole;
  int type;
  int sigma;
};
std::vector<CenterGenerator> center_generators(const WedgeReport& report);

// Dense sweep over every product operator basis element supported on
// `swept`: translation parts that leave the support span must compress
// to zero; the rest must compress to a gate product times a diagonal
// reconstruction whose fiber values are two-valued and fiber-constant.
// Level <= 2 and |swept| <= 5.
struct RecoveryCheck {
  std::uint64_t ops_swept = 0;
  std::uint64_t reconstructed = 0;
  bool gauge_solvable = true;    // every in-span translation had a gate product
  bool span_consistent = true;   // support membership == gate expressibility
  bool annihilators_ok = true;   // off-span translations kill the code (sampled)
  bool q_fiber_constant = true;  // diagonal values constant on fibers
  bool q_two_valued = true;      // values in {0, 2^(K - rank)}
  bool q_matches = true;         // compressed entries equal the reconstruction's
  bool center_nontrivial = true;
  bool ok() const {
    return gauge_solvable && span_consistent && annihilators_ok && q_fiber_constant &&
           q_two_valued && q_matches && center_nontrivial;
  }
};
RecoveryCheck verify_complementary_recovery(const PsiBasis& psi, const gf2::BitVec& swept);

// Dense commutant check: every center generator must commute with the
// compressed operators of both sides. Level <= 2.
struct CenterCheck {
  std::uint64_t ops_checked = 0;
  bool commutes = true;
  bool nonempty = false;
};
CenterCheck verify_center(const PsiBasis& psi, const WedgeReport& report);

// Dimension audit: split-table dimensions against densely computed ones.
struct StructureReport {
  WedgeReport wedges;
  std::uint64_t dim_region_algebra = 0;   // product of per-hole factor dims
  std::uint64_t dim_center = 0;           // product of per-hole center dims
  std::uint64_t dim_region_dense = 0;     // distinct shifts x value-matrix rank
  std::uint64_t sector_dim_sum = 0;       // sum over sectors of d_here * d_there
  bool sector_completeness = false;       // == 4^K
  bool dims_agree = false;
};
StructureReport structure_report(const PsiBasis& psi, const gf2::BitVec& region);

}  // namespace hqec
