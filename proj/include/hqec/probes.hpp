#pragma once

#include <vector>

#include "hqec/reconstruction.hpp"

namespace hqec {

// Distance and recovery probes, per hole.
//
// A region "recovers" a hole when gates supported inside it realize
// every rotation of that hole's algebra with no side effect elsewhere;
// equivalently, erasing the complement is a correctable loss. Distances
// ask the opposite question: the smallest erasure that defeats the
// algebra, either as a contiguous boundary arc or as an arbitrary set.

// True when erasing the complement of `region` is correctable for `hole`.
bool region_recovers(const PatternEngine& eng, const gf2::BitVec& region, int hole);

// True when `region` recovers `hole` but no single-qudit deletion does.
bool region_recovery_minimal(const PatternEngine& eng, const gf2::BitVec& region, int hole);

struct DistanceRecord {
  int hole = -1;
  int d_connected = 0;  // smallest uncorrectable boundary arc
  int d_any = 0;        // smallest uncorrectable erasure of any shape
  int d_gate = 0;       // smallest support of a clean nontrivial rotation
  gf2::BitVec witness_connected;  // an arc of size d_connected defeating the hole
  gf2::BitVec witness_any;        // an erasure of size d_any defeating the hole
};

// Smallest contiguous ring arc whose erasure is uncorrectable for `hole`.
// Scans sizes upward, first position 0; erasing everything always defeats
// the hole, so the scan terminates.
int connected_distance(const PatternEngine& eng, int hole, gf2::BitVec* witness = nullptr);

// Smallest erasure of any shape. Every hole owns two-qudit corner gates
// whose loss already defeats it, so the answer is 1 or 2 and the search
// only needs singletons.
int unrestricted_distance(const PatternEngine& eng, int hole, gf2::BitVec* witness = nullptr);

// Smallest qudit support of a gate product acting as a nontrivial pure
// rotation at `hole`: 1 if some single-qudit rotation is realizable and
// clean, else 2 via the hole's own corner gates.
int min_gate_support(const PatternEngine& eng, int hole);

DistanceRecord distance_record(const PatternEngine& eng, int hole);

// Minimal recovery regions built from paths hugging the hole's loop.
// Within sub-block b of the hole's own block (b = 0 top, 1 bottom-right,
// 2 bottom-left, relative to that block):
//  - a "facing path" links the two ends of the lateral that faces the
//    hole, taking at every deeper level the two children other than b
//    (2^(scale-1) qudits, one row off the hole);
//  - a "corner path" links lateral end d (d != b) to the sub-block's
//    outward corner, taking children with digits in {d, b};
//  - a "blocking corner" is a lateral end alone; it denies the
//    complement any facing path of that sub-block.
enum class RecoveryFamily {
  ThreeCorner,  // corner paths in all three sub-blocks
  MixedCorner,  // facing path in one sub-block, corner paths in the others
  TwoFacing,    // facing paths in two sub-blocks plus one blocking corner
  SharedBlock,  // facing + corner path sharing a sub-block, corner path in
                // a second, blocking corner in the third
};

struct MinimalRecovery {
  int hole = -1;
  RecoveryFamily family = RecoveryFamily::TwoFacing;
  gf2::BitVec region;
  bool recovers = false;
  bool minimal = false;
  int size() const { return region.popcount(); }
};

// The smallest recovery: facing paths in sub-blocks 1 and 2 plus the
// blocking corner of sub-block 0, size 2^scale + 1. Defined for every
// hole; `recovers` and `minimal` report the engine's verification.
MinimalRecovery smallest_recovery(const PatternEngine& eng, int hole);

// All verified minimal recoveries over the orientation variants of the
// four families; candidates that fail verification or duplicate an
// earlier region are dropped.
std::vector<MinimalRecovery> minimal_recoveries(const PatternEngine& eng, int hole);

// Size of the smallest ring arc containing the smallest recovery.
int connected_price(const PatternEngine& eng, int hole);

struct UberFit {
  double slope = 0;      // log-log slope of (recovery size - 1) vs qudit count
  double raw_slope = 0;  // log-log slope of the unshifted size
  double intercept = 0;  // intercept of the shifted fit
  double max_dev = 0;    // largest |residual| of the shifted fit
  double h = 0;          // boundary fractal dimension log 3 / log 2
  std::vector<int> levels;
  std::vector<int> sizes;         // smallest-recovery size per level
  std::vector<int> qudit_counts;  // N per level
};

// Scaling of the central hole's smallest recovery across levels. The
// shifted fit strips the one blocking corner qudit, exposing the pure
// 2^level = N^(1/h) growth of the covering paths. Throws
// std::invalid_argument for fewer than two levels.
UberFit uberholography_fit(const std::vector<int>& levels);

}  // namespace hqec
