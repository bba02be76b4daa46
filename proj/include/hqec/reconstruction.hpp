#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hqec/codespace.hpp"

namespace hqec {

// Subgroup of the Klein group of rotation labels {0,1,2,3}.
struct KleinSubgroup {
  std::uint8_t mask = 1;  // bit b set iff label b present

  static KleinSubgroup trivial() { return {1}; }
  static KleinSubgroup full() { return {0xF}; }
  static KleinSubgroup pair(int sigma) { return {static_cast<std::uint8_t>(1 | 1 << sigma)}; }

  int order() const { return __builtin_popcount(mask); }
  bool contains(int label) const { return mask >> label & 1; }
  bool is_trivial() const { return mask == 1; }
  bool is_full() const { return mask == 0xF; }
  int pair_label() const;  // the nonzero label of an order-2 subgroup

  void close_with(int label);  // add a label, keep closed under composition
  friend bool operator==(const KleinSubgroup&, const KleinSubgroup&) = default;
};

gf2::BitVec make_region(int N, const std::vector<int>& qudits);
gf2::BitVec arc_region(int N, int first, int size);  // ring interval, wraps
gf2::BitVec complement_region(const gf2::BitVec& region);
std::vector<int> region_qudits(const gf2::BitVec& region);

// Gate products seen from one side of a bipartition: the sub-span of
// translations supported inside the region, the sub-span supported on
// the complement (invisible moves), and their hole-pattern actions.
class RegionEngine {
 public:
  RegionEngine(const PatternEngine& eng, gf2::BitVec region);

  const PatternEngine& engine() const { return *eng_; }
  const gf2::BitVec& region() const { return region_; }

  // s(x): pure rotations at hole x realizable by gates inside the region
  KleinSubgroup achievable(int hole) const;
  // c(x): hole-x components of moves invisible on the region
  KleinSubgroup confusion(int hole) const;

  // gate product supported inside the region with the requested
  // pattern action (2 bits per hole), if one exists
  std::optional<gf2::BitVec> solve_gates(const gf2::BitVec& logical) const;
  // convenience: pure rotation `label` at `hole`, nothing elsewhere
  std::optional<gf2::BitVec> reconstruct_rotation(int hole, int label) const;

  int inside_rank() const { return static_cast<int>(inside_.rows.size()); }
  int invisible_rank() const { return static_cast<int>(outside_.rows.size()); }
  const std::vector<gf2::BitVec>& inside_logicals() const { return inside_log_; }
  const std::vector<gf2::BitVec>& invisible_logicals() const { return outside_log_; }

 private:
  const PatternEngine* eng_;
  gf2::BitVec region_;
  gf2::InsideBasis inside_, outside_;
  std::vector<gf2::BitVec> inside_log_, outside_log_;
};

// pack a rotation label into pattern-action bits (delta p2, delta p3)
gf2::BitVec pure_logical(int K, int hole, int label);

// Erasure of `erased` is correctable for the algebra at `hole` when the
// complement can realize all of it cleanly.
bool erasure_correctable(const PatternEngine& eng, const gf2::BitVec& erased, int hole);

// Independent dense check of the same statement on the enumerated code:
// every operator basis element supported on the erased set, compressed
// to the codespace, must commute with the encoded algebra at `hole`.
// Exhaustive over 4^|erased| translation parts and 4^|erased| diagonal
// parts; needs level <= 2 and |erased| <= 6.
bool oracle_correctable(const PsiBasis& psi, const gf2::BitVec& erased, int hole);

}  // namespace hqec
