#pragma once

#include <cstdint>
#include <vector>

#include "hqec/gf2.hpp"
#include "hqec/lattice.hpp"

namespace hqec {

// States and operators in the binary picture.
//
// A qudit state is one of four configurations alpha = 0..3: alpha = 0
// leaves all three triangle sides bright, alpha = sigma leaves side
// sigma bright and darkens the other two. Only two bits per qudit are
// independent; a Config stores (d2, d3) = darkness of sides 2 and 3,
// with d1 = d2 xor d3. Bit layout: bit 2q = d2(q), bit 2q+1 = d3(q).
//
// S^sigma permutes the four states by toggling darkness of the two
// sides other than sigma; on stored bits it is translation by
// e1 = (1,1), e2 = (0,1), e3 = (1,0). Gate products live in GF(2)^E
// (one bit per edge); their net translation and their action on hole
// patterns are linear maps computed here.
using Config = gf2::BitVec;

// Klein-group label composition: labels {0,1,2,3} under digit XOR.
inline int klein_add(int a, int b) { return a ^ b; }

class PatternEngine {
 public:
  explicit PatternEngine(const Lattice& lat);

  const Lattice& lattice() const { return *lat_; }
  int nbits() const { return 2 * lat_->N; }
  int ngates() const { return static_cast<int>(lat_->edges.size()); }
  int nholes() const { return lat_->K; }

  Config zero_config() const { return Config(nbits()); }

  // single-qudit state access
  int alpha(const Config& c, int q) const;
  void set_alpha(Config& c, int q, int a) const;
  void apply_S(Config& c, int q, int sigma) const;
  bool dark(const Config& c, int q, int tau) const;

  // stored-bit translation of S^sigma on qudit q, and of gate products
  gf2::BitVec unit_translation(int q, int sigma) const;
  const gf2::BitVec& edge_translation(int e) const { return edge_tau_[e]; }
  gf2::BitVec gate_translation(const gf2::BitVec& gates) const;
  const gf2::BitVec& hole_gate(int x) const { return hole_gate_[x]; }
  const gf2::BitVec& hole_translation(int x) const { return hole_tau_[x]; }

  // parity functionals, as rows over the 2N stored bits
  const gf2::BitVec& side_functional(int q, int tau) const { return side_f_[3 * q + tau - 1]; }
  const gf2::BitVec& lateral_functional(int x, int j) const { return lateral_f_[x][j]; }  // j 0..2
  const gf2::BitVec& lattice_functional(int j) const { return lattice_f_[j]; }
  const gf2::BitVec& loop_functional(int x) const { return loop_f_[x]; }

  bool lateral_parity(const Config& c, int x, int j) const;
  bool lattice_parity(const Config& c, int j) const;
  bool loop_parity(const Config& c, int x) const;

  // dark-pattern sector: a config with even loop and lattice parities
  // lies in the code's classical support Psi
  bool in_psi(const Config& c) const;
  int psi_dim() const;          // rank of the edge translations, 3K
  int constraint_rank() const;  // rank of loop + lattice parity rows, K + 2

  // hole pattern beta(x) in 0..3 and its packed id (2 bits per hole)
  int beta(const Config& c, int x) const;
  std::vector<int> betas(const Config& c) const;
  std::uint64_t pattern_id(const Config& c) const;  // needs K <= 32

  // action of gate products on hole patterns: 2 bits per hole,
  // bit 2x = delta p2(x), bit 2x+1 = delta p3(x)
  const gf2::BitVec& edge_logical(int e) const { return edge_log_[e]; }
  gf2::BitVec logical_action(const gf2::BitVec& gates) const;
  gf2::BitVec config_logical(const Config& translation) const;  // via parity rows
  int hole_action(const gf2::BitVec& logical, int x) const;     // Klein label at hole x
  std::uint64_t pattern_delta(const gf2::BitVec& logical) const;

  // expand a qudit set (N bits) to its stored-bit mask (2N bits)
  gf2::BitVec bit_mask(const gf2::BitVec& qudit_set) const;

 private:
  static int decode_pair(bool b2, bool b3) { return b2 ? (b3 ? 1 : 3) : (b3 ? 2 : 0); }

  const Lattice* lat_;
  std::vector<gf2::BitVec> side_f_;
  std::vector<std::array<gf2::BitVec, 3>> lateral_f_;
  std::array<gf2::BitVec, 3> lattice_f_;
  std::vector<gf2::BitVec> loop_f_;
  std::vector<gf2::BitVec> edge_tau_;
  std::vector<gf2::BitVec> edge_log_;
  std::vector<gf2::BitVec> hole_gate_;
  std::vector<gf2::BitVec> hole_tau_;
  mutable int psi_dim_ = -1;
  mutable int constraint_rank_ = -1;
};

}  // namespace hqec
