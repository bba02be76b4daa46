#include "hqec/patterns.hpp"

#include <stdexcept>

#include "hqec/check.hpp"

namespace hqec {

using detail::check;
using gf2::BitVec;

PatternEngine::PatternEngine(const Lattice& lat) : lat_(&lat) {
  const int nb = 2 * lat.N;

  side_f_.assign(3 * lat.N, BitVec(nb));
  for (int q = 0; q < lat.N; q++) {
    side_f_[3 * q + 0].set(2 * q, true);      // d1 = d2 + d3
    side_f_[3 * q + 0].set(2 * q + 1, true);
    side_f_[3 * q + 1].set(2 * q, true);      // d2
    side_f_[3 * q + 2].set(2 * q + 1, true);  // d3
  }

  auto sum_sides = [&](const std::vector<SideRef>& sides) {
    BitVec f(nb);
    for (SideRef s : sides) f ^= side_functional(s.qudit, s.tau);
    return f;
  };

  lateral_f_.resize(lat.K);
  loop_f_.assign(lat.K, BitVec(nb));
  for (const Hole& h : lat.holes) {
    for (int j = 0; j < 3; j++) {
      lateral_f_[h.id][j] = sum_sides(h.lateral[j]);
      loop_f_[h.id] ^= lateral_f_[h.id][j];
    }
  }
  for (int j = 0; j < 3; j++) lattice_f_[j] = sum_sides(lat.lattice_lateral[j]);

  edge_tau_.assign(lat.edges.size(), BitVec(nb));
  edge_log_.assign(lat.edges.size(), BitVec(2 * lat.K));
  for (const GateEdge& e : lat.edges) {
    for (int end = 0; end < 2; end++) {
      edge_tau_[e.id] ^= unit_translation(e.q[end], e.sigma[end]);
      // S^sigma toggles darkness of the two sides tau != sigma; each
      // side feeds exactly one lateral parity
      for (int tau = 1; tau <= 3; tau++) {
        if (tau == e.sigma[end]) continue;
        const SideOwner& o = lat.side_owner[e.q[end]][tau];
        if (o.lattice || o.lateral == 0) continue;  // p1 is dependent, p2/p3 carry the label
        edge_log_[e.id].flip(2 * o.index + (o.lateral - 1));
      }
    }
  }

  hole_gate_.assign(lat.K, BitVec(ngates()));
  hole_tau_.assign(lat.K, BitVec(nb));
  for (const Hole& h : lat.holes) {
    for (int g : h.corner_gate) hole_gate_[h.id].set(g, true);
    hole_tau_[h.id] = gate_translation(hole_gate_[h.id]);
  }
}

int PatternEngine::alpha(const Config& c, int q) const {
  return decode_pair(c.get(2 * q), c.get(2 * q + 1));
}

void PatternEngine::set_alpha(Config& c, int q, int a) const {
  bool b2 = (a == 1 || a == 3), b3 = (a == 1 || a == 2);
  c.set(2 * q, b2);
  c.set(2 * q + 1, b3);
}

void PatternEngine::apply_S(Config& c, int q, int sigma) const {
  if (sigma == 0) return;
  if (sigma != 2) c.flip(2 * q);      // d2 moves unless sigma == 2
  if (sigma != 3) c.flip(2 * q + 1);  // d3 moves unless sigma == 3
}

bool PatternEngine::dark(const Config& c, int q, int tau) const {
  if (tau == 1) return c.get(2 * q) ^ c.get(2 * q + 1);
  return c.get(2 * q + (tau == 2 ? 0 : 1));
}

BitVec PatternEngine::unit_translation(int q, int sigma) const {
  BitVec t(nbits());
  if (sigma != 0 && sigma != 2) t.set(2 * q, true);
  if (sigma != 0 && sigma != 3) t.set(2 * q + 1, true);
  return t;
}

BitVec PatternEngine::gate_translation(const BitVec& gates) const {
  BitVec t(nbits());
  for (int e = 0; e < ngates(); e++)
    if (gates.get(e)) t ^= edge_tau_[e];
  return t;
}

bool PatternEngine::lateral_parity(const Config& c, int x, int j) const {
  return gf2::dot(lateral_f_[x][j], c);
}

bool PatternEngine::lattice_parity(const Config& c, int j) const {
  return gf2::dot(lattice_f_[j], c);
}

bool PatternEngine::loop_parity(const Config& c, int x) const {
  return gf2::dot(loop_f_[x], c);
}

bool PatternEngine::in_psi(const Config& c) const {
  for (int x = 0; x < lat_->K; x++)
    if (gf2::dot(loop_f_[x], c)) return false;
  for (int j = 0; j < 3; j++)
    if (gf2::dot(lattice_f_[j], c)) return false;
  return true;
}

int PatternEngine::psi_dim() const {
  if (psi_dim_ < 0) psi_dim_ = gf2::rank_of(edge_tau_, nbits());
  return psi_dim_;
}

int PatternEngine::constraint_rank() const {
  if (constraint_rank_ < 0) {
    std::vector<BitVec> rows = loop_f_;
    for (int j = 0; j < 3; j++) rows.push_back(lattice_f_[j]);
    constraint_rank_ = gf2::rank_of(rows, nbits());
  }
  return constraint_rank_;
}

int PatternEngine::beta(const Config& c, int x) const {
  return decode_pair(lateral_parity(c, x, 1), lateral_parity(c, x, 2));
}

std::vector<int> PatternEngine::betas(const Config& c) const {
  std::vector<int> b(lat_->K);
  for (int x = 0; x < lat_->K; x++) b[x] = beta(c, x);
  return b;
}

std::uint64_t PatternEngine::pattern_id(const Config& c) const {
  check(lat_->K <= 32, "pattern_id needs K <= 32");
  std::uint64_t n = 0;
  for (int x = 0; x < lat_->K; x++)
    n |= static_cast<std::uint64_t>(beta(c, x)) << (2 * x);
  return n;
}

BitVec PatternEngine::logical_action(const BitVec& gates) const {
  BitVec l(2 * lat_->K);
  for (int e = 0; e < ngates(); e++)
    if (gates.get(e)) l ^= edge_log_[e];
  return l;
}

BitVec PatternEngine::config_logical(const Config& translation) const {
  BitVec l(2 * lat_->K);
  for (int x = 0; x < lat_->K; x++) {
    l.set(2 * x, gf2::dot(lateral_f_[x][1], translation));
    l.set(2 * x + 1, gf2::dot(lateral_f_[x][2], translation));
  }
  return l;
}

int PatternEngine::hole_action(const BitVec& logical, int x) const {
  return decode_pair(logical.get(2 * x), logical.get(2 * x + 1));
}

std::uint64_t PatternEngine::pattern_delta(const BitVec& logical) const {
  check(lat_->K <= 32, "pattern_delta needs K <= 32");
  std::uint64_t d = 0;
  for (int x = 0; x < lat_->K; x++)
    d |= static_cast<std::uint64_t>(hole_action(logical, x)) << (2 * x);
  return d;
}

BitVec PatternEngine::bit_mask(const BitVec& qudit_set) const {
  BitVec m(nbits());
  for (int q = 0; q < lat_->N; q++)
    if (qudit_set.get(q)) {
      m.set(2 * q, true);
      m.set(2 * q + 1, true);
    }
  return m;
}

}  // namespace hqec
