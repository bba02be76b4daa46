#include "hqec/probes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hqec/check.hpp"
#include "hqec/codespace.hpp"

namespace hqec {
namespace {

int ring_of_address(const std::vector<int>& digits) {
  int pos = 0;
  for (int d : digits) pos = pos * 3 + d;
  return pos;
}

// Ring positions of all qudits under `prefix` whose remaining digits are
// drawn from `allowed`; these form a chain along one face of the block.
void collect_path(std::vector<int>& out, std::vector<int>& prefix, int depth,
                  const std::array<int, 2>& allowed) {
  if (depth == 0) {
    out.push_back(ring_of_address(prefix));
    return;
  }
  for (int d : allowed) {
    prefix.push_back(d);
    collect_path(out, prefix, depth - 1, allowed);
    prefix.pop_back();
  }
}

std::vector<int> path_qudits(std::vector<int> prefix, int depth, std::array<int, 2> allowed) {
  std::vector<int> out;
  collect_path(out, prefix, depth, allowed);
  return out;
}

// Address prefix of the block centered on `hole`: any of its corner-gate
// qudits sits `scale` digits below that block.
std::vector<int> block_prefix_of(const Lattice& lat, int hole) {
  const Hole& h = lat.holes[hole];
  const GateEdge& e = lat.edges[h.corner_gate[0]];
  const std::vector<int>& addr = lat.qudits[e.q[0]].address;
  detail::check(static_cast<int>(addr.size()) >= h.scale, "gate qudit shallower than its hole");
  return std::vector<int>(addr.begin(), addr.end() - h.scale);
}

std::vector<int> with_digit(std::vector<int> prefix, int digit) {
  prefix.push_back(digit);
  return prefix;
}

std::array<int, 2> other_digits(int b) {
  std::array<int, 2> o{};
  int k = 0;
  for (int d = 0; d < 3; ++d)
    if (d != b) o[k++] = d;
  return o;
}

std::vector<int> facing_path(const std::vector<int>& prefix, int scale, int b) {
  return path_qudits(with_digit(prefix, b), scale - 1, other_digits(b));
}

std::vector<int> corner_path(const std::vector<int>& prefix, int scale, int b, int d) {
  return path_qudits(with_digit(prefix, b), scale - 1, {d, b});
}

// The lateral end of sub-block b on the side of digit d: address b
// followed by scale-1 copies of d.
int blocking_corner(const std::vector<int>& prefix, int scale, int b, int d) {
  std::vector<int> addr = with_digit(prefix, b);
  addr.insert(addr.end(), scale - 1, d);
  return ring_of_address(addr);
}

void append(std::vector<int>& into, const std::vector<int>& more) {
  into.insert(into.end(), more.begin(), more.end());
}

MinimalRecovery verify_candidate(const PatternEngine& eng, int hole, RecoveryFamily family,
                                 std::vector<int> qudits) {
  std::sort(qudits.begin(), qudits.end());
  qudits.erase(std::unique(qudits.begin(), qudits.end()), qudits.end());
  MinimalRecovery rec;
  rec.hole = hole;
  rec.family = family;
  rec.region = make_region(eng.lattice().N, qudits);
  rec.recovers = region_recovers(eng, rec.region, hole);
  rec.minimal = rec.recovers && region_recovery_minimal(eng, rec.region, hole);
  return rec;
}

int qudit_support(const PatternEngine& eng, const gf2::BitVec& translation) {
  int count = 0;
  for (int q = 0; q < eng.lattice().N; ++q)
    if (translation.get(2 * q) || translation.get(2 * q + 1)) ++count;
  return count;
}

}  // namespace

bool region_recovers(const PatternEngine& eng, const gf2::BitVec& region, int hole) {
  return erasure_correctable(eng, complement_region(region), hole);
}

bool region_recovery_minimal(const PatternEngine& eng, const gf2::BitVec& region, int hole) {
  if (!region_recovers(eng, region, hole)) return false;
  for (int q : region_qudits(region)) {
    gf2::BitVec smaller = region;
    smaller.set(q, false);
    if (region_recovers(eng, smaller, hole)) return false;
  }
  return true;
}

int connected_distance(const PatternEngine& eng, int hole, gf2::BitVec* witness) {
  const int N = eng.lattice().N;
  for (int size = 1; size <= N; ++size)
    for (int first = 0; first < N; ++first) {
      gf2::BitVec arc = arc_region(N, first, size);
      if (!erasure_correctable(eng, arc, hole)) {
        if (witness) *witness = std::move(arc);
        return size;
      }
    }
  detail::check(false, "erasing the whole ring must defeat every hole");
  return N;
}

int unrestricted_distance(const PatternEngine& eng, int hole, gf2::BitVec* witness) {
  const Lattice& lat = eng.lattice();
  for (int q = 0; q < lat.N; ++q) {
    gf2::BitVec one = arc_region(lat.N, q, 1);
    if (!erasure_correctable(eng, one, hole)) {
      if (witness) *witness = std::move(one);
      return 1;
    }
  }
  // No singleton defeats the hole. Losing both qudits of one of its own
  // corner gates always does: the pure rotation that gate carries becomes
  // indistinguishable from the identity on the remaining qudits.
  const GateEdge& e = lat.edges[lat.holes[hole].corner_gate[0]];
  gf2::BitVec pair = make_region(lat.N, {e.q[0], e.q[1]});
  detail::check(!erasure_correctable(eng, pair, hole),
                "losing a hole's own corner gate must defeat it");
  if (witness) *witness = std::move(pair);
  return 2;
}

int min_gate_support(const PatternEngine& eng, int hole) {
  const Lattice& lat = eng.lattice();
  const std::uint64_t mine = std::uint64_t(3) << (2 * hole);
  for (int q = 0; q < lat.N; ++q)
    for (int sigma = 1; sigma <= 3; ++sigma) {
      const std::optional<gf2::BitVec> gates =
          express_as_gates(eng, eng.unit_translation(q, sigma));
      if (!gates) continue;
      const std::uint64_t delta = eng.pattern_delta(eng.logical_action(*gates));
      if (delta != 0 && (delta & ~mine) == 0) return 1;
    }
  // No single-qudit rotation is both realizable and clean; the hole's own
  // corner gates act purely on it with two-qudit support.
  const int eid = lat.holes[hole].corner_gate[0];
  detail::check(qudit_support(eng, eng.edge_translation(eid)) == 2,
                "corner gate must move exactly two qudits");
  const std::uint64_t delta = eng.pattern_delta(eng.edge_logical(eid));
  detail::check(delta != 0 && (delta & ~mine) == 0, "corner gate must rotate only its owner");
  return 2;
}

DistanceRecord distance_record(const PatternEngine& eng, int hole) {
  DistanceRecord rec;
  rec.hole = hole;
  rec.d_connected = connected_distance(eng, hole, &rec.witness_connected);
  rec.d_any = unrestricted_distance(eng, hole, &rec.witness_any);
  rec.d_gate = min_gate_support(eng, hole);
  detail::check(rec.d_any <= rec.d_connected, "an arc is one shape of erasure");
  return rec;
}

MinimalRecovery smallest_recovery(const PatternEngine& eng, int hole) {
  const Lattice& lat = eng.lattice();
  const int scale = lat.holes[hole].scale;
  const std::vector<int> prefix = block_prefix_of(lat, hole);
  std::vector<int> qudits = facing_path(prefix, scale, 1);
  append(qudits, facing_path(prefix, scale, 2));
  qudits.push_back(blocking_corner(prefix, scale, 0, 1));
  return verify_candidate(eng, hole, RecoveryFamily::TwoFacing, std::move(qudits));
}

std::vector<MinimalRecovery> minimal_recoveries(const PatternEngine& eng, int hole) {
  const Lattice& lat = eng.lattice();
  const int scale = lat.holes[hole].scale;
  const std::vector<int> prefix = block_prefix_of(lat, hole);

  std::vector<std::pair<RecoveryFamily, std::vector<int>>> candidates;

  // Corner paths in all three sub-blocks, lateral ends (d0, d1, d2).
  for (int d0 : other_digits(0))
    for (int d1 : other_digits(1))
      for (int d2 : other_digits(2)) {
        std::vector<int> q = corner_path(prefix, scale, 0, d0);
        append(q, corner_path(prefix, scale, 1, d1));
        append(q, corner_path(prefix, scale, 2, d2));
        candidates.emplace_back(RecoveryFamily::ThreeCorner, std::move(q));
      }

  // One facing path, corner paths in the other two sub-blocks.
  for (int b0 = 0; b0 < 3; ++b0) {
    const auto [b1, b2] = other_digits(b0);
    for (int d1 : other_digits(b1))
      for (int d2 : other_digits(b2)) {
        std::vector<int> q = facing_path(prefix, scale, b0);
        append(q, corner_path(prefix, scale, b1, d1));
        append(q, corner_path(prefix, scale, b2, d2));
        candidates.emplace_back(RecoveryFamily::MixedCorner, std::move(q));
      }
  }

  // Facing paths in two sub-blocks, blocking corner in the third.
  for (int b = 0; b < 3; ++b) {
    const auto [b1, b2] = other_digits(b);
    for (int d : other_digits(b)) {
      std::vector<int> q = facing_path(prefix, scale, b1);
      append(q, facing_path(prefix, scale, b2));
      q.push_back(blocking_corner(prefix, scale, b, d));
      candidates.emplace_back(RecoveryFamily::TwoFacing, std::move(q));
    }
  }

  // Facing + corner path sharing sub-block b1, corner path in b2,
  // blocking corner in the remaining sub-block.
  for (int b1 = 0; b1 < 3; ++b1)
    for (int b2 = 0; b2 < 3; ++b2) {
      if (b2 == b1) continue;
      const int b3 = 3 - b1 - b2;
      for (int d1 : other_digits(b1))
        for (int d2 : other_digits(b2))
          for (int c : other_digits(b3)) {
            std::vector<int> q = facing_path(prefix, scale, b1);
            append(q, corner_path(prefix, scale, b1, d1));
            append(q, corner_path(prefix, scale, b2, d2));
            q.push_back(blocking_corner(prefix, scale, b3, c));
            candidates.emplace_back(RecoveryFamily::SharedBlock, std::move(q));
          }
    }

  std::vector<MinimalRecovery> out;
  for (auto& [family, qudits] : candidates) {
    MinimalRecovery rec = verify_candidate(eng, hole, family, std::move(qudits));
    if (!rec.recovers || !rec.minimal) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const MinimalRecovery& seen) {
      return seen.region == rec.region;
    });
    if (!duplicate) out.push_back(std::move(rec));
  }
  return out;
}

int connected_price(const PatternEngine& eng, int hole) {
  const MinimalRecovery rec = smallest_recovery(eng, hole);
  detail::check(rec.recovers, "pricing needs a verified recovery");
  const std::vector<int> qs = region_qudits(rec.region);
  const int N = eng.lattice().N;
  int biggest_gap = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const int cur = qs[i];
    const int next = qs[(i + 1) % qs.size()];
    biggest_gap = std::max(biggest_gap, (next - cur + N) % N - 1);
  }
  return N - biggest_gap;
}

UberFit uberholography_fit(const std::vector<int>& levels) {
  if (levels.size() < 2)
    throw std::invalid_argument("uberholography_fit needs at least two levels");
  UberFit fit;
  fit.h = std::log(3.0) / std::log(2.0);
  fit.levels = levels;

  const int n = static_cast<int>(levels.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd shifted(n), raw(n);
  for (int i = 0; i < n; ++i) {
    const Lattice lat = build_lattice(levels[i]);
    const PatternEngine eng(lat);
    const MinimalRecovery rec = smallest_recovery(eng, lat.central_hole());
    detail::check(rec.recovers && rec.minimal, "scaling fit needs verified recoveries");
    fit.sizes.push_back(rec.size());
    fit.qudit_counts.push_back(lat.N);
    design(i, 0) = std::log(static_cast<double>(lat.N));
    design(i, 1) = 1.0;
    shifted(i) = std::log(static_cast<double>(rec.size() - 1));
    raw(i) = std::log(static_cast<double>(rec.size()));
  }

  const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(shifted);
  fit.slope = sol(0);
  fit.intercept = sol(1);
  fit.raw_slope = design.colPivHouseholderQr().solve(raw)(0);
  fit.max_dev = (design * sol - shifted).cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace hqec
