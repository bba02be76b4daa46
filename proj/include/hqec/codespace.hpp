#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "hqec/patterns.hpp"

namespace hqec {

// Exact dyadic rational num / 2^k.
struct Dyadic {
  long long num = 0;
  int k = 0;

  static Dyadic zero() { return {}; }
  static Dyadic one() { return {1, 0}; }

  void normalize() {
    if (num == 0) {
      k = 0;
      return;
    }
    while (k > 0 && (num & 1) == 0) {
      num >>= 1;
      k--;
    }
  }
  bool is_zero() const { return num == 0; }
  Dyadic half() const {
    Dyadic r{num, k + 1};
    r.normalize();
    return r;
  }
  friend Dyadic operator+(Dyadic a, Dyadic b) {
    int kk = std::max(a.k, b.k);
    Dyadic r{(a.num << (kk - a.k)) + (b.num << (kk - b.k)), kk};
    r.normalize();
    return r;
  }
  friend bool operator==(Dyadic a, Dyadic b) {
    a.normalize();
    b.normalize();
    return a.num == b.num && a.k == b.k;
  }
  double value() const { return static_cast<double>(num) / std::ldexp(1.0, k); }
};

// Canonical basis of the classical support Psi, enumerated exhaustively
// (level <= 2). States sorted lexicographically by their alpha strings;
// `fiber[n]` lists the ordinals with packed pattern id n.
struct PsiBasis {
  const PatternEngine* eng = nullptr;
  int K = 0;
  std::vector<std::uint64_t> words;    // stored-bit word per state
  std::vector<std::uint32_t> pattern;  // packed pattern id per state
  std::vector<std::vector<std::uint32_t>> fiber;
  std::vector<std::int32_t> ordinal_of_word;  // direct-address, size 4^N; -1 outside Psi

  std::uint32_t size() const { return static_cast<std::uint32_t>(words.size()); }
  std::uint32_t npatterns() const { return static_cast<std::uint32_t>(fiber.size()); }
  int find(std::uint64_t word) const { return ordinal_of_word[word]; }
};

PsiBasis enumerate_psi(const PatternEngine& eng);

// Bulk state: one amplitude per hole pattern (dimension 4^K).
// Boundary state: one amplitude per canonical Psi ordinal.
using BulkState = Eigen::VectorXcd;
struct BoundaryState {
  std::vector<std::complex<double>> amp;
};

BoundaryState encode(const PsiBasis& psi, const BulkState& bulk);
BulkState decode(const PsiBasis& psi, const BoundaryState& boundary);

BulkState random_bulk_state(int K, std::mt19937_64& rng);
BulkState pattern_bulk_state(int K, std::uint64_t pattern);

// Exact sparse state over stored-bit words.
using DyadicState = std::map<std::uint64_t, Dyadic>;

// Projector onto configs with even loop and lattice parities.
DyadicState project_dark_sector(const PatternEngine& eng, const DyadicState& s);
// Average over the gauge group generated by the hole gate products.
DyadicState gauge_average(const PatternEngine& eng, DyadicState s);
// Full codespace projector: gauge average after the dark-sector cut.
DyadicState code_project(const PatternEngine& eng, const DyadicState& s);

struct IsometryReport {
  bool pattern_count_ok = false;  // every pattern id realized
  bool fiber_sizes_ok = false;    // every fiber has 2^K states
  bool fibers_are_orbits = false; // gauge orbit of any member = full fiber
  bool gram_identity = false;     // pairwise overlaps, exact
  std::uint64_t states_checked = 0;
  bool ok() const {
    return pattern_count_ok && fiber_sizes_ok && fibers_are_orbits && gram_identity;
  }
};
IsometryReport verify_isometry(const PsiBasis& psi);

struct ProjectorReport {
  bool matches_encoder_columns = false;  // P column == R R^+ column for every word
  bool idempotent = false;               // P^2 column == P column, exact
  std::uint64_t columns_checked = 0;
  bool ok() const { return matches_encoder_columns && idempotent; }
};
ProjectorReport verify_code_projector(const PsiBasis& psi);

// Solves for a gate product with the given net translation, if any.
std::optional<gf2::BitVec> express_as_gates(const PatternEngine& eng, const Config& target);

}  // namespace hqec
