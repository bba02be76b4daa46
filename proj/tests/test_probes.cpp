#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hqec/codespace.hpp"
#include "hqec/probes.hpp"

using namespace hqec;

namespace {

std::vector<int> qudits_of(const MinimalRecovery& rec) { return region_qudits(rec.region); }

bool regions_intersect(const gf2::BitVec& a, const gf2::BitVec& b) {
  gf2::BitVec inter = a;
  for (int i = 0; i < inter.n; ++i)
    if (!b.get(i)) inter.set(i, false);
  return inter.any();
}

bool contains_region(const std::vector<MinimalRecovery>& recs, const gf2::BitVec& region) {
  return std::any_of(recs.begin(), recs.end(),
                     [&](const MinimalRecovery& r) { return r.region == region; });
}

}  // namespace

TEST_CASE("distances at level 1") {
  const Lattice lat = build_lattice(1);
  const PatternEngine eng(lat);
  const DistanceRecord rec = distance_record(eng, lat.central_hole());
  CHECK(rec.d_connected == 1);
  CHECK(rec.d_any == 1);
  CHECK(rec.d_gate == 2);
  CHECK(rec.witness_connected.popcount() == 1);
  CHECK_FALSE(erasure_correctable(eng, rec.witness_connected, 0));
}

TEST_CASE("distances at level 2") {
  const Lattice lat = build_lattice(2);
  const PatternEngine eng(lat);

  SUBCASE("central hole survives any single loss but not two adjacent") {
    const DistanceRecord rec = distance_record(eng, lat.central_hole());
    CHECK(rec.d_connected == 2);
    CHECK(rec.d_any == 2);
    CHECK(rec.d_gate == 2);
    CHECK(region_qudits(rec.witness_connected) == std::vector<int>{1, 2});
    // the witness erasure is itself minimal: each single qudit is fine
    for (int q : region_qudits(rec.witness_any))
      CHECK(erasure_correctable(eng, make_region(lat.N, {q}), 0));
    CHECK_FALSE(erasure_correctable(eng, rec.witness_any, 0));
  }

  SUBCASE("scale-one holes fall to a single qudit") {
    for (int x = 1; x < lat.K; ++x) {
      REQUIRE(lat.holes[x].scale == 1);
      const DistanceRecord rec = distance_record(eng, x);
      CHECK(rec.d_connected == 1);
      CHECK(rec.d_any == 1);
      CHECK(rec.d_gate == 2);
    }
  }

  SUBCASE("arc verdicts agree with the dense operator oracle") {
    const PsiBasis psi = enumerate_psi(eng);
    for (int hole = 0; hole < lat.K; ++hole)
      for (int size = 1; size <= 6; ++size)
        for (int first = 0; first < lat.N; ++first) {
          const gf2::BitVec erased = arc_region(lat.N, first, size);
          CHECK(erasure_correctable(eng, erased, hole) ==
                oracle_correctable(psi, erased, hole));
        }
  }
}

TEST_CASE("distances at level 3") {
  const Lattice lat = build_lattice(3);
  const PatternEngine eng(lat);

  SUBCASE("central hole: arcs of five, pairs in any shape") {
    gf2::BitVec arc;
    CHECK(connected_distance(eng, 0, &arc) == 5);
    CHECK(region_qudits(arc) == std::vector<int>{4, 5, 6, 7, 8});
    CHECK_FALSE(erasure_correctable(eng, arc, 0));
    gf2::BitVec any;
    CHECK(unrestricted_distance(eng, 0, &any) == 2);
    CHECK_FALSE(erasure_correctable(eng, any, 0));
  }

  SUBCASE("distances by scale: 5 / 2 / 1 arcs, 2 / 2 / 1 any shape") {
    for (const Hole& h : lat.holes) {
      const int want_arc = h.scale == 3 ? 5 : h.scale == 2 ? 2 : 1;
      CHECK(connected_distance(eng, h.id) == want_arc);
      CHECK(unrestricted_distance(eng, h.id) == (h.scale == 1 ? 1 : 2));
      CHECK(min_gate_support(eng, h.id) == 2);
    }
  }
}

TEST_CASE("connected distance grows toward the center") {
  const Lattice lat = build_lattice(4);
  const PatternEngine eng(lat);
  // first hole of each scale, in pre-order
  std::array<int, 5> rep;
  rep.fill(-1);
  for (const Hole& h : lat.holes)
    if (rep[h.scale] < 0) rep[h.scale] = h.id;
  const std::array<int, 5> want{-1, 1, 2, 5, 14};
  std::array<int, 5> got{-1, 0, 0, 0, 0};
  for (int s = 1; s <= 4; ++s) {
    REQUIRE(rep[s] >= 0);
    got[s] = connected_distance(eng, rep[s]);
    CHECK(got[s] == want[s]);
  }
  CHECK(got[4] > got[3]);
  CHECK(got[3] > got[2]);
  CHECK(got[2] > got[1]);
}

TEST_CASE("smallest recovery hugs the hole at every level") {
  SUBCASE("level 2 central region") {
    const Lattice lat = build_lattice(2);
    const PatternEngine eng(lat);
    const MinimalRecovery rec = smallest_recovery(eng, 0);
    CHECK(rec.recovers);
    CHECK(rec.minimal);
    CHECK(rec.family == RecoveryFamily::TwoFacing);
    CHECK(qudits_of(rec) == std::vector<int>{1, 3, 5, 6, 7});
    CHECK(rec.size() == lat.N0 + 1);
  }
  SUBCASE("level 3 central region") {
    const Lattice lat = build_lattice(3);
    const PatternEngine eng(lat);
    const MinimalRecovery rec = smallest_recovery(eng, 0);
    CHECK(rec.recovers);
    CHECK(rec.minimal);
    CHECK(qudits_of(rec) == std::vector<int>{4, 9, 11, 15, 17, 18, 19, 21, 22});
    CHECK(rec.size() == lat.N0 + 1);
  }
  SUBCASE("level 4 central region") {
    const Lattice lat = build_lattice(4);
    const PatternEngine eng(lat);
    const MinimalRecovery rec = smallest_recovery(eng, 0);
    CHECK(rec.recovers);
    CHECK(rec.minimal);
    CHECK(qudits_of(rec) == std::vector<int>{13, 27, 29, 33, 35, 45, 47, 51, 53, 54, 55, 57,
                                             58, 63, 64, 66, 67});
    CHECK(rec.size() == lat.N0 + 1);
  }
  SUBCASE("every hole, levels 2 to 4") {
    for (int level : {2, 3, 4}) {
      const Lattice lat = build_lattice(level);
      const PatternEngine eng(lat);
      for (int x = 0; x < lat.K; ++x) {
        const MinimalRecovery rec = smallest_recovery(eng, x);
        CHECK(rec.recovers);
        CHECK(rec.minimal);
        CHECK(rec.size() == (1 << lat.holes[x].scale) + 1);
      }
    }
  }
}

TEST_CASE("four recovery families for the central hole") {
  for (int level : {2, 3}) {
    CAPTURE(level);
    const Lattice lat = build_lattice(level);
    const PatternEngine eng(lat);
    const std::vector<MinimalRecovery> recs = minimal_recoveries(eng, 0);

    std::map<RecoveryFamily, int> count;
    for (const MinimalRecovery& rec : recs) {
      CHECK(rec.recovers);
      CHECK(rec.minimal);
      const int want_size =
          rec.family == RecoveryFamily::TwoFacing ? lat.N0 + 1 : 3 * (1 << (level - 1));
      CHECK(rec.size() == want_size);
      count[rec.family]++;
    }
    CHECK(count[RecoveryFamily::ThreeCorner] == 2);
    CHECK(count[RecoveryFamily::MixedCorner] == 6);
    CHECK(count[RecoveryFamily::TwoFacing] == 6);
    CHECK(count[RecoveryFamily::SharedBlock] == (level == 2 ? 12 : 24));
    CHECK(static_cast<int>(recs.size()) == (level == 2 ? 26 : 38));

    // any two copies of the same algebra overlap somewhere
    for (std::size_t i = 0; i < recs.size(); ++i)
      for (std::size_t j = i + 1; j < recs.size(); ++j)
        CHECK(regions_intersect(recs[i].region, recs[j].region));

    CHECK(contains_region(recs, smallest_recovery(eng, 0).region));
  }
}

TEST_CASE("known level-2 family regions are found") {
  const Lattice lat = build_lattice(2);
  const PatternEngine eng(lat);
  const std::vector<MinimalRecovery> recs = minimal_recoveries(eng, 0);
  CHECK(contains_region(recs, make_region(9, {0, 1, 4, 5, 6, 8})));  // three corner paths
  CHECK(contains_region(recs, make_region(9, {1, 2, 3, 4, 7, 8})));  // facing + two corners
  CHECK(contains_region(recs, make_region(9, {1, 3, 5, 6, 7})));     // two facing + blocker
  CHECK(contains_region(recs, make_region(9, {0, 1, 2, 4, 5, 6})));  // shared sub-block
  // dropped orientations stay dropped: swapping the corner-path ends of
  // the all-corner family breaks reconstruction
  CHECK_FALSE(contains_region(recs, make_region(9, {0, 1, 3, 4, 6, 8})));
}

TEST_CASE("connected price of the smallest recovery") {
  const std::array<std::pair<int, int>, 3> want{{{2, 7}, {3, 19}, {4, 55}}};
  for (const auto& [level, price] : want) {
    CAPTURE(level);
    const Lattice lat = build_lattice(level);
    const PatternEngine eng(lat);
    CHECK(connected_price(eng, 0) == price);
  }
}

TEST_CASE("price ratio settles near two thirds of the ring") {
  const Lattice lat = build_lattice(5);
  const PatternEngine eng(lat);
  const int price = connected_price(eng, 0);
  CHECK(price == 163);
  const double ratio = static_cast<double>(price) / lat.N;
  CHECK(std::abs(ratio - 0.68) < 0.068);
}

TEST_CASE("recovery size scales as a fractional power of system size") {
  const UberFit fit = uberholography_fit({2, 3, 4});
  CHECK(fit.sizes == std::vector<int>{5, 9, 17});
  CHECK(fit.qudit_counts == std::vector<int>{9, 27, 81});
  const double want = std::log(2.0) / std::log(3.0);
  CHECK(fit.slope == doctest::Approx(want).epsilon(1e-12));
  CHECK(std::abs(fit.slope - 0.6309) < 0.05);
  CHECK(fit.max_dev < 1e-12);
  CHECK(fit.raw_slope == doctest::Approx(0.556964).epsilon(1e-5));
  CHECK(fit.h == doctest::Approx(std::log(3.0) / std::log(2.0)).epsilon(1e-12));
  CHECK(fit.slope * fit.h == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(uberholography_fit({3}), std::invalid_argument);
}
