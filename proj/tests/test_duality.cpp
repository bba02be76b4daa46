#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "hqec/duality.hpp"

using namespace hqec;

namespace {

const HoleSplit& split_of(const WedgeReport& wr, int hole) { return wr.splits[hole]; }

bool is_type2(SplitType t) { return t == SplitType::Type2Here || t == SplitType::Type2There; }

}  // namespace

TEST_CASE("level-1 splits: every bipartition is a type-2 split of the only hole") {
  Lattice lat = build_lattice(1);
  PatternEngine eng(lat);

  struct Expect {
    std::vector<int> qudits;
    SplitType type;
    int sigma;
  };
  // singletons see the pair of the opposite edge's label; two-qudit
  // regions own the contained edge's rotation
  const std::vector<Expect> cases = {
      {{0}, SplitType::Type2Here, 1},    {{1}, SplitType::Type2Here, 2},
      {{2}, SplitType::Type2Here, 3},    {{1, 2}, SplitType::Type2There, 1},
      {{0, 2}, SplitType::Type2There, 2}, {{0, 1}, SplitType::Type2There, 3},
  };
  for (const auto& e : cases) {
    CAPTURE(e.qudits[0]);
    WedgeReport wr = compute_wedges(eng, make_region(lat.N, e.qudits));
    REQUIRE(wr.splits.size() == 1);
    const HoleSplit& hs = split_of(wr, 0);
    CHECK(hs.type == e.type);
    CHECK(hs.sigma == e.sigma);
    CHECK(wr.wedge_here.empty());
    CHECK(wr.wedge_there.empty());
    CHECK(wr.edge_holes == std::vector<int>{0});
    CHECK_FALSE(wr.geometric_complementarity());
    CHECK(wr.product_split);

    // structure constants of a type-2 split
    const bool here = e.type == SplitType::Type2Here;
    CHECK(hs.dim_here() == (here ? 2 : 8));
    CHECK(hs.dim_there() == (here ? 8 : 2));
    CHECK(hs.n_sectors() == 2);
    CHECK(hs.dim_center() == 2);
    CHECK(hs.sector_dim_here() == (here ? 1 : 2));
    CHECK(hs.sector_dim_there() == (here ? 2 : 1));

    auto gens = center_generators(wr);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].hole == 0);
    CHECK(gens[0].type == 2);
    CHECK(gens[0].sigma == e.sigma);
  }
}

TEST_CASE("region and complement describe the same splits from opposite sides") {
  for (int level : {1, 2}) {
    Lattice lat = build_lattice(level);
    PatternEngine eng(lat);
    std::mt19937_64 rng(7);
    std::vector<gf2::BitVec> regions;
    for (int first = 0; first < lat.N; first += 2)
      for (int size : {1, 2, lat.N / 2}) regions.push_back(arc_region(lat.N, first, size));
    for (int k = 0; k < 10; k++) {
      gf2::BitVec r(lat.N);
      for (int q = 0; q < lat.N; q++) r.set(q, rng() & 1);
      if (r.any() && r.popcount() < lat.N) regions.push_back(r);
    }
    for (const auto& region : regions) {
      WedgeReport a = compute_wedges(eng, region);
      WedgeReport b = compute_wedges(eng, complement_region(region));
      REQUIRE(a.splits.size() == b.splits.size());
      for (int x = 0; x < lat.K; x++) {
        CHECK(a.splits[x].s == b.splits[x].c);
        CHECK(a.splits[x].c == b.splits[x].s);
      }
      CHECK(a.wedge_here == b.wedge_there);
      CHECK(a.wedge_there == b.wedge_here);
      CHECK(a.edge_holes == b.edge_holes);
      CHECK(a.product_split == b.product_split);
    }
  }
}

TEST_CASE("level-2 frozen examples: all three split types occur") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);

  SUBCASE("pair {5,7} holds the central corner gate alone") {
    WedgeReport wr = compute_wedges(eng, make_region(lat.N, {5, 7}));
    CHECK(split_of(wr, 0).type == SplitType::Type1Here);
    CHECK(split_of(wr, 0).sigma == 1);
    CHECK(split_of(wr, 1).type == SplitType::FullThere);
    CHECK(split_of(wr, 2).type == SplitType::Type2Here);
    CHECK(split_of(wr, 2).sigma == 3);
    CHECK(split_of(wr, 3).type == SplitType::Type2Here);
    CHECK(split_of(wr, 3).sigma == 2);
    CHECK(wr.edge_holes == std::vector<int>{0, 2, 3});
    CHECK(wr.product_split);
  }

  SUBCASE("arc {1,2,3} splits the central hole three ways") {
    WedgeReport wr = compute_wedges(eng, make_region(lat.N, {1, 2, 3}));
    CHECK(split_of(wr, 0).type == SplitType::Type3);
    CHECK(split_of(wr, 0).u == 3);
    CHECK(split_of(wr, 0).v == 1);
    CHECK(split_of(wr, 0).dim_here() == 4);
    CHECK(split_of(wr, 0).dim_center() == 1);
    CHECK(split_of(wr, 1).type == SplitType::Type2There);
    CHECK(split_of(wr, 1).sigma == 1);
    CHECK(split_of(wr, 2).type == SplitType::Type2Here);
    CHECK(split_of(wr, 2).sigma == 1);
    CHECK(split_of(wr, 3).type == SplitType::FullThere);
  }

  SUBCASE("one full block makes the central hole the critical type-2 split") {
    WedgeReport wr = compute_wedges(eng, make_region(lat.N, {0, 1, 2}));
    CHECK(split_of(wr, 0).type == SplitType::Type2Here);
    CHECK(split_of(wr, 0).sigma == 1);
    CHECK(split_of(wr, 1).type == SplitType::FullHere);
    CHECK(split_of(wr, 2).type == SplitType::FullThere);
    CHECK(split_of(wr, 3).type == SplitType::FullThere);
    CHECK(wr.wedge_here == std::vector<int>{1});
    CHECK(wr.wedge_there == std::vector<int>{2, 3});
    CHECK(wr.edge_holes == std::vector<int>{0});
  }
}

TEST_CASE("level-2 exhaustive scan: genuine splits on every proper bipartition") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);
  std::map<SplitType, int> tally;
  int bipartitions = 0;
  for (std::uint32_t bits = 1; bits + 1 < (1u << lat.N); bits++) {
    gf2::BitVec region(lat.N);
    region.w[0] = bits;
    WedgeReport wr = compute_wedges(eng, region);
    bipartitions++;

    CHECK_FALSE(wr.geometric_complementarity());
    CHECK(wr.product_split);
    CHECK_FALSE(center_generators(wr).empty());
    bool has_type2 = false;
    for (const auto& hs : wr.splits) {
      has_type2 |= is_type2(hs.type);
      CHECK(hs.n_sectors() * hs.sector_dim_here() * hs.sector_dim_there() == 4);
      CHECK(hs.dim_here() * hs.dim_there() == 16);
      tally[hs.type]++;
    }
    // the critical-block argument: some hole always carries a type-2 split
    CHECK(has_type2);
  }
  CHECK(bipartitions == 510);
  CHECK(tally[SplitType::Type1Here] > 0);
  CHECK(tally[SplitType::Type1There] > 0);
  CHECK(tally[SplitType::Type2Here] > 0);
  CHECK(tally[SplitType::Type2There] > 0);
  CHECK(tally[SplitType::Type3] > 0);
  CHECK(tally[SplitType::FullHere] > 0);
  CHECK(tally[SplitType::FullThere] > 0);
}

TEST_CASE("subgroup monotonicity under region growth") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);
  for (int first : {0, 3, 7}) {
    WedgeReport prev = compute_wedges(eng, arc_region(lat.N, first, 1));
    for (int size = 2; size < lat.N; size++) {
      WedgeReport next = compute_wedges(eng, arc_region(lat.N, first, size));
      for (int x = 0; x < lat.K; x++) {
        // s grows with the region, c shrinks
        CHECK((prev.splits[x].s.mask & ~next.splits[x].s.mask) == 0);
        CHECK((next.splits[x].c.mask & ~prev.splits[x].c.mask) == 0);
      }
      prev = std::move(next);
    }
  }
}

TEST_CASE("level-3 one-block arc: wedges on both sides of the surface") {
  Lattice lat = build_lattice(3);
  PatternEngine eng(lat);
  WedgeReport wr = compute_wedges(eng, arc_region(lat.N, 0, 9));
  CHECK(wr.wedge_here.size() == 4);
  CHECK(wr.wedge_there.size() == 8);
  CHECK(wr.edge_holes == std::vector<int>{0});
  CHECK(split_of(wr, 0).type == SplitType::Type2Here);
  CHECK(split_of(wr, 0).sigma == 1);
  CHECK(wr.product_split);
}

TEST_CASE("dense recovery sweep at level 1") {
  Lattice lat = build_lattice(1);
  PatternEngine eng(lat);
  PsiBasis psi = enumerate_psi(eng);
  for (std::uint32_t bits = 1; bits + 1 < (1u << lat.N); bits++) {
    gf2::BitVec region(lat.N);
    region.w[0] = bits;
    RecoveryCheck rc = verify_complementary_recovery(psi, region);
    CAPTURE(bits);
    CHECK(rc.ok());
    CHECK(rc.ops_swept == (1ull << (2 * region.popcount())) * (1ull << (2 * region.popcount())));
    CHECK(rc.reconstructed > 0);
  }
}

TEST_CASE("dense recovery sweep on sampled level-2 bipartitions") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);
  PsiBasis psi = enumerate_psi(eng);
  std::vector<std::vector<int>> sides = {
      {0},    {4},       {1, 2},       {5, 7},       {0, 1, 2},
      {1, 2, 3}, {3, 4, 5, 6}, {8, 0, 1, 2, 3}, {2, 4, 6, 8},
  };
  for (const auto& side : sides) {
    RecoveryCheck rc = verify_complementary_recovery(psi, make_region(lat.N, side));
    CAPTURE(side[0]);
    CAPTURE(side.size());
    CHECK(rc.gauge_solvable);
    CHECK(rc.span_consistent);
    CHECK(rc.annihilators_ok);
    CHECK(rc.q_fiber_constant);
    CHECK(rc.q_two_valued);
    CHECK(rc.q_matches);
    CHECK(rc.center_nontrivial);
  }
}

TEST_CASE("center generators commute with both wedge algebras") {
  for (int level : {1, 2}) {
    Lattice lat = build_lattice(level);
    PatternEngine eng(lat);
    PsiBasis psi = enumerate_psi(eng);
    std::mt19937_64 rng(11);
    std::vector<gf2::BitVec> regions;
    for (int first = 0; first < lat.N; first++) regions.push_back(arc_region(lat.N, first, 1 + int(rng() % (lat.N - 1))));
    for (int k = 0; k < 20; k++) {
      gf2::BitVec r(lat.N);
      for (int q = 0; q < lat.N; q++) r.set(q, rng() & 1);
      if (r.any() && r.popcount() < lat.N) regions.push_back(r);
    }
    for (const auto& region : regions) {
      WedgeReport wr = compute_wedges(eng, region);
      CenterCheck cc = verify_center(psi, wr);
      CHECK(cc.nonempty);
      CHECK(cc.commutes);
      CHECK(cc.ops_checked > 0);
    }
  }
}

TEST_CASE("structure report: dense dimensions match the split tables") {
  SUBCASE("level 1") {
    Lattice lat = build_lattice(1);
    PatternEngine eng(lat);
    PsiBasis psi = enumerate_psi(eng);
    StructureReport a = structure_report(psi, make_region(lat.N, {0}));
    CHECK(a.dim_region_algebra == 2);
    CHECK(a.dim_center == 2);
    CHECK(a.dim_region_dense == 2);
    CHECK(a.dims_agree);
    CHECK(a.sector_completeness);
    StructureReport b = structure_report(psi, make_region(lat.N, {0, 1}));
    CHECK(b.dim_region_algebra == 8);
    CHECK(b.dim_region_dense == 8);
    CHECK(b.dims_agree);
  }
  SUBCASE("level 2") {
    Lattice lat = build_lattice(2);
    PatternEngine eng(lat);
    PsiBasis psi = enumerate_psi(eng);
    struct Case {
      std::vector<int> side;
      std::uint64_t dim;
    };
    // products over holes of |s| * 4 / |c|
    const std::vector<Case> cases = {
        {{5, 7}, 2 * 1 * 2 * 2},
        {{0, 1, 2}, 2 * 16 * 1 * 1},
        {{1, 2, 3}, 4 * 8 * 2 * 1},
        {{4}, 0},  // dimension read from the engine, only agreement checked
    };
    for (const auto& c : cases) {
      StructureReport r = structure_report(psi, make_region(lat.N, c.side));
      if (c.dim) CHECK(r.dim_region_algebra == c.dim);
      CHECK(r.dims_agree);
      CHECK(r.sector_completeness);
      CHECK(r.sector_dim_sum == 256);
    }
  }
}
