#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "hqec/patterns.hpp"

using namespace hqec;

namespace {

Config config_of(const PatternEngine& eng, const std::string& alphas) {
  Config c = eng.zero_config();
  for (int q = 0; q < static_cast<int>(alphas.size()); q++)
    eng.set_alpha(c, q, alphas[q] - '0');
  return c;
}

std::string alphas_of(const PatternEngine& eng, const Config& c) {
  std::string s;
  for (int q = 0; q < eng.lattice().N; q++) s += static_cast<char>('0' + eng.alpha(c, q));
  return s;
}

}  // namespace

TEST_CASE("single-qudit state algebra") {
  Lattice lat = build_lattice(1);
  PatternEngine eng(lat);
  Config c = eng.zero_config();

  for (int a = 0; a < 4; a++) {
    eng.set_alpha(c, 1, a);
    CHECK(eng.alpha(c, 1) == a);
    // state alpha leaves side alpha bright and darkens the other two
    for (int tau = 1; tau <= 3; tau++) CHECK(eng.dark(c, 1, tau) == (a != 0 && a != tau));
  }

  // S^sigma shifts the state label by Klein addition
  for (int a = 0; a < 4; a++)
    for (int s = 0; s < 4; s++) {
      eng.set_alpha(c, 2, a);
      eng.apply_S(c, 2, s);
      CHECK(eng.alpha(c, 2) == klein_add(a, s));
    }

  // S^1 S^2 = S^3 and translations match apply_S
  for (int q = 0; q < 3; q++) {
    Config u = eng.zero_config(), v = eng.zero_config();
    eng.apply_S(u, q, 1);
    eng.apply_S(u, q, 2);
    eng.apply_S(v, q, 3);
    CHECK(u == v);
    CHECK((eng.unit_translation(q, 1) ^ eng.unit_translation(q, 2)) == eng.unit_translation(q, 3));
  }
}

TEST_CASE("level 1 frozen facts") {
  Lattice lat = build_lattice(1);
  PatternEngine eng(lat);

  // edge gates: S2 x S3 placement fixed in the lattice test; here their
  // translations, e.g. edge {0,1} moves d3(q0) and d2(q1)
  for (const GateEdge& e : lat.edges) {
    Config t = eng.edge_translation(e.id);
    Config manual = eng.zero_config();
    eng.apply_S(manual, e.q[0], e.sigma[0]);
    eng.apply_S(manual, e.q[1], e.sigma[1]);
    CHECK(t == manual);
  }

  // the hole's gate product is S1 everywhere
  Config t0 = eng.hole_translation(0);
  CHECK(alphas_of(eng, t0) == "111");

  // classical support: exactly the 8 frozen alpha strings
  std::set<std::string> psi;
  for (std::uint64_t w = 0; w < 64; w++) {
    Config c = gf2::from_word(6, w);
    if (eng.in_psi(c)) psi.insert(alphas_of(eng, c));
  }
  CHECK(psi == std::set<std::string>{"000", "230", "023", "302", "213", "132", "321", "111"});

  // fibers of the four hole patterns
  auto beta_of = [&](const std::string& s) { return eng.beta(config_of(eng, s), 0); };
  CHECK(beta_of("000") == 0);
  CHECK(beta_of("111") == 0);
  CHECK(beta_of("023") == 1);
  CHECK(beta_of("132") == 1);
  CHECK(beta_of("302") == 2);
  CHECK(beta_of("213") == 2);
  CHECK(beta_of("230") == 3);
  CHECK(beta_of("321") == 3);

  // dimensions: image rank 3K, constraint rank K + 2
  CHECK(eng.psi_dim() == 3);
  CHECK(eng.constraint_rank() == 3);

  // a single S1 breaks two lattice parities
  Config c = eng.zero_config();
  eng.apply_S(c, 0, 1);
  CHECK(!eng.in_psi(c));
  CHECK(eng.lattice_parity(c, 1));
  CHECK(eng.lattice_parity(c, 2));
  CHECK(!eng.lattice_parity(c, 0));
  CHECK(!eng.loop_parity(c, 0));
}

TEST_CASE("corner gates realize the loop-rotation generators") {
  for (int level = 1; level <= 3; level++) {
    CAPTURE(level);
    Lattice lat = build_lattice(level);
    PatternEngine eng(lat);

    for (const Hole& h : lat.holes) {
      for (int j = 0; j < 3; j++) {
        // the edge at the loop corner opposite lateral j+1 toggles the
        // other two lateral parities: Klein label j+1 on its owner
        gf2::BitVec l = eng.edge_logical(h.corner_gate[j]);
        CHECK(eng.hole_action(l, h.id) == j + 1);
        for (const Hole& other : lat.holes)
          if (other.id != h.id) CHECK(eng.hole_action(l, other.id) == 0);
      }
      // product of the three corner gates: S1 on every support qudit;
      // its labels 1, 2, 3 compose to nothing, so the full loop product
      // is a gauge element fixing every hole pattern
      gf2::BitVec l = eng.logical_action(eng.hole_gate(h.id));
      CHECK(!l.any());

      Config t = eng.hole_translation(h.id);
      int support = 0;
      for (int q = 0; q < lat.N; q++) {
        int a = eng.alpha(t, q);
        CHECK((a == 0 || a == 1));
        if (a == 1) support++;
      }
      CHECK(support == (h.scale == 1 ? 3 : 6));
    }
  }
}

TEST_CASE("logical action via functionals matches the edge table") {
  for (int level = 1; level <= 3; level++) {
    Lattice lat = build_lattice(level);
    PatternEngine eng(lat);
    for (int e = 0; e < eng.ngates(); e++)
      CHECK(eng.config_logical(eng.edge_translation(e)) == eng.edge_logical(e));
  }
}

TEST_CASE("support membership equals span membership") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);

  // every edge translation lies in the support span
  for (int e = 0; e < eng.ngates(); e++) CHECK(eng.in_psi(eng.edge_translation(e)));

  std::vector<gf2::BitVec> gens;
  for (int e = 0; e < eng.ngates(); e++) gens.push_back(eng.edge_translation(e));
  gf2::Span span(eng.nbits(), eng.ngates());
  for (const auto& g : gens) span.add(g);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; trial++) {
    Config c = gf2::from_word(eng.nbits(), rng() & ((1ull << eng.nbits()) - 1));
    CHECK(eng.in_psi(c) == span.contains(c));
  }
}

TEST_CASE("ranks at levels 1 to 4") {
  for (int level = 1; level <= 4; level++) {
    CAPTURE(level);
    Lattice lat = build_lattice(level);
    PatternEngine eng(lat);
    CHECK(eng.psi_dim() == 3 * lat.K);
    CHECK(eng.constraint_rank() == lat.K + 2);
  }
}

TEST_CASE("pattern ids pack little-endian Klein labels") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);
  Config c = eng.zero_config();
  CHECK(eng.pattern_id(c) == 0);

  // shift hole 2 by label 3 via its corner gate pair: apply the gate
  // opposite lateral 3 of hole 2 as a configuration translation
  const Hole& h = lat.holes[2];
  Config t = eng.edge_translation(h.corner_gate[2]);
  Config moved = c ^ t;
  CHECK(eng.beta(moved, 2) == 3);
  CHECK(eng.pattern_id(moved) == (3ull << 4));
  CHECK(eng.pattern_delta(eng.edge_logical(h.corner_gate[2])) == (3ull << 4));
}
