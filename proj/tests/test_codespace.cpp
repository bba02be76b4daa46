#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hqec/codespace.hpp"

using namespace hqec;

TEST_CASE("dyadic arithmetic") {
  Dyadic half{1, 1};
  CHECK((half + half) == Dyadic::one());
  CHECK((Dyadic::one() + Dyadic{-1, 0}) == Dyadic::zero());
  Dyadic q = Dyadic::one().half().half();
  CHECK(q.value() == doctest::Approx(0.25));
  Dyadic unnorm{4, 2};
  CHECK(unnorm == Dyadic::one());
  CHECK((Dyadic{3, 1} + Dyadic{1, 2}).value() == doctest::Approx(1.75));
}

TEST_CASE("level 1 basis and encoder") {
  Lattice lat = build_lattice(1);
  PatternEngine eng(lat);
  PsiBasis psi = enumerate_psi(eng);

  REQUIRE(psi.size() == 8);
  REQUIRE(psi.npatterns() == 4);

  // canonical order is lexicographic on alpha strings:
  // 000 023 111 132 213 230 302 321
  auto alphas = [&](std::uint32_t i) {
    Config c = gf2::from_word(6, psi.words[i]);
    std::string s;
    for (int q = 0; q < 3; q++) s += static_cast<char>('0' + eng.alpha(c, q));
    return s;
  };
  CHECK(alphas(0) == "000");
  CHECK(alphas(1) == "023");
  CHECK(alphas(2) == "111");
  CHECK(alphas(7) == "321");

  CHECK(psi.fiber[0] == std::vector<std::uint32_t>{0, 2});  // 000, 111
  CHECK(psi.fiber[1] == std::vector<std::uint32_t>{1, 3});  // 023, 132
  CHECK(psi.fiber[2] == std::vector<std::uint32_t>{4, 6});  // 213, 302
  CHECK(psi.fiber[3] == std::vector<std::uint32_t>{5, 7});  // 230, 321

  // encoding the pattern-0 state gives (|000> + |111>)/sqrt(2)
  BoundaryState b = encode(psi, pattern_bulk_state(1, 0));
  CHECK(std::abs(b.amp[0] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(b.amp[2] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(b.amp[1]) == 0.0);

  // decode inverts encode
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; t++) {
    BulkState v = random_bulk_state(1, rng);
    BulkState w = decode(psi, encode(psi, v));
    CHECK((w - v).norm() < 1e-14);
  }

  IsometryReport r = verify_isometry(psi);
  CHECK(r.ok());
  CHECK(r.states_checked == 8);
}

TEST_CASE("level 2 basis: counting and exact isometry") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);
  PsiBasis psi = enumerate_psi(eng);

  CHECK(psi.size() == 4096);  // 8^K
  CHECK(psi.npatterns() == 256);
  for (const auto& f : psi.fiber) CHECK(f.size() == 16);

  IsometryReport r = verify_isometry(psi);
  CHECK(r.pattern_count_ok);
  CHECK(r.fiber_sizes_ok);
  CHECK(r.fibers_are_orbits);
  CHECK(r.gram_identity);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; t++) {
    BulkState v = random_bulk_state(4, rng);
    CHECK((decode(psi, encode(psi, v)) - v).norm() < 1e-13);
  }
}

TEST_CASE("code projector columns, exact arithmetic") {
  for (int level = 1; level <= 2; level++) {
    CAPTURE(level);
    Lattice lat = build_lattice(level);
    PatternEngine eng(lat);
    PsiBasis psi = enumerate_psi(eng);
    ProjectorReport r = verify_code_projector(psi);
    CHECK(r.matches_encoder_columns);
    CHECK(r.idempotent);
    CHECK(r.columns_checked == (1ull << (2 * lat.N)));
  }
}

TEST_CASE("gauge average of a support state is the uniform fiber") {
  Lattice lat = build_lattice(1);
  PatternEngine eng(lat);
  PsiBasis psi = enumerate_psi(eng);

  DyadicState out = code_project(eng, {{psi.words[0], Dyadic::one()}});
  REQUIRE(out.size() == 2);
  for (const auto& [w, c] : out) {
    CHECK(c == Dyadic{1, 1});
    CHECK((w == psi.words[0] || w == psi.words[2]));
  }

  // a non-support column projects to zero
  Config bad = eng.zero_config();
  eng.apply_S(bad, 0, 1);
  CHECK(code_project(eng, {{bad.word0(), Dyadic::one()}}).empty());
}

TEST_CASE("gate expression of translations") {
  Lattice lat = build_lattice(2);
  PatternEngine eng(lat);

  // the central hole translation is a gate product; verify round trip
  Config t = eng.hole_translation(0);
  auto combo = express_as_gates(eng, t);
  REQUIRE(combo.has_value());
  CHECK(eng.gate_translation(*combo) == t);

  // something outside the support span has no gate expression
  Config bad = eng.zero_config();
  eng.apply_S(bad, 0, 1);
  CHECK(!express_as_gates(eng, bad).has_value());

  // enumeration guard
  Lattice big = build_lattice(3);
  PatternEngine engb(big);
  CHECK_THROWS_AS(enumerate_psi(engb), std::invalid_argument);
}
