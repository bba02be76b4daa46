#include "hqec/codespace.hpp"

#include <algorithm>
#include <numeric>

#include "hqec/check.hpp"

namespace hqec {

using detail::check;
using gf2::BitVec;

namespace {

// lexicographic sort key over the alpha string, most significant qudit first
std::uint64_t alpha_key(const PatternEngine& eng, const Config& c) {
  const int N = eng.lattice().N;
  std::uint64_t key = 0;
  for (int q = 0; q < N; q++) key = key << 2 | static_cast<std::uint64_t>(eng.alpha(c, q));
  return key;
}

}  // namespace

PsiBasis enumerate_psi(const PatternEngine& eng) {
  const Lattice& lat = eng.lattice();
  if (lat.level > 2)
    throw std::invalid_argument("enumerate_psi: exhaustive basis supported for level <= 2");

  const int nb = eng.nbits();
  PsiBasis psi;
  psi.eng = &eng;
  psi.K = lat.K;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;  // (alpha key, word)
  const std::uint64_t limit = 1ull << nb;
  for (std::uint64_t w = 0; w < limit; w++) {
    Config c = gf2::from_word(nb, w);
    if (eng.in_psi(c)) keyed.push_back({alpha_key(eng, c), w});
  }
  std::sort(keyed.begin(), keyed.end());

  psi.fiber.resize(1ull << (2 * lat.K));
  psi.ordinal_of_word.assign(limit, -1);
  for (std::uint32_t i = 0; i < keyed.size(); i++) {
    std::uint64_t w = keyed[i].second;
    Config c = gf2::from_word(nb, w);
    std::uint32_t n = static_cast<std::uint32_t>(eng.pattern_id(c));
    psi.words.push_back(w);
    psi.pattern.push_back(n);
    psi.fiber[n].push_back(i);
    psi.ordinal_of_word[w] = static_cast<std::int32_t>(i);
  }
  return psi;
}

BoundaryState encode(const PsiBasis& psi, const BulkState& bulk) {
  check(bulk.size() == static_cast<Eigen::Index>(psi.npatterns()), "encode: bulk dimension");
  const double scale = std::pow(2.0, -0.5 * psi.K);
  BoundaryState b;
  b.amp.resize(psi.size());
  for (std::uint32_t i = 0; i < psi.size(); i++) b.amp[i] = scale * bulk[psi.pattern[i]];
  return b;
}

BulkState decode(const PsiBasis& psi, const BoundaryState& boundary) {
  check(boundary.amp.size() == psi.size(), "decode: boundary dimension");
  const double scale = std::pow(2.0, -0.5 * psi.K);
  BulkState v = BulkState::Zero(psi.npatterns());
  for (std::uint32_t i = 0; i < psi.size(); i++) v[psi.pattern[i]] += scale * boundary.amp[i];
  return v;
}

BulkState random_bulk_state(int K, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  BulkState v(1ll << (2 * K));
  for (Eigen::Index n = 0; n < v.size(); n++) v[n] = std::complex<double>(g(rng), g(rng));
  v.normalize();
  return v;
}

BulkState pattern_bulk_state(int K, std::uint64_t pattern) {
  BulkState v = BulkState::Zero(1ll << (2 * K));
  v[static_cast<Eigen::Index>(pattern)] = 1.0;
  return v;
}

DyadicState project_dark_sector(const PatternEngine& eng, const DyadicState& s) {
  DyadicState out;
  for (const auto& [w, c] : s)
    if (!c.is_zero() && eng.in_psi(gf2::from_word(eng.nbits(), w))) out[w] = c;
  return out;
}

DyadicState gauge_average(const PatternEngine& eng, DyadicState s) {
  for (int x = 0; x < eng.nholes(); x++) {
    const std::uint64_t t = eng.hole_translation(x).word0();
    DyadicState next;
    for (const auto& [w, c] : s) {
      if (c.is_zero()) continue;
      Dyadic h = c.half();
      auto add = [&](std::uint64_t key) {
        auto [it, fresh] = next.try_emplace(key, h);
        if (!fresh) it->second = it->second + h;
      };
      add(w);
      add(w ^ t);
    }
    s = std::move(next);
  }
  for (auto it = s.begin(); it != s.end();)
    it = it->second.is_zero() ? s.erase(it) : std::next(it);
  return s;
}

DyadicState code_project(const PatternEngine& eng, const DyadicState& s) {
  return gauge_average(eng, project_dark_sector(eng, s));
}

IsometryReport verify_isometry(const PsiBasis& psi) {
  const PatternEngine& eng = *psi.eng;
  IsometryReport r;
  const std::uint64_t fiber_size = 1ull << psi.K;

  r.pattern_count_ok = true;
  r.fiber_sizes_ok = true;
  for (const auto& f : psi.fiber) {
    if (f.empty()) r.pattern_count_ok = false;
    if (f.size() != fiber_size) r.fiber_sizes_ok = false;
  }

  // the gauge orbit of each fiber's first member must reproduce the fiber
  r.fibers_are_orbits = true;
  for (const auto& f : psi.fiber) {
    if (f.empty()) continue;
    std::vector<std::uint64_t> orbit;
    const std::uint64_t w0 = psi.words[f[0]];
    for (std::uint64_t h = 0; h < fiber_size; h++) {
      std::uint64_t w = w0;
      for (int x = 0; x < psi.K; x++)
        if (h >> x & 1) w ^= eng.hole_translation(x).word0();
      orbit.push_back(w);
    }
    std::sort(orbit.begin(), orbit.end());
    std::vector<std::uint64_t> members;
    for (std::uint32_t i : f) members.push_back(psi.words[i]);
    std::sort(members.begin(), members.end());
    if (orbit != members) r.fibers_are_orbits = false;
  }

  // Gram matrix of the encoded pattern states: overlap of patterns n, m
  // is |fiber(n) ∩ fiber(m)| / 2^K, an exact integer count
  r.gram_identity = true;
  for (std::uint32_t n = 0; n < psi.npatterns(); n++) {
    for (std::uint32_t m = n; m < psi.npatterns(); m++) {
      std::uint64_t common = 0;
      const auto& a = psi.fiber[n];
      const auto& b = psi.fiber[m];
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { common++; i++; j++; }
        else if (a[i] < b[j]) i++;
        else j++;
      }
      const std::uint64_t want = (n == m) ? fiber_size : 0;
      if (common != want) r.gram_identity = false;
    }
  }
  r.states_checked = psi.size();
  return r;
}

ProjectorReport verify_code_projector(const PsiBasis& psi) {
  const PatternEngine& eng = *psi.eng;
  ProjectorReport r;
  r.matches_encoder_columns = true;
  r.idempotent = true;

  const std::uint64_t limit = 1ull << eng.nbits();
  const int K = psi.K;
  for (std::uint64_t w = 0; w < limit; w++) {
    DyadicState col = code_project(eng, {{w, Dyadic::one()}});

    // encoder form: R R^+ |w> = 2^-K * (sum over fiber of pattern(w)), or 0 outside Psi
    DyadicState want;
    if (int ord = psi.find(w); ord >= 0) {
      Dyadic c{1, K};
      for (std::uint32_t i : psi.fiber[psi.pattern[ord]]) want[psi.words[i]] = c;
    }
    if (col != want) r.matches_encoder_columns = false;
    if (code_project(eng, col) != col) r.idempotent = false;
    r.columns_checked++;
  }
  return r;
}

std::optional<BitVec> express_as_gates(const PatternEngine& eng, const Config& target) {
  gf2::Span span(eng.nbits(), eng.ngates());
  for (int e = 0; e < eng.ngates(); e++) span.add(eng.edge_translation(e));
  return span.express(target);
}

}  // namespace hqec
