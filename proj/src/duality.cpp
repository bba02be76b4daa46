#include "hqec/duality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstring>

#include "hqec/check.hpp"

namespace hqec {

using detail::check;
using gf2::BitVec;

namespace {

void classify(HoleSplit& hs) {
  const KleinSubgroup& s = hs.s;
  const KleinSubgroup& c = hs.c;
  if (s.is_full() && c.is_trivial()) {
    hs.type = SplitType::FullHere;
  } else if (s.is_trivial() && c.is_full()) {
    hs.type = SplitType::FullThere;
  } else if (s.order() == 2 && c.is_full()) {
    hs.type = SplitType::Type1Here;
    hs.sigma = s.pair_label();
  } else if (s.is_full() && c.order() == 2) {
    hs.type = SplitType::Type1There;
    hs.sigma = c.pair_label();
  } else if (s.is_trivial() && c.order() == 2) {
    hs.type = SplitType::Type2Here;
    hs.sigma = c.pair_label();
  } else if (s.order() == 2 && c.is_trivial()) {
    hs.type = SplitType::Type2There;
    hs.sigma = s.pair_label();
  } else if (s.order() == 2 && c.order() == 2) {
    if (s == c) {
      hs.type = SplitType::SharedPair;
      hs.sigma = s.pair_label();
    } else {
      hs.type = SplitType::Type3;
      hs.u = s.pair_label();
      hs.v = c.pair_label();
    }
  } else if (s.is_full() && c.is_full()) {
    hs.type = SplitType::SharedFull;
  } else {
    hs.type = SplitType::Classical;
  }
}

int log2_order(const KleinSubgroup& g) { return g.order() == 4 ? 2 : g.order() - 1; }

// packed restriction of a stored-bit word to a qudit list
std::uint32_t key_of(std::uint64_t word, const std::vector<int>& qudits) {
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < qudits.size(); i++)
    key |= static_cast<std::uint32_t>(word >> (2 * qudits[i]) & 3) << (2 * i);
  return key;
}

// all 2^K gauge translations as stored-bit words
std::vector<std::uint64_t> gauge_words(const PatternEngine& eng) {
  const int K = eng.nholes();
  std::vector<std::uint64_t> w(1ull << K, 0);
  for (std::uint64_t h = 1; h < w.size(); h++) {
    int x = __builtin_ctzll(h);
    w[h] = w[h & (h - 1)] ^ eng.hole_translation(x).word0();
  }
  return w;
}

// words of every element of the span of `basis`
std::vector<std::uint64_t> span_words(const std::vector<BitVec>& basis) {
  check(basis.size() <= 20, "span enumeration too large");
  std::vector<std::uint64_t> w(1ull << basis.size(), 0);
  for (std::uint64_t m = 1; m < w.size(); m++) {
    int i = __builtin_ctzll(m);
    w[m] = w[m & (m - 1)] ^ basis[i].word0();
  }
  return w;
}

}  // namespace

WedgeReport compute_wedges(const PatternEngine& eng, const BitVec& region) {
  RegionEngine re(eng, region);
  WedgeReport rep;
  rep.region = region;
  int pure_in = 0, proj_out = 0;
  for (int x = 0; x < eng.nholes(); x++) {
    HoleSplit hs;
    hs.hole = x;
    hs.s = re.achievable(x);
    hs.c = re.confusion(x);
    classify(hs);
    switch (hs.type) {
      case SplitType::FullHere: rep.wedge_here.push_back(x); break;
      case SplitType::FullThere: rep.wedge_there.push_back(x); break;
      default: rep.edge_holes.push_back(x);
    }
    rep.splits.push_back(hs);
    pure_in += log2_order(hs.s);
    proj_out += log2_order(hs.c);
  }
  // the algebra factors over holes iff the visible action span is the
  // product of its pure single-hole parts, and dually for the invisible
  rep.product_split =
      gf2::rank_of(re.inside_logicals(), 2 * eng.nholes()) == pure_in &&
      gf2::rank_of(re.invisible_logicals(), 2 * eng.nholes()) == proj_out;
  return rep;
}

std::vector<CenterGenerator> center_generators(const WedgeReport& report) {
  std::vector<CenterGenerator> out;
  for (const HoleSplit& hs : report.splits) {
    switch (hs.type) {
      case SplitType::Type1Here:
      case SplitType::Type1There:
        out.push_back({hs.hole, 1, hs.sigma});
        break;
      case SplitType::Type2Here:
      case SplitType::Type2There:
        out.push_back({hs.hole, 2, hs.sigma});
        break;
      case SplitType::SharedPair:
        out.push_back({hs.hole, 1, hs.sigma});
        out.push_back({hs.hole, 2, hs.sigma});
        break;
      case SplitType::SharedFull:
        for (int sigma = 1; sigma <= 3; sigma++) out.push_back({hs.hole, 1, sigma});
        break;
      case SplitType::Classical:
        out.push_back({hs.hole, 0, 0});
        break;
      default: break;
    }
  }
  return out;
}

RecoveryCheck verify_complementary_recovery(const PsiBasis& psi, const BitVec& swept) {
  const PatternEngine& eng = *psi.eng;
  const int K = psi.K;
  const std::vector<int> S = region_qudits(swept);
  const int m = static_cast<int>(S.size());
  check(eng.lattice().level <= 2 && m <= 5, "verify_complementary_recovery capability");

  const std::uint32_t nkeys = 1u << (2 * m);
  const std::uint32_t npat = psi.npatterns();
  const std::uint32_t nst = psi.size();
  const std::uint32_t group = 1u << K;

  RecoveryCheck r;

  // c(psi, alpha): how many gauge shifts of psi match alpha on the swept set
  std::vector<std::uint64_t> gw = gauge_words(eng);
  std::vector<std::uint32_t> ctab(static_cast<std::size_t>(nst) * nkeys, 0);
  for (std::uint32_t i = 0; i < nst; i++)
    for (std::uint32_t h = 0; h < group; h++)
      ctab[static_cast<std::size_t>(i) * nkeys + key_of(psi.words[i] ^ gw[h], S)]++;

  // two-valued: values in {0, z}, z = order of the gauge subgroup
  // invisible on the swept set
  std::vector<BitVec> masked;
  const BitVec mask = eng.bit_mask(swept);
  for (int x = 0; x < K; x++) {
    BitVec v = eng.hole_translation(x);
    for (std::size_t w = 0; w < v.w.size(); w++) v.w[w] &= mask.w[w];
    masked.push_back(v);
  }
  const std::uint32_t z = 1u << (K - gf2::rank_of(masked, eng.nbits()));
  for (std::uint32_t c : ctab)
    if (c != 0 && c != z) r.q_two_valued = false;

  // fiber-constant: the diagonal reconstruction commutes with the projector
  for (std::uint32_t n = 0; n < npat; n++) {
    const auto& f = psi.fiber[n];
    for (std::size_t j = 1; j < f.size(); j++)
      if (std::memcmp(&ctab[static_cast<std::size_t>(f[0]) * nkeys],
                      &ctab[static_cast<std::size_t>(f[j]) * nkeys],
                      nkeys * sizeof(std::uint32_t)) != 0)
        r.q_fiber_constant = false;
  }

  // compressed entries equal the reconstruction's: sum of c over a fiber
  // must be 2^K times the number of fiber members matching alpha
  std::vector<std::uint32_t> v(static_cast<std::size_t>(npat) * nkeys, 0);
  for (std::uint32_t i = 0; i < nst; i++)
    v[static_cast<std::size_t>(psi.pattern[i]) * nkeys + key_of(psi.words[i], S)]++;
  for (std::uint32_t n = 0; n < npat; n++) {
    std::vector<std::uint64_t> sum(nkeys, 0);
    for (std::uint32_t i : psi.fiber[n])
      for (std::uint32_t a = 0; a < nkeys; a++)
        sum[a] += ctab[static_cast<std::size_t>(i) * nkeys + a];
    for (std::uint32_t a = 0; a < nkeys; a++)
      if (sum[a] != static_cast<std::uint64_t>(group) * v[static_cast<std::size_t>(n) * nkeys + a])
        r.q_matches = false;
  }

  // translation sweep: gate expressibility matches support membership,
  // sampled annihilation outside the span, shift consistency inside
  gf2::Span gates(eng.nbits(), eng.ngates());
  for (int e = 0; e < eng.ngates(); e++) gates.add(eng.edge_translation(e));

  for (std::uint32_t t = 0; t < nkeys; t++) {
    Config t_ext = eng.zero_config();
    for (int i = 0; i < m; i++) {
      if (t >> (2 * i) & 1) t_ext.set(2 * S[i], true);
      if (t >> (2 * i + 1) & 1) t_ext.set(2 * S[i] + 1, true);
    }
    const bool member = eng.in_psi(t_ext);
    const bool solvable = gates.express(t_ext).has_value();
    if (member != solvable) r.span_consistent = false;
    if (member) {
      if (!solvable) r.gauge_solvable = false;
      const std::uint64_t delta = eng.pattern_delta(eng.config_logical(t_ext));
      for (std::uint32_t probe = 0; probe < nst; probe += 131) {
        int ord = psi.find(psi.words[probe] ^ t_ext.word0());
        if (ord < 0 || psi.pattern[ord] != (psi.pattern[probe] ^ delta))
          r.q_matches = false;
      }
      r.reconstructed += nkeys;
    } else {
      for (std::uint32_t probe = 0; probe < nst; probe += 131)
        if (psi.find(psi.words[probe] ^ t_ext.word0()) >= 0) r.annihilators_ok = false;
    }
    r.ops_swept += nkeys;
  }

  WedgeReport wr = compute_wedges(eng, swept);
  r.center_nontrivial = !center_generators(wr).empty();
  return r;
}

CenterCheck verify_center(const PsiBasis& psi, const WedgeReport& report) {
  const PatternEngine& eng = *psi.eng;
  check(eng.lattice().level <= 2, "verify_center capability");

  CenterCheck out;
  std::vector<CenterGenerator> gens = center_generators(report);
  out.nonempty = !gens.empty();
  if (gens.empty()) return out;

  std::vector<BitVec> all_tau;
  for (int e = 0; e < eng.ngates(); e++) all_tau.push_back(eng.edge_translation(e));

  for (const BitVec& side : {report.region, complement_region(report.region)}) {
    const std::vector<int> S = region_qudits(side);
    const std::uint32_t nkeys = 1u << (2 * S.size());

    // rotation generators: compressed-entry values must be invariant
    // under the label shift at the generator's hole; the values are the
    // per-pattern counts of support states matching alpha on this side
    std::vector<std::uint32_t> cnt(psi.npatterns(), 0);
    std::vector<std::vector<std::uint32_t>> bucket(nkeys);
    for (std::uint32_t i = 0; i < psi.size(); i++)
      bucket[key_of(psi.words[i], S)].push_back(i);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t a = 0; a < nkeys; a++) {
      if (bucket[a].empty()) continue;
      touched.clear();
      for (std::uint32_t i : bucket[a]) {
        std::uint32_t n = psi.pattern[i];
        if (cnt[n]++ == 0) touched.push_back(n);
      }
      for (const CenterGenerator& g : gens) {
        if (g.type != 1) continue;
        const std::uint32_t s = static_cast<std::uint32_t>(g.sigma) << (2 * g.hole);
        for (std::uint32_t n : touched)
          if (cnt[n ^ s] != cnt[n]) out.commutes = false;
      }
      out.ops_checked += bucket[a].size();
      for (std::uint32_t n : touched) cnt[n] = 0;
    }

    // projector generators: every translation supported on this side
    // must shift the generator's hole within the projector's cosets
    auto inside = gf2::span_inside(all_tau, eng.nbits(), eng.bit_mask(side));
    for (std::uint64_t w : span_words(inside)) {
      const std::uint64_t delta =
          eng.pattern_delta(eng.config_logical(gf2::from_word(eng.nbits(), w)));
      for (const CenterGenerator& g : gens) {
        if (g.type == 1) continue;
        const std::uint32_t dx = delta >> (2 * g.hole) & 3;
        if (dx != 0 && dx != static_cast<std::uint32_t>(g.sigma)) out.commutes = false;
      }
      out.ops_checked++;
    }
  }
  return out;
}

StructureReport structure_report(const PsiBasis& psi, const BitVec& region) {
  const PatternEngine& eng = *psi.eng;
  const int K = psi.K;
  StructureReport rep;
  rep.wedges = compute_wedges(eng, region);

  rep.dim_region_algebra = 1;
  rep.dim_center = 1;
  rep.sector_dim_sum = 1;
  for (const HoleSplit& hs : rep.wedges.splits) {
    rep.dim_region_algebra *= hs.dim_here();
    rep.dim_center *= hs.dim_center();
    rep.sector_dim_sum *= hs.n_sectors() * hs.sector_dim_here() * hs.sector_dim_there();
  }
  rep.sector_completeness =
      rep.wedges.product_split && rep.sector_dim_sum == (1ull << (2 * K));

  // dense audit: compressed region operators have one pattern-shift
  // component per element of the visible action span, and a value
  // component from the span of per-alpha count vectors
  const std::vector<int> S = region_qudits(region);
  if (eng.lattice().level <= 2 && S.size() <= 5) {
    RegionEngine re(eng, region);
    int shift_rank = gf2::rank_of(re.inside_logicals(), 2 * K);

    const std::uint32_t nkeys = 1u << (2 * S.size());
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(nkeys, psi.npatterns());
    for (std::uint32_t i = 0; i < psi.size(); i++)
      V(key_of(psi.words[i], S), psi.pattern[i]) += 1.0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    qr.setThreshold(1e-9);
    rep.dim_region_dense = (1ull << shift_rank) * static_cast<std::uint64_t>(qr.rank());
    rep.dims_agree = rep.dim_region_dense == rep.dim_region_algebra;
  }
  return rep;
}

}  // namespace hqec
