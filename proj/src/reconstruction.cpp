#include "hqec/reconstruction.hpp"

#include <algorithm>

#include "hqec/check.hpp"

namespace hqec {

using detail::check;
using gf2::BitVec;

int KleinSubgroup::pair_label() const {
  check(order() == 2, "pair_label on a subgroup of order != 2");
  for (int l = 1; l < 4; l++)
    if (contains(l)) return l;
  return -1;
}

void KleinSubgroup::close_with(int label) {
  mask |= 1 << label;
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      if (contains(a) && contains(b)) mask |= 1 << (a ^ b);
}

BitVec make_region(int N, const std::vector<int>& qudits) {
  BitVec r(N);
  for (int q : qudits) {
    check(q >= 0 && q < N, "region qudit out of range");
    r.set(q, true);
  }
  return r;
}

BitVec arc_region(int N, int first, int size) {
  check(size >= 0 && size <= N, "arc size out of range");
  BitVec r(N);
  for (int i = 0; i < size; i++) r.set(((first + i) % N + N) % N, true);
  return r;
}

BitVec complement_region(const BitVec& region) {
  BitVec r(region.n);
  for (int q = 0; q < region.n; q++) r.set(q, !region.get(q));
  return r;
}

std::vector<int> region_qudits(const BitVec& region) {
  std::vector<int> out;
  for (int q = 0; q < region.n; q++)
    if (region.get(q)) out.push_back(q);
  return out;
}

RegionEngine::RegionEngine(const PatternEngine& eng, BitVec region)
    : eng_(&eng), region_(std::move(region)) {
  check(region_.n == eng.lattice().N, "region size != qudit count");
  std::vector<BitVec> gens;
  gens.reserve(eng.ngates());
  for (int e = 0; e < eng.ngates(); e++) gens.push_back(eng.edge_translation(e));

  inside_ = gf2::span_inside_tracked(gens, eng.nbits(), eng.bit_mask(region_));
  outside_ = gf2::span_inside_tracked(gens, eng.nbits(), eng.bit_mask(complement_region(region_)));
  for (const BitVec& row : inside_.rows) inside_log_.push_back(eng.config_logical(row));
  for (const BitVec& row : outside_.rows) outside_log_.push_back(eng.config_logical(row));
}

KleinSubgroup RegionEngine::achievable(int hole) const {
  const int K = eng_->nholes();
  BitVec allowed(2 * K);
  allowed.set(2 * hole, true);
  allowed.set(2 * hole + 1, true);
  KleinSubgroup s = KleinSubgroup::trivial();
  for (const BitVec& pure : gf2::span_inside(inside_log_, 2 * K, allowed))
    s.close_with(eng_->hole_action(pure, hole));
  return s;
}

KleinSubgroup RegionEngine::confusion(int hole) const {
  KleinSubgroup c = KleinSubgroup::trivial();
  for (const BitVec& l : outside_log_) c.close_with(eng_->hole_action(l, hole));
  return c;
}

std::optional<BitVec> RegionEngine::solve_gates(const BitVec& logical) const {
  gf2::Span span(2 * eng_->nholes(), static_cast<int>(inside_log_.size()));
  for (const BitVec& l : inside_log_) span.add(l);
  auto combo = span.express(logical);
  if (!combo) return std::nullopt;

  BitVec gates(eng_->ngates());
  for (std::size_t r = 0; r < inside_.rows.size(); r++)
    if (combo->get(static_cast<int>(r))) gates ^= inside_.combos[r];

  // the result must stay inside the region and act as requested
  Config t = eng_->gate_translation(gates);
  const BitVec mask = eng_->bit_mask(region_);
  for (int b = 0; b < eng_->nbits(); b++)
    check(!t.get(b) || mask.get(b), "solved gate product leaks outside region");
  check(eng_->config_logical(t) == logical, "solved gate product acts wrongly");
  return gates;
}

std::optional<BitVec> RegionEngine::reconstruct_rotation(int hole, int label) const {
  return solve_gates(pure_logical(eng_->nholes(), hole, label));
}

BitVec pure_logical(int K, int hole, int label) {
  BitVec l(2 * K);
  l.set(2 * hole, label == 1 || label == 3);
  l.set(2 * hole + 1, label == 1 || label == 2);
  return l;
}

bool erasure_correctable(const PatternEngine& eng, const BitVec& erased, int hole) {
  RegionEngine kept(eng, complement_region(erased));
  return kept.achievable(hole).is_full() && kept.confusion(hole).is_trivial();
}

bool oracle_correctable(const PsiBasis& psi, const BitVec& erased, int hole) {
  const PatternEngine& eng = *psi.eng;
  const std::vector<int> E = region_qudits(erased);
  const int m = static_cast<int>(E.size());
  check(eng.lattice().level <= 2 && m <= 6, "oracle_correctable capability");

  const std::uint32_t nkeys = 1u << (2 * m);
  const std::uint32_t npat = psi.npatterns();

  // bucket support states by their restriction to the erased set
  auto key_of = [&](std::uint64_t word) {
    std::uint32_t key = 0;
    for (int i = 0; i < m; i++) {
      key |= static_cast<std::uint32_t>(word >> (2 * E[i]) & 3) << (2 * i);
    }
    return key;
  };
  std::vector<std::vector<std::uint32_t>> bucket(nkeys);
  for (std::uint32_t i = 0; i < psi.size(); i++) bucket[key_of(psi.words[i])].push_back(i);

  std::vector<std::uint32_t> cnt(npat, 0);
  std::vector<std::uint32_t> touched;

  for (std::uint32_t t = 0; t < nkeys; t++) {
    // translation part: stored-bit pairs on the erased qudits
    Config t_ext = eng.zero_config();
    for (int i = 0; i < m; i++) {
      if (t >> (2 * i) & 1) t_ext.set(2 * E[i], true);
      if (t >> (2 * i + 1) & 1) t_ext.set(2 * E[i] + 1, true);
    }

    if (!eng.in_psi(t_ext)) {
      // such a translation maps support states off the support: the
      // compressed operator vanishes for every diagonal part
      for (std::uint32_t probe = 0; probe < psi.size(); probe += 97)
        check(psi.find(psi.words[probe] ^ t_ext.word0()) < 0,
              "translation outside the support span hit the support");
      continue;
    }

    const std::uint64_t delta = eng.pattern_delta(eng.config_logical(t_ext));
    const bool moves_hole = (delta >> (2 * hole) & 3) != 0;

    // diagonal part alpha = each bucket key in turn; the compressed
    // operator has entries M[n ^ delta][n] = #{psi in fiber(n) matching
    // alpha}; commutation with the encoded algebra at the hole demands
    // per-entry digit equality (projectors) and shift-invariance of the
    // counts (rotations)
    for (std::uint32_t alpha = 0; alpha < nkeys; alpha++) {
      if (bucket[alpha].empty()) continue;
      touched.clear();
      for (std::uint32_t i : bucket[alpha]) {
        std::uint32_t n = psi.pattern[i];
        if (cnt[n]++ == 0) touched.push_back(n);
      }
      bool ok = true;
      for (std::uint32_t n : touched) {
        if (moves_hole) {  // some projector at the hole fails to commute
          ok = false;
          break;
        }
        for (int sigma = 1; sigma <= 3 && ok; sigma++) {
          std::uint32_t s = static_cast<std::uint32_t>(sigma) << (2 * hole);
          if (cnt[n ^ s] != cnt[n]) ok = false;
        }
        if (!ok) break;
      }
      for (std::uint32_t n : touched) cnt[n] = 0;
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace hqec
