#include "hqec/rt.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "hqec/check.hpp"

namespace hqec {
namespace {

constexpr double kSpectralCutoff = 1e-14;

// the two nonzero labels other than sigma, ascending
std::pair<int, int> other_pair(int sigma) {
  int a = -1, b = -1;
  for (int t = 1; t < 4; ++t) {
    if (t == sigma) continue;
    (a < 0 ? a : b) = t;
  }
  return {a, b};
}

// character pairing on stored-bit encodings of the labels
bool char_odd(int chi, int beta) {
  static constexpr int enc[4] = {0, 3, 2, 1};
  return __builtin_popcount(enc[chi] & enc[beta]) & 1;
}

// Rows of the factor basis over the four pattern states, flattened as
// r = (mu * d_here + ia) * d_there + ib.
Eigen::Matrix4d hole_unitary(const HoleSplit& hs) {
  const double r = std::numbers::sqrt2 / 2;
  Eigen::Matrix4d U = Eigen::Matrix4d::Zero();
  switch (hs.type) {
    case SplitType::FullHere:
    case SplitType::FullThere:
    case SplitType::Classical:
      return Eigen::Matrix4d::Identity();
    case SplitType::Type1Here:
    case SplitType::Type1There:
    case SplitType::SharedPair: {
      auto [s1, s2] = other_pair(hs.sigma);
      U(0, 0) = r, U(0, hs.sigma) = r;
      U(1, s1) = r, U(1, s2) = r;
      U(2, 0) = r, U(2, hs.sigma) = -r;
      U(3, s1) = r, U(3, s2) = -r;
      return U;
    }
    case SplitType::Type2Here:
    case SplitType::Type2There: {
      auto [s1, s2] = other_pair(hs.sigma);
      U(0, 0) = 1, U(1, hs.sigma) = 1, U(2, s1) = 1, U(3, s2) = 1;
      return U;
    }
    case SplitType::Type3:
      U(0, 0) = 1, U(1, hs.v) = 1, U(2, hs.u) = 1, U(3, hs.u ^ hs.v) = 1;
      return U;
    case SplitType::SharedFull:
      for (int chi = 0; chi < 4; ++chi)
        for (int beta = 0; beta < 4; ++beta) U(chi, beta) = char_odd(chi, beta) ? -0.5 : 0.5;
      return U;
  }
  return U;
}

// rotations in `rot` plus projector sums over the cosets of `proj_of`
std::vector<Eigen::Matrix4d> side_generators(KleinSubgroup rot, KleinSubgroup proj_of) {
  std::vector<Eigen::Matrix4d> gens;
  for (int sg = 1; sg < 4; ++sg) {
    if (!rot.contains(sg)) continue;
    Eigen::Matrix4d P = Eigen::Matrix4d::Zero();
    for (int b = 0; b < 4; ++b) P(b ^ sg, b) = 1;
    gens.push_back(P);
  }
  std::array<bool, 4> seen{};
  for (int b = 0; b < 4; ++b) {
    if (seen[b]) continue;
    Eigen::Matrix4d D = Eigen::Matrix4d::Zero();
    for (int h = 0; h < 4; ++h) {
      if (!proj_of.contains(h)) continue;
      D(b ^ h, b ^ h) = 1;
      seen[b ^ h] = true;
    }
    gens.push_back(D);
  }
  return gens;
}

// B must be block diagonal over sectors and act on one factor only.
bool acts_on_one_factor(const Eigen::Matrix4d& B, const HoleBlock& hb, bool here) {
  const double tol = 1e-12;
  const int bs = hb.d_here * hb.d_there;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r / bs != c / bs && std::abs(B(r, c)) > tol) return false;
  for (int mu = 0; mu < hb.n_sectors; ++mu) {
    const int off = mu * bs;
    for (int ia = 0; ia < hb.d_here; ++ia)
      for (int ib = 0; ib < hb.d_there; ++ib)
        for (int ja = 0; ja < hb.d_here; ++ja)
          for (int jb = 0; jb < hb.d_there; ++jb) {
            double got = B(off + ia * hb.d_there + ib, off + ja * hb.d_there + jb);
            double want = here ? (ib == jb ? B(off + ia * hb.d_there, off + ja * hb.d_there) : 0)
                               : (ia == ja ? B(off + ib, off + jb) : 0);
            if (std::abs(got - want) > tol) return false;
          }
  }
  return true;
}

void check_mixture(const BlockDecomposition& bd, const BulkMixture& rho) {
  const int K = static_cast<int>(bd.blocks.size());
  detail::check(K >= 1 && K <= 10, "sector analysis needs 1 <= K <= 10");
  detail::check(!rho.component.empty() && rho.weight.size() == rho.component.size(),
                "mixture needs matching weights and components");
  for (const BulkState& psi : rho.component)
    detail::check(psi.size() == Eigen::Index(1) << (2 * K), "bulk state dimension != 4^K");
}

// Rotate each component into the factor basis and stack the per-sector
// coefficient matrices: rows = a-index, columns = (component, b-index).
std::vector<Eigen::MatrixXcd> sector_blocks(const BlockDecomposition& bd, const BulkMixture& rho) {
  const int K = static_cast<int>(bd.blocks.size());
  const std::uint64_t dim = std::uint64_t(1) << (2 * K);
  std::vector<std::uint32_t> sec(dim), ai(dim), bi(dim);
  for (std::uint64_t n = 0; n < dim; ++n) {
    std::uint64_t s = 0, a = 0, b = 0, sw = 1, aw = 1, bw = 1;
    for (int x = 0; x < K; ++x) {
      const HoleBlock& hb = bd.blocks[x];
      const int r = n >> (2 * x) & 3;
      s += sw * (r / (hb.d_there * hb.d_here));
      a += aw * (r / hb.d_there % hb.d_here);
      b += bw * (r % hb.d_there);
      sw *= hb.n_sectors, aw *= hb.d_here, bw *= hb.d_there;
    }
    sec[n] = s, ai[n] = a, bi[n] = b;
  }
  const std::uint64_t da = bd.dim_here(), db = bd.dim_there();
  const int ncomp = static_cast<int>(rho.component.size());
  std::vector<Eigen::MatrixXcd> block(bd.n_sectors());
  for (auto& m : block) m = Eigen::MatrixXcd::Zero(da, db * ncomp);
  for (int c = 0; c < ncomp; ++c) {
    Eigen::VectorXcd v = rho.component[c];
    for (int x = 0; x < K; ++x) {
      const Eigen::Matrix4d& U = bd.blocks[x].U;
      const std::uint64_t stride = std::uint64_t(1) << (2 * x);
      for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base >> (2 * x) & 3) != 0) continue;
        std::array<std::complex<double>, 4> in;
        for (int t = 0; t < 4; ++t) in[t] = v[base + t * stride];
        for (int rr = 0; rr < 4; ++rr)
          v[base + rr * stride] = U(rr, 0) * in[0] + U(rr, 1) * in[1] + U(rr, 2) * in[2] +
                                  U(rr, 3) * in[3];
      }
    }
    const double sw = std::sqrt(rho.weight[c]);
    for (std::uint64_t n = 0; n < dim; ++n)
      block[sec[n]](ai[n], std::uint64_t(c) * db + bi[n]) = sw * v[n];
  }
  return block;
}

// spectrum of the smaller-side Gram of B; trace = squared weight
Eigen::VectorXd gram_spectrum(const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd G;
  if (B.rows() <= B.cols())
    G = B * B.adjoint();
  else
    G = B.adjoint() * B;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double spectrum_entropy(const Eigen::VectorXd& lam, double norm) {
  double s = 0;
  for (double l : lam) {
    const double p = l / norm;
    if (p > kSpectralCutoff) s -= p * std::log(p);
  }
  return s;
}

std::uint64_t pack_key(std::uint64_t word, const std::vector<int>& qudits) {
  std::uint64_t key = 0;
  for (size_t t = 0; t < qudits.size(); ++t) key |= (word >> (2 * qudits[t]) & 3) << (2 * t);
  return key;
}

}  // namespace

BulkMixture pure_mixture(BulkState state) {
  BulkMixture m;
  m.weight = {1.0};
  m.component.push_back(std::move(state));
  return m;
}

std::uint64_t BlockDecomposition::n_sectors() const {
  std::uint64_t p = 1;
  for (const HoleBlock& b : blocks) p *= b.n_sectors;
  return p;
}

std::uint64_t BlockDecomposition::dim_here() const {
  std::uint64_t p = 1;
  for (const HoleBlock& b : blocks) p *= b.d_here;
  return p;
}

std::uint64_t BlockDecomposition::dim_there() const {
  std::uint64_t p = 1;
  for (const HoleBlock& b : blocks) p *= b.d_there;
  return p;
}

BlockDecomposition block_decomposition(const PatternEngine& eng, const gf2::BitVec& region) {
  BlockDecomposition bd;
  bd.wedges = compute_wedges(eng, region);
  detail::check(bd.wedges.product_split,
                "block_decomposition: region algebra does not factor over holes");
  bd.blocks.reserve(bd.wedges.splits.size());
  for (const HoleSplit& hs : bd.wedges.splits) {
    HoleBlock hb;
    hb.hole = hs.hole;
    hb.type = hs.type;
    hb.n_sectors = hs.n_sectors();
    hb.d_here = hs.sector_dim_here();
    hb.d_there = hs.sector_dim_there();
    hb.U = hole_unitary(hs);
    bd.blocks.push_back(hb);
  }
  return bd;
}

bool verify_decomposition(const BlockDecomposition& bd) {
  for (size_t x = 0; x < bd.blocks.size(); ++x) {
    const HoleBlock& hb = bd.blocks[x];
    const HoleSplit& hs = bd.wedges.splits[x];
    if (hb.n_sectors * hb.d_here * hb.d_there != 4) return false;
    if (!(hb.U * hb.U.transpose()).isIdentity(1e-12)) return false;
    for (const Eigen::Matrix4d& G : side_generators(hs.s, hs.c))
      if (!acts_on_one_factor(hb.U * G * hb.U.transpose(), hb, true)) return false;
    for (const Eigen::Matrix4d& G : side_generators(hs.c, hs.s))
      if (!acts_on_one_factor(hb.U * G * hb.U.transpose(), hb, false)) return false;
  }
  return true;
}

double algebraic_entropy(const BlockDecomposition& bd, const BulkMixture& rho) {
  check_mixture(bd, rho);
  double total = 0, s_alg = 0;
  for (const Eigen::MatrixXcd& B : sector_blocks(bd, rho)) {
    const Eigen::VectorXd lam = gram_spectrum(B);
    const double p = lam.sum();
    total += p;
    if (p <= kSpectralCutoff) continue;
    s_alg += -p * std::log(p) + p * spectrum_entropy(lam, p);
  }
  detail::check(std::abs(total - 1.0) <= 1e-9, "algebraic_entropy: mixture not normalized");
  return s_alg;
}

Eigen::VectorXd sector_probabilities(const BlockDecomposition& bd, const BulkMixture& rho) {
  check_mixture(bd, rho);
  const std::vector<Eigen::MatrixXcd> blocks = sector_blocks(bd, rho);
  Eigen::VectorXd p(blocks.size());
  for (size_t m = 0; m < blocks.size(); ++m) p[m] = blocks[m].squaredNorm();
  return p;
}

double boundary_entropy(const PsiBasis& psi,
                        const std::vector<std::pair<double, BoundaryState>>& components,
                        const gf2::BitVec& region) {
  detail::check(psi.eng != nullptr && psi.size() > 0, "boundary_entropy: empty basis");
  detail::check(!components.empty(), "boundary_entropy: empty mixture");
  const std::vector<int> qa = region_qudits(region);
  const std::vector<int> qb = region_qudits(complement_region(region));
  std::map<std::uint64_t, int> arow, bcol;
  for (std::uint32_t i = 0; i < psi.size(); ++i) {
    arow.emplace(pack_key(psi.words[i], qa), static_cast<int>(arow.size()));
    bcol.emplace(pack_key(psi.words[i], qb), static_cast<int>(bcol.size()));
  }
  const std::uint64_t nb = bcol.size();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(arow.size(), nb * components.size());
  for (size_t c = 0; c < components.size(); ++c) {
    const auto& [w, state] = components[c];
    detail::check(state.amp.size() == psi.size(), "boundary state dimension != |Psi|");
    const double sw = std::sqrt(w);
    for (std::uint32_t i = 0; i < psi.size(); ++i)
      C(arow.at(pack_key(psi.words[i], qa)), c * nb + bcol.at(pack_key(psi.words[i], qb))) +=
          sw * state.amp[i];
  }
  const Eigen::VectorXd lam = gram_spectrum(C);
  return spectrum_entropy(lam, lam.sum());
}

double AreaData::area_nats() const { return n_cross * std::numbers::ln2; }

AreaData area_term(const PatternEngine& eng, const gf2::BitVec& region) {
  const Lattice& lat = eng.lattice();
  detail::check(region.n == lat.N, "area_term: region size != N");
  std::vector<gf2::BitVec> half;  // region-half parity functional per torn structure
  auto add_structure = [&](std::initializer_list<const std::vector<SideRef>*> parts) {
    bool in = false, out = false;
    gf2::BitVec f(eng.nbits());
    for (const auto* part : parts)
      for (const SideRef& s : *part) {
        if (region.get(s.qudit)) {
          in = true;
          f ^= eng.side_functional(s.qudit, s.tau);
        } else {
          out = true;
        }
      }
    if (in && out) half.push_back(std::move(f));
  };
  for (const Hole& h : lat.holes) add_structure({&h.lateral[0], &h.lateral[1], &h.lateral[2]});
  for (int j = 0; j < 3; ++j) add_structure({&lat.lattice_lateral[j]});

  AreaData ad;
  ad.torn_structures = static_cast<int>(half.size());
  std::vector<gf2::BitVec> rows;
  rows.reserve(lat.K);
  for (int x = 0; x < lat.K; ++x) {
    gf2::BitVec row(ad.torn_structures);
    for (int j = 0; j < ad.torn_structures; ++j)
      if (gf2::dot(half[j], eng.hole_translation(x))) row.set(j, true);
    rows.push_back(std::move(row));
  }
  ad.n_cross = gf2::rank_of(rows, ad.torn_structures);
  return ad;
}

RtReport verify_rt(const PsiBasis& psi, const BulkMixture& rho, const gf2::BitVec& region) {
  const PatternEngine& eng = *psi.eng;
  RtReport rep;
  rep.area = area_term(eng, region);
  std::vector<std::pair<double, BoundaryState>> comps;
  comps.reserve(rho.component.size());
  for (size_t c = 0; c < rho.component.size(); ++c)
    comps.emplace_back(rho.weight[c], encode(psi, rho.component[c]));
  const gf2::BitVec comp_region = complement_region(region);
  rep.s_boundary_here = boundary_entropy(psi, comps, region);
  rep.s_boundary_there = boundary_entropy(psi, comps, comp_region);
  rep.s_algebra_here = algebraic_entropy(block_decomposition(eng, region), rho);
  rep.s_algebra_there = algebraic_entropy(block_decomposition(eng, comp_region), rho);
  rep.residual_here = rep.s_boundary_here - rep.area.area_nats() - rep.s_algebra_here;
  rep.residual_there = rep.s_boundary_there - rep.area.area_nats() - rep.s_algebra_there;
  return rep;
}

}  // namespace hqec
