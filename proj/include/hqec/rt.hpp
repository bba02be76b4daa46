#pragma once

#include "hqec/duality.hpp"

namespace hqec {

// Convex mixture of pure bulk states (dimension 4^K each).
struct BulkMixture {
  std::vector<double> weight;
  std::vector<BulkState> component;
};
BulkMixture pure_mixture(BulkState state);

// Per-hole change of basis from the four pattern states to the sector
// factors of the split: row (mu, ia, ib), flattened mu-major, gives the
// coefficients of that factor basis state over beta = 0..3.
struct HoleBlock {
  int hole = -1;
  SplitType type = SplitType::Classical;
  int n_sectors = 0;
  int d_here = 0;
  int d_there = 0;
  Eigen::Matrix4d U;
};

// Tensor decomposition of the bulk space over the region's algebra:
// global sectors are products of per-hole sectors, and every sector
// factors into an a-side and an abar-side of fixed dimensions.
struct BlockDecomposition {
  WedgeReport wedges;
  std::vector<HoleBlock> blocks;  // one per hole

  std::uint64_t n_sectors() const;
  std::uint64_t dim_here() const;   // a-factor dimension (same in every sector)
  std::uint64_t dim_there() const;  // abar-factor dimension
};
BlockDecomposition block_decomposition(const PatternEngine& eng, const gf2::BitVec& region);

// Dense per-hole check that the factor bases realize the split: each
// generator of the region side must act as (M x 1) on every sector, and
// each generator of the complement side as (1 x M).
bool verify_decomposition(const BlockDecomposition& bd);

// S(rho, M_A) = -sum p_mu ln p_mu + sum p_mu S(rho^mu_a), computed by
// rotating each component into the factor basis and collecting the
// per-sector coefficient matrices. Natural log.
double algebraic_entropy(const BlockDecomposition& bd, const BulkMixture& rho);

// Sector weights p_mu of the mixture; sums to 1 for normalized input.
Eigen::VectorXd sector_probabilities(const BlockDecomposition& bd, const BulkMixture& rho);

// Exact reduced-state entropy of the encoded mixture on `region`, from
// the spectrum of the Gram matrix of the smaller-side coefficient
// blocks. Natural log; needs an enumerated support basis.
double boundary_entropy(const PsiBasis& psi,
                        const std::vector<std::pair<double, BoundaryState>>& components,
                        const gf2::BitVec& region);

// Area contribution of the cut: rank of the map sending the hole gauge
// generators to the region-half parity shifts of the torn loops and
// lattice laterals.
struct AreaData {
  int n_cross = 0;          // the GF(2) rank
  int torn_structures = 0;  // loops and laterals with sides on both sides
  double area_nats() const;
  double area_bits() const { return n_cross; }
};
AreaData area_term(const PatternEngine& eng, const gf2::BitVec& region);

// Both lines of the entropy identity: S(rho_X) = area + S(rho, M_X).
struct RtReport {
  AreaData area;
  double s_boundary_here = 0, s_boundary_there = 0;
  double s_algebra_here = 0, s_algebra_there = 0;
  double residual_here = 0, residual_there = 0;
  bool closes(double tol = 1e-9) const {
    return std::abs(residual_here) <= tol && std::abs(residual_there) <= tol;
  }
};
RtReport verify_rt(const PsiBasis& psi, const BulkMixture& rho, const gf2::BitVec& region);

}  // namespace hqec
