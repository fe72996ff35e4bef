#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "jetorbit/jet_action.hpp"

namespace jetorbit {

/// Dimension of the order-r jet group on R^n: n * (C(n+r, n) - 1).
inline std::int64_t jet_group_dimension(int n, int r) {
  return static_cast<std::int64_t>(n) * (coeff_count(n, r) - 1);
}

/// Columns are infinitesimal-generator directions of the prolonged action at
/// one basepoint, rows the intrinsic fiber coordinates; its rank is the
/// orbit dimension through the basepoint.
struct GeneratorMatrix {
  Eigen::MatrixXd mat;
  SectionJet<double> basepoint;
  std::vector<LieGeneratorIndex> generators;
};

struct RankResult {
  int rank = 0;
  double gap = std::numeric_limits<double>::infinity();
  bool ambiguous = false;
};

struct OrbitReport {
  StructureGroupSpec spec;
  int r = 0;
  std::int64_t fiber_dim = 0;
  std::int64_t group_dim = 0;
  int rank = 0;
  std::int64_t invariant_count = 0;
  double singular_gap = std::numeric_limits<double>::infinity();
  int samples = 0;
  std::uint64_t seed = 0;
  bool ambiguous = false;
};

/// eps-part of the flattened action of the perturbed identity along `gen`:
/// one tangent direction of the orbit through mu, in ambient coordinates.
Eigen::VectorXd infinitesimal_generator(const LieGeneratorIndex& gen,
                                        const SectionJet<double>& mu);

/// Central-difference version of the same directional derivative; the
/// independent cross-check for the perturbation-scalar path.
Eigen::VectorXd finite_difference_generator(const LieGeneratorIndex& gen,
                                            const SectionJet<double>& mu,
                                            double step = 1e-4);

/// Seeded generic basepoint: random chart value at the origin, higher
/// coefficients U(-1, 1) / degree!, then (for the determinant-normalized
/// families) a degree-by-degree rescaling so the constraint holds as a jet
/// identity through order r.
SectionJet<double> random_section(const StructureGroupSpec& spec, int r,
                                  std::uint64_t seed);

/// One column per lie_basis(n, r+1) direction.  Constrained families report
/// the leading chart_dim * C(n+r, n) ambient rows; generators are tangent to
/// the constraint set and the dropped trailing diagonal block is determined
/// by the kept rows there, so the projection preserves rank.
GeneratorMatrix build_generator_matrix(const StructureGroupSpec& spec, int r,
                                       const SectionJet<double>& basepoint);

/// Singular-value rank: count sigma_i >= rel_tol * sigma_max.  gap is
/// sigma_rank / sigma_rank+1 (infinite at full rank); a gap under 1e3 marks
/// the cut ambiguous.
RankResult numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

/// Invariant count at order r: fiber dimension minus the maximum generator
/// rank over `samples` independently seeded basepoints.  Flags the report
/// ambiguous when the maximum is attained only once or any attaining sample
/// has a weak singular gap.  Hard-fails (logic_error) if the measured count
/// ever drops below a non-negative closed-form bound or a dual/finite-
/// difference spot check disagrees.
OrbitReport estimate_invariant_count(const StructureGroupSpec& spec, int r,
                                     int samples = 5, std::uint64_t seed = 42,
                                     double rel_tol = 1e-9);

}  // namespace jetorbit
