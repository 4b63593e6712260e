#pragma once

#include <cstdint>
#include <vector>

#include "conjfid/antilinear.hpp"
#include "conjfid/matcore.hpp"
#include "conjfid/measures.hpp"

namespace conjfid {

struct HadamardMatrix {
  Eigen::MatrixXi entries;  // +-1, rows orthogonal, first row all ones

  Index order() const { return entries.rows(); }
};

struct PhaseSolution {
  ComplexVector mu;     // unimodular numbers, one per spectral value
  double achieved = 0;  // |sum mu_j lambda_j|
};

/// Subnormalized vectors phi_k with sum |phi_k><phi_k| equal to a state.
struct Ensemble {
  std::vector<ComplexVector> vectors;

  Index length() const { return Index(vectors.size()); }
  std::vector<double> weights() const;        // <phi_k|phi_k>
  ComplexMatrix assemble() const;             // sum of the projectors
};

enum class RoofMode { min, max };

/// Sylvester recursion; m must be a power of two (>= 1).
HadamardMatrix hadamard_matrix(Index m);

/// Smallest power of two 2^(n+1) with 2^n < d <= 2^(n+1); 1 for d = 1.
Index required_length(Index d);

double lower_hinge(const SingularSpectrum& lambda);

/// Unimodular mu with |sum mu_j lambda_j| equal to any requested value in
/// [lower_hinge, sum lambda]. The full sum uses mu = 1; the hinge with a
/// dominant first value uses mu = (1, -1, ..., -1); interior targets are
/// built by recursing on the tail and rotating it against the head.
PhaseSolution solve_phases(const SingularSpectrum& lambda, double target);

/// Ensemble of length required_length(d) attaining the concurrence (min) or
/// fidelity (max) roof value: Hadamard combinations of the rephased Takagi
/// basis, pushed through sqrt(rho). With equalize set, a final orthogonal
/// reshuffle makes every member carry the same normalized value, which keeps
/// the attained sum fixed while flattening the generated leaf.
Ensemble optimal_ensemble(const DensityOperator& rho, const AntilinearOp& theta,
                          RoofMode mode, bool equalize = true);

/// sum_k |<phi_k, theta phi_k>|.
double ensemble_value(const Ensemble& ens, const AntilinearOp& theta);

/// phi_k = sqrt(rho) chi_k with sum |chi_k><chi_k| the support projector,
/// chi_k drawn from the leading rows of a seeded random unitary of order m.
Ensemble random_ensemble(const DensityOperator& rho, Index m, std::uint64_t seed);

/// Best ensemble value over seeded random ensembles with lengths cycling
/// through d..required_length(d). Each trial is polished by pairwise member
/// mixing (every intermediate stage is still a decomposition of rho), an
/// algorithmic route independent of the constructive optimum. OpenMP-parallel
/// over trials; bit-identical to roof_oracle_serial for the same arguments.
double roof_oracle(const DensityOperator& rho, const AntilinearOp& theta,
                   RoofMode mode, int trials, std::uint64_t seed);
double roof_oracle_serial(const DensityOperator& rho, const AntilinearOp& theta,
                          RoofMode mode, int trials, std::uint64_t seed);

struct MeasureSelector {
  RoofMode mode;       // min -> concurrence roof, max -> fidelity roof
  AntilinearOp theta;
};

struct FlatnessReport {
  double max_mix_residual = 0;   // |G(sum q pi) - sum q G(pi)| over reweightings
  double member_spread = 0;      // max |G(pi_j) - mean|
  bool flat = false;
  bool leaf_constant = false;
};

/// Checks convex linearity of the roof over the hull of the ensemble members
/// and constancy of the member values. `weights` is tried first, followed by
/// seeded random probability vectors.
FlatnessReport flatness_check(const MeasureSelector& g, const Ensemble& ens,
                              const std::vector<double>& weights,
                              std::uint64_t seed, int reweightings = 12,
                              double tolerance = 1e-8);

}  // namespace conjfid
