#pragma once

#include <utility>

#include "conjfid/antilinear.hpp"
#include "conjfid/matcore.hpp"

namespace conjfid {

/// rho = (x0*1 + x1*s1 + x2*s2 + x3*s3)/2; x0 is the trace.
struct BlochVector {
  double x0 = 1.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;

  bool is_psd(double tol = 1e-12) const;
  ComplexMatrix to_matrix() const;
};

struct MeasureResult {
  double value = 0.0;
  SingularSpectrum spectrum;  // ordered values behind the measure
};

/// tr (sqrt(omega) rho sqrt(omega))^(1/2); symmetric in its arguments.
double fidelity(const DensityOperator& rho, const DensityOperator& omega);

/// max{0, v1 - sum of remaining singular numbers}.
double concurrence_pair(const DensityOperator& rho, const DensityOperator& omega);

/// (tr(X rho) + tr(X^-1 omega))/2, an upper bound of the fidelity for every
/// positive invertible X, tight at the geometric-mean solution.
double variational_bound(const DensityOperator& rho, const DensityOperator& omega,
                         const ComplexMatrix& x);

/// Sum of the Takagi values of sqrt(rho) M sqrt(rho)^T; requires a
/// self-adjoint antilinear operator (symmetric M).
MeasureResult theta_fidelity(const DensityOperator& rho, const AntilinearOp& theta);

/// Hinge of the same spectrum.
MeasureResult theta_concurrence(const DensityOperator& rho, const AntilinearOp& theta);

double wootters_concurrence(const DensityOperator& rho);

/// (F, C) for the qubit conjugation reflecting the Bloch 3-axis:
/// F = sqrt(x0^2 - x3^2), C = sqrt(x1^2 + x2^2).
std::pair<double, double> qubit_closed_forms(const BlochVector& x);

/// The qubit conjugation realizing those closed forms (M = sigma1).
AntilinearOp bloch_reflection_conjugation();

/// (F, C) of rho under U^dag theta U; equals the values of theta at U rho U^dag.
std::pair<double, double> equivalence_transport(const DensityOperator& rho,
                                                const AntilinearOp& theta,
                                                const ComplexMatrix& u);

/// Spectrum behind the theta measures: Takagi values of sqrt(rho) M sqrt(rho)^T.
TakagiDecomposition theta_takagi(const DensityOperator& rho,
                                 const AntilinearOp& theta);

}  // namespace conjfid
