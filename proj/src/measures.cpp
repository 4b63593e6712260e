#include "conjfid/measures.hpp"

#include <cmath>

namespace conjfid {

bool BlochVector::is_psd(double tol) const {
  return x0 >= -tol && x1 * x1 + x2 * x2 + x3 * x3 <= x0 * x0 + tol;
}

ComplexMatrix BlochVector::to_matrix() const {
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(0.5 * (x0 + x3), 0.0);
  m(1, 1) = Complex(0.5 * (x0 - x3), 0.0);
  m(0, 1) = Complex(0.5 * x1, -0.5 * x2);
  m(1, 0) = Complex(0.5 * x1, 0.5 * x2);
  return m;
}

double fidelity(const DensityOperator& rho, const DensityOperator& omega) {
  return singular_numbers(rho, omega).sum();
}

double concurrence_pair(const DensityOperator& rho, const DensityOperator& omega) {
  return singular_numbers(rho, omega).hinge();
}

double variational_bound(const DensityOperator& rho, const DensityOperator& omega,
                         const ComplexMatrix& x) {
  if (x.rows() != rho.dim() || x.cols() != rho.dim() || rho.dim() != omega.dim()) {
    throw DimensionError("variational_bound: shape mismatch");
  }
  HermitianEig eig = herm_eig(x);
  const double top = eig.values[0];
  if (top <= 0.0 || eig.values[eig.values.size() - 1] <= tol::symmetry * top) {
    throw ValidationError("variational_bound: X is not positive definite");
  }
  RealVector inv = eig.values.cwiseInverse();
  const ComplexMatrix xinv =
      eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
  const double a = (x * rho.matrix()).trace().real();
  const double b = (xinv * omega.matrix()).trace().real();
  return 0.5 * (a + b);
}

TakagiDecomposition theta_takagi(const DensityOperator& rho,
                                 const AntilinearOp& theta) {
  if (theta.dim() != rho.dim()) {
    throw DimensionError("theta measure: operator/state dimension mismatch");
  }
  const double scale = std::max(frobenius(theta.m), 1e-300);
  if ((theta.m - theta.m.transpose()).norm() > tol::symmetry * scale) {
    throw OperatorClassError(
        "theta measure: operator is not antilinearly Hermitian");
  }
  const ComplexMatrix s = psd_sqrt(rho);
  ComplexMatrix n = s * theta.m * s.transpose();
  n = 0.5 * (n + n.transpose().eval());
  return takagi(n);
}

namespace {

MeasureResult measure_from_takagi(const DensityOperator& rho,
                                  const AntilinearOp& theta, bool hinge) {
  TakagiDecomposition t = theta_takagi(rho, theta);
  MeasureResult r;
  r.spectrum.values = t.values;
  r.value = hinge ? r.spectrum.hinge() : r.spectrum.sum();
  return r;
}

}  // namespace

MeasureResult theta_fidelity(const DensityOperator& rho, const AntilinearOp& theta) {
  return measure_from_takagi(rho, theta, false);
}

MeasureResult theta_concurrence(const DensityOperator& rho, const AntilinearOp& theta) {
  return measure_from_takagi(rho, theta, true);
}

double wootters_concurrence(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw DimensionError("wootters_concurrence: requires a 4-dimensional state");
  }
  return theta_concurrence(rho, hill_wootters()).value;
}

std::pair<double, double> qubit_closed_forms(const BlochVector& x) {
  if (!x.is_psd(1e-9 * std::max(1.0, x.x0 * x.x0))) {
    throw ValidationError("qubit_closed_forms: Bloch vector is not PSD");
  }
  const double f2 = std::max(0.0, x.x0 * x.x0 - x.x3 * x.x3);
  return {std::sqrt(f2), std::hypot(x.x1, x.x2)};
}

AntilinearOp bloch_reflection_conjugation() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  return AntilinearOp{std::move(m)};
}

std::pair<double, double> equivalence_transport(const DensityOperator& rho,
                                                const AntilinearOp& theta,
                                                const ComplexMatrix& u) {
  const Index d = rho.dim();
  if (u.rows() != d || u.cols() != d || theta.dim() != d) {
    throw DimensionError("equivalence_transport: shape mismatch");
  }
  if ((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm() >
      tol::symmetry * std::sqrt(double(d))) {
    throw ValidationError("equivalence_transport: U is not unitary");
  }
  const AntilinearOp moved{u.adjoint() * theta.m * u.conjugate()};
  return {theta_fidelity(rho, moved).value, theta_concurrence(rho, moved).value};
}

}  // namespace conjfid
