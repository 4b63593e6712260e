#include "conjfid/antilinear.hpp"

#include <cmath>

namespace conjfid {

namespace {

bool is_unitary(const ComplexMatrix& m, double tol) {
  const Index d = m.rows();
  return (m.adjoint() * m - ComplexMatrix::Identity(d, d)).norm() <= tol * std::sqrt(double(d));
}

}  // namespace

ComplexVector AntilinearOp::apply(const ComplexVector& psi) const {
  if (dim() != psi.size()) {
    throw DimensionError("apply: operator dim " + std::to_string(dim()) +
                         " vs vector dim " + std::to_string(psi.size()));
  }
  return m * psi.conjugate();
}

AntilinearOp adjoint(const AntilinearOp& theta) {
  return AntilinearOp{theta.m.transpose()};
}

ComplexMatrix antilinear_product(const AntilinearOp& a, const AntilinearOp& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("antilinear_product: dimension mismatch");
  }
  return a.m * b.m.conjugate();
}

OperatorKind classify(const AntilinearOp& theta, double tol) {
  const ComplexMatrix& m = theta.m;
  const double scale = std::max(frobenius(m), 1e-300);
  OperatorKind k;
  k.hermitian = (m - m.transpose()).norm() <= tol * scale;
  k.anti_hermitian = (m + m.transpose()).norm() <= tol * scale;
  k.antiunitary = is_unitary(m, tol);
  k.conjugation = k.antiunitary && k.hermitian;
  k.skew = k.antiunitary && k.anti_hermitian;
  return k;
}

AntilinearOp tensor(const AntilinearOp& a, const AntilinearOp& b) {
  const Index da = a.dim(), db = b.dim();
  ComplexMatrix m(da * db, da * db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      m.block(i * db, j * db, db, db) = a.m(i, j) * b.m;
  return AntilinearOp{std::move(m)};
}

AntilinearOp standard_skew_qubit() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return AntilinearOp{std::move(m)};
}

AntilinearOp skew_from_basis(const ComplexMatrix& basis) {
  const Index d = basis.rows();
  if (basis.cols() != d) {
    throw DimensionError("skew_from_basis: basis must be square");
  }
  if (d % 2 != 0) {
    throw OperatorClassError(
        "skew_from_basis: no skew conjugation exists in odd dimension " +
        std::to_string(d));
  }
  if (!is_unitary(basis, tol::symmetry)) {
    throw ValidationError("skew_from_basis: columns are not orthonormal");
  }
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j + 1 < d; j += 2) {
    m += basis.col(j) * basis.col(j + 1).transpose();
    m -= basis.col(j + 1) * basis.col(j).transpose();
  }
  return AntilinearOp{std::move(m)};
}

AntilinearOp conjugation_from_basis(const ComplexMatrix& basis) {
  if (!is_unitary(basis, tol::symmetry)) {
    throw ValidationError("conjugation_from_basis: columns are not orthonormal");
  }
  return AntilinearOp{basis * basis.transpose()};
}

AntilinearOp compress(const AntilinearOp& theta, const ComplexMatrix& q) {
  if (q.rows() != q.cols() || q.rows() != theta.dim()) {
    throw DimensionError("compress: projector shape mismatch");
  }
  const double scale = std::max(frobenius(q), 1e-300);
  if ((q - q.adjoint()).norm() > tol::symmetry * scale ||
      (q * q - q).norm() > tol::symmetry * scale) {
    throw ValidationError("compress: Q is not a Hermitian projector");
  }
  return AntilinearOp{q * theta.m * q.transpose()};
}

AntilinearOp hill_wootters() {
  const AntilinearOp s = standard_skew_qubit();
  return tensor(s, s);
}

}  // namespace conjfid
