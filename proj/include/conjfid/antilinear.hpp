#pragma once

#include "conjfid/matcore.hpp"

namespace conjfid {

/// Antilinear operator in the canonical representation psi -> M * conj(psi).
/// All structural properties translate into matrix identities: the adjoint is
/// the transpose, hermiticity is symmetry of M, antiunitarity is unitarity.
struct AntilinearOp {
  ComplexMatrix m;

  Index dim() const { return m.rows(); }

  /// theta(psi) = M conj(psi).
  ComplexVector apply(const ComplexVector& psi) const;
};

struct OperatorKind {
  bool hermitian = false;       // theta^dag == theta   (M symmetric)
  bool anti_hermitian = false;  // theta^dag == -theta  (M antisymmetric)
  bool antiunitary = false;     // M unitary
  bool conjugation = false;     // antiunitary and theta^2 == 1
  bool skew = false;            // antiunitary and theta^2 == -1
};

AntilinearOp adjoint(const AntilinearOp& theta);

/// Composition a∘b is a linear operator with matrix M_a conj(M_b).
ComplexMatrix antilinear_product(const AntilinearOp& a, const AntilinearOp& b);

OperatorKind classify(const AntilinearOp& theta, double tol = tol::symmetry);

/// Tensor product; matrix is the Kronecker product.
AntilinearOp tensor(const AntilinearOp& a, const AntilinearOp& b);

/// The qubit spin flip: |0> -> i|1>, |1> -> -i|0>.
AntilinearOp standard_skew_qubit();

/// Skew conjugation pairing consecutive columns of an orthonormal basis:
/// theta b_{2j} = b_{2j-1}, theta b_{2j-1} = -b_{2j}. Even dimension only.
AntilinearOp skew_from_basis(const ComplexMatrix& basis);

/// Conjugation fixing every column of the given orthonormal basis; M = B B^T.
AntilinearOp conjugation_from_basis(const ComplexMatrix& basis);

/// Q theta Q for a Hermitian projector Q.
AntilinearOp compress(const AntilinearOp& theta, const ComplexMatrix& q);

/// sigma2 x sigma2, the conjugation behind Wootters concurrence.
AntilinearOp hill_wootters();

}  // namespace conjfid
