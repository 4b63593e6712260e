#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace conjfid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Error taxonomy; the CLI maps these to distinct exit codes.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OperatorClassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedDimsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
// relative clip for negative eigenvalues of nominally-PSD input
inline constexpr double psd_clip = 1e-10;
// relative Frobenius residual accepted for symmetry/hermiticity checks
inline constexpr double symmetry = 1e-9;
// relative gap that merges eigenvalues into one degenerate group
inline constexpr double degeneracy_gap = 1e-8;
// below this (relative to the largest value) a singular value is noise on
// an exact zero; squaring through N*N^dag cannot resolve finer than ~1e-8
inline constexpr double kernel_floor = 1e-7;
}  // namespace tol

double frobenius(const ComplexMatrix& m);

/// Positive operator with finite trace. Hermiticity and spectral positivity
/// are validated on construction; normalization is not required.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m, double clip_tol = tol::psd_clip);

  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return trace_; }
  Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
  double trace_ = 0.0;
};

struct HermitianEig {
  RealVector values;       // descending
  ComplexMatrix vectors;   // orthonormal eigencolumns, same order
};

struct TakagiDecomposition {
  RealVector values;   // nonnegative, descending
  ComplexMatrix basis; // unitary; column k satisfies N conj(u_k) = values[k] u_k

  // symmetric unitary matrix of the induced conjugation
  ComplexMatrix theta0_matrix() const { return basis * basis.transpose(); }
};

struct SingularSpectrum {
  RealVector values;  // nonnegative, descending

  double sum() const { return values.sum(); }
  // max{0, v1 - sum of the rest}
  double hinge() const;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Throws DimensionError / ValidationError on non-square or non-Hermitian input.
HermitianEig herm_eig(const ComplexMatrix& h);

/// Hermitian PSD square root; eigenvalues in [-clip_tol*trace, 0] are
/// treated as exact zeros.
ComplexMatrix psd_sqrt(const DensityOperator& p);

/// Symmetric (Takagi) factorization N = U diag(values) U^T of a complex
/// symmetric matrix. Degenerate singular values are handled by a joint
/// diagonalization inside each group; the kernel keeps the eigenbasis of
/// N N^dag as delivered.
TakagiDecomposition takagi(const ComplexMatrix& n);

/// Ordered eigenvalues of (sqrt(rho) omega sqrt(rho))^(1/2).
SingularSpectrum singular_numbers(const DensityOperator& rho,
                                  const DensityOperator& omega);

}  // namespace conjfid
