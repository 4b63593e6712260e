#include "conjfid/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace conjfid {

double frobenius(const ComplexMatrix& m) { return m.norm(); }

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m, double clip_tol) {
  require_square(m, "DensityOperator");
  const double scale = std::max(frobenius(m), 1e-300);
  if ((m - m.adjoint()).norm() > tol::symmetry * scale) {
    throw ValidationError("DensityOperator: matrix is not Hermitian");
  }
  m_ = 0.5 * (m + m.adjoint().eval());
  trace_ = m_.trace().real();
  if (trace_ < -tol::symmetry * scale) {
    throw ValidationError("DensityOperator: negative trace");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  const double floor = -clip_tol * std::max(trace_, 0.0) - 64.0 * 1e-16 * scale;
  if (es.eigenvalues().minCoeff() < floor) {
    throw ValidationError("DensityOperator: eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) +
                          " below PSD tolerance");
  }
}

double SingularSpectrum::hinge() const {
  if (values.size() == 0) return 0.0;
  const double rest = values.sum() - values[0];
  return std::max(0.0, values[0] - rest);
}

HermitianEig herm_eig(const ComplexMatrix& h) {
  require_square(h, "herm_eig");
  const double scale = std::max(frobenius(h), 1e-300);
  if ((h - h.adjoint()).norm() > tol::symmetry * scale) {
    throw ValidationError("herm_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint().eval()));
  if (es.info() != Eigen::Success) {
    throw ValidationError("herm_eig: eigensolver failed");
  }
  const Index d = h.rows();
  HermitianEig out;
  out.values = es.eigenvalues().reverse();
  out.vectors.resize(d, d);
  for (Index k = 0; k < d; ++k) out.vectors.col(k) = es.eigenvectors().col(d - 1 - k);
  return out;
}

ComplexMatrix psd_sqrt(const DensityOperator& p) {
  HermitianEig eig = herm_eig(p.matrix());
  RealVector lam = eig.values;
  const double floor = -tol::psd_clip * std::max(p.trace(), 0.0);
  for (Index k = 0; k < lam.size(); ++k) {
    if (lam[k] < floor) {
      throw ValidationError("psd_sqrt: operator is not PSD (eigenvalue " +
                            std::to_string(lam[k]) + ")");
    }
    lam[k] = std::sqrt(std::max(lam[k], 0.0));
  }
  ComplexMatrix s =
      eig.vectors * lam.asDiagonal() * eig.vectors.adjoint();
  return 0.5 * (s + s.adjoint().eval());
}

TakagiDecomposition takagi(const ComplexMatrix& n) {
  require_square(n, "takagi");
  const Index d = n.rows();
  const double scale = std::max(frobenius(n), 1e-300);
  if ((n - n.transpose()).norm() > tol::symmetry * scale) {
    throw ValidationError("takagi: matrix is not complex symmetric");
  }
  const ComplexMatrix ns = 0.5 * (n + n.transpose().eval());

  // Spectrum of the positive operator N N^dag carries the squared values.
  ComplexMatrix b = ns * ns.adjoint();
  HermitianEig eig = herm_eig(0.5 * (b + b.adjoint().eval()));

  RealVector w = eig.values.cwiseMax(0.0);
  const double lam_max = std::sqrt(std::max(w.size() > 0 ? w[0] : 0.0, 0.0));
  // squaring through N N^dag floors resolvable values at ~sqrt(eps)*lam_max
  const double lam_noise = tol::kernel_floor * std::max(lam_max, 1e-300);
  const RealVector lam_raw = w.cwiseSqrt();

  TakagiDecomposition out;
  out.values = RealVector::Zero(d);
  out.basis = ComplexMatrix::Zero(d, d);

  Index i = 0;
  while (i < d) {
    Index j = i;
    while (j + 1 < d && (lam_raw[i] - lam_raw[j + 1]) <=
                            tol::degeneracy_gap * lam_raw[i] + lam_noise) {
      ++j;
    }
    const Index g = j - i + 1;
    const auto vg = eig.vectors.middleCols(i, g);

    if (lam_raw[i] <= lam_noise) {
      // kernel block: the eigenbasis already satisfies N conj(v) = 0
      out.basis.middleCols(i, g) = vg;
      i = j + 1;
      continue;
    }

    const double lam = std::sqrt(w.segment(i, g).mean());
    // restriction of the antilinear action to the group; symmetric and
    // lam-unitary up to round-off
    ComplexMatrix wm = vg.adjoint() * ns * vg.conjugate();
    wm = (0.5 / lam) * (wm + wm.transpose().eval());

    RealMatrix x = wm.real();
    RealMatrix y = wm.imag();
    x = 0.5 * (x + x.transpose().eval());
    y = 0.5 * (y + y.transpose().eval());

    // X and Y commute; diagonalize X, then Y inside X-degenerate blocks
    Eigen::SelfAdjointEigenSolver<RealMatrix> xs(x);
    RealMatrix o = xs.eigenvectors();
    const RealVector cx = xs.eigenvalues();
    Index k = 0;
    while (k < g) {
      Index k2 = k;
      while (k2 + 1 < g && std::abs(cx[k2 + 1] - cx[k]) <= tol::degeneracy_gap) ++k2;
      if (k2 > k) {
        const Index gb = k2 - k + 1;
        RealMatrix yb = o.middleCols(k, gb).transpose() * y * o.middleCols(k, gb);
        yb = 0.5 * (yb + yb.transpose().eval());
        Eigen::SelfAdjointEigenSolver<RealMatrix> ys(yb);
        o.middleCols(k, gb) = o.middleCols(k, gb) * ys.eigenvectors();
      }
      k = k2 + 1;
    }

    const ComplexMatrix dm = o.transpose() * wm * o;
    ComplexVector half_phase(g);
    for (Index q = 0; q < g; ++q) {
      const double theta = std::arg(dm(q, q));
      half_phase[q] = std::polar(1.0, 0.5 * theta);
    }
    out.basis.middleCols(i, g) = vg * o * half_phase.asDiagonal();
    for (Index q = 0; q < g; ++q) out.values[i + q] = lam;
    i = j + 1;
  }
  return out;
}

SingularSpectrum singular_numbers(const DensityOperator& rho,
                                  const DensityOperator& omega) {
  if (rho.dim() != omega.dim()) {
    throw DimensionError("singular_numbers: dimension mismatch " +
                         std::to_string(rho.dim()) + " vs " +
                         std::to_string(omega.dim()));
  }
  const ComplexMatrix s = psd_sqrt(rho);
  ComplexMatrix a = s * omega.matrix() * s;
  a = 0.5 * (a + a.adjoint().eval());
  HermitianEig eig = herm_eig(a);
  const double wmax = std::max(eig.values.size() > 0 ? eig.values[0] : 0.0, 0.0);
  const double cut = tol::kernel_floor * tol::kernel_floor * wmax;
  SingularSpectrum out;
  out.values = RealVector::Zero(eig.values.size());
  for (Index k = 0; k < eig.values.size(); ++k) {
    const double v = eig.values[k];
    out.values[k] = (v <= cut) ? 0.0 : std::sqrt(v);
  }
  return out;
}

}  // namespace conjfid
