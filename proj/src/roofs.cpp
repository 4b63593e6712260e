#include "conjfid/roofs.hpp"

#include <algorithm>
#include <cmath>

#include "conjfid/rng.hpp"

namespace conjfid {

std::vector<double> Ensemble::weights() const {
  std::vector<double> w;
  w.reserve(vectors.size());
  for (const auto& v : vectors) w.push_back(v.squaredNorm());
  return w;
}

ComplexMatrix Ensemble::assemble() const {
  if (vectors.empty()) return ComplexMatrix();
  const Index d = vectors.front().size();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& v : vectors) sum += v * v.adjoint();
  return sum;
}

HadamardMatrix hadamard_matrix(Index m) {
  if (m < 1 || (m & (m - 1)) != 0) {
    throw ValidationError("hadamard_matrix: order " + std::to_string(m) +
                          " is not a power of two");
  }
  Eigen::MatrixXi a(1, 1);
  a(0, 0) = 1;
  while (a.rows() < m) {
    const Index k = a.rows();
    Eigen::MatrixXi next(2 * k, 2 * k);
    next.topLeftCorner(k, k) = a;
    next.topRightCorner(k, k) = a;
    next.bottomLeftCorner(k, k) = a;
    next.bottomRightCorner(k, k) = -a;
    a.swap(next);
  }
  return HadamardMatrix{std::move(a)};
}

Index required_length(Index d) {
  if (d < 1) throw ValidationError("required_length: dimension must be positive");
  if (d == 1) return 1;
  Index m = 2;
  while (m < d) m *= 2;
  return m;
}

double lower_hinge(const SingularSpectrum& lambda) { return lambda.hinge(); }

namespace {

// |head + tail| with the tail collapsed to one magnitude, solved recursively.
ComplexVector phase_recursion(const RealVector& lam, double target) {
  const Index d = lam.size();
  if (d == 1) return ComplexVector::Constant(1, Complex(1.0, 0.0));
  const double total = lam.sum();
  if (target >= total - 1e-12 * std::max(1.0, total)) {
    return ComplexVector::Constant(d, Complex(1.0, 0.0));
  }
  const double l1 = lam[0];
  const RealVector tail = lam.tail(d - 1);
  const double tail_total = tail.sum();
  const double tail_hinge =
      (d >= 2) ? std::max(0.0, tail[0] - (tail_total - tail[0])) : 0.0;
  const double r = std::max(tail_hinge, std::abs(target - l1));

  ComplexVector mu_tail = phase_recursion(tail, r);
  Complex tail_sum(0, 0);
  for (Index j = 0; j < d - 1; ++j) tail_sum += mu_tail[j] * tail[j];
  const double gamma = (std::abs(tail_sum) > 0) ? std::arg(tail_sum) : 0.0;

  double alpha = 0.0;
  if (l1 > 0 && r > 0) {
    const double c = (target * target - l1 * l1 - r * r) / (2.0 * l1 * r);
    alpha = std::acos(std::clamp(c, -1.0, 1.0));
  }
  const Complex rot = std::polar(1.0, alpha - gamma);

  ComplexVector mu(d);
  mu[0] = Complex(1.0, 0.0);
  for (Index j = 0; j < d - 1; ++j) mu[j + 1] = rot * mu_tail[j];
  return mu;
}

}  // namespace

PhaseSolution solve_phases(const SingularSpectrum& lambda, double target) {
  const RealVector& lam = lambda.values;
  if (lam.size() == 0) throw ValidationError("solve_phases: empty spectrum");
  for (Index j = 0; j + 1 < lam.size(); ++j) {
    if (lam[j] < lam[j + 1] - 1e-12) {
      throw ValidationError("solve_phases: spectrum is not sorted descending");
    }
  }
  const double total = lam.sum();
  const double hinge = lambda.hinge();
  const double slack = 1e-12 * std::max(1.0, total);
  if (target < hinge - slack || target > total + slack) {
    throw ValidationError("solve_phases: target " + std::to_string(target) +
                          " outside [" + std::to_string(hinge) + ", " +
                          std::to_string(total) + "]");
  }
  PhaseSolution out;
  out.mu = phase_recursion(lam, std::clamp(target, hinge, total));
  Complex sum(0, 0);
  for (Index j = 0; j < lam.size(); ++j) sum += out.mu[j] * lam[j];
  out.achieved = std::abs(sum);
  return out;
}

namespace {

// Orthogonal V with diag(V Z V^T) = 0 for traceless symmetric Z: zero the
// leading entry against one of opposite sign, then recurse on the rest.
RealMatrix zero_diagonal_rotation(RealMatrix z) {
  const Index m = z.rows();
  RealMatrix v = RealMatrix::Identity(m, m);
  const double scale = std::max(z.cwiseAbs().maxCoeff(), 1e-300);
  auto rotate = [&](Index i, Index j, double t) {
    // rows/cols i,j of z and rows of v under G = [[cos, sin], [-sin, cos]]
    const double c = std::cos(t), s = std::sin(t);
    const RealVector zi = z.row(i), zj = z.row(j);
    z.row(i) = c * zi + s * zj;
    z.row(j) = -s * zi + c * zj;
    const RealVector ci = z.col(i), cj = z.col(j);
    z.col(i) = c * ci + s * cj;
    z.col(j) = -s * ci + c * cj;
    const RealVector vi = v.row(i), vj = v.row(j);
    v.row(i) = c * vi + s * vj;
    v.row(j) = -s * vi + c * vj;
  };
  for (Index i = 0; i + 1 < m; ++i) {
    if (std::abs(z(i, i)) <= 1e-14 * scale) continue;
    Index j = -1;
    for (Index k = i + 1; k < m; ++k) {
      if (z(k, k) * z(i, i) < 0) { j = k; break; }
    }
    if (j < 0) continue;  // trailing trace is already negligible
    const double a = z(i, i), b = z(i, j), c = z(j, j);
    // entry (i,i) after a rotation by t: ((a-c)/2)cos2t + b sin2t + (a+c)/2
    const double amp = std::hypot(0.5 * (a - c), b);
    const double phase = std::atan2(b, 0.5 * (a - c));
    const double val = std::clamp(-0.5 * (a + c) / amp, -1.0, 1.0);
    const double t = 0.5 * (std::acos(val) + phase);
    rotate(i, j, t);
    z(i, i) = 0.0;
  }
  return v;
}

void require_hermitian_theta(const AntilinearOp& theta) {
  const double scale = std::max(frobenius(theta.m), 1e-300);
  if ((theta.m - theta.m.transpose()).norm() > tol::symmetry * scale) {
    throw OperatorClassError("ensemble construction requires a self-adjoint theta");
  }
}

}  // namespace

Ensemble optimal_ensemble(const DensityOperator& rho, const AntilinearOp& theta,
                          RoofMode mode, bool equalize) {
  require_hermitian_theta(theta);
  const Index d = rho.dim();
  if (theta.dim() != d) throw DimensionError("optimal_ensemble: dimension mismatch");

  const ComplexMatrix s = psd_sqrt(rho);
  ComplexMatrix n = s * theta.m * s.transpose();
  n = 0.5 * (n + n.transpose().eval());
  const TakagiDecomposition tk = takagi(n);

  SingularSpectrum spec{tk.values};
  const double target = (mode == RoofMode::max) ? spec.sum() : spec.hinge();

  ComplexVector mu;
  if (mode == RoofMode::max) {
    mu = ComplexVector::Constant(d, Complex(1.0, 0.0));
  } else {
    mu = solve_phases(spec, target).mu;
  }
  // epsilon_j enters only squared; any branch of the root works
  ComplexVector eps(d);
  for (Index j = 0; j < d; ++j) eps[j] = std::sqrt(Complex(1.0, 0.0) / mu[j]);

  const Index m = required_length(d);
  const HadamardMatrix had = hadamard_matrix(m);
  const double norm = 1.0 / std::sqrt(double(m));

  Ensemble ens;
  ens.vectors.reserve(size_t(m));
  const ComplexMatrix rephased = tk.basis * eps.asDiagonal();
  for (Index k = 0; k < m; ++k) {
    ComplexVector combo = ComplexVector::Zero(d);
    for (Index i = 0; i < d; ++i) {
      combo += double(had.entries(k, i)) * rephased.col(i);
    }
    ens.vectors.push_back(norm * (s * combo));
  }

  if (equalize && target > 1e-12 * std::max(1.0, rho.trace())) {
    // member expectations are real here (mu*lambda is a signed real vector),
    // so a single traceless balance equalizes value/weight across members
    const Index len = ens.length();
    RealMatrix z(len, len);
    for (Index a = 0; a < len; ++a) {
      for (Index b = a; b < len; ++b) {
        const Complex tau =
            ens.vectors[a].dot(theta.m * ens.vectors[b].conjugate());
        const Complex overlap = ens.vectors[a].dot(ens.vectors[b]);
        const double zz =
            tau.real() - (target / rho.trace()) * overlap.real();
        z(a, b) = zz;
        z(b, a) = zz;
      }
    }
    const RealMatrix v = zero_diagonal_rotation(z);
    std::vector<ComplexVector> mixed(size_t(len), ComplexVector::Zero(d));
    for (Index a = 0; a < len; ++a) {
      for (Index b = 0; b < len; ++b) {
        if (v(a, b) != 0.0) mixed[size_t(a)] += v(a, b) * ens.vectors[size_t(b)];
      }
    }
    ens.vectors = std::move(mixed);
  }
  return ens;
}

double ensemble_value(const Ensemble& ens, const AntilinearOp& theta) {
  double sum = 0.0;
  for (const auto& v : ens.vectors) {
    if (v.size() != theta.dim()) {
      throw DimensionError("ensemble_value: dimension mismatch");
    }
    sum += std::abs(v.dot(theta.m * v.conjugate()));
  }
  return sum;
}

Ensemble random_ensemble(const DensityOperator& rho, Index m, std::uint64_t seed) {
  const Index d = rho.dim();
  HermitianEig eig = herm_eig(rho.matrix());
  const double cut = tol::psd_clip * std::max(rho.trace(), 0.0);
  Index rank = 0;
  while (rank < d && eig.values[rank] > cut) ++rank;
  if (m < rank) {
    throw ValidationError("random_ensemble: length " + std::to_string(m) +
                          " below rank " + std::to_string(rank));
  }
  const ComplexMatrix s = psd_sqrt(rho);
  Rng rng(seed);
  const ComplexMatrix u = random_unitary(m, rng);
  // leading `rank` rows of a unitary resolve the support projector
  Ensemble ens;
  ens.vectors.reserve(size_t(m));
  const ComplexMatrix support = eig.vectors.leftCols(rank);
  for (Index k = 0; k < m; ++k) {
    ComplexVector chi = support * u.topRows(rank).col(k);
    ens.vectors.push_back(s * chi);
  }
  return ens;
}

namespace {

// 2x2 symmetric Takagi, closed form: T = W diag(s) W^T with s1 >= s2 >= 0.
void takagi_2x2(const Eigen::Matrix2cd& t, Eigen::Vector2d& s, Eigen::Matrix2cd& w) {
  const Eigen::Matrix2cd b = t * t.adjoint();
  const double tr = b.trace().real();
  const double det = std::max(b.determinant().real(), 0.0);
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  const double b1 = 0.5 * (tr + disc);
  s[0] = std::sqrt(std::max(b1, 0.0));
  s[1] = std::sqrt(std::max(0.5 * (tr - disc), 0.0));
  if (s[0] <= 1e-300) {
    w.setIdentity();
    s.setZero();
    return;
  }
  Eigen::Vector2cd u;
  const Complex b01 = b(0, 1);
  if (std::abs(b(0, 0) - b1) + std::abs(b01) < 1e-18 * b1) {
    u << Complex(1, 0), Complex(0, 0);
  } else if (std::abs(b01) >= std::abs(b(1, 1) - b1)) {
    u << b01, Complex(b1, 0) - b(0, 0);
  } else {
    u << Complex(b1, 0) - b(1, 1), b(1, 0);
  }
  u.normalize();
  Eigen::Vector2cd v = t * u.conjugate() + s[0] * u;
  if (v.norm() < 1e-8 * s[0]) v = Complex(0, 1) * (t * u.conjugate() - s[0] * u);
  v.normalize();
  Eigen::Vector2cd z;
  z << -std::conj(v[1]), std::conj(v[0]);
  const Complex c = z.dot(t * z.conjugate());
  const Complex ph = (std::abs(c) > 0) ? std::polar(1.0, 0.5 * std::arg(c))
                                       : Complex(1, 0);
  w.col(0) = v;
  w.col(1) = ph * z;
}

// Jacobi-style sweeps over member pairs: each step replaces a pair by the
// unitary mix realizing the 2x2 hinge (min) or sum (max) of its block, which
// is the best any mixing of those two members can do. Values only improve,
// and every intermediate stage is still a decomposition of the same state.
double refine_diagonal(ComplexMatrix tau, bool minimize, int max_sweeps = 60) {
  const Index m = tau.rows();
  const Complex i1(0, 1);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (Index i = 0; i < m; ++i) {
      for (Index j = i + 1; j < m; ++j) {
        Eigen::Matrix2cd t;
        t << tau(i, i), tau(i, j), tau(i, j), tau(j, j);
        const double cur = std::abs(t(0, 0)) + std::abs(t(1, 1));
        Eigen::Vector2d s;
        Eigen::Matrix2cd w;
        takagi_2x2(t, s, w);
        const double target = minimize ? (s[0] - s[1]) : (s[0] + s[1]);
        if (minimize ? (target >= cur - 1e-14) : (target <= cur + 1e-14)) continue;
        // X = Y W^dag with Y the Hadamard/phase mix sends the block to its
        // optimum: diag of Y diag(s) Y^T
        Eigen::Matrix2cd y;
        const double r = 1.0 / std::sqrt(2.0);
        if (minimize) {
          y << r, r * i1, r, -r * i1;
        } else {
          y << r, r, r, -r;
        }
        const Eigen::Matrix2cd x = y * w.adjoint();
        ComplexMatrix rows(2, m);
        rows.row(0) = tau.row(i);
        rows.row(1) = tau.row(j);
        rows = x * rows;
        tau.row(i) = rows.row(0);
        tau.row(j) = rows.row(1);
        ComplexMatrix cols(m, 2);
        cols.col(0) = tau.col(i);
        cols.col(1) = tau.col(j);
        cols = cols * x.transpose();
        tau.col(i) = cols.col(0);
        tau.col(j) = cols.col(1);
        improved = true;
      }
    }
    if (!improved) break;
  }
  double sum = 0.0;
  for (Index k = 0; k < m; ++k) sum += std::abs(tau(k, k));
  return sum;
}

double oracle_trial(const DensityOperator& rho, const AntilinearOp& theta,
                    RoofMode mode, Index length, std::uint64_t seed,
                    std::uint64_t trial) {
  Rng rng = Rng::for_trial(seed, trial);
  const Ensemble ens = random_ensemble(rho, length, rng.next_u64());
  const Index m = ens.length();
  ComplexMatrix tau(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = a; b < m; ++b) {
      const Complex v = ens.vectors[a].dot(theta.m * ens.vectors[b].conjugate());
      tau(a, b) = v;
      tau(b, a) = v;
    }
  }
  return refine_diagonal(std::move(tau), mode == RoofMode::min);
}

}  // namespace

double roof_oracle_serial(const DensityOperator& rho, const AntilinearOp& theta,
                          RoofMode mode, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("roof_oracle: trials must be >= 1");
  const Index d = rho.dim();
  const Index mmax = required_length(d);
  double best = (mode == RoofMode::min) ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Index length = d + Index(t) % (mmax - d + 1);
    const double v = oracle_trial(rho, theta, mode, length, seed, std::uint64_t(t));
    best = (mode == RoofMode::min) ? std::min(best, v) : std::max(best, v);
  }
  return best;
}

double roof_oracle(const DensityOperator& rho, const AntilinearOp& theta,
                   RoofMode mode, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("roof_oracle: trials must be >= 1");
  const Index d = rho.dim();
  const Index mmax = required_length(d);
  const bool minimize = (mode == RoofMode::min);
  double best = minimize ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    double local = best;
#pragma omp for nowait schedule(static)
    for (int t = 0; t < trials; ++t) {
      const Index length = d + Index(t) % (mmax - d + 1);
      const double v = oracle_trial(rho, theta, mode, length, seed, std::uint64_t(t));
      local = minimize ? std::min(local, v) : std::max(local, v);
    }
#pragma omp critical
    best = minimize ? std::min(best, local) : std::max(best, local);
  }
  return best;
}

FlatnessReport flatness_check(const MeasureSelector& g, const Ensemble& ens,
                              const std::vector<double>& weights,
                              std::uint64_t seed, int reweightings,
                              double tolerance) {
  if (ens.length() == 0) throw ValidationError("flatness_check: empty ensemble");
  const bool minimize = (g.mode == RoofMode::min);

  // normalized members and their pure-state values
  std::vector<ComplexVector> pure;
  std::vector<double> value;
  for (const auto& v : ens.vectors) {
    const double n2 = v.squaredNorm();
    if (n2 <= 1e-24) continue;  // zero member contributes nothing to the hull
    const ComplexVector unit = v / std::sqrt(n2);
    pure.push_back(unit);
    value.push_back(std::abs(unit.dot(g.theta.m * unit.conjugate())));
  }
  FlatnessReport rep;
  if (pure.empty()) {
    rep.flat = rep.leaf_constant = true;
    return rep;
  }

  double mean = 0.0;
  for (double x : value) mean += x;
  mean /= double(value.size());
  for (double x : value) rep.member_spread = std::max(rep.member_spread, std::abs(x - mean));
  rep.leaf_constant = rep.member_spread <= tolerance;

  Rng rng(seed);
  const size_t n = pure.size();
  auto run_mix = [&](const std::vector<double>& q) {
    ComplexMatrix mix = ComplexMatrix::Zero(pure[0].size(), pure[0].size());
    double expected = 0.0;
    for (size_t j = 0; j < n; ++j) {
      mix += q[j] * (pure[j] * pure[j].adjoint());
      expected += q[j] * value[j];
    }
    const DensityOperator omega(mix);
    const double roof = minimize ? theta_concurrence(omega, g.theta).value
                                 : theta_fidelity(omega, g.theta).value;
    rep.max_mix_residual = std::max(rep.max_mix_residual, std::abs(roof - expected));
  };

  if (!weights.empty()) {
    if (weights.size() != n) {
      throw DimensionError("flatness_check: weight list length mismatch");
    }
    run_mix(weights);
  }
  for (int r = 0; r < reweightings; ++r) {
    std::vector<double> q(n);
    double sum = 0.0;
    for (auto& x : q) { x = -std::log(std::max(rng.uniform(), 1e-300)); sum += x; }
    for (auto& x : q) x /= sum;
    run_mix(q);
  }
  rep.flat = rep.max_mix_residual <= tolerance;
  return rep;
}

}  // namespace conjfid
