#include "conjfid/verify.hpp"

#include <algorithm>
#include <cmath>

#include "conjfid/entangle.hpp"
#include "conjfid/matcore.hpp"
#include "conjfid/measures.hpp"
#include "conjfid/rng.hpp"
#include "conjfid/roofs.hpp"

namespace conjfid {

namespace {

AntilinearOp random_hermitian_antilinear(Index d, Rng& rng) {
  return AntilinearOp{random_symmetric(d, rng)};
}

FamilyResult attainment_family(int dim, int trials, std::uint64_t seed) {
  FamilyResult r{"roof_attainment", true, 0.0, 1e-8};
  const int instances = std::max(4, trials / 25);
  for (int i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, 1000 + std::uint64_t(i));
    const DensityOperator rho{random_density(dim, rng)};
    const AntilinearOp theta = random_hermitian_antilinear(dim, rng);
    const double cmin = theta_concurrence(rho, theta).value;
    const double fmax = theta_fidelity(rho, theta).value;

    for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
      const Ensemble ens = optimal_ensemble(rho, theta, mode);
      const double target = (mode == RoofMode::min) ? cmin : fmax;
      const double val = ensemble_value(ens, theta);
      r.worst = std::max(r.worst, std::abs(val - target));
      const double rec = (ens.assemble() - rho.matrix()).norm();
      r.worst = std::max(r.worst, rec);
      if (ens.length() != required_length(dim)) r.pass = false;
    }
    for (int k = 0; k < 8; ++k) {
      const Ensemble re = random_ensemble(rho, dim, rng.next_u64());
      const double v = ensemble_value(re, theta);
      r.worst = std::max(r.worst, std::max(cmin - v, v - fmax));
    }
  }
  if (r.worst > r.budget) r.pass = false;
  return r;
}

FamilyResult rank2_family(int dim, int trials, std::uint64_t seed) {
  FamilyResult r{"rank2_identity", true, 0.0, 1e-9};
  const int instances = std::max(8, trials / 4);
  for (int i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, 2000 + std::uint64_t(i));
    // two operators sharing a random two-dimensional support
    const ComplexMatrix u = random_unitary(dim, rng);
    const ComplexMatrix iso = u.leftCols(2);
    const DensityOperator rho{iso * random_density(2, rng) * iso.adjoint()};
    const DensityOperator omega{iso * random_density(2, rng) * iso.adjoint()};
    const double c = concurrence_pair(rho, omega);
    const double f = fidelity(rho, omega);
    const double tr = (rho.matrix() * omega.matrix()).trace().real();
    r.worst = std::max(r.worst, std::abs(c * c + f * f - 2.0 * tr));
  }
  if (r.worst > r.budget) r.pass = false;
  return r;
}

FamilyResult convexity_family(int dim, int trials, std::uint64_t seed) {
  FamilyResult r{"convexity_program", true, 0.0, 1e-9};
  const int instances = std::max(8, trials / 2);
  for (int i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, 3000 + std::uint64_t(i));
    const AntilinearOp theta = random_hermitian_antilinear(dim, rng);
    const ComplexMatrix a = random_density(dim, rng);
    const ComplexMatrix b = random_density(dim, rng);
    const double t = rng.uniform();

    const DensityOperator rho{a}, omega{b};
    const DensityOperator mix{t * a + (1 - t) * b};
    const double cmix = theta_concurrence(mix, theta).value;
    const double csum = t * theta_concurrence(rho, theta).value +
                        (1 - t) * theta_concurrence(omega, theta).value;
    r.worst = std::max(r.worst, cmix - csum);  // convexity
    const double fmix = theta_fidelity(mix, theta).value;
    const double fsum = t * theta_fidelity(rho, theta).value +
                        (1 - t) * theta_fidelity(omega, theta).value;
    r.worst = std::max(r.worst, fsum - fmix);  // concavity

    const double mu = rng.uniform(0.0, 2.0);
    const DensityOperator scaled{mu * a};
    r.worst = std::max(r.worst, std::abs(theta_concurrence(scaled, theta).value -
                                         mu * theta_concurrence(rho, theta).value));
    r.worst = std::max(r.worst, std::abs(theta_fidelity(scaled, theta).value -
                                         mu * theta_fidelity(rho, theta).value));

    const DensityOperator sum{a + b};
    r.worst = std::max(r.worst,
                       theta_concurrence(sum, theta).value -
                           theta_concurrence(rho, theta).value -
                           theta_concurrence(omega, theta).value);
    r.worst = std::max(r.worst, theta_fidelity(rho, theta).value +
                                    theta_fidelity(omega, theta).value -
                                    theta_fidelity(sum, theta).value);
  }
  if (r.worst > r.budget) r.pass = false;
  return r;
}

FamilyResult phase_family(int dim, int trials, std::uint64_t seed) {
  FamilyResult r{"phase_identities", true, 0.0, 1e-9};
  const int instances = std::max(8, trials / 2);
  for (int i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, 4000 + std::uint64_t(i));
    SingularSpectrum spec;
    spec.values = RealVector(dim);
    for (int k = 0; k < dim; ++k) spec.values[k] = rng.uniform();
    std::sort(spec.values.data(), spec.values.data() + dim,
              std::greater<double>());
    const double lo = spec.hinge();
    const double hi = spec.sum();
    const double target = rng.uniform(lo, hi);
    const PhaseSolution sol = solve_phases(spec, target);
    r.worst = std::max(r.worst, std::abs(sol.achieved - target));
    for (Index k = 0; k < sol.mu.size(); ++k) {
      r.worst = std::max(r.worst, std::abs(std::abs(sol.mu[k]) - 1.0));
    }

    // Hadamard pre-image identities on a random instance
    const DensityOperator rho{random_density(dim, rng)};
    const AntilinearOp theta = random_hermitian_antilinear(dim, rng);
    const TakagiDecomposition tk = theta_takagi(rho, theta);
    const Index m = required_length(dim);
    const HadamardMatrix had = hadamard_matrix(m);
    const SingularSpectrum tkspec{tk.values};
    const PhaseSolution ph =
        solve_phases(tkspec, rng.uniform(tkspec.hinge(), tkspec.sum()));
    ComplexVector eps(dim);
    for (Index j = 0; j < dim; ++j) eps[j] = std::sqrt(Complex(1, 0) / ph.mu[j]);
    ComplexMatrix pre(dim, m);
    for (Index k = 0; k < m; ++k) {
      ComplexVector v = ComplexVector::Zero(dim);
      for (Index j = 0; j < dim; ++j) {
        v += double(had.entries(k, j)) * eps[j] * tk.basis.col(j);
      }
      pre.col(k) = v;
    }
    const ComplexMatrix resolution = pre * pre.adjoint();
    r.worst = std::max(
        r.worst, (resolution - double(m) * ComplexMatrix::Identity(dim, dim)).norm() /
                     double(m));
    Complex first(0, 0);
    const ComplexMatrix n =
        psd_sqrt(rho) * theta.m * psd_sqrt(rho).transpose();
    for (Index k = 0; k < m; ++k) {
      const Complex e = pre.col(k).dot(n * pre.col(k).conjugate());
      if (k == 0) {
        first = e;
      } else {
        r.worst = std::max(r.worst, std::abs(e - first));
      }
    }
  }
  if (r.worst > r.budget) r.pass = false;
  return r;
}

FamilyResult flatness_family(int dim, int trials, std::uint64_t seed) {
  FamilyResult r{"leaf_flatness", true, 0.0, 1e-8};
  const int instances = std::max(4, trials / 25);
  for (int i = 0; i < instances; ++i) {
    Rng rng = Rng::for_trial(seed, 5000 + std::uint64_t(i));
    const DensityOperator rho{random_density(dim, rng)};
    const AntilinearOp theta = random_hermitian_antilinear(dim, rng);
    for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
      const Ensemble ens = optimal_ensemble(rho, theta, mode);
      const FlatnessReport rep = flatness_check({mode, theta}, ens, {},
                                                rng.next_u64(), 6, r.budget);
      r.worst = std::max({r.worst, rep.max_mix_residual, rep.member_spread});
    }
  }
  if (r.worst > r.budget) r.pass = false;
  return r;
}

FamilyResult witness_family_check(int dim, int trials, std::uint64_t seed) {
  FamilyResult r{"witness_vanishing", true, 0.0, 1e-8};
  // factor the dimension into the most balanced bipartite split
  Index da = 0, db = 0;
  for (Index cand = 2; cand * cand <= dim; ++cand) {
    if (dim % cand == 0) { da = cand; db = dim / cand; }
  }
  const int instances = std::max(8, trials / 10);
  if (da == 0) {
    // prime dimension: expectation identity of a pair-skew on the largest
    // even subspace (zero on the leftover direction when dim is odd)
    ComplexMatrix skew = ComplexMatrix::Zero(dim, dim);
    for (Index j = 0; j + 1 < dim; j += 2) {
      skew(j, j + 1) += 1.0;
      skew(j + 1, j) -= 1.0;
    }
    const AntilinearOp theta{std::move(skew)};
    for (int i = 0; i < instances; ++i) {
      Rng rng = Rng::for_trial(seed, 6000 + std::uint64_t(i));
      const ComplexVector psi = random_state(dim, rng);
      r.worst = std::max(r.worst, std::abs(psi.dot(theta.m * psi.conjugate())));
    }
  } else {
    const auto family = hermitian_witness_family(da, db);
    for (int i = 0; i < instances; ++i) {
      Rng rng = Rng::for_trial(seed, 6000 + std::uint64_t(i));
      // random separable mixture
      ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
      const int terms = rng.uniform_int(2, 6);
      double total = 0.0;
      for (int t = 0; t < terms; ++t) {
        const double w = rng.uniform(0.1, 1.0);
        const ComplexVector xa = random_state(da, rng);
        const ComplexVector xb = random_state(db, rng);
        ComplexVector prod(dim);
        for (Index ia = 0; ia < da; ++ia) {
          prod.segment(ia * db, db) = xa[ia] * xb;
        }
        rho += w * (prod * prod.adjoint());
        total += w;
      }
      rho /= total;
      const DensityOperator sep{rho};
      for (const auto& theta : family) {
        r.worst = std::max(r.worst, theta_concurrence(sep, theta).value);
      }
    }
  }
  if (r.worst > r.budget) r.pass = false;
  return r;
}

}  // namespace

VerifyReport run_verify(int dim, int trials, std::uint64_t seed) {
  if (dim < 2 || dim > 16) {
    throw ValidationError("verify: dimension must lie in [2, 16]");
  }
  if (trials < 1) throw ValidationError("verify: trials must be >= 1");
  VerifyReport rep;
  rep.families.push_back(attainment_family(dim, trials, seed));
  rep.families.push_back(rank2_family(dim, trials, seed));
  rep.families.push_back(convexity_family(dim, trials, seed));
  rep.families.push_back(phase_family(dim, trials, seed));
  rep.families.push_back(flatness_family(dim, trials, seed));
  rep.families.push_back(witness_family_check(dim, trials, seed));
  rep.all_pass = true;
  for (const auto& f : rep.families) rep.all_pass = rep.all_pass && f.pass;
  return rep;
}

}  // namespace conjfid
