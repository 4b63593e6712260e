#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conjfid/measures.hpp"
#include "conjfid/rng.hpp"
#include "conjfid/roofs.hpp"

using namespace conjfid;

namespace {

SingularSpectrum spectrum(std::initializer_list<double> vals) {
  SingularSpectrum s;
  s.values = RealVector(Index(vals.size()));
  Index i = 0;
  for (double v : vals) s.values[i++] = v;
  return s;
}

}  // namespace

TEST_CASE("hadamard matrices by the doubling recursion") {
  const HadamardMatrix h2 = hadamard_matrix(2);
  CHECK(h2.entries(0, 0) == 1);
  CHECK(h2.entries(0, 1) == 1);
  CHECK(h2.entries(1, 0) == 1);
  CHECK(h2.entries(1, 1) == -1);

  const HadamardMatrix h4 = hadamard_matrix(4);
  for (Index i = 0; i < 4; ++i) {
    CHECK(h4.entries(0, i) == 1);
    for (Index j = 0; j < 4; ++j) {
      int dot = 0;
      for (Index k = 0; k < 4; ++k) dot += h4.entries(k, i) * h4.entries(k, j);
      CHECK(dot == (i == j ? 4 : 0));
    }
  }

  CHECK_THROWS_AS(hadamard_matrix(3), ValidationError);
  CHECK_THROWS_AS(hadamard_matrix(0), ValidationError);
}

TEST_CASE("required decomposition lengths") {
  CHECK(required_length(1) == 1);
  CHECK(required_length(2) == 2);
  CHECK(required_length(3) == 4);
  CHECK(required_length(4) == 4);
  CHECK(required_length(5) == 8);
  CHECK(required_length(8) == 8);
  CHECK(required_length(9) == 16);
  CHECK_THROWS_AS(required_length(0), ValidationError);
}

TEST_CASE("lower hinge") {
  CHECK(lower_hinge(spectrum({3, 1, 1})) == doctest::Approx(1.0));
  CHECK(lower_hinge(spectrum({2, 1, 1, 1})) == doctest::Approx(0.0));
  CHECK(lower_hinge(spectrum({1})) == doctest::Approx(1.0));
}

TEST_CASE("solve_phases reaches the endpoints with the canonical choices") {
  const PhaseSolution top = solve_phases(spectrum({0.5, 0.3, 0.1}), 0.9);
  for (Index k = 0; k < 3; ++k) {
    CHECK(std::abs(top.mu[k] - Complex(1, 0)) < 1e-12);
  }
  CHECK(top.achieved == doctest::Approx(0.9));

  const PhaseSolution hinge = solve_phases(spectrum({3, 1, 1, 1}), 0.0);
  CHECK(std::abs(hinge.mu[0] - Complex(1, 0)) < 1e-9);
  for (Index k = 1; k < 4; ++k) {
    CHECK(std::abs(hinge.mu[k] + Complex(1, 0)) < 1e-9);
  }
  CHECK(hinge.achieved == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("solve_phases closes the triangle for (2,1,1,1) at zero") {
  const PhaseSolution sol = solve_phases(spectrum({2, 1, 1, 1}), 0.0);
  CHECK(sol.achieved == doctest::Approx(0.0).epsilon(1e-12));
  const double third = 2.0 * std::numbers::pi / 3.0;
  CHECK(std::abs(sol.mu[0] - Complex(1, 0)) < 1e-9);
  CHECK(std::abs(sol.mu[1] + Complex(1, 0)) < 1e-9);
  CHECK(std::abs(sol.mu[2] - std::polar(1.0, third)) < 1e-9);
  CHECK(std::abs(sol.mu[3] - std::polar(1.0, -third)) < 1e-9);
}

TEST_CASE("solve_phases fills the whole attainable interval") {
  Rng rng(20);
  for (int rep = 0; rep < 300; ++rep) {
    const Index d = 1 + Index(rng.uniform_int(0, 7));
    SingularSpectrum s;
    s.values = RealVector(d);
    for (Index k = 0; k < d; ++k) s.values[k] = rng.uniform();
    std::sort(s.values.data(), s.values.data() + d, std::greater<double>());
    const double v = rng.uniform(s.hinge(), s.sum());
    const PhaseSolution sol = solve_phases(s, v);
    CHECK(std::abs(sol.achieved - v) < 1e-9);
    for (Index k = 0; k < d; ++k) {
      CHECK(std::abs(std::abs(sol.mu[k]) - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(solve_phases(spectrum({3, 1}), 1.0), ValidationError);
  CHECK_THROWS_AS(solve_phases(spectrum({3, 1}), 5.0), ValidationError);
}

TEST_CASE("optimal ensembles of a pure state collapse to the state itself") {
  Rng rng(21);
  const ComplexVector psi = random_state(3, rng);
  const DensityOperator rho{psi * psi.adjoint()};
  const AntilinearOp theta{random_symmetric(3, rng)};
  const double expect = std::abs(psi.dot(theta.m * psi.conjugate()));
  for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
    const Ensemble ens = optimal_ensemble(rho, theta, mode);
    CHECK(ens.length() == 4);
    CHECK(ensemble_value(ens, theta) == doctest::Approx(expect).epsilon(1e-9));
    for (const auto& v : ens.vectors) {
      if (v.norm() < 1e-12) continue;
      CHECK(std::abs(std::abs(psi.dot(v)) - v.norm()) < 1e-9);  // parallel
    }
  }
}

TEST_CASE("optimal ensembles attain the qubit closed forms") {
  const AntilinearOp theta = bloch_reflection_conjugation();
  Rng rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    BlochVector x{1.0, rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6),
                  rng.uniform(-0.6, 0.6)};
    const DensityOperator rho{x.to_matrix()};
    const Ensemble mn = optimal_ensemble(rho, theta, RoofMode::min);
    const Ensemble mx = optimal_ensemble(rho, theta, RoofMode::max);
    CHECK(mn.length() == 2);
    CHECK(ensemble_value(mn, theta) ==
          doctest::Approx(std::hypot(x.x1, x.x2)).epsilon(1e-9));
    CHECK(ensemble_value(mx, theta) ==
          doctest::Approx(std::sqrt(x.x0 * x.x0 - x.x3 * x.x3)).epsilon(1e-9));
    CHECK((mn.assemble() - rho.matrix()).norm() < 1e-10);
    CHECK((mx.assemble() - rho.matrix()).norm() < 1e-10);
  }
}

TEST_CASE("bell-diagonal states: length-4 ensembles reach the hinge") {
  Rng rng(23);
  const AntilinearOp hw = hill_wootters();
  // Bell basis columns
  ComplexMatrix bells = ComplexMatrix::Zero(4, 4);
  const double r = 1.0 / std::sqrt(2.0);
  bells.col(0) << r, 0, 0, r;
  bells.col(1) << r, 0, 0, -r;
  bells.col(2) << 0, r, r, 0;
  bells.col(3) << 0, r, -r, 0;
  for (int rep = 0; rep < 10; ++rep) {
    RealVector w(4);
    double total = 0;
    for (int k = 0; k < 4; ++k) {
      w[k] = rng.uniform(0.05, 1.0);
      total += w[k];
    }
    w /= total;
    const DensityOperator rho{bells * w.asDiagonal() * bells.adjoint()};
    const double c = wootters_concurrence(rho);
    const Ensemble ens = optimal_ensemble(rho, hw, RoofMode::min);
    CHECK(ens.length() == 4);
    CHECK(ensemble_value(ens, hw) == doctest::Approx(c).epsilon(1e-8));
    CHECK((ens.assemble() - rho.matrix()).norm() < 1e-9);
  }
}

TEST_CASE("attainment for random states and operators across dimensions") {
  Rng rng(24);
  for (Index d : {2, 3, 5}) {
    for (int rep = 0; rep < 6; ++rep) {
      const DensityOperator rho{random_density(d, rng)};
      const AntilinearOp theta{random_symmetric(d, rng)};
      const double c = theta_concurrence(rho, theta).value;
      const double f = theta_fidelity(rho, theta).value;
      const Ensemble mn = optimal_ensemble(rho, theta, RoofMode::min);
      const Ensemble mx = optimal_ensemble(rho, theta, RoofMode::max);
      CHECK(mn.length() == required_length(d));
      CHECK(ensemble_value(mn, theta) == doctest::Approx(c).epsilon(1e-8));
      CHECK(ensemble_value(mx, theta) == doctest::Approx(f).epsilon(1e-8));
      CHECK((mn.assemble() - rho.matrix()).norm() < 1e-9);
      CHECK((mx.assemble() - rho.matrix()).norm() < 1e-9);
    }
  }
}

TEST_CASE("hadamard pre-image identities before balancing") {
  Rng rng(25);
  const Index d = 3;
  const DensityOperator rho{random_density(d, rng)};
  const AntilinearOp theta{random_symmetric(d, rng)};
  const Ensemble raw = optimal_ensemble(rho, theta, RoofMode::max, false);
  const Index m = raw.length();
  // members share one expectation value and reconstruct rho
  Complex first(0, 0);
  for (Index k = 0; k < m; ++k) {
    const Complex e =
        raw.vectors[k].dot(theta.m * raw.vectors[k].conjugate());
    if (k == 0) {
      first = e;
    } else {
      CHECK(std::abs(e - first) < 1e-9);
    }
  }
  CHECK((raw.assemble() - rho.matrix()).norm() < 1e-9);
}

TEST_CASE("ensemble members carry equal normalized values after balancing") {
  Rng rng(26);
  for (int rep = 0; rep < 8; ++rep) {
    const DensityOperator rho{random_density(4, rng)};
    const AntilinearOp theta{random_symmetric(4, rng)};
    for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
      const Ensemble ens = optimal_ensemble(rho, theta, mode);
      double lo = 1e300, hi = -1e300;
      for (const auto& v : ens.vectors) {
        const double n2 = v.squaredNorm();
        if (n2 < 1e-20) continue;
        const double g = std::abs(v.dot(theta.m * v.conjugate())) / n2;
        lo = std::min(lo, g);
        hi = std::max(hi, g);
      }
      CHECK(hi - lo < 1e-8);
    }
  }
}

TEST_CASE("random ensembles reconstruct the state") {
  Rng rng(27);
  const DensityOperator rho{random_density(3, rng)};
  const Ensemble a = random_ensemble(rho, 3, 99);
  CHECK((a.assemble() - rho.matrix()).norm() < 1e-10);
  const Ensemble b = random_ensemble(rho, 7, 100);
  CHECK((b.assemble() - rho.matrix()).norm() < 1e-10);
  // deterministic for a fixed seed
  const Ensemble a2 = random_ensemble(rho, 3, 99);
  for (Index k = 0; k < a.length(); ++k) {
    CHECK((a.vectors[k] - a2.vectors[k]).norm() == 0.0);
  }

  const ComplexVector psi = random_state(3, rng);
  const DensityOperator pure{psi * psi.adjoint()};
  const Ensemble p = random_ensemble(pure, 5, 101);
  for (const auto& v : p.vectors) {
    if (v.norm() < 1e-12) continue;
    CHECK(std::abs(std::abs(psi.dot(v)) - v.norm()) < 1e-10);
  }
  CHECK_THROWS_AS(random_ensemble(rho, 2, 5), ValidationError);
}

TEST_CASE("roof oracle stays inside the roof sandwich and converges") {
  Rng rng(28);
  const DensityOperator rho{random_density(4, rng)};
  const AntilinearOp hw = hill_wootters();
  const double c = theta_concurrence(rho, hw).value;
  const double f = theta_fidelity(rho, hw).value;

  const double omin = roof_oracle(rho, hw, RoofMode::min, 300, 17);
  const double omax = roof_oracle(rho, hw, RoofMode::max, 300, 17);
  CHECK(omin >= c - 1e-9);
  CHECK(omin <= c + 0.05);
  CHECK(omax <= f + 1e-9);
  CHECK(omax >= f - 0.05);

  // raw random ensembles always sit between the two roofs
  for (int rep = 0; rep < 200; ++rep) {
    const Ensemble ens = random_ensemble(rho, 4, rng.next_u64());
    const double v = ensemble_value(ens, hw);
    CHECK(v >= c - 1e-9);
    CHECK(v <= f + 1e-9);
  }

  // a pure state pins every decomposition to one value
  const ComplexVector psi = random_state(4, rng);
  const DensityOperator pure{psi * psi.adjoint()};
  const double expect = std::abs(psi.dot(hw.m * psi.conjugate()));
  CHECK(roof_oracle(pure, hw, RoofMode::min, 10, 3) ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("werner family: oracle confirms the concurrence") {
  const AntilinearOp hw = hill_wootters();
  ComplexVector bell = ComplexVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  for (double p : {0.2, 0.6, 0.9}) {
    const ComplexMatrix rho_m = p * (bell * bell.adjoint()) +
                                (1 - p) * 0.25 * ComplexMatrix::Identity(4, 4);
    const DensityOperator rho{rho_m};
    const double c = theta_concurrence(rho, hw).value;
    CHECK(c == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-10));
    const double oracle = roof_oracle(rho, hw, RoofMode::min, 300, 8);
    CHECK(std::abs(oracle - c) < 1e-3);
  }
}

TEST_CASE("one-dimensional states use a singleton decomposition") {
  ComplexMatrix one(1, 1);
  one(0, 0) = 0.8;
  ComplexMatrix msym(1, 1);
  msym(0, 0) = Complex(0.3, 0.4);
  const DensityOperator rho{one};
  const AntilinearOp theta{msym};
  const Ensemble ens = optimal_ensemble(rho, theta, RoofMode::max);
  CHECK(ens.length() == 1);
  CHECK((ens.assemble() - rho.matrix()).norm() < 1e-12);
  CHECK(ensemble_value(ens, theta) ==
        doctest::Approx(0.8 * 0.5).epsilon(1e-10));  // 0.8 * |0.3 + 0.4i|
}

TEST_CASE("parallel and serial oracles agree bit for bit") {
  Rng rng(29);
  const DensityOperator rho{random_density(3, rng)};
  const AntilinearOp theta{random_symmetric(3, rng)};
  for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
    const double a = roof_oracle(rho, theta, mode, 257, 12345);
    const double b = roof_oracle_serial(rho, theta, mode, 257, 12345);
    CHECK(a == b);
  }
}

TEST_CASE("flatness of optimal leaves") {
  Rng rng(30);
  const AntilinearOp hw = hill_wootters();
  for (int rep = 0; rep < 6; ++rep) {
    const DensityOperator rho{random_density(4, rng)};
    for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
      const Ensemble ens = optimal_ensemble(rho, hw, mode);
      const FlatnessReport rep2 = flatness_check({mode, hw}, ens, {}, 77);
      CHECK(rep2.flat);
      CHECK(rep2.leaf_constant);
      CHECK(rep2.max_mix_residual < 1e-8);
      CHECK(rep2.member_spread < 1e-8);
    }
  }

  // a singleton pure ensemble is trivially flat
  const ComplexVector psi = random_state(4, rng);
  Ensemble single;
  single.vectors.push_back(psi);
  const FlatnessReport rep3 = flatness_check({RoofMode::min, hw}, single, {1.0}, 5);
  CHECK(rep3.flat);
  CHECK(rep3.leaf_constant);
}

TEST_CASE("qubit fidelity stays constant on its leaf segment") {
  // two pure states with the same third Bloch component span a leaf of the
  // fidelity roof; any mixture keeps the roof value
  const AntilinearOp theta = bloch_reflection_conjugation();
  const double x3 = 0.4;
  const double r = std::sqrt(1 - x3 * x3);
  ComplexMatrix p1 = BlochVector{1, r, 0, x3}.to_matrix();
  ComplexMatrix p2 = BlochVector{1, -r, 0, x3}.to_matrix();
  Ensemble ens;
  HermitianEig e1 = herm_eig(p1);
  HermitianEig e2 = herm_eig(p2);
  ens.vectors.push_back(e1.vectors.col(0));
  ens.vectors.push_back(e2.vectors.col(0));
  const FlatnessReport rep = flatness_check({RoofMode::max, theta}, ens, {}, 13);
  CHECK(rep.flat);
  CHECK(rep.leaf_constant);
}

TEST_CASE("convex-increasing compositions keep the mixing inequality") {
  Rng rng(31);
  for (int rep = 0; rep < 15; ++rep) {
    const AntilinearOp theta{random_symmetric(3, rng)};
    const ComplexMatrix a = random_density(3, rng);
    const ComplexMatrix b = random_density(3, rng);
    const double t = rng.uniform();
    const auto csq = [&](const ComplexMatrix& m) {
      const double c = theta_concurrence(DensityOperator(m), theta).value;
      return c * c;
    };
    CHECK(csq(t * a + (1 - t) * b) <= t * csq(a) + (1 - t) * csq(b) + 1e-9);
  }
}
