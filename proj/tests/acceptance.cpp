// Acceptance suite: every check prints one pass/fail line with the observed
// worst residual and the budget it is held against. Exit code 0 only if all
// criteria hold.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "conjfid/entangle.hpp"
#include "conjfid/measures.hpp"
#include "conjfid/rng.hpp"
#include "conjfid/roofs.hpp"

using namespace conjfid;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool pass;
  double worst;
  double budget;
};

std::vector<Criterion> results;

void record(int number, const std::string& name, double worst, double budget,
            bool extra_ok = true) {
  results.push_back({number, name, worst <= budget && extra_ok, worst, budget});
}

BlochVector random_psd_bloch(Rng& rng) {
  BlochVector x;
  x.x0 = rng.uniform(0.2, 2.0);
  const double radius = x.x0 * std::cbrt(rng.uniform());
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  const double s = std::sqrt(std::max(1.0 - z * z, 0.0));
  x.x1 = radius * s * std::cos(phi);
  x.x2 = radius * s * std::sin(phi);
  x.x3 = radius * z;
  return x;
}

ComplexVector kron2(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

DensityOperator random_separable(Index da, Index db, Rng& rng, int terms = 5) {
  ComplexMatrix rho = ComplexMatrix::Zero(da * db, da * db);
  double total = 0;
  for (int t = 0; t < terms; ++t) {
    const double w = rng.uniform(0.1, 1.0);
    const ComplexVector prod = kron2(random_state(da, rng), random_state(db, rng));
    rho += w * (prod * prod.adjoint());
    total += w;
  }
  return DensityOperator(rho / total);
}

// 1. qubit closed forms against the takagi route
void criterion_qubit_closed_forms() {
  const AntilinearOp theta = bloch_reflection_conjugation();
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = Rng::for_trial(101, std::uint64_t(i));
    const BlochVector x = random_psd_bloch(rng);
    const DensityOperator rho{x.to_matrix()};
    const auto [f, c] = qubit_closed_forms(x);
    worst = std::max(worst, std::abs(theta_fidelity(rho, theta).value - f));
    worst = std::max(worst, std::abs(theta_concurrence(rho, theta).value - c));
  }
  record(1, "qubit closed forms (1000 random bloch vectors)", worst, 1e-10);
}

// 2. constructed ensembles attain both roof values at the exact length
void criterion_attainment() {
  double worst_value = 0, worst_rec = 0;
  bool lengths_ok = true;
  for (Index d : {2, 3, 4, 5, 8}) {
    for (int i = 0; i < 100; ++i) {
      Rng rng = Rng::for_trial(202 + std::uint64_t(d), std::uint64_t(i));
      const DensityOperator rho{random_density(d, rng)};
      const AntilinearOp theta{random_symmetric(d, rng)};
      const double c = theta_concurrence(rho, theta).value;
      const double f = theta_fidelity(rho, theta).value;
      for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
        const Ensemble ens = optimal_ensemble(rho, theta, mode);
        lengths_ok = lengths_ok && ens.length() == required_length(d);
        const double target = (mode == RoofMode::min) ? c : f;
        worst_value = std::max(worst_value,
                               std::abs(ensemble_value(ens, theta) - target));
        worst_rec = std::max(worst_rec, (ens.assemble() - rho.matrix()).norm());
      }
    }
  }
  record(2, "roof attainment value (500 instances, d up to 8)", worst_value, 1e-8,
         lengths_ok);
  record(2, "roof attainment reconstruction", worst_rec, 1e-9, lengths_ok);
}

// 3. every random decomposition sits between the two roofs
void criterion_sandwich() {
  double worst = 0;
  for (Index d : {2, 3, 4}) {
    for (int inst = 0; inst < 2; ++inst) {
      Rng rng = Rng::for_trial(303 + std::uint64_t(d), std::uint64_t(inst));
      const DensityOperator rho{random_density(d, rng)};
      const AntilinearOp theta{random_symmetric(d, rng)};
      const double c = theta_concurrence(rho, theta).value;
      const double f = theta_fidelity(rho, theta).value;
      const Index mmax = required_length(d);
      double local = 0;
#pragma omp parallel for reduction(max : local) schedule(static)
      for (int t = 0; t < 10000; ++t) {
        Rng trng = Rng::for_trial(9000 + std::uint64_t(d) * 100 + inst,
                                  std::uint64_t(t));
        const Index length = d + Index(t) % (mmax - d + 1);
        const Ensemble ens = random_ensemble(rho, length, trng.next_u64());
        const double v = ensemble_value(ens, theta);
        local = std::max(local, std::max(c - v, v - f));
      }
      worst = std::max(worst, local);
    }
  }
  record(3, "roof sandwich (60000 random ensembles)", worst, 1e-9);
}

// 4. the rank-2 support identity
void criterion_rank2() {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = Rng::for_trial(404, std::uint64_t(i));
    const Index d = 2 + Index(rng.uniform_int(0, 4));
    const ComplexMatrix u = random_unitary(d, rng);
    const ComplexMatrix iso = u.leftCols(2);
    const DensityOperator rho{iso * random_density(2, rng) * iso.adjoint()};
    const DensityOperator omega{iso * random_density(2, rng) * iso.adjoint()};
    const double c = concurrence_pair(rho, omega);
    const double f = fidelity(rho, omega);
    const double tr = (rho.matrix() * omega.matrix()).trace().real();
    worst = std::max(worst, std::abs(c * c + f * f - 2 * tr));
  }
  record(4, "rank-2 identity (1000 pairs)", worst, 1e-9);
}

// 5. the variational characterization of fidelity
void criterion_variational() {
  double worst_gap = 0, worst_under = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::for_trial(505, std::uint64_t(i));
    const Index d = 2 + Index(rng.uniform_int(0, 3));
    // keep both operators comfortably invertible
    const ComplexMatrix a =
        random_density(d, rng) + 0.05 * ComplexMatrix::Identity(d, d);
    const ComplexMatrix b =
        random_density(d, rng) + 0.05 * ComplexMatrix::Identity(d, d);
    const DensityOperator rho{a}, omega{b};
    const double f = fidelity(rho, omega);

    const HermitianEig eig = herm_eig(a);
    RealVector isqrt = eig.values.cwiseSqrt().cwiseInverse();
    const ComplexMatrix sinv =
        eig.vectors * isqrt.asDiagonal() * eig.vectors.adjoint();
    const ComplexMatrix s = psd_sqrt(rho);
    const ComplexMatrix mid = psd_sqrt(DensityOperator(s * b * s));
    ComplexMatrix xopt = sinv * mid * sinv;
    xopt = 0.5 * (xopt + xopt.adjoint().eval());
    worst_gap = std::max(worst_gap, std::abs(variational_bound(rho, omega, xopt) - f));

    for (int k = 0; k < 4; ++k) {
      const ComplexMatrix x =
          random_density(d, rng) + 0.05 * ComplexMatrix::Identity(d, d);
      worst_under = std::max(worst_under, f - variational_bound(rho, omega, x));
    }
  }
  record(5, "variational optimum equals fidelity (100 pairs)", worst_gap, 1e-9);
  record(5, "variational bound never undercuts", worst_under, 1e-9);
}

// 6. convexity, concavity, homogeneity, sub/superadditivity
void criterion_convexity() {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = Rng::for_trial(606, std::uint64_t(i));
    const Index d = 2 + Index(rng.uniform_int(0, 2));
    const AntilinearOp theta{random_symmetric(d, rng)};
    const ComplexMatrix a = random_density(d, rng);
    const ComplexMatrix b = random_density(d, rng);
    const DensityOperator rho{a}, omega{b};
    const double ca = theta_concurrence(rho, theta).value;
    const double cb = theta_concurrence(omega, theta).value;
    const double fa = theta_fidelity(rho, theta).value;
    const double fb = theta_fidelity(omega, theta).value;

    const double t = rng.uniform();
    const DensityOperator mix{t * a + (1 - t) * b};
    worst = std::max(worst,
                     theta_concurrence(mix, theta).value - (t * ca + (1 - t) * cb));
    worst = std::max(worst,
                     (t * fa + (1 - t) * fb) - theta_fidelity(mix, theta).value);

    const double mu = rng.uniform(0.0, 2.0);
    const DensityOperator scaled{mu * a};
    worst = std::max(worst, std::abs(theta_concurrence(scaled, theta).value - mu * ca));
    worst = std::max(worst, std::abs(theta_fidelity(scaled, theta).value - mu * fa));

    const DensityOperator sum{a + b};
    worst = std::max(worst, theta_concurrence(sum, theta).value - ca - cb);
    worst = std::max(worst, fa + fb - theta_fidelity(sum, theta).value);
  }
  record(6, "convexity program (1000 segments)", worst, 1e-9);
}

// 7. optimal leaves are flat with constant member values
void criterion_flatness() {
  double worst = 0;
  const AntilinearOp hw = hill_wootters();
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::for_trial(707, std::uint64_t(i));
    const DensityOperator rho{random_density(4, rng)};
    for (RoofMode mode : {RoofMode::min, RoofMode::max}) {
      const Ensemble ens = optimal_ensemble(rho, hw, mode);
      const FlatnessReport rep =
          flatness_check({mode, hw}, ens, {}, rng.next_u64(), 8);
      worst = std::max({worst, rep.max_mix_residual, rep.member_spread});
    }
  }
  record(7, "leaf flatness and constancy (100 two-qubit states)", worst, 1e-8);
}

// 8. the named concurrence values and the stochastic oracle
void criterion_wootters() {
  ComplexVector bell = ComplexVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const DensityOperator bell_rho{bell * bell.adjoint()};
  double worst_named = std::abs(wootters_concurrence(bell_rho) - 1.0);
  worst_named = std::max(worst_named, std::abs(eof_2qubit(bell_rho) - std::log(2.0)));
  record(8, "bell concurrence and formation entropy", worst_named, 1e-10);

  double worst_prod = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng = Rng::for_trial(808, std::uint64_t(i));
    const ComplexVector prod = kron2(random_state(2, rng), random_state(2, rng));
    worst_prod =
        std::max(worst_prod, wootters_concurrence(DensityOperator(prod * prod.adjoint())));
  }
  record(8, "pure product concurrence vanishes", worst_prod, 1e-12);

  double worst_under = 0, worst_over = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng = Rng::for_trial(809, std::uint64_t(i));
    const DensityOperator rho{random_density(4, rng)};
    const double c = wootters_concurrence(rho);
    const double oracle =
        roof_oracle(rho, hill_wootters(), RoofMode::min, 400, rng.next_u64());
    worst_under = std::max(worst_under, c - oracle);
    worst_over = std::max(worst_over, oracle - c);
  }
  record(8, "oracle never undershoots the concurrence", worst_under, 1e-9);
  record(8, "oracle approaches the concurrence", worst_over, 0.05);
}

// 9. witness soundness on separable and pure entangled states
void criterion_witness() {
  double worst_sep = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::for_trial(909, std::uint64_t(i));
    for (auto [da, db] : {std::pair<Index, Index>{2, 2}, {2, 4}}) {
      const DensityOperator sep = random_separable(da, db, rng);
      for (const auto& theta : hermitian_witness_family(da, db)) {
        worst_sep = std::max(worst_sep, theta_concurrence(sep, theta).value);
      }
    }
  }
  record(9, "family concurrences vanish on separable states (200)", worst_sep, 1e-8);

  double worst_id = 0;
  bool all_positive = true;
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::for_trial(910, std::uint64_t(i));
    for (auto [da, db] : {std::pair<Index, Index>{2, 2}, {2, 4}}) {
      const ComplexVector psi = random_state(da * db, rng);
      const SchmidtDecomposition sd = schmidt(psi, da, db);
      const AntilinearOp theta = tailored_conjugation(psi, da, db);
      const double value = std::abs(psi.dot(theta.m * psi.conjugate()));
      double expect = 0;
      for (Index j = 0; j + 1 < sd.coefficients.size(); j += 2) {
        expect += 2.0 * sd.coefficients[j] * sd.coefficients[j + 1];
      }
      worst_id = std::max(worst_id, std::abs(value - expect));
      all_positive = all_positive && value > 1e-9;
    }
  }
  record(9, "tailored values match the coefficient sum (200 pure)", worst_id, 1e-9,
         all_positive);
}

// 10. the fixed three-qubit operator lists
void criterion_three_qubit() {
  double worst_prod = 0;
  bool verdicts_agree = true;
  for (int i = 0; i < 200; ++i) {
    Rng rng = Rng::for_trial(1010, std::uint64_t(i));
    const ComplexVector prod = kron2(
        random_state(2, rng), kron2(random_state(2, rng), random_state(2, rng)));
    const WitnessReport w8 = three_qubit_product_test(prod, 1e-9);
    const WitnessReport w12 = three_qubit_product_test_extended(prod, 1e-9);
    for (const auto& [label, value] : w8.values) worst_prod = std::max(worst_prod, value);
    verdicts_agree = verdicts_agree && (w8.entangled == w12.entangled);
  }
  record(10, "three-qubit products pass all eight checks (200)", worst_prod, 1e-10,
         verdicts_agree);

  ComplexVector ghz = ComplexVector::Zero(8);
  ghz[0] = ghz[7] = 1.0 / std::sqrt(2.0);
  ComplexVector w = ComplexVector::Zero(8);
  w[1] = w[2] = w[4] = 1.0 / std::sqrt(3.0);
  double min_witness = 1e300;
  bool agree = true;
  for (const ComplexVector& psi : {ghz, w}) {
    const WitnessReport w8 = three_qubit_product_test(psi, 1e-3);
    const WitnessReport w12 = three_qubit_product_test_extended(psi, 1e-3);
    double best = 0;
    for (const auto& [label, value] : w8.values) best = std::max(best, value);
    min_witness = std::min(min_witness, best);
    agree = agree && w8.entangled && w12.entangled;
  }
  record(10, "ghz and w states are witnessed above 1e-3", 1e-3 - min_witness, 0.0,
         agree);
}

// 11. the rank-2 span closed forms against the compressed pipeline
void criterion_rank2_span() {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = Rng::for_trial(1111, std::uint64_t(i));
    Rank2Span span;
    try {
      span = build_rank2_span(random_state(2, rng), random_state(2, rng),
                              random_state(2, rng), random_state(2, rng));
    } catch (const ValidationError&) {
      continue;
    }
    BlochVector x{1.0, 0, 0, 0};
    const double radius = std::cbrt(rng.uniform());
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const double s = std::sqrt(std::max(1.0 - z * z, 0.0));
    x.x1 = radius * s * std::cos(phi);
    x.x2 = radius * s * std::sin(phi);
    x.x3 = radius * z;
    const DensityOperator rho{span.embed(x)};
    const auto [f, c] = rank2_closed_forms(span.params, x);
    worst = std::max(worst, std::abs(theta_fidelity(rho, span.compressed).value - f));
    worst = std::max(worst, std::abs(theta_concurrence(rho, span.compressed).value - c));
  }
  record(11, "rank-2 closed forms match the pipeline (1000)", worst, 1e-9);

  // coinciding factors kill the compressed operator
  ComplexVector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  const Rank2Span degenerate = build_rank2_span(e0, e0, e0, e1);
  const auto [f1, c1] = rank2_closed_forms(degenerate.params, {1, 0.2, 0.1, 0.3});
  record(11, "degenerate overlap gives zero measures", std::max(f1, c1), 1e-12);
}

// 12. invariant states
void criterion_invariant_states() {
  double worst_f = 0, worst_c = 0;
  bool iff_ok = true;
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::for_trial(1212, std::uint64_t(i));
    const Index d = 2 + Index(rng.uniform_int(0, 4));
    const ComplexMatrix basis = random_unitary(d, rng);
    const AntilinearOp theta = conjugation_from_basis(basis);
    RealVector p(d);
    if (i % 2 == 0) {
      // dominant first weight
      p[0] = rng.uniform(0.55, 0.95);
      double rest = 1.0 - p[0];
      for (Index k = 1; k < d; ++k) {
        const double w = (k + 1 < d) ? rng.uniform(0.0, rest) : rest;
        p[k] = w;
        rest -= w;
      }
    } else {
      double total = 0;
      for (Index k = 0; k < d; ++k) {
        p[k] = rng.uniform(0.5, 1.0);
        total += p[k];
      }
      p /= total;  // all weights end up below 1/2 for d >= 3; fine for d = 2 too
    }
    std::sort(p.data(), p.data() + d, std::greater<double>());
    const DensityOperator rho{basis * p.asDiagonal() * basis.adjoint()};
    worst_f = std::max(worst_f, std::abs(theta_fidelity(rho, theta).value - rho.trace()));
    const double c = theta_concurrence(rho, theta).value;
    if (p[0] <= 0.5 - 1e-9) {
      iff_ok = iff_ok && c <= 1e-9;
    } else if (p[0] >= 0.5 + 1e-9) {
      iff_ok = iff_ok && c > 1e-9;
      worst_c = std::max(worst_c, std::abs(c - (2 * p[0] - 1)));
    }
  }
  record(12, "invariant states: fidelity equals trace (100)", worst_f, 1e-10);
  record(12, "invariant states: concurrence iff dominant weight", worst_c, 1e-9,
         iff_ok);
}

}  // namespace

int main() {
  criterion_qubit_closed_forms();
  criterion_attainment();
  criterion_sandwich();
  criterion_rank2();
  criterion_variational();
  criterion_convexity();
  criterion_flatness();
  criterion_wootters();
  criterion_witness();
  criterion_three_qubit();
  criterion_rank2_span();
  criterion_invariant_states();

  bool all = true;
  for (const auto& c : results) {
    std::printf("%s | %2d | %-55s | worst %.3e (budget %.1e)\n",
                c.pass ? "PASS" : "FAIL", c.number, c.name.c_str(), c.worst,
                c.budget);
    all = all && c.pass;
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
