#include "conjfid/entangle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "conjfid/measures.hpp"
#include "conjfid/rng.hpp"

namespace conjfid {

ComplexVector SchmidtDecomposition::reconstruct() const {
  const Index da = left_basis.rows();
  const Index db = right_basis.rows();
  ComplexVector psi = ComplexVector::Zero(da * db);
  for (Index k = 0; k < coefficients.size(); ++k) {
    for (Index i = 0; i < da; ++i) {
      psi.segment(i * db, db) +=
          coefficients[k] * left_basis(i, k) * right_basis.col(k);
    }
  }
  return psi;
}

SchmidtDecomposition schmidt(const ComplexVector& psi, Index da, Index db) {
  if (da < 1 || db < 1 || psi.size() != da * db) {
    throw DimensionError("schmidt: vector length " + std::to_string(psi.size()) +
                         " does not match " + std::to_string(da) + "x" +
                         std::to_string(db));
  }
  ComplexMatrix m(da, db);
  for (Index i = 0; i < da; ++i) m.row(i) = psi.segment(i * db, db).transpose();
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left_basis = svd.matrixU();
  out.right_basis = svd.matrixV().conjugate();
  return out;
}

namespace {

// Complete orthonormal columns to a full basis, drawing candidates from the
// standard basis in order.
ComplexMatrix complete_basis(const ComplexMatrix& cols) {
  const Index d = cols.rows();
  ComplexMatrix full(d, d);
  Index have = cols.cols();
  full.leftCols(have) = cols;
  for (Index cand = 0; cand < d && have < d; ++cand) {
    ComplexVector v = ComplexVector::Zero(d);
    v[cand] = Complex(1, 0);
    for (int pass = 0; pass < 2; ++pass) {
      v -= full.leftCols(have) * (full.leftCols(have).adjoint() * v);
    }
    const double n = v.norm();
    if (n > 0.5) {
      full.col(have++) = v / n;
    }
  }
  if (have < d) {
    throw ValidationError("complete_basis: failed to complete an orthonormal set");
  }
  return full;
}

void require_even(Index d, const char* what) {
  if (d % 2 != 0) {
    throw OperatorClassError(std::string(what) + ": odd local dimension " +
                             std::to_string(d));
  }
}

}  // namespace

AntilinearOp tailored_conjugation(const ComplexVector& psi, Index da, Index db) {
  require_even(da, "tailored_conjugation");
  require_even(db, "tailored_conjugation");
  if (da > db) {
    throw DimensionError("tailored_conjugation: requires da <= db");
  }
  const SchmidtDecomposition sd = schmidt(psi, da, db);
  const ComplexMatrix left = complete_basis(sd.left_basis);
  const ComplexMatrix right = complete_basis(sd.right_basis);
  return tensor(skew_from_basis(left), skew_from_basis(right));
}

double pure_witness_supremum(const ComplexVector& psi, Index da, Index db) {
  if (da != 2) {
    throw UnsupportedDimsError("pure_witness_supremum: left factor must be a qubit");
  }
  if (psi.size() != da * db) {
    throw DimensionError("pure_witness_supremum: shape mismatch");
  }
  ComplexMatrix m(da, db);
  for (Index i = 0; i < da; ++i) m.row(i) = psi.segment(i * db, db).transpose();
  const ComplexMatrix red = m * m.adjoint();
  const double det = std::max(red.determinant().real(), 0.0);
  return 2.0 * std::sqrt(det);
}

namespace {

// Skew conjugation on consecutive pairs of the given columns, zero on the
// rest of the space.
AntilinearOp skew_on_pairs(const ComplexMatrix& cols) {
  const Index d = cols.rows();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j + 1 < cols.cols(); j += 2) {
    m += cols.col(j) * cols.col(j + 1).transpose();
    m -= cols.col(j + 1) * cols.col(j).transpose();
  }
  return AntilinearOp{std::move(m)};
}

std::vector<AntilinearOp> local_skew_factors(Index d) {
  std::vector<AntilinearOp> out;
  if (d % 2 == 0) {
    out.push_back(skew_from_basis(ComplexMatrix::Identity(d, d)));
    return out;
  }
  // odd: one member per omitted direction
  for (Index omit = 0; omit < d; ++omit) {
    ComplexMatrix cols(d, d - 1);
    Index c = 0;
    for (Index j = 0; j < d; ++j) {
      if (j == omit) continue;
      cols.col(c) = ComplexVector::Unit(d, j);
      ++c;
    }
    out.push_back(skew_on_pairs(cols));
  }
  return out;
}

}  // namespace

std::vector<AntilinearOp> hermitian_witness_family(Index da, Index db) {
  std::vector<AntilinearOp> out;
  for (const auto& a : local_skew_factors(da)) {
    for (const auto& b : local_skew_factors(db)) {
      out.push_back(tensor(a, b));
    }
  }
  return out;
}

namespace {

AntilinearOp skew_like_from_unitary(const ComplexMatrix& u) {
  const Index d = u.rows();
  if (d % 2 == 0) return skew_from_basis(u);
  return skew_on_pairs(u.leftCols(d - 1));
}

double family_concurrence(const DensityOperator& rho, const ComplexMatrix& ua,
                          const ComplexMatrix& ub) {
  const AntilinearOp theta =
      tensor(skew_like_from_unitary(ua), skew_like_from_unitary(ub));
  return theta_concurrence(rho, theta).value;
}

// Cayley map of a random anti-Hermitian step; stays unitary exactly.
ComplexMatrix perturb_unitary(const ComplexMatrix& u, double step, Rng& rng) {
  const Index d = u.rows();
  ComplexMatrix h = random_hermitian(d, rng);
  const ComplexMatrix ih = Complex(0, step) * h;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  const ComplexMatrix cay =
      (eye - 0.5 * ih).partialPivLu().solve(eye + 0.5 * ih);
  return u * cay;
}

struct SearchState {
  double value = -1.0;
  std::uint64_t trial = 0;
  ComplexMatrix ua, ub;
};

SearchState search_trial(const DensityOperator& rho, Index da, Index db,
                         std::uint64_t seed, std::uint64_t trial) {
  Rng rng = Rng::for_trial(seed, trial);
  SearchState s;
  s.trial = trial;
  s.ua = random_unitary(da, rng);
  s.ub = random_unitary(db, rng);
  s.value = family_concurrence(rho, s.ua, s.ub);
  return s;
}

bool better(const SearchState& a, const SearchState& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.trial < b.trial;  // deterministic tie-break
}

SearchResult finish_search(const DensityOperator& rho, SearchState best,
                           std::uint64_t seed, int trials) {
  // greedy refinement with step halving
  Rng rng = Rng::for_trial(seed, std::uint64_t(trials) + 0x5157ull);
  double step = 0.35;
  const int sweeps = 50;
  const int proposals = 6;
  for (int sweep = 0; sweep < sweeps && step > 1e-7; ++sweep) {
    bool improved = false;
    for (int p = 0; p < proposals; ++p) {
      ComplexMatrix ua = perturb_unitary(best.ua, step, rng);
      ComplexMatrix ub = perturb_unitary(best.ub, step, rng);
      const double v = family_concurrence(rho, ua, ub);
      if (v > best.value) {
        best.value = v;
        best.ua = std::move(ua);
        best.ub = std::move(ub);
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  SearchResult out;
  out.value = best.value;
  out.certificate =
      tensor(skew_like_from_unitary(best.ua), skew_like_from_unitary(best.ub));
  return out;
}

}  // namespace

SearchResult sup_concurrence_search_serial(const DensityOperator& rho, Index da,
                                           Index db, int trials,
                                           std::uint64_t seed) {
  if (trials < 1) throw ValidationError("sup_concurrence_search: trials >= 1");
  if (da * db != rho.dim()) {
    throw DimensionError("sup_concurrence_search: dims do not factor the state");
  }
  SearchState best;
  for (int t = 0; t < trials; ++t) {
    SearchState s = search_trial(rho, da, db, seed, std::uint64_t(t));
    if (best.value < 0 || better(s, best)) best = std::move(s);
  }
  return finish_search(rho, std::move(best), seed, trials);
}

SearchResult sup_concurrence_search(const DensityOperator& rho, Index da, Index db,
                                    int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("sup_concurrence_search: trials >= 1");
  if (da * db != rho.dim()) {
    throw DimensionError("sup_concurrence_search: dims do not factor the state");
  }
  SearchState best;
#pragma omp parallel
  {
    SearchState local;
#pragma omp for nowait schedule(static)
    for (int t = 0; t < trials; ++t) {
      SearchState s = search_trial(rho, da, db, seed, std::uint64_t(t));
      if (local.value < 0 || better(s, local)) local = std::move(s);
    }
#pragma omp critical
    {
      if (local.value >= 0 && (best.value < 0 || better(local, best))) {
        best = std::move(local);
      }
    }
  }
  return finish_search(rho, std::move(best), seed, trials);
}

double f_hw(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    throw ValidationError("f_hw: argument " + std::to_string(x) +
                          " outside the unit interval");
  }
  x = std::clamp(x, 0.0, 1.0);
  const double root = std::sqrt(std::max(1.0 - x * x, 0.0));
  const auto s = [](double y) { return (y > 0.0) ? -y * std::log(y) : 0.0; };
  return s(0.5 * (1.0 + root)) + s(0.5 * (1.0 - root));
}

double eof_2qubit(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw DimensionError("eof_2qubit: requires a two-qubit state");
  }
  return f_hw(std::min(wootters_concurrence(rho), 1.0));
}

double eof_lower_bound(const DensityOperator& rho, Index da, Index db, int trials,
                       std::uint64_t seed) {
  if (da != 2 || db % 2 != 0) {
    throw UnsupportedDimsError("eof_lower_bound: needs 2 x even dimensions");
  }
  if (da * db != rho.dim()) {
    throw DimensionError("eof_lower_bound: dims do not factor the state");
  }
  const SearchResult s = sup_concurrence_search(rho, da, db, trials, seed);
  return f_hw(std::clamp(s.value, 0.0, 1.0));
}

namespace {

ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

WitnessReport three_qubit_report(const ComplexVector& psi,
                                 const std::vector<std::vector<int>>& slot_choices,
                                 double threshold) {
  if (psi.size() != 8) {
    throw DimensionError("three_qubit_product_test: requires an 8-dimensional vector");
  }
  const AntilinearOp skew = standard_skew_qubit();
  static const char* names[4] = {"1", "s1", "s2", "s3"};
  WitnessReport rep;
  rep.threshold = threshold;
  double best = -1.0;
  for (int slot = 0; slot < 3; ++slot) {
    for (int u : slot_choices[size_t(slot)]) {
      AntilinearOp factors[3] = {skew, skew, skew};
      factors[slot] = AntilinearOp{pauli(u) * skew.m};
      const AntilinearOp theta = tensor(factors[0], tensor(factors[1], factors[2]));
      const double value = std::abs(psi.dot(theta.m * psi.conjugate()));
      rep.values.emplace_back(
          "slot" + std::to_string(slot + 1) + ":" + names[u], value);
      if (value > best) {
        best = value;
        rep.certificate = theta.m;
      }
    }
  }
  rep.entangled = best > threshold;
  return rep;
}

}  // namespace

WitnessReport three_qubit_product_test(const ComplexVector& psi, double threshold) {
  return three_qubit_report(psi, {{0, 3, 1, 2}, {0, 3}, {0, 3}}, threshold);
}

WitnessReport three_qubit_product_test_extended(const ComplexVector& psi,
                                                double threshold) {
  return three_qubit_report(psi, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}},
                            threshold);
}

WitnessReport bipartite_witness(const DensityOperator& rho, Index da, Index db,
                                int trials, std::uint64_t seed, double threshold) {
  if (da * db != rho.dim()) {
    throw DimensionError("bipartite_witness: dims do not factor the state");
  }
  WitnessReport rep;
  rep.threshold = threshold;
  double best = -1.0;
  int idx = 0;
  for (const auto& theta : hermitian_witness_family(da, db)) {
    const double value = theta_concurrence(rho, theta).value;
    rep.values.emplace_back("family:" + std::to_string(idx++), value);
    if (value > best) {
      best = value;
      rep.certificate = theta.m;
    }
  }
  const SearchResult s = sup_concurrence_search(rho, da, db, trials, seed);
  rep.values.emplace_back("search", s.value);
  if (s.value > best) {
    best = s.value;
    rep.certificate = s.certificate.m;
  }
  rep.entangled = best > threshold;
  return rep;
}

ComplexMatrix Rank2Span::embed(const BlochVector& x) const {
  return basis * x.to_matrix() * basis.adjoint();
}

Rank2Span build_rank2_span(const ComplexVector& phi_a0, const ComplexVector& phi_b0,
                           const ComplexVector& phi_a1, const ComplexVector& phi_b1) {
  if (phi_a0.size() != 2 || phi_b0.size() != 2 || phi_a1.size() != 2 ||
      phi_b1.size() != 2) {
    throw DimensionError("build_rank2_span: all factors must be qubit vectors");
  }
  for (const auto* v : {&phi_a0, &phi_b0, &phi_a1, &phi_b1}) {
    if (std::abs(v->norm() - 1.0) > 1e-9) {
      throw ValidationError("build_rank2_span: factors must be unit vectors");
    }
  }
  // rotate the second pair so both overlaps are real nonnegative
  const Complex oa = phi_a0.dot(phi_a1);
  const Complex ob = phi_b0.dot(phi_b1);
  const Complex pa = (std::abs(oa) > 0) ? oa / std::abs(oa) : Complex(1, 0);
  const Complex pb = (std::abs(ob) > 0) ? ob / std::abs(ob) : Complex(1, 0);
  const ComplexVector a1 = phi_a1 / pa;
  const ComplexVector b1 = phi_b1 / pb;
  const double a = std::abs(oa);
  const double b = std::abs(ob);

  Rank2Span span;
  span.params.a = a;
  span.params.b = b;
  const double ab = a * b;
  if (1.0 - ab <= 1e-12) {
    throw ValidationError("build_rank2_span: product vectors are parallel");
  }
  const double root = std::sqrt(std::max((1 - a * a) * (1 - b * b), 0.0));
  span.params.a_plus = root / (1 + ab);
  span.params.a_minus = root / (1 - ab);
  span.params.amplitude = root / (1 - ab * ab);

  ComplexVector psi0(4), psi1(4);
  psi0 << phi_a0[0] * phi_b0[0], phi_a0[0] * phi_b0[1], phi_a0[1] * phi_b0[0],
      phi_a0[1] * phi_b0[1];
  psi1 << a1[0] * b1[0], a1[0] * b1[1], a1[1] * b1[0], a1[1] * b1[1];

  span.basis.resize(4, 2);
  span.basis.col(0) = (psi0 + psi1) / std::sqrt(2.0 * (1 + ab));
  // the i makes both basis columns eigenvectors with nonnegative values once
  // the conjugation phase below is fixed
  span.basis.col(1) = Complex(0, 1) * (psi0 - psi1) / std::sqrt(2.0 * (1 - ab));
  span.projector = span.basis * span.basis.adjoint();

  // fix the conjugation phase so the basis vectors get real eigenvalues
  const AntilinearOp hw = hill_wootters();
  const Complex cross = psi1.dot(hw.m * psi0.conjugate());
  const Complex phase = (std::abs(cross) > 1e-14)
                            ? std::abs(cross) / cross
                            : Complex(1, 0);
  span.compressed = compress(AntilinearOp{phase * hw.m}, span.projector);
  return span;
}

std::pair<double, double> rank2_closed_forms(const Rank2SpanParams& p,
                                             const BlochVector& x) {
  if (p.a < -1e-12 || p.a > 1 + 1e-12 || p.b < -1e-12 || p.b > 1 + 1e-12) {
    throw ValidationError("rank2_closed_forms: overlaps must lie in [0, 1]");
  }
  if (!x.is_psd(1e-9 * std::max(1.0, x.x0 * x.x0))) {
    throw ValidationError("rank2_closed_forms: Bloch vector is not PSD");
  }
  const double ab = p.a * p.b;
  const double one = 1.0 - ab * ab;
  const double fr = (x.x0 - ab * x.x3) * (x.x0 - ab * x.x3) - one * x.x2 * x.x2;
  if (fr < -1e-9 * std::max(1.0, x.x0 * x.x0)) {
    throw ValidationError("rank2_closed_forms: negative fidelity radicand");
  }
  const double cr = (x.x3 - ab * x.x0) * (x.x3 - ab * x.x0) + one * x.x1 * x.x1;
  return {p.amplitude * std::sqrt(std::max(fr, 0.0)),
          p.amplitude * std::sqrt(std::max(cr, 0.0))};
}

}  // namespace conjfid
