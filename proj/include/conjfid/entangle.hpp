#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conjfid/antilinear.hpp"
#include "conjfid/matcore.hpp"
#include "conjfid/measures.hpp"

namespace conjfid {

struct SchmidtDecomposition {
  RealVector coefficients;   // nonnegative, descending
  ComplexMatrix left_basis;  // da x r orthonormal columns
  ComplexMatrix right_basis; // db x r orthonormal columns

  ComplexVector reconstruct() const;
};

/// psi reshaped row-major to a da x db matrix and singular-value decomposed.
SchmidtDecomposition schmidt(const ComplexVector& psi, Index da, Index db);

/// Skew (x) skew conjugation built on the Schmidt bases of psi; its
/// expectation at psi is twice the sum of consecutive coefficient products.
/// Local dimensions must be even with da <= db.
AntilinearOp tailored_conjugation(const ComplexVector& psi, Index da, Index db);

/// 2 sqrt(det of the left reduced state); the supremum of |<psi, Theta psi>|
/// over the skew (x) skew family when the left factor is a qubit.
double pure_witness_supremum(const ComplexVector& psi, Index da, Index db);

/// Canonical anti-Hermitian-factor tensor operators that vanish on every
/// product vector. Odd local dimensions get a skew conjugation on a
/// two-dimensional-pair subspace and zero on the leftover direction.
std::vector<AntilinearOp> hermitian_witness_family(Index da, Index db);

struct SearchResult {
  double value = 0.0;
  AntilinearOp certificate;
};

/// Heuristic lower estimate of the supremum of the theta-concurrence over the
/// skew (x) skew family: seeded random local bases plus greedy refinement
/// with step halving. OpenMP-parallel over restarts; the serial variant
/// returns identical results.
SearchResult sup_concurrence_search(const DensityOperator& rho, Index da, Index db,
                                    int trials, std::uint64_t seed);
SearchResult sup_concurrence_search_serial(const DensityOperator& rho, Index da,
                                           Index db, int trials, std::uint64_t seed);

/// s((1+sqrt(1-x^2))/2) + s((1-sqrt(1-x^2))/2) with s(y) = -y ln y.
double f_hw(double x);

/// Exact entanglement of formation of a two-qubit state.
double eof_2qubit(const DensityOperator& rho);

/// f_hw of the searched concurrence supremum; a lower bound on the
/// entanglement of formation for 2 x even systems, exact for two qubits.
double eof_lower_bound(const DensityOperator& rho, Index da, Index db, int trials,
                       std::uint64_t seed);

struct WitnessReport {
  std::vector<std::pair<std::string, double>> values;
  bool entangled = false;          // some value above threshold
  double threshold = 1e-9;
  ComplexMatrix certificate;       // matrix of the strongest operator
};

/// Fixed 8-operator family probing the three slot groups of a 3-qubit
/// vector; a product vector nulls every member.
WitnessReport three_qubit_product_test(const ComplexVector& psi,
                                       double threshold = 1e-9);
/// 12-operator variant with all four Paulis per slot.
WitnessReport three_qubit_product_test_extended(const ComplexVector& psi,
                                                double threshold = 1e-9);

/// Family values of theta-concurrence at a bipartite state plus the searched
/// supremum, assembled into one report.
WitnessReport bipartite_witness(const DensityOperator& rho, Index da, Index db,
                                int trials, std::uint64_t seed,
                                double threshold = 1e-9);

struct Rank2SpanParams {
  double a = 0.0, b = 0.0;        // local overlaps, real in [0, 1]
  double a_plus = 0.0, a_minus = 0.0;
  double amplitude = 0.0;         // sqrt((1-a^2)(1-b^2)) / (1-a^2 b^2)
};

struct Rank2Span {
  Rank2SpanParams params;
  ComplexMatrix basis;       // 4 x 2, columns phi+ and phi-
  ComplexMatrix projector;   // Q onto the span
  AntilinearOp compressed;   // Q Theta Q with the phase-fixed conjugation

  /// Embed a Bloch vector over (phi+, phi-) as a 4x4 operator.
  ComplexMatrix embed(const BlochVector& x) const;
};

/// Span of two product unit vectors with phases normalized so both overlaps
/// are real nonnegative; degenerate (parallel) input is rejected.
Rank2Span build_rank2_span(const ComplexVector& phi_a0, const ComplexVector& phi_b0,
                           const ComplexVector& phi_a1, const ComplexVector& phi_b1);

/// Closed forms for the compressed-conjugation fidelity and concurrence of a
/// state given by its Bloch vector over (phi+, phi-).
std::pair<double, double> rank2_closed_forms(const Rank2SpanParams& p,
                                             const BlochVector& x);

}  // namespace conjfid
