#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conjfid {

struct FamilyResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;   // largest residual observed
  double budget = 0.0;  // tolerance it was held against
};

struct VerifyReport {
  std::vector<FamilyResult> families;
  bool all_pass = false;
};

/// Seeded invariant sweep at the given dimension: roof attainment and
/// sandwich, the rank-2 identity, convexity/concavity with homogeneity and
/// sub/superadditivity, phase-interval identities, leaf flatness, and witness
/// vanishing on separable mixtures.
VerifyReport run_verify(int dim, int trials, std::uint64_t seed);

}  // namespace conjfid
