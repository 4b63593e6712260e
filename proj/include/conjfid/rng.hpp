#pragma once

#include <cstdint>

#include "conjfid/matcore.hpp"

namespace conjfid {

/// Small deterministic generator (xoshiro256** seeded through splitmix64).
/// Results are reproducible across platforms, which the report format relies
/// on; trial loops derive independent streams via for_trial.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for one trial of a seeded batch.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();                   // standard normal
  Complex cgauss();                    // complex standard normal
  int uniform_int(int lo, int hi);     // inclusive bounds

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

ComplexVector random_state(Index d, Rng& rng);          // Haar unit vector
ComplexMatrix random_unitary(Index d, Rng& rng);        // QR with phase-fixed diagonal
ComplexMatrix random_density(Index d, Rng& rng);        // unit-trace Wishart
ComplexMatrix random_symmetric(Index d, Rng& rng);      // complex symmetric
ComplexMatrix random_hermitian(Index d, Rng& rng);

}  // namespace conjfid
