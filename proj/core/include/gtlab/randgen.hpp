// randgen.hpp - deterministic seeded generators for all random test objects
//
// PRNG contract (pinned so golden files reproduce everywhere):
//   * xoshiro256++ state, seeded through SplitMix64
//   * per-trial streams derive from (master_seed, salt, trial_index) only
//   * uniforms take the top 53 bits; Gaussians via Box-Muller on fixed-order draws
//   * orthonormalization is Householder QR with column phases fixed so the
//     R diagonal is real non-negative
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gtlab/matcore.hpp"
#include "gtlab/tracefn.hpp"

namespace gtlab {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// Value-semantic xoshiro256++ stream with a Box-Muller spare cache.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// The only sanctioned way to split: trial i of a salted consumer sees a
  /// stream that depends on (master_seed, salt, i) and nothing else.
  static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t salt,
                                std::uint64_t index);

  std::uint64_t next_u64();
  double uniform();      // [0,1)
  double uniform_pos();  // (0,1]
  double uniform_range(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
  double normal();                  // N(0,1)
  Complex cnormal();                // independent N(0,1) re/im parts

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct DimRange {
  int lo = 1;
  int hi = 1;
};

/// Knobs for the randomized ensembles; validated before use.
struct GenConfig {
  std::uint64_t seed = 0;
  DimRange n{1, 5};
  DimRange m{1, 5};
  DimRange k{1, 4};
  double scale = 4.0;         // cap on Hermitian operator norms
  double min_singular = 0.2;  // for invertible contractions

  void validate() const;
};

int draw_dim(const DimRange& range, RandomStream& stream);

/// Row-major fill of independent complex standard Gaussians.
ComplexMatrix gaussian_matrix(int rows, int cols, RandomStream& stream);

/// Thin Q of a Householder QR with the R-diagonal phase convention applied.
ComplexMatrix orthonormal_columns(const ComplexMatrix& g);

/// (G+G*)/2 clipped to operator norm <= scale.
HermitianMatrix rand_hermitian(int n, double scale, RandomStream& stream);

/// exp of a Hermitian draw with spectrum clipped so condition <= cond_cap,
/// times a log-uniform magnitude in [0.5, 2].
PositiveDefiniteMatrix rand_pd(int n, double cond_cap, RandomStream& stream);

/// QR-orthonormalized Gaussian (kn) x m stack split into k blocks; sub tuples
/// are the same scaled by a factor in (0.3, 1). Requires k*n >= m.
ContractionTuple rand_contraction_tuple(int k, int n, int m, bool exact, RandomStream& stream);

/// U diag(s) V* with Haar-ish unitaries and singular values in [min_singular, 1].
ComplexMatrix rand_invertible_contraction(int n, double min_singular, RandomStream& stream);

/// Random unitary (square orthonormal draw).
ComplexMatrix rand_unitary(int n, RandomStream& stream);

/// Two positive definite matrices with a common random eigenbasis and
/// independent spectra exp(U(-scale, scale)).
std::pair<PositiveDefiniteMatrix, PositiveDefiniteMatrix> rand_commuting_pair(
    int n, double scale, RandomStream& stream);

}  // namespace gtlab
