#pragma once

#include <cstdint>
#include <random>

namespace plsem {

// Reproducible generator: std::mt19937_64 (bit sequence fixed by the C++
// standard), 53-bit uniforms from the top bits, and normals from the
// Marsaglia polar method. Results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // [0, 1)
  double uniform();
  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  bool bernoulli(double prob) { return uniform() < prob; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 mix of (master, stream): independent child seeds for replicates
// and sub-tasks.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace plsem
