#pragma once
// Deterministic random streams: uniforms taken directly from mt19937_64 bits
// and normals via Box-Muller, so a seed reproduces the same draws everywhere.

#include <cstdint>
#include <random>
#include <vector>

namespace nm01 {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // splitmix64 of (seed, stream); used to derive independent per-trial seeds.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
    return Rng(mix(seed, trial));
  }

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  std::uint64_t uniform_below(std::uint64_t bound);  // unbiased, [0, bound)
  std::vector<int> sample_indices(int n, int k);     // k distinct from [0, n)

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nm01
