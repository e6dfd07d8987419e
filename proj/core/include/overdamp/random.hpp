#pragma once

#include <cstdint>
#include <vector>

namespace overdamp::num {

/// Counter-based stream of standard normal deviates.
///
/// The i-th uniform is the SplitMix64 finalizer applied to
/// seed + (i + 1) * 0x9E3779B97F4A7C15; consecutive uniforms (u1, u2) feed one
/// Box-Muller transform producing two normals (cos branch first). The bit
/// stream of uniforms is platform independent; normals depend only on the
/// platform's log/sqrt/sin/cos. Single owner, not thread safe.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : seed_(seed) {}

  double next();
  std::uint64_t seed() const { return seed_; }
  std::uint64_t uniforms_consumed() const { return counter_; }

private:
  double next_uniform(); // in (0, 1]

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t state);

/// First `count` draws of GaussianStream(seed).
std::vector<double> gaussian_stream(std::uint64_t seed, std::size_t count);

} // namespace overdamp::num
