#include "overdamp/random.hpp"

#include <cmath>
#include <numbers>

namespace overdamp::num {

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double GaussianStream::next_uniform() {
  ++counter_;
  const std::uint64_t bits = splitmix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
  // 53 random bits mapped to (0, 1]
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<double> gaussian_stream(std::uint64_t seed, std::size_t count) {
  GaussianStream stream(seed);
  std::vector<double> out(count);
  for (double& v : out) v = stream.next();
  return out;
}

} // namespace overdamp::num
