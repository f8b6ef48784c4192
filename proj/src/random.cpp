#include "momlab/random.hpp"

#include <cmath>
#include <numbers>

namespace momlab {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += kGolden);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t seed, Stream stream) {
  SplitMix64 mix(seed ^ (static_cast<std::uint64_t>(stream) * kGolden));
  return mix.next();
}

Vector gaussian_vector(std::size_t n, SplitMix64& rng) {
  Vector v(n);
  for (double& x : v) x = rng.gaussian();
  return v;
}

Vector random_unit_vector(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vector v = gaussian_vector(n, rng);
  const double nrm = norm2(v);
  for (double& x : v) x /= nrm;
  return v;
}

}  // namespace momlab
