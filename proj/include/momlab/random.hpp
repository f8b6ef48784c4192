#pragma once

#include <cstdint>
#include <optional>

#include "momlab/linalg.hpp"

namespace momlab {

/// splitmix64 generator. Streams are reproducible from the published
/// constants alone: state advances by 0x9e3779b97f4a7c15 and each output
/// is the standard splitmix64 finalizer of the new state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in (0, 1): top 53 bits, offset by half an ulp so 0 never occurs.
  double uniform();
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double gaussian();

 private:
  std::uint64_t state_;
  std::optional<double> spare_;
};

/// Independent component streams derived from one user seed.
enum class Stream : std::uint64_t {
  rotation = 1,
  initial_point = 2,
  sweep_cell = 3,
};

/// Seed for `stream`: the first splitmix64 output of seed ^ (stream * golden).
std::uint64_t derive_seed(std::uint64_t seed, Stream stream);

Vector gaussian_vector(std::size_t n, SplitMix64& rng);
/// Gaussian direction normalized to unit Euclidean length.
Vector random_unit_vector(std::size_t n, std::uint64_t seed);

}  // namespace momlab
