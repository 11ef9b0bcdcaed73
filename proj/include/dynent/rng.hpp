#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dynent {

/// Seedable stream generator. Each (seed, stream) pair yields an independent
/// mt19937_64 whose state is expanded from splitmix64, and every variate is
/// derived from raw 64-bit outputs so sequences are identical on every host.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64(splitmix64-seeded)/box-muller";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal variate.
  double normal();

  /// Child stream derived deterministically from this generator's seed.
  Rng split(std::uint64_t stream) const { return Rng(seed_, stream_ ^ (stream * 0x9E3779B97F4A7C15ULL + 1)); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Stable 64-bit hash (FNV-1a followed by a splitmix64 finalizer).
std::uint64_t stable_hash(std::string_view text);

/// Normal(mean, std) draw resampled until positive. std == 0 returns mean.
double truncated_normal_positive(Rng& rng, double mean, double std);

/// Mean of Normal(mean, std) conditioned on being positive.
double truncated_normal_mean(double mean, double std);
double truncated_normal_stddev(double mean, double std);

}  // namespace dynent
