#include "dynent/rng.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "dynent/errors.hpp"

namespace dynent {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (stream * 0xD1B54A32D192ED03ULL);
  std::array<std::uint32_t, 16> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const std::uint64_t v = splitmix64(state);
    words[i] = static_cast<std::uint32_t>(v);
    words[i + 1] = static_cast<std::uint32_t>(v >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0, 1] keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double truncated_normal_positive(Rng& rng, double mean, double std) {
  if (std < 0.0) throw DomainError("standard deviation must be non-negative");
  if (std == 0.0) {
    if (!(mean > 0.0)) throw DomainError("degenerate waiting-time distribution must have a positive mean");
    return mean;
  }
  if (mean / std < -8.0) throw DomainError("truncated normal has negligible positive mass");
  while (true) {
    const double x = mean + std * rng.normal();
    if (x > 0.0) return x;
  }
}

namespace {

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
double upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace

double truncated_normal_mean(double mean, double std) {
  if (std == 0.0) return mean;
  const double a = -mean / std;
  return mean + std * phi(a) / upper_tail(a);
}

double truncated_normal_stddev(double mean, double std) {
  if (std == 0.0) return 0.0;
  const double a = -mean / std;
  const double lam = phi(a) / upper_tail(a);
  return std * std::sqrt(1.0 + a * lam - lam * lam);
}

}  // namespace dynent
