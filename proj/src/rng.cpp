#include "multinet/rng.hpp"

#include <stdexcept>

namespace multinet {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a_byte(std::uint64_t h, unsigned char b) {
  return (h ^ b) * kFnvPrime;
}

std::uint64_t fnv1a_u64(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h = fnv1a_byte(h, static_cast<unsigned char>(v >> (8 * i)));
  }
  return h;
}

// splitmix64 finalizer; spreads low-entropy hashes over the full 64-bit range.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name) {
  std::uint64_t h = fnv1a_u64(kFnvOffset, master);
  for (char c : stream_name) {
    h = fnv1a_byte(h, static_cast<unsigned char>(c));
  }
  return mix(h);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name,
                          std::initializer_list<std::uint64_t> indices) {
  std::uint64_t h = fnv1a_u64(kFnvOffset, master);
  for (char c : stream_name) {
    h = fnv1a_byte(h, static_cast<unsigned char>(c));
  }
  for (std::uint64_t v : indices) {
    h = fnv1a_byte(h, 0xff);  // separator so {1,23} != {12,3}
    h = fnv1a_u64(h, v);
  }
  return mix(h);
}

int RngStream::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
  // Rejection to avoid modulo bias; loop runs once in almost all cases.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return static_cast<int>(v % bound);
}

int RngStream::poisson(double mean) {
  if (mean < 0) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0) return 0;
  std::poisson_distribution<int> dist(mean);
  return dist(engine_);
}

double RngStream::gamma(double shape) {
  if (shape <= 0) throw std::invalid_argument("gamma: shape must be positive");
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

}  // namespace multinet
