#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace multinet {

// Derives an independent stream seed from a master seed and a stream name.
// Hashing is fixed (FNV-1a + splitmix64 finalizer) so that the mapping from
// (seed, name) to stream is stable across platforms and builds.  All
// randomness in the library flows through seeds derived this way; there is no
// ambient global RNG.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name);

// Convenience overload for streams keyed by a name plus integer indices,
// e.g. derive_seed(seed, "partition/chain", {k}).
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name,
                          std::initializer_list<std::uint64_t> indices);

// A seeded random stream.  Thin wrapper over mt19937_64 plus the handful of
// draw types the samplers need.  Distribution objects are constructed per
// call so replaying a stream from the same seed always yields the same
// sequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  int uniform_int(int n);

  int poisson(double mean);
  double gamma(double shape);  // scale 1

  // Fisher-Yates shuffle of [first, last) index vectors and the like.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[uniform_int(i + 1)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace multinet
