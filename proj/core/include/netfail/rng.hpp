#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace netfail {

// Deterministic pseudo-random stream keyed by (master seed, stream index).
// xoshiro256** state seeded through SplitMix64 from a hash of both keys, so
// a replication that owns stream index i draws the same numbers no matter
// which thread runs it. Single owner; do not share between threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  // Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream index for replication `index` inside an independent namespace
// (e.g. one namespace per estimator method).
constexpr std::uint64_t stream_id(std::uint64_t space, std::uint64_t index) {
  return (space << 40) ^ index;
}

}  // namespace netfail
