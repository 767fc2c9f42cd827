#pragma once

#include <cstdint>
#include <random>

namespace igasc {

/// Seeded 64-bit generator with independent, reproducible sub-streams.
///
/// The engine is std::mt19937_64 initialised through std::seed_seq from
/// (seed, stream...), both of which have standardized output, and all
/// continuous variates are produced by inversion or exact rejection from
/// uniforms so that sequences are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0);

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform();
  /// Standard normal by inversion.
  double normal();
  /// Standard exponential.
  double exponential();
  /// Student-t with nu degrees of freedom (Bailey's polar method).
  double student_t(double nu);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace igasc
