#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace psc {

/// Philox4x32-10 block function (Salmon et al., counter-based). Exposed for
/// known-answer testing.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Reproducible random stream keyed by (seed, stream_id).
///
/// The generator is counter based: the seed is the Philox key, the stream id
/// occupies the upper half of the 128-bit counter and the lower half counts
/// blocks. Two streams with the same (seed, stream_id) produce identical
/// sequences; distinct stream ids never share a counter value.
///
/// Satisfies UniformRandomBitGenerator, so it can be handed to <random>
/// distributions, but the library itself only uses the uniform / normal
/// helpers below so that results do not depend on the standard library.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Child stream for an indexed sub-task. The child id is a mixed function
  /// of (stream_id, index), so sample i of a Monte Carlo loop gets the same
  /// numbers no matter how the loop is split across workers.
  RngStream substream(std::uint64_t index) const;

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on the open interval (0, 1), 53 bits.
  double uniform();
  /// Standard real normal N(0, 1) via Box-Muller.
  double normal();
  /// Standard complex normal: real and imaginary parts N(0, 1/2).
  std::complex<double> complex_normal();

 private:
  std::uint32_t next32();
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; used to derive stream ids.
std::uint64_t mix64(std::uint64_t x);

}  // namespace psc
