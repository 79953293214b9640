#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ia {

/// SplitMix64 (Steele/Lea/Flood). Chosen because it is trivially splittable:
/// every substream is derived by remixing (seed, tag, index), so adding
/// realizations to a batch never perturbs earlier ones, and the bit stream is
/// identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 significant bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log argument.
  double uniform01_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Circularly-symmetric complex Gaussian CN(0, 1): real and imaginary parts
  /// each have variance 1/2. Box-Muller in polar form.
  std::complex<double> complex_gaussian() {
    const double u = uniform01_open();
    const double v = uniform01();
    const double r = std::sqrt(-std::log(u));
    const double t = 2.0 * M_PI * v;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent substream seed from (master, tag, index) by chained
/// SplitMix64 remixing.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t tag,
                                   std::uint64_t index) {
  SplitMix64 a(master);
  SplitMix64 b(a.next() ^ tag);
  SplitMix64 c(b.next() ^ index);
  return c.next();
}

namespace stream_tag {
// Purpose tags for harness-level stream derivation (one per realization).
inline constexpr std::uint64_t kChannels = 0x4348414e4e454c53ull;
inline constexpr std::uint64_t kPrecoders = 0x505245434f444552ull;
// Internal per-block tags used by the samplers.
inline constexpr std::uint64_t kChannelBlock = 0x48424c4f434bull;
inline constexpr std::uint64_t kPrecoderBlock = 0x56424c4f434bull;
}  // namespace stream_tag

}  // namespace ia
