#pragma once

#include <cmath>
#include <cstdint>

namespace smigan::nn {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the stream is a pure function of
/// (seed, stream, instance), so any draw sequence can be replayed by
/// reconstructing the generator — no hidden state to persist across
/// checkpoint/resume.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t instance = 0)
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ instance)) {}

  std::uint64_t next_u64() {
    return splitmix64(key_ ^ (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  /// [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// (0, 1]
  double uniform_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Box-Muller; consumes two draws.
  double gaussian() {
    double u1 = uniform_open();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Uniform in [-a, a].
  double symmetric(double a) { return (2.0 * uniform() - 1.0) * a; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Stream ids; instance encodes step/epoch so training is replayable from
// any checkpoint boundary.
namespace rng_stream {
constexpr std::uint64_t kParamInit = 1;
constexpr std::uint64_t kGenNoise = 2;
constexpr std::uint64_t kGenSample = 3;
constexpr std::uint64_t kGenDropout = 4;
constexpr std::uint64_t kDiscDropout = 5;
constexpr std::uint64_t kShuffle = 6;
constexpr std::uint64_t kMleNoise = 7;
constexpr std::uint64_t kMleDropout = 8;
constexpr std::uint64_t kEvalSample = 9;
constexpr std::uint64_t kPairSubsample = 10;
constexpr std::uint64_t kPcaInit = 11;
}  // namespace rng_stream

}  // namespace smigan::nn
