#pragma once

#include <cstdint>

namespace apx {

// splitmix64: the project-wide seedable generator. Runs are bit-reproducible;
// independent streams come from stream_for_trial(seed, trial).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

// Stream i of a seeded run: decorrelated from streams j != i by mixing the
// trial index through the splitmix finalizer before seeding.
inline SplitMix64 stream_for_trial(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
  return SplitMix64(mixer.next());
}

}  // namespace apx
