#pragma once

#include <cstdint>
#include <random>

namespace juntawalk {

// splitmix64 finalizer.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pure function of its arguments; used for every sub-stream so that a
// (master, cell, repetition) triple always names the same randomness.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
  return mix_seed(mix_seed(mix_seed(base) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

// Deterministic generator. Bounded draws and coin flips are done here rather
// than through <random> distributions so streams are identical across
// standard library implementations.
__extension__ using uint128 = unsigned __int128;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    uint128 product =
        static_cast<uint128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<uint128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  bool coin() {
    if (coins_left_ == 0) {
      coin_buffer_ = engine_();
      coins_left_ = 64;
    }
    const bool c = (coin_buffer_ & 1U) != 0;
    coin_buffer_ >>= 1;
    --coins_left_;
    return c;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Poisson by sequential inversion; mean must stay below ~700.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  std::uint64_t coin_buffer_ = 0;
  int coins_left_ = 0;
};

}  // namespace juntawalk
