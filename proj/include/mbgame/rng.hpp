#pragma once

#include <cstdint>
#include <limits>

namespace mbgame {

// Counter-based generator: the i-th draw of a stream is a pure function of
// (seed, stream, i), so any playout can be replayed from its root seed.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % n;
  }

  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Independent stream keyed off the same root seed.
  CounterRng fork(std::uint64_t stream) const { return CounterRng(seed_, mix(stream_ ^ mix(stream + 1))); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

template <typename Container>
void shuffle_in_place(Container& c, CounterRng& rng) {
  for (std::size_t i = c.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(c[i - 1], c[j]);
  }
}

}  // namespace mbgame
