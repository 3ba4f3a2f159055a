#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace lll {

/// Reproducible random source. The raw stream is std::mt19937_64 seeded with
/// the 64-bit seed (its output sequence is fixed by the C++ standard);
/// bounded draws use rejection sampling on top of it instead of
/// std::uniform_int_distribution, whose algorithm varies between standard
/// libraries. Same seed, same sequence, on every platform.
class Rng {
 public:
  static constexpr std::string_view generator_name = "mt19937_64/reject";

  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // 2^64 mod bound; discarding draws below it leaves a multiple of bound.
    const std::uint64_t reject = (0 - bound) % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < reject);
    return x % bound;
  }

  std::uint32_t below32(std::uint32_t bound) { return static_cast<std::uint32_t>(below(bound)); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace lll
