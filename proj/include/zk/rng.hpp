#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace zk {

// splitmix64 finalizer; the building block of the counter-based streams
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_key(std::uint64_t seed, std::int64_t a, std::int64_t b = 0) {
  std::uint64_t h = mix64(seed ^ 0x5bd1e9955bd1e995ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(a));
  h = mix64(h ^ (static_cast<std::uint64_t>(b) * 0xd6e8feb86659fd93ULL));
  return h;
}

/*
 * Counter-based generator.  The n-th draw of a stream is a pure function of
 * (key, n), so streams can be split per item and generated in any order.
 * Satisfies UniformRandomBitGenerator.
 */
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key = 0) : key_(mix64(key)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }

  result_type operator()() { return mix64(key_ ^ mix64(counter_++)); }

  // independent child stream
  Rng split(std::uint64_t i) const { return Rng(key_ ^ mix64(i + 0x632be59bd9b4e019ULL)); }

  // uniform in [0,1) with 53 random bits
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // uniform integer in [a, b]
  std::int64_t integer(std::int64_t a, std::int64_t b) {
    auto span = static_cast<std::uint64_t>(b - a) + 1;
    return a + static_cast<std::int64_t>((*this)() % span);
  }
  double normal() {
    // Box-Muller, one value per call; keeps the draw count per value fixed
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  // E|g|^2 = 1
  std::complex<double> complex_normal() {
    double a = normal(), b = normal();
    return {a * std::numbers::sqrt2 / 2, b * std::numbers::sqrt2 / 2};
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace zk
