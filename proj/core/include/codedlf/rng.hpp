#pragma once

#include <cstdint>

namespace codedlf {

// Stateless counter-based generator: the n-th draw of a stream is a pure
// function of (key, n), so independent streams can be derived by key and
// consumed from any thread in any order with identical results.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key() const noexcept { return key_; }

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform(std::uint64_t counter) const noexcept;

  // Child generator for a named sub-stream (capture index, octave, ...).
  CounterRng split(std::uint64_t stream) const noexcept;

 private:
  std::uint64_t key_;
};

// Sequential view over a CounterRng for code that just wants "the next draw".
class RngStream {
 public:
  explicit RngStream(CounterRng rng) noexcept : rng_(rng) {}
  explicit RngStream(std::uint64_t key) noexcept : rng_(key) {}

  std::uint64_t next_bits() noexcept { return rng_.bits(counter_++); }
  double uniform() noexcept { return rng_.uniform(counter_++); }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace codedlf
