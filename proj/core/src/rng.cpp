#include "codedlf/rng.hpp"

namespace codedlf {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  const std::uint64_t z = mix64(key_ ^ 0xD1B54A32D192ED03ULL) + (counter + 1) * kGolden;
  return mix64(mix64(z) ^ (key_ >> 17 | key_ << 47));
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

CounterRng CounterRng::split(std::uint64_t stream) const noexcept {
  return CounterRng(mix64(key_ + mix64(stream * kGolden + 0x632BE59BD9B4E019ULL)));
}

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r = next_bits();
  while (r >= limit) r = next_bits();
  return r % n;
}

}  // namespace codedlf
