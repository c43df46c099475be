#include "codedlf/texture.hpp"

#include <cmath>

#include "codedlf/rng.hpp"

namespace codedlf {
namespace {

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double lattice(const CounterRng& rng, std::int64_t ix, std::int64_t iy) {
  const auto key = static_cast<std::uint64_t>(ix) * 0x9E3779B1ULL ^
                   static_cast<std::uint64_t>(iy) << 32 ^ static_cast<std::uint64_t>(iy);
  return rng.uniform(key);
}

// In [0, 1).
double value_noise(const CounterRng& rng, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = fade(x - fx);
  const double ty = fade(y - fy);
  const double v00 = lattice(rng, ix, iy);
  const double v10 = lattice(rng, ix + 1, iy);
  const double v01 = lattice(rng, ix, iy + 1);
  const double v11 = lattice(rng, ix + 1, iy + 1);
  const double top = v00 + tx * (v10 - v00);
  const double bottom = v01 + tx * (v11 - v01);
  return top + ty * (bottom - top);
}

}  // namespace

GrayImage procedural_texture(int width, int height, std::uint64_t seed,
                             const TextureParams& params) {
  require(params.base_period_px > 0.0 && params.octaves >= 1, ErrorKind::kInvalidArgument,
          "texture needs a positive period and at least one octave");
  require(0.0 <= params.lo && params.lo < params.hi && params.hi <= 1.0,
          ErrorKind::kInvalidArgument, "texture range must satisfy 0 <= lo < hi <= 1");

  const CounterRng root(seed);
  GrayImage image(width, height, 0.0);
  double amplitude = 1.0;
  double total = 0.0;
  double period = params.base_period_px;
  for (int o = 0; o < params.octaves; ++o) {
    const CounterRng rng = root.split(static_cast<std::uint64_t>(o));
    // Random lattice offset so octaves do not share grid lines.
    const double ox = rng.uniform(~0ULL) * 1024.0;
    const double oy = rng.uniform(~1ULL) * 1024.0;
    for (int y = 0; y < height; ++y) {
      auto row = image.row(y);
      for (int x = 0; x < width; ++x) {
        row[static_cast<std::size_t>(x)] +=
            amplitude * (2.0 * value_noise(rng, x / period + ox, y / period + oy) - 1.0);
      }
    }
    total += amplitude;
    amplitude *= params.persistence;
    period *= 0.5;
  }
  const double mid = 0.5 * (params.lo + params.hi);
  const double half = 0.5 * (params.hi - params.lo);
  for (double& v : image.pixels()) v = mid + half * v / total;
  return image;
}

}  // namespace codedlf
