#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "codedlf/raster.hpp"
#include "codedlf/rng.hpp"

namespace codedlf::testing {

inline GrayImage uniform_noise_image(int w, int h, std::uint64_t seed) {
  GrayImage img(w, h);
  RngStream rng(seed);
  for (auto& p : img.pixels()) p = rng.uniform();
  return img;
}

inline GrayImage constant_image(int w, int h, double v) { return GrayImage(w, h, v); }

inline GrayImage ramp_image(int w, int h) {
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img(x, y) = static_cast<double>(x) / (w - 1);
  return img;
}

// 0.5 + 0.35 sin(2 pi x / px) cos(2 pi y / py)
inline double sinusoid(double x, double y, double px = 40.0, double py = 56.0) {
  return 0.5 + 0.35 * std::sin(2.0 * std::numbers::pi * x / px) *
                   std::cos(2.0 * std::numbers::pi * y / py);
}

inline GrayImage sinusoid_image(int w, int h) {
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img(x, y) = sinusoid(x, y);
  return img;
}

}  // namespace codedlf::testing
