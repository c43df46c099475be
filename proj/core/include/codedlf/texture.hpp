#pragma once

#include <cstdint>

#include "codedlf/raster.hpp"

namespace codedlf {

// Band-limited value noise: octaves of a hashed lattice with quintic fade,
// each octave half the period and `persistence` times the amplitude of the
// previous one, mapped affinely into [lo, hi].
struct TextureParams {
  double base_period_px = 32.0;
  int octaves = 3;
  double persistence = 0.5;
  double lo = 0.1;
  double hi = 0.9;
};

GrayImage procedural_texture(int width, int height, std::uint64_t seed,
                             const TextureParams& params = {});

}  // namespace codedlf
