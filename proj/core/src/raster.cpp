#include "codedlf/raster.hpp"

#include <algorithm>
#include <cmath>

namespace codedlf {

bool within_range(const GrayImage& image, double lo, double hi) {
  return std::all_of(image.pixels().begin(), image.pixels().end(),
                     [&](double v) { return v >= lo && v <= hi; });
}

std::size_t count_set(const BinaryRaster& raster) {
  return static_cast<std::size_t>(
      std::count_if(raster.pixels().begin(), raster.pixels().end(),
                    [](std::uint8_t v) { return v != 0; }));
}

GrayImage quantize_8bit(const GrayImage& image) {
  GrayImage out = image;
  for (double& v : out.pixels()) {
    v = std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0;
  }
  return out;
}

}  // namespace codedlf
