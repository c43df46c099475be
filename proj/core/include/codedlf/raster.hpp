#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "codedlf/error.hpp"

namespace codedlf {

// Row-major 2D grid. x is the column (u), y is the row (v).
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    require(width >= 1 && height >= 1, ErrorKind::kInvalidArgument,
            "raster dimensions must be positive");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }
  Raster(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    require(width >= 1 && height >= 1, ErrorKind::kInvalidArgument,
            "raster dimensions must be positive");
    require(data_.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
            ErrorKind::kInvalidArgument, "raster data length must equal width * height");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(int x, int y) noexcept {
    assert(in_bounds(x, y));
    return data_[index(x, y)];
  }
  const T& operator()(int x, int y) const noexcept {
    assert(in_bounds(x, y));
    return data_[index(x, y)];
  }

  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::span<T> row(int y) noexcept {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(int y) const noexcept {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }

  template <typename U>
  bool same_shape(const Raster<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

// Intensities live in [0, 1] for views; coded images hold sums up to 2.
using GrayImage = Raster<double>;
// Per-pixel 0/1 flags.
using BinaryRaster = Raster<std::uint8_t>;
// Disparity in pixels.
using DisparityMap = Raster<double>;

template <typename T, typename U>
void require_same_shape(const Raster<T>& a, const Raster<U>& b, const char* what) {
  require(a.same_shape(b), ErrorKind::kInvalidArgument,
          std::string("dimension mismatch: ") + what);
}

// True when every pixel lies in [lo, hi].
bool within_range(const GrayImage& image, double lo, double hi);

std::size_t count_set(const BinaryRaster& raster);

// Rounds to the nearest k/255, the representable values of an 8-bit sensor.
GrayImage quantize_8bit(const GrayImage& image);

}  // namespace codedlf
