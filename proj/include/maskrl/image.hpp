#pragma once

#include "maskrl/common.hpp"

#include <cstdint>
#include <vector>

namespace maskrl {

// Planar CHW float image, values in [0, 1]. Channel count is 3 for RGB
// frames, 4 for RGB+mask frames and 9/12 for stacked observations.
struct Image {
  int h = 0, w = 0, c = 0;
  std::vector<float> data;

  Image() = default;
  Image(int height, int width, int channels)
      : h(height), w(width), c(channels),
        data(static_cast<size_t>(height) * width * channels, 0.0f) {}

  float& at(int ch, int y, int x) {
    return data[(static_cast<size_t>(ch) * h + y) * w + x];
  }
  float at(int ch, int y, int x) const {
    return data[(static_cast<size_t>(ch) * h + y) * w + x];
  }
  // Pointer to the start of one channel plane.
  float* plane(int ch) { return data.data() + static_cast<size_t>(ch) * h * w; }
  const float* plane(int ch) const {
    return data.data() + static_cast<size_t>(ch) * h * w;
  }
  size_t size() const { return data.size(); }
  bool same_shape(const Image& o) const {
    return h == o.h && w == o.w && c == o.c;
  }
};

// Single-channel binary mask; bits hold 0 or 1.
struct Mask {
  int h = 0, w = 0;
  std::vector<uint8_t> bits;

  Mask() = default;
  Mask(int height, int width)
      : h(height), w(width), bits(static_cast<size_t>(height) * width, 0) {}

  uint8_t& at(int y, int x) { return bits[static_cast<size_t>(y) * w + x]; }
  uint8_t at(int y, int x) const { return bits[static_cast<size_t>(y) * w + x]; }

  size_t count() const {
    size_t n = 0;
    for (uint8_t b : bits) n += (b != 0);
    return n;
  }
  bool empty_mask() const { return count() == 0; }
};

inline Mask blank_like(const Mask& m) { return Mask(m.h, m.w); }

}  // namespace maskrl
