#pragma once

#include "maskrl/common.hpp"
#include "maskrl/image.hpp"

#include <algorithm>
#include <cmath>

namespace maskrl {

struct Hsv {
  double h = 0.0;  // degrees in [0, 360)
  double s = 0.0;
  double v = 0.0;
};

inline Hsv rgb_to_hsv(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    out.h = 0.0;
  } else if (mx == r) {
    out.h = 60.0 * std::fmod((g - b) / d + 6.0, 6.0);
  } else if (mx == g) {
    out.h = 60.0 * ((b - r) / d + 2.0);
  } else {
    out.h = 60.0 * ((r - g) / d + 4.0);
  }
  return out;
}

// Hue window in degrees; wraps around 360 when lo > hi.
struct HueWindow {
  double lo = 0.0, hi = 0.0;

  bool contains(double h) const {
    if (lo <= hi) return h >= lo && h <= hi;
    return h >= lo || h <= hi;
  }
  double width() const { return lo <= hi ? hi - lo : 360.0 - lo + hi; }
};

inline Mask color_filter_mask(const Image& rgb, const HueWindow& window,
                              double sat_min, double val_min) {
  if (rgb.c != 3) throw InputError("color_filter_mask: expected 3-channel image");
  if (!(window.width() < 360.0))
    throw InputError("color_filter_mask: hue window must be narrower than 360");
  Mask out(rgb.h, rgb.w);
  for (int y = 0; y < rgb.h; ++y) {
    for (int x = 0; x < rgb.w; ++x) {
      const Hsv hsv = rgb_to_hsv(rgb.at(0, y, x), rgb.at(1, y, x), rgb.at(2, y, x));
      if (hsv.s >= sat_min && hsv.v >= val_min && window.contains(hsv.h))
        out.at(y, x) = 1;
    }
  }
  return out;
}

// Window centered on the hue of a base color, for privileged-free mask
// generation from renders.
inline HueWindow hue_window_around(const Vec3& color, double half_width) {
  const Hsv hsv = rgb_to_hsv(color.x(), color.y(), color.z());
  double lo = std::fmod(hsv.h - half_width + 360.0, 360.0);
  double hi = std::fmod(hsv.h + half_width, 360.0);
  return HueWindow{lo, hi};
}

}  // namespace maskrl
