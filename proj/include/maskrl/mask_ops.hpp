#pragma once

#include "maskrl/common.hpp"
#include "maskrl/image.hpp"

#include <algorithm>
#include <deque>

namespace maskrl {

// ROI rectangle in pixels, half-open bounds checked against the mask shape.
struct RoiRect {
  int u_min = 0, v_min = 0, u_max = 0, v_max = 0;

  void validate(int w, int h) const {
    if (!(0 <= u_min && u_min < u_max && u_max <= w) ||
        !(0 <= v_min && v_min < v_max && v_max <= h))
      throw InputError("roi: rectangle out of bounds or empty");
  }
  bool contains(int u, int v) const {
    return u >= u_min && u < u_max && v >= v_min && v < v_max;
  }
};

// [R,G,B] + mask -> 4-channel frame; the mask becomes channel 3 in the same
// [0,1] value scale as the color channels.
inline Image append_mask(const Image& rgb, const Mask& mask) {
  if (rgb.c != 3) throw InputError("append_mask: expected 3-channel image");
  if (rgb.h != mask.h || rgb.w != mask.w)
    throw InputError("append_mask: mask dimensions do not match image");
  Image out(rgb.h, rgb.w, 4);
  std::copy(rgb.data.begin(), rgb.data.end(), out.data.begin());
  float* m = out.plane(3);
  for (size_t i = 0; i < mask.bits.size(); ++i)
    m[i] = mask.bits[i] ? 1.0f : 0.0f;
  return out;
}

// Keeps the most recent frames and produces the channel-stacked observation
// image, newest block first. A freshly reset ring replicates its only frame.
class FrameRing {
 public:
  explicit FrameRing(int depth = 3) : depth_(depth) {}

  void reset(const Image& frame) {
    frames_.clear();
    frames_.push_front(frame);
  }

  void push(const Image& frame) {
    if (frames_.empty()) throw StateError("frame ring: push before reset");
    frames_.push_front(frame);
    while (static_cast<int>(frames_.size()) > depth_) frames_.pop_back();
  }

  Image stacked() const {
    if (frames_.empty()) throw StateError("frame ring: empty");
    const Image& head = frames_.front();
    Image out(head.h, head.w, head.c * depth_);
    for (int slot = 0; slot < depth_; ++slot) {
      const Image& src =
          frames_[std::min<size_t>(slot, frames_.size() - 1)];
      std::copy(src.data.begin(), src.data.end(),
                out.data.begin() + static_cast<size_t>(slot) * src.size());
    }
    return out;
  }

  int depth() const { return depth_; }
  bool initialized() const { return !frames_.empty(); }

 private:
  int depth_;
  std::deque<Image> frames_;  // front = newest
};

// Zeroes mask pixels outside the ROI. Reward gating downstream runs on the
// intersection (see also roi_all_or_nothing for the strict reading).
inline Mask roi_filter(const Mask& mask, const RoiRect& roi) {
  roi.validate(mask.w, mask.h);
  Mask out(mask.h, mask.w);
  for (int v = roi.v_min; v < roi.v_max; ++v)
    for (int u = roi.u_min; u < roi.u_max; ++u)
      out.at(v, u) = mask.at(v, u);
  return out;
}

// Strict gate: the mask passes unchanged only when every active pixel lies
// inside the ROI; otherwise the result is blank.
inline Mask roi_all_or_nothing(const Mask& mask, const RoiRect& roi) {
  roi.validate(mask.w, mask.h);
  for (int v = 0; v < mask.h; ++v)
    for (int u = 0; u < mask.w; ++u)
      if (mask.at(v, u) && !roi.contains(u, v)) return blank_like(mask);
  return mask;
}

}  // namespace maskrl
