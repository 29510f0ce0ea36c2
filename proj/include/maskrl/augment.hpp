#pragma once

#include "maskrl/common.hpp"
#include "maskrl/image.hpp"
#include "maskrl/rng.hpp"

#include <cmath>
#include <vector>

namespace maskrl {

// Replicate-pad by `pad` on every side, then crop a window of the original
// size at offset (dx, dy) from the padded top-left, dx, dy in {0 .. 2*pad}.
// All channels shift together so masks stay registered with their pixels.
inline Image shift_crop(const Image& img, int pad, int dx, int dy) {
  if (pad < 0) throw InputError("random_shift: pad must be >= 0");
  if (dx < 0 || dx > 2 * pad || dy < 0 || dy > 2 * pad)
    throw InputError("random_shift: offset outside padded range");
  if (pad == 0) return img;
  Image out(img.h, img.w, img.c);
  for (int ch = 0; ch < img.c; ++ch) {
    for (int y = 0; y < img.h; ++y) {
      const int sy = clamp(y + dy - pad, 0, img.h - 1);
      for (int x = 0; x < img.w; ++x) {
        const int sx = clamp(x + dx - pad, 0, img.w - 1);
        out.at(ch, y, x) = img.at(ch, sy, sx);
      }
    }
  }
  return out;
}

inline Image random_shift(const Image& img, int pad, Rng& rng) {
  if (pad == 0) return img;
  const int dx = uniform_int(rng, 0, 2 * pad);
  const int dy = uniform_int(rng, 0, 2 * pad);
  return shift_crop(img, pad, dx, dy);
}

struct PhotometricFactors {
  double brightness = 1.0;
  double contrast = 1.0;
  double saturation = 1.0;
  double blur_sigma = 0.0;  // 0 disables the blur pass
};

inline PhotometricFactors sample_photometric(Rng& rng, double lo = 0.8,
                                             double hi = 1.2) {
  PhotometricFactors f;
  f.brightness = uniform(rng, lo, hi);
  f.contrast = uniform(rng, lo, hi);
  f.saturation = uniform(rng, lo, hi);
  f.blur_sigma = uniform(rng, lo, hi);
  return f;
}

namespace detail {

inline void gaussian_blur_plane(float* plane, int h, int w, double sigma,
                                std::vector<float>& tmp) {
  const int radius = std::max(1, static_cast<int>(std::ceil(2.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  tmp.resize(static_cast<size_t>(h) * w);
  for (int y = 0; y < h; ++y) {  // horizontal pass, replicate border
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * plane[y * w + clamp(x + i, 0, w - 1)];
      tmp[static_cast<size_t>(y) * w + x] = static_cast<float>(acc);
    }
  }
  for (int y = 0; y < h; ++y) {  // vertical pass
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * tmp[static_cast<size_t>(clamp(y + i, 0, h - 1)) * w + x];
      plane[y * w + x] = static_cast<float>(acc);
    }
  }
}

}  // namespace detail

// Fixed order: brightness, contrast, saturation, blur; output clamped to
// [0,1]. Applies to the first 3 channels only; mask channels pass through.
inline Image photometric_augment(const Image& img, const PhotometricFactors& f) {
  if (img.c < 3) throw InputError("photometric_augment: need >= 3 channels");
  Image out = img;
  const size_t n = static_cast<size_t>(img.h) * img.w;

  for (int ch = 0; ch < 3; ++ch) {
    float* p = out.plane(ch);
    for (size_t i = 0; i < n; ++i) p[i] = static_cast<float>(p[i] * f.brightness);
  }

  // contrast pivots on the mean gray level of the brightness-adjusted image
  double mean = 0.0;
  for (size_t i = 0; i < n; ++i)
    mean += 0.299 * out.plane(0)[i] + 0.587 * out.plane(1)[i] + 0.114 * out.plane(2)[i];
  mean /= static_cast<double>(n);
  for (int ch = 0; ch < 3; ++ch) {
    float* p = out.plane(ch);
    for (size_t i = 0; i < n; ++i)
      p[i] = static_cast<float>((p[i] - mean) * f.contrast + mean);
  }

  for (size_t i = 0; i < n; ++i) {
    const double gray = 0.299 * out.plane(0)[i] + 0.587 * out.plane(1)[i] +
                        0.114 * out.plane(2)[i];
    for (int ch = 0; ch < 3; ++ch) {
      float* p = out.plane(ch);
      p[i] = static_cast<float>(gray + (p[i] - gray) * f.saturation);
    }
  }

  if (f.blur_sigma > 0.0) {
    std::vector<float> tmp;
    for (int ch = 0; ch < 3; ++ch)
      detail::gaussian_blur_plane(out.plane(ch), out.h, out.w, f.blur_sigma, tmp);
  }

  for (int ch = 0; ch < 3; ++ch) {
    float* p = out.plane(ch);
    for (size_t i = 0; i < n; ++i) p[i] = clamp(p[i], 0.0f, 1.0f);
  }
  return out;
}

// out = alpha * sim + (1 - alpha) * real, per pixel per channel.
inline Image image_mix(const Image& sim, const Image& real, double alpha) {
  if (!sim.same_shape(real)) throw InputError("image_mix: shape mismatch");
  if (alpha < 0.0 || alpha > 1.0) throw InputError("image_mix: alpha not in [0,1]");
  Image out(sim.h, sim.w, sim.c);
  for (size_t i = 0; i < sim.data.size(); ++i)
    out.data[i] = static_cast<float>(alpha * sim.data[i] + (1.0 - alpha) * real.data[i]);
  return out;
}

// I.i.d. Gaussian noise on joint readings, sigma in radians.
inline Eigen::VectorXd sensor_noise(const Eigen::VectorXd& joint_reading,
                                    double sigma, Rng& rng) {
  if (sigma < 0.0) throw InputError("sensor_noise: sigma must be >= 0");
  if (sigma == 0.0) return joint_reading;
  Eigen::VectorXd out = joint_reading;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += normal(rng, 0.0, sigma);
  return out;
}

}  // namespace maskrl
