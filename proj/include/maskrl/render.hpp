#pragma once

#include "maskrl/camera.hpp"
#include "maskrl/common.hpp"
#include "maskrl/image.hpp"
#include "maskrl/sim.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace maskrl {

// What the eye-in-hand camera sees: the placed objects plus a finite table
// rectangle. Hit ids: -1 none, -2 table, >= 0 object index.
struct Scene {
  std::vector<PlacedObject> objects;
  Rect table_region;
  double table_z = 0.0;
  Vec3 table_color = Vec3(0.45, 0.42, 0.40);
  Vec3 background_color = Vec3(0.5, 0.5, 0.5);
};

inline Scene make_scene(const SimState& state, const EpisodeConfig& cfg,
                        const Vec3& table_color = Vec3(0.45, 0.42, 0.40),
                        const Vec3& background_color = Vec3(0.5, 0.5, 0.5)) {
  Scene s;
  s.objects = state.objects;
  s.table_region = cfg.table_region;
  s.table_z = cfg.table_z;
  s.table_color = table_color;
  s.background_color = background_color;
  return s;
}

namespace detail {

constexpr double kRayEps = 1e-9;

inline bool intersect_sphere(const Ray& ray, const Vec3& center, double radius,
                             double& t_hit) {
  const Vec3 oc = ray.origin - center;
  const double b = oc.dot(ray.dir);
  const double c = oc.squaredNorm() - radius * radius;
  const double disc = b * b - c;
  if (disc < 0.0) return false;
  const double sq = std::sqrt(disc);
  double t = -b - sq;
  if (t <= kRayEps) t = -b + sq;
  if (t <= kRayEps) return false;
  t_hit = t;
  return true;
}

inline bool intersect_box(const Ray& ray, const Vec3& center, double half,
                          double& t_hit) {
  double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    const double lo = center[a] - half, hi = center[a] + half;
    if (std::abs(ray.dir[a]) < 1e-15) {
      if (ray.origin[a] < lo || ray.origin[a] > hi) return false;
      continue;
    }
    double ta = (lo - ray.origin[a]) / ray.dir[a];
    double tb = (hi - ray.origin[a]) / ray.dir[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  const double t = (t0 > kRayEps) ? t0 : t1;
  if (t <= kRayEps) return false;
  t_hit = t;
  return true;
}

inline bool intersect_table(const Ray& ray, const Scene& scene, double& t_hit) {
  if (std::abs(ray.dir.z()) < 1e-15) return false;
  const double t = (scene.table_z - ray.origin.z()) / ray.dir.z();
  if (t <= kRayEps) return false;
  const Vec3 p = ray.origin + t * ray.dir;
  if (!scene.table_region.contains(p.x(), p.y())) return false;
  t_hit = t;
  return true;
}

// Nearest hit along the ray; returns hit id and fills depth.
inline int cast(const Ray& ray, const Scene& scene, double& depth) {
  int hit = -1;
  double best = std::numeric_limits<double>::infinity();
  double t;
  if (intersect_table(ray, scene, t) && t < best) {
    best = t;
    hit = -2;
  }
  for (size_t i = 0; i < scene.objects.size(); ++i) {
    const PlacedObject& obj = scene.objects[i];
    const bool ok = obj.shape == Shape::sphere
                        ? intersect_sphere(ray, obj.position, obj.radius, t)
                        : intersect_box(ray, obj.position, obj.radius, t);
    if (ok && t < best) {
      best = t;
      hit = static_cast<int>(i);
    }
  }
  depth = best;
  return hit;
}

}  // namespace detail

struct RenderResult {
  Image rgb;
  Mask mask;                 // silhouette of the requested target
  std::vector<int> hit_ids;  // per pixel, row-major
};

// Flat shading: base color attenuated by 1/(1 + 0.5 * depth). The background
// is unattenuated so hue-based mask recovery stays exact.
inline RenderResult render_frame(const Scene& scene, const CameraModel& cam,
                                 int target_index) {
  cam.validate();
  RenderResult out;
  out.rgb = Image(cam.height, cam.width, 3);
  out.mask = Mask(cam.height, cam.width);
  out.hit_ids.assign(static_cast<size_t>(cam.height) * cam.width, -1);

  for (int y = 0; y < cam.height; ++y) {
    for (int x = 0; x < cam.width; ++x) {
      const Ray ray = pixel_ray(cam, x, y);
      double depth;
      const int hit = detail::cast(ray, scene, depth);
      out.hit_ids[static_cast<size_t>(y) * cam.width + x] = hit;

      Vec3 color;
      if (hit == -1) {
        color = scene.background_color;
      } else {
        const Vec3 base = (hit == -2) ? scene.table_color : scene.objects[hit].color;
        color = base / (1.0 + 0.5 * depth);
      }
      for (int ch = 0; ch < 3; ++ch)
        out.rgb.at(ch, y, x) = static_cast<float>(clamp(color[ch], 0.0, 1.0));
      if (hit >= 0 && hit == target_index) out.mask.at(y, x) = 1;
    }
  }
  return out;
}

inline Image render_rgb(const Scene& scene, const CameraModel& cam) {
  return render_frame(scene, cam, -1).rgb;
}

inline Mask silhouette_mask(const Scene& scene, const CameraModel& cam,
                            int target_index) {
  if (target_index < 0 || target_index >= static_cast<int>(scene.objects.size()))
    throw InputError("silhouette_mask: target_index out of range");
  return render_frame(scene, cam, target_index).mask;
}

}  // namespace maskrl
