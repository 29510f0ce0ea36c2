#pragma once

#include "maskrl/common.hpp"

#include <optional>

namespace maskrl {

// Pinhole camera. `pose` maps camera coordinates to world coordinates;
// camera frame convention is +z forward, +x image-right, +y image-down.
struct CameraModel {
  int width = 80, height = 45;
  double focal_length = 57.0;  // pixels
  double cx = 40.0, cy = 22.5;
  Transform pose = Transform::Identity();

  void validate() const {
    if (width <= 0 || height <= 0)
      throw InputError("camera: width and height must be > 0");
    if (!(focal_length > 0.0)) throw InputError("camera: focal_length must be > 0");
    if (cx < 0.0 || cx > width || cy < 0.0 || cy > height)
      throw InputError("camera: principal point must lie inside the image");
  }
};

// Projects a world point; nullopt when the point is not in front of the camera.
inline std::optional<Vec2> project_point(const CameraModel& cam,
                                         const Vec3& world_point) {
  const Vec3 p = cam.pose.inverse() * world_point;
  if (p.z() <= 0.0) return std::nullopt;
  return Vec2(cam.cx + cam.focal_length * p.x() / p.z(),
              cam.cy + cam.focal_length * p.y() / p.z());
}

// World-frame ray through the center of pixel (px, py).
struct Ray {
  Vec3 origin;
  Vec3 dir;  // unit length
};

inline Ray pixel_ray(const CameraModel& cam, int px, int py) {
  const Vec3 d_cam((px + 0.5 - cam.cx) / cam.focal_length,
                   (py + 0.5 - cam.cy) / cam.focal_length, 1.0);
  return Ray{cam.pose.translation(), (cam.pose.linear() * d_cam).normalized()};
}

}  // namespace maskrl
