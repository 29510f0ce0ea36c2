#pragma once

#include "maskrl/common.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace maskrl {

// Serial kinematic chain. Joint 0 yaws about the base +z axis, every later
// joint pitches about the local +y axis; each link extends along local +x.
// With all joint angles zero the chain lies along base +x.
struct ChainSpec {
  std::vector<double> link_lengths;                    // meters, one per joint
  std::vector<std::pair<double, double>> joint_limits; // radians, (min, max)
  double velocity_limit = 1.5;                         // rad/s, symmetric
  Transform base = Transform::Identity();
  Transform camera_offset = Transform::Identity();     // end-effector -> camera
  std::array<Vec3, 2> finger_offsets = {Vec3(0.05, 0.03, 0.0),
                                        Vec3(0.05, -0.03, 0.0)};

  int dof() const { return static_cast<int>(link_lengths.size()); }

  void validate() const {
    if (dof() < 2) throw InputError("chain: dof must be >= 2");
    if (joint_limits.size() != link_lengths.size())
      throw InputError("chain: joint_limits size must equal link count");
    for (double l : link_lengths)
      if (!(l > 0.0)) throw InputError("chain: link lengths must be > 0");
    for (const auto& [lo, hi] : joint_limits)
      if (!(lo < hi)) throw InputError("chain: joint limit min must be < max");
    if (!(velocity_limit > 0.0))
      throw InputError("chain: velocity_limit must be > 0");
  }
};

struct FkResult {
  std::vector<Transform> link_frames;  // frame at the tip of each link
  Transform end_effector = Transform::Identity();
  Transform camera = Transform::Identity();
};

inline FkResult fk(const ChainSpec& chain, const Eigen::VectorXd& joint_angles) {
  if (joint_angles.size() != chain.dof())
    throw InputError("fk: joint_angles length != dof");

  FkResult out;
  out.link_frames.reserve(chain.dof());
  Transform frame = chain.base;
  for (int i = 0; i < chain.dof(); ++i) {
    const Vec3 axis = (i == 0) ? Vec3::UnitZ() : Vec3::UnitY();
    frame = frame * Eigen::AngleAxisd(joint_angles[i], axis);
    frame = frame * Eigen::Translation3d(chain.link_lengths[i], 0.0, 0.0);
    out.link_frames.push_back(frame);
  }
  out.end_effector = frame;
  out.camera = frame * chain.camera_offset;
  return out;
}

inline std::array<Vec3, 2> finger_points(const ChainSpec& chain,
                                         const Transform& end_effector) {
  return {end_effector * chain.finger_offsets[0],
          end_effector * chain.finger_offsets[1]};
}

// Camera mounted behind the end-effector, looking along local +x and pitched
// down by `tilt` radians. Camera convention: +z forward, +x right, +y down.
inline Transform make_camera_offset(double tilt, const Vec3& translation) {
  Mat3 axes;
  // columns: camera x, y, z expressed in the end-effector frame
  axes.col(0) = -Vec3::UnitY();  // image right
  axes.col(1) = -Vec3::UnitZ();  // image down (EE z points up at zero pitch)
  axes.col(2) = Vec3::UnitX();   // view direction
  Mat3 tilted = Eigen::AngleAxisd(tilt, Vec3::UnitY()).toRotationMatrix() * axes;
  return make_transform(tilted, translation);
}

}  // namespace maskrl
