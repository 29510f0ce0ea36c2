#pragma once

#include "maskrl/chain.hpp"
#include "maskrl/common.hpp"
#include "maskrl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace maskrl {

enum class Shape { sphere, box };

enum class Task { reach, pickup };

// Pool descriptor for one object. Boxes are axis-aligned cubes with
// half-extent `radius`.
struct ObjectSpec {
  std::string name;
  Shape shape = Shape::sphere;
  Vec3 color = Vec3(1.0, 0.0, 0.0);  // RGB in [0,1]
  double radius = 0.03;              // meters
  bool graspable = true;

  void validate() const {
    if (!(radius > 0.0)) throw InputError("object: radius must be > 0");
    for (int i = 0; i < 3; ++i)
      if (color[i] < 0.0 || color[i] > 1.0)
        throw InputError("object: color channels must be in [0,1]");
  }
};

struct PlacedObject {
  int pool_id = -1;  // index into the episode's object pool
  Shape shape = Shape::sphere;
  Vec3 color = Vec3::Zero();
  double radius = 0.03;
  Vec3 position = Vec3::Zero();  // center, world frame

  bool operator==(const PlacedObject& o) const {
    return pool_id == o.pool_id && shape == o.shape && color == o.color &&
           radius == o.radius && position == o.position;
  }
};

struct EpisodeConfig {
  int episode_length = 80;
  std::vector<ObjectSpec> object_pool;
  int min_objects = 2, max_objects = 2;
  Rect table_region;
  double table_z = 0.0;
  double epsilon = 0.05;      // reach termination distance, meters
  double lift_height = 0.12;  // pickup target height above the table
  Task task = Task::reach;
  double pickup_target_scale = 0.8;  // shrink applied to graspable targets
  double contact_tolerance = 0.01;   // finger-to-surface distance, meters
  double release_threshold = 0.7;    // gripper open fraction that drops
  double gripper_travel_rate = 2.0;  // open fraction per second at full command
  double placement_margin = 0.01;    // extra clearance between objects
  int placement_retries = 1000;
  double workspace_margin = 0.2;     // horizontal slack around table_region
  double workspace_ceiling = 1.0;    // allowed height above the table

  void validate() const {
    if (episode_length <= 0) throw ConfigError("episode_length must be > 0");
    if (object_pool.empty()) throw ConfigError("object_pool must not be empty");
    if (min_objects < 1 || min_objects > max_objects ||
        max_objects > static_cast<int>(object_pool.size()))
      throw ConfigError("need 1 <= min_objects <= max_objects <= pool size");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
    if (!(table_region.width() > 0.0) || !(table_region.height() > 0.0))
      throw ConfigError("table_region must have positive extent");
    for (const auto& o : object_pool) o.validate();
  }
};

struct ContactState {
  bool left = false;
  bool right = false;
  bool both() const { return left && right; }
};

struct Action {
  Eigen::VectorXd joint_velocity;  // rad/s, clamped to +/-velocity_limit
  double gripper = 0.0;            // [-1,1]; negative closes (pickup only)
};

struct SimState {
  Eigen::VectorXd joint_angles;
  std::vector<PlacedObject> objects;
  int target_index = -1;  // index into `objects`
  std::optional<int> attached;
  Vec3 grasp_offset = Vec3::Zero();  // object center in EE frame at attach time
  double gripper_open = 1.0;
  int t = 0;
  bool terminated = false;
  Rng rng{0};

  const PlacedObject& target() const { return objects.at(target_index); }

  bool operator==(const SimState& o) const {
    return joint_angles == o.joint_angles && objects == o.objects &&
           target_index == o.target_index && attached == o.attached &&
           grasp_offset == o.grasp_offset && gripper_open == o.gripper_open &&
           t == o.t && terminated == o.terminated && rng == o.rng;
  }
};

enum class Outcome { running, success, timeout, out_of_bounds };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::running: return "running";
    case Outcome::success: return "success";
    case Outcome::timeout: return "timeout";
    case Outcome::out_of_bounds: return "out_of_bounds";
  }
  return "?";
}

// Signed distance from a point to the object surface (negative inside).
inline double surface_distance(const PlacedObject& obj, const Vec3& p) {
  if (obj.shape == Shape::sphere) {
    return (p - obj.position).norm() - obj.radius;
  }
  const Vec3 d = (p - obj.position).cwiseAbs() - Vec3::Constant(obj.radius);
  const Vec3 outside = d.cwiseMax(0.0);
  const double inside = std::min(d.maxCoeff(), 0.0);
  return outside.norm() + inside;
}

inline ContactState contact_flags(const ChainSpec& chain, const SimState& state,
                                  const EpisodeConfig& cfg) {
  const auto fingers = finger_points(chain, fk(chain, state.joint_angles).end_effector);
  const PlacedObject& tgt = state.target();
  ContactState c;
  c.left = surface_distance(tgt, fingers[0]) < cfg.contact_tolerance;
  c.right = surface_distance(tgt, fingers[1]) < cfg.contact_tolerance;
  return c;
}

inline SimState reset(uint64_t seed, const ChainSpec& chain,
                      const EpisodeConfig& cfg,
                      const Eigen::VectorXd& init_joint_angles,
                      std::optional<int> forced_target_pool_id = std::nullopt) {
  cfg.validate();
  chain.validate();
  if (init_joint_angles.size() != chain.dof())
    throw ConfigError("reset: init_joint_angles length != dof");

  SimState state;
  state.rng = make_rng(seed);
  state.joint_angles = init_joint_angles;
  for (int i = 0; i < chain.dof(); ++i)
    state.joint_angles[i] = clamp(state.joint_angles[i], chain.joint_limits[i].first,
                                  chain.joint_limits[i].second);

  const int pool_size = static_cast<int>(cfg.object_pool.size());
  for (int attempt = 0;; ++attempt) {
    if (attempt >= cfg.placement_retries)
      throw ConfigError("reset: object placement exceeded retry budget");

    const int k = uniform_int(state.rng, cfg.min_objects, cfg.max_objects);

    // sample k distinct pool ids; forced target (if any) is always included
    std::vector<int> ids(pool_size);
    for (int i = 0; i < pool_size; ++i) ids[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = uniform_int(state.rng, i, pool_size - 1);
      std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    if (forced_target_pool_id &&
        std::find(ids.begin(), ids.end(), *forced_target_pool_id) == ids.end())
      ids[0] = *forced_target_pool_id;

    // choose the target among eligible placed objects
    std::vector<int> eligible;
    for (int i = 0; i < k; ++i) {
      if (cfg.task == Task::pickup && !cfg.object_pool[ids[i]].graspable) continue;
      eligible.push_back(i);
    }
    if (eligible.empty()) continue;
    int target;
    if (forced_target_pool_id) {
      target = static_cast<int>(
          std::find(ids.begin(), ids.end(), *forced_target_pool_id) - ids.begin());
    } else {
      target = eligible[uniform_int(state.rng, 0, static_cast<int>(eligible.size()) - 1)];
    }

    // place with rejection on pairwise overlap
    std::vector<PlacedObject> placed;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      const ObjectSpec& spec = cfg.object_pool[ids[i]];
      PlacedObject obj;
      obj.pool_id = ids[i];
      obj.shape = spec.shape;
      obj.color = spec.color;
      obj.radius = spec.radius;
      if (cfg.task == Task::pickup && spec.graspable)
        obj.radius *= cfg.pickup_target_scale;
      const double x = uniform(state.rng, cfg.table_region.x_min + obj.radius,
                               cfg.table_region.x_max - obj.radius);
      const double y = uniform(state.rng, cfg.table_region.y_min + obj.radius,
                               cfg.table_region.y_max - obj.radius);
      obj.position = Vec3(x, y, cfg.table_z + obj.radius);
      for (const auto& other : placed) {
        const double min_dist = obj.radius + other.radius + cfg.placement_margin;
        if ((obj.position - other.position).head<2>().norm() < min_dist) {
          ok = false;
          break;
        }
      }
      placed.push_back(obj);
    }
    if (!ok) continue;

    state.objects = std::move(placed);
    state.target_index = target;
    return state;
  }
}

inline SimState step(const ChainSpec& chain, const EpisodeConfig& cfg,
                     const SimState& prev, const Action& action, double dt) {
  if (prev.terminated) throw StateError("step: episode already terminated");
  if (action.joint_velocity.size() != chain.dof())
    throw InputError("step: action length != dof");
  if (!action.joint_velocity.allFinite() || !std::isfinite(action.gripper))
    throw InputError("step: action contains non-finite values");
  if (!(dt > 0.0)) throw InputError("step: dt must be > 0");

  SimState state = prev;
  for (int i = 0; i < chain.dof(); ++i) {
    const double v = clamp(action.joint_velocity[i], -chain.velocity_limit,
                           chain.velocity_limit);
    state.joint_angles[i] = clamp(state.joint_angles[i] + v * dt,
                                  chain.joint_limits[i].first,
                                  chain.joint_limits[i].second);
  }
  state.t = prev.t + 1;

  if (cfg.task == Task::pickup) {
    const double g = clamp(action.gripper, -1.0, 1.0);
    state.gripper_open =
        clamp(state.gripper_open + g * cfg.gripper_travel_rate * dt, 0.0, 1.0);

    const Transform ee = fk(chain, state.joint_angles).end_effector;
    if (state.attached) {
      if (state.gripper_open > cfg.release_threshold) {
        // dropped objects settle straight down onto the table
        PlacedObject& obj = state.objects[*state.attached];
        obj.position = ee * state.grasp_offset;
        obj.position.z() = cfg.table_z + obj.radius;
        state.attached.reset();
      } else {
        state.objects[*state.attached].position = ee * state.grasp_offset;
      }
    } else if (g < 0.0 && state.gripper_open <= cfg.release_threshold &&
               contact_flags(chain, state, cfg).both()) {
      // closing and closed enough to hold; otherwise the next release check
      // would immediately drop the object again
      state.attached = state.target_index;
      state.grasp_offset = ee.inverse() * state.target().position;
    }
  }
  return state;
}

inline Outcome check_termination(const ChainSpec& chain, const SimState& state,
                                 const EpisodeConfig& cfg) {
  const Transform ee = fk(chain, state.joint_angles).end_effector;

  if (cfg.task == Task::reach) {
    const double d = (ee.translation() - state.target().position).norm();
    if (d <= cfg.epsilon) return Outcome::success;
  } else {
    const bool holding_target =
        state.attached && *state.attached == state.target_index;
    if (holding_target &&
        state.target().position.z() - cfg.table_z >= cfg.lift_height)
      return Outcome::success;
  }

  const Vec3 p = ee.translation();
  const Rect& r = cfg.table_region;
  const double m = cfg.workspace_margin;
  if (p.x() < r.x_min - m || p.x() > r.x_max + m || p.y() < r.y_min - m ||
      p.y() > r.y_max + m || p.z() < cfg.table_z - m ||
      p.z() > cfg.table_z + cfg.workspace_ceiling)
    return Outcome::out_of_bounds;

  if (state.t >= cfg.episode_length) return Outcome::timeout;
  return Outcome::running;
}

}  // namespace maskrl
