#pragma once

#include "maskrl/augment.hpp"
#include "maskrl/camera.hpp"
#include "maskrl/chain.hpp"
#include "maskrl/color.hpp"
#include "maskrl/common.hpp"
#include "maskrl/goal.hpp"
#include "maskrl/mask_ops.hpp"
#include "maskrl/observation.hpp"
#include "maskrl/png_io.hpp"
#include "maskrl/render.hpp"
#include "maskrl/rewards.hpp"
#include "maskrl/rng.hpp"
#include "maskrl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace maskrl {

enum class MaskSource { silhouette, color_filter, file };

inline MaskSource mask_source_from_string(const std::string& s) {
  if (s == "silhouette") return MaskSource::silhouette;
  if (s == "color_filter") return MaskSource::color_filter;
  if (s == "file") return MaskSource::file;
  throw ConfigError("unknown mask source: " + s);
}

inline const char* to_string(MaskSource m) {
  switch (m) {
    case MaskSource::silhouette: return "silhouette";
    case MaskSource::color_filter: return "color_filter";
    case MaskSource::file: return "file";
  }
  return "?";
}

struct ColorFilterParams {
  double hue_half_width = 15.0;  // degrees
  double sat_min = 0.3;
  double val_min = 0.15;
};

// Optional sim-to-real style perturbations; disabled by default. The mask is
// always extracted before the photometric pass and never altered by it.
struct DomainRandomization {
  double joint_noise_sigma = 0.0;
  bool photometric = false;
  double photometric_lo = 0.8, photometric_hi = 1.2;
  std::string real_image_dir;  // enables image mixing when non-empty
  double mix_alpha = 0.8;      // weight of the simulated image
};

struct EnvConfig {
  ChainSpec chain;
  EpisodeConfig episode;
  CameraModel camera;  // pose is overwritten from FK every frame
  Eigen::VectorXd init_joint_angles;
  double dt = 0.05;
  Vec3 table_color = Vec3(0.45, 0.42, 0.40);
  Vec3 background_color = Vec3(0.5, 0.5, 0.5);

  GoalMode goal_mode = GoalMode::mask;
  MaskSource mask_source = MaskSource::silhouette;
  ColorFilterParams color_filter;
  std::string mask_file_pattern;  // printf-style with one %d, file source
  std::string embedding_dir;      // <dir>/<object name>.emb
  bool blank_mask_after_grasp = true;
  int action_history = 1;

  RewardConfig reward;
  DomainRandomization randomization;

  int action_dim() const {
    return chain.dof() + (episode.task == Task::pickup ? 1 : 0);
  }
};

struct StepInfo {
  double reward = 0.0;
  Outcome outcome = Outcome::running;
  bool done = false;       // terminal for bootstrapping (success/out_of_bounds)
  bool truncated = false;  // timeout; bootstraps as non-terminal
  double distance = 0.0;   // end-effector to target center, meters
  double obs_mask_fraction = 0.0;
  double reward_mask_value = 0.0;  // mask reward term actually paid (0 if unused)
  ContactState contacts;
};

// Owns one episode's worth of mutable state. Rendering, reward and
// termination all key off the same SimState; one instance per worker.
class Environment {
 public:
  explicit Environment(EnvConfig cfg) : cfg_(std::move(cfg)), ring_(3) {
    cfg_.chain.validate();
    cfg_.episode.validate();
    cfg_.camera.validate();
    if (cfg_.init_joint_angles.size() != cfg_.chain.dof())
      throw ConfigError("env: init_joint_angles length != dof");
    proprio_ = std::make_unique<ProprioBuilder>(
        cfg_.chain.dof(), cfg_.action_dim(), cfg_.action_history,
        cfg_.episode.task == Task::pickup);
    if (!cfg_.randomization.real_image_dir.empty()) load_real_pool();
  }

  const EnvConfig& config() const { return cfg_; }
  int action_dim() const { return cfg_.action_dim(); }
  int proprio_size() const { return proprio_->size(); }
  const SimState& sim_state() const { return state_; }
  const GoalSpec& goal() const { return goal_; }
  const Mask& current_mask() const { return obs_mask_; }
  const Image& current_rgb() const { return rgb_; }
  const PickupStage& pickup_stage() const { return stage_; }

  Observation reset(uint64_t seed,
                    std::optional<int> forced_target_pool_id = std::nullopt) {
    state_ = maskrl::reset(seed, cfg_.chain, cfg_.episode, cfg_.init_joint_angles,
                           forced_target_pool_id);
    aug_rng_ = make_rng(derive_seed(seed, 7));
    stage_ = PickupStage{};
    proprio_->reset();
    goal_ = build_goal();
    render_current();
    ring_.reset(current_frame());
    last_info_ = StepInfo{};
    last_info_.distance = end_effector_distance();
    return build_observation();
  }

  // Policy actions live in [-1,1]^action_dim; joint channels scale to the
  // velocity limit, the optional last channel drives the gripper.
  std::pair<Observation, StepInfo> step(const std::vector<float>& action) {
    if (static_cast<int>(action.size()) != cfg_.action_dim())
      throw InputError("env step: action size mismatch");
    Action a;
    a.joint_velocity.resize(cfg_.chain.dof());
    for (int i = 0; i < cfg_.chain.dof(); ++i)
      a.joint_velocity[i] =
          clamp(static_cast<double>(action[i]), -1.0, 1.0) * cfg_.chain.velocity_limit;
    if (cfg_.episode.task == Task::pickup)
      a.gripper = clamp(static_cast<double>(action.back()), -1.0, 1.0);

    state_ = maskrl::step(cfg_.chain, cfg_.episode, state_, a, cfg_.dt);
    proprio_->record_action(action);

    StepInfo info;
    info.outcome = check_termination(cfg_.chain, state_, cfg_.episode);
    info.distance = end_effector_distance();
    info.truncated = info.outcome == Outcome::timeout;
    info.done = info.outcome == Outcome::success ||
                info.outcome == Outcome::out_of_bounds;
    if (info.done || info.truncated) state_.terminated = true;
    if (cfg_.episode.task == Task::pickup)
      info.contacts = contact_flags(cfg_.chain, state_, cfg_.episode);

    render_current();
    info.obs_mask_fraction = mask_fraction(obs_mask_);
    info.reward = compute_reward(info);
    ring_.push(current_frame());
    last_info_ = info;
    return {build_observation(), info};
  }

  // Canonical close-up used by the target_image goal mode: the object alone
  // on the table, viewed from a fixed overhead vantage.
  Image target_close_up(const PlacedObject& target) const {
    Scene scene;
    PlacedObject obj = target;
    obj.position = Vec3(0.0, 0.0, cfg_.episode.table_z + obj.radius);
    scene.objects = {obj};
    scene.table_region = Rect{-0.3, 0.3, -0.3, 0.3};
    scene.table_z = cfg_.episode.table_z;
    scene.table_color = cfg_.table_color;
    scene.background_color = cfg_.background_color;

    CameraModel cam = cfg_.camera;
    Mat3 axes;
    axes.col(0) = Vec3::UnitY();   // image right
    axes.col(1) = Vec3::UnitX();   // image down
    axes.col(2) = -Vec3::UnitZ();  // looking straight down
    cam.pose = make_transform(
        axes, Vec3(0.0, 0.0, cfg_.episode.table_z + obj.radius + 8.0 * obj.radius));
    return render_rgb(scene, cam);
  }

 private:
  void load_real_pool() {
    namespace fs = std::filesystem;
    for (const auto& entry : fs::directory_iterator(cfg_.randomization.real_image_dir))
      if (entry.path().extension() == ".png")
        real_pool_.push_back(entry.path().string());
    std::sort(real_pool_.begin(), real_pool_.end());
    if (real_pool_.empty())
      throw ConfigError("image mix: no PNG files in " +
                        cfg_.randomization.real_image_dir);
  }

  double end_effector_distance() const {
    const Transform ee = fk(cfg_.chain, state_.joint_angles).end_effector;
    return (ee.translation() - state_.target().position).norm();
  }

  GoalSpec build_goal() const {
    const PlacedObject& tgt = state_.target();
    switch (cfg_.goal_mode) {
      case GoalMode::mask:
        return encode_goal_mask();
      case GoalMode::one_hot:
        return encode_goal_one_hot(tgt.pool_id);
      case GoalMode::position_3d:
        return encode_goal_position(tgt.position);
      case GoalMode::target_image:
        return encode_goal_target_image(target_close_up(tgt));
      case GoalMode::embedding_file:
        return encode_goal_embedding(
            cfg_.embedding_dir + "/" +
            cfg_.episode.object_pool[tgt.pool_id].name + ".emb");
    }
    throw StateError("unreachable goal mode");
  }

  void render_current() {
    const FkResult k = fk(cfg_.chain, state_.joint_angles);
    CameraModel cam = cfg_.camera;
    cam.pose = k.camera;
    const Scene scene =
        make_scene(state_, cfg_.episode, cfg_.table_color, cfg_.background_color);
    RenderResult r = render_frame(scene, cam, state_.target_index);
    rgb_ = std::move(r.rgb);

    switch (cfg_.mask_source) {
      case MaskSource::silhouette:
        obs_mask_ = std::move(r.mask);
        break;
      case MaskSource::color_filter:
        obs_mask_ = color_filter_mask(
            rgb_,
            hue_window_around(state_.target().color, cfg_.color_filter.hue_half_width),
            cfg_.color_filter.sat_min, cfg_.color_filter.val_min);
        break;
      case MaskSource::file: {
        char path[512];
        std::snprintf(path, sizeof(path), cfg_.mask_file_pattern.c_str(), state_.t);
        obs_mask_ = mask_from_file(path, state_.t, cam.height, cam.width);
        break;
      }
    }
    reward_mask_ = obs_mask_;  // reward uses the unblanked mask
    if (cfg_.episode.task == Task::pickup && cfg_.blank_mask_after_grasp &&
        state_.attached)
      obs_mask_ = blank_like(obs_mask_);

    apply_randomization();
  }

  void apply_randomization() {
    const DomainRandomization& dr = cfg_.randomization;
    if (dr.photometric)
      rgb_ = photometric_augment(
          rgb_, sample_photometric(aug_rng_, dr.photometric_lo, dr.photometric_hi));
    if (!real_pool_.empty()) {
      const int idx = uniform_int(aug_rng_, 0, static_cast<int>(real_pool_.size()) - 1);
      Image real = read_png(real_pool_[idx]);
      if (real.c < 3 || real.h != rgb_.h || real.w != rgb_.w)
        throw IoError("image mix: pool image must be RGB at camera resolution: " +
                      real_pool_[idx]);
      real.c = 3;
      real.data.resize(static_cast<size_t>(3) * real.h * real.w);
      rgb_ = image_mix(rgb_, real, dr.mix_alpha);
    }
  }

  Image current_frame() const {
    if (cfg_.goal_mode == GoalMode::mask) return append_mask(rgb_, obs_mask_);
    return rgb_;
  }

  Observation build_observation() {
    Observation obs;
    obs.image = ring_.stacked();
    if (obs.image.c != observation_channels(cfg_.goal_mode))
      throw StateError("observation channel bookkeeping violated");
    Eigen::VectorXd q = state_.joint_angles;
    if (cfg_.randomization.joint_noise_sigma > 0.0)
      q = sensor_noise(q, cfg_.randomization.joint_noise_sigma, aug_rng_);
    obs.vec = proprio_->build(q, last_info_.contacts.left,
                              last_info_.contacts.right);
    return obs;
  }

  double compute_reward(const StepInfo& info) {
    const RewardConfig& rc = cfg_.reward;
    const bool reached = info.outcome == Outcome::success;
    switch (rc.family) {
      case RewardFamily::sparse:
        return sparse_reward(reached, rc.r_term);
      case RewardFamily::distance:
        return distance_reward(info.distance, rc.epsilon, rc.r_term);
      case RewardFamily::mask:
        return mask_step_reward(reward_mask_, reached,
                                rc.mask_adds_r_term ? rc.r_term : 0.0,
                                rc.step_penalty, rc);
      case RewardFamily::pickup: {
        const PlacedObject& tgt = state_.target();
        const double height = tgt.position.z() - cfg_.episode.table_z;
        const double gap = std::max(0.0, cfg_.episode.lift_height - height);
        stage_.advance(info.contacts.both(), gap);
        double reach = 0.0;
        if (!stage_.ever_double_contact) {
          if (rc.pickup_reach == ReachComponent::distance) {
            reach = distance_reward(info.distance, rc.epsilon, rc.r_term);
          } else {
            const Mask gated = rc.roi_strict
                                   ? roi_all_or_nothing(reward_mask_, rc.roi)
                                   : roi_filter(reward_mask_, rc.roi);
            reach = mask_reward(gated, rc);
          }
        }
        return pickup_reward(stage_, reach, rc);
      }
    }
    throw StateError("unreachable reward family");
  }

  EnvConfig cfg_;
  SimState state_;
  FrameRing ring_;
  GoalSpec goal_;
  PickupStage stage_;
  std::unique_ptr<ProprioBuilder> proprio_;
  Image rgb_;
  Mask obs_mask_;
  Mask reward_mask_;
  StepInfo last_info_;
  Rng aug_rng_{0};
  std::vector<std::string> real_pool_;
};

}  // namespace maskrl
