#pragma once

#include "maskrl/common.hpp"
#include "maskrl/image.hpp"
#include "maskrl/mask_ops.hpp"

#include <cmath>
#include <string>

namespace maskrl {

enum class RewardFamily { sparse, distance, mask, pickup };

inline const char* to_string(RewardFamily f) {
  switch (f) {
    case RewardFamily::sparse: return "sparse";
    case RewardFamily::distance: return "distance";
    case RewardFamily::mask: return "mask";
    case RewardFamily::pickup: return "pickup";
  }
  return "?";
}

inline RewardFamily reward_family_from_string(const std::string& s) {
  if (s == "sparse") return RewardFamily::sparse;
  if (s == "distance") return RewardFamily::distance;
  if (s == "mask") return RewardFamily::mask;
  if (s == "pickup") return RewardFamily::pickup;
  throw ConfigError("unknown reward family: " + s);
}

// Which signal fills the pre-contact reach term of the pick-up composite.
enum class ReachComponent { distance, mask };

struct RewardConfig {
  RewardFamily family = RewardFamily::distance;
  double epsilon = 0.10;      // meters
  double r_term = 5.0;        // terminal bonus
  double step_penalty = -1.0; // added per step by the mask family
  bool mask_adds_r_term = true;

  // scaled-sigmoid constants; exposed for ablation, defaults are exact
  double sigmoid_scale = 10.0;
  double sigmoid_gain = 2.0;
  double sigmoid_offset = -1.0;

  // pick-up composite constants
  double pickup_base = -1.1;
  double contact_first_bonus = 10.0;
  double contact_repeat_bonus = 0.1;
  double lift_slope = 3.3;
  double goal_bonus = 10.0;
  double lift_height = 0.30;  // meters above the table
  ReachComponent pickup_reach = ReachComponent::mask;

  // ROI gating of the mask reach term (pickup); intersection by default
  RoiRect roi;
  bool roi_strict = false;  // all-or-nothing reading of the gate
};

// Terminal-only reward.
inline double sparse_reward(bool reached, double r_term) {
  return reached ? r_term : 0.0;
}

// Distance-to-goal dense reward; the terminal bonus triggers at d <= epsilon.
inline double distance_reward(double d, double epsilon, double r_term) {
  if (d < 0.0) throw InputError("distance_reward: distance must be >= 0");
  return d > epsilon ? -d : -d + r_term;
}

// Fraction of activated pixels.
inline double mask_fraction(const Mask& mask) {
  if (mask.h <= 0 || mask.w <= 0)
    throw InputError("mask_fraction: empty mask dimensions");
  return static_cast<double>(mask.count()) /
         (static_cast<double>(mask.h) * mask.w);
}

inline double mask_reward_from_fraction(double fraction,
                                        const RewardConfig& cfg = {}) {
  return cfg.sigmoid_gain / (1.0 + std::exp(-cfg.sigmoid_scale * fraction)) +
         cfg.sigmoid_offset;
}

// Scaled sigmoid of the mask fraction; 0 for an empty mask, < 1 always.
inline double mask_reward(const Mask& mask, const RewardConfig& cfg = {}) {
  return mask_reward_from_fraction(mask_fraction(mask), cfg);
}

// Mask reward with the per-step penalty and optional terminal bonus.
inline double mask_step_reward(const Mask& mask, bool reached, double r_term,
                               double step_penalty,
                               const RewardConfig& cfg = {}) {
  return mask_reward(mask, cfg) + step_penalty + (reached ? r_term : 0.0);
}

// Per-episode state feeding the pick-up composite. advance() is called once
// per step with the post-step contact flags and height gap.
struct PickupStage {
  bool ever_double_contact = false;
  bool currently_double_contact = false;
  double height_gap = 0.0;  // D, meters to the target height
  bool reached_height = false;

  bool first_contact_step = false;  // transient, valid for the current step
  bool first_height_step = false;

  void advance(bool double_contact_now, double height_gap_now) {
    if (height_gap_now < 0.0)
      throw InputError("pickup stage: height gap must be >= 0");
    first_contact_step = double_contact_now && !ever_double_contact;
    currently_double_contact = double_contact_now;
    ever_double_contact = ever_double_contact || double_contact_now;
    height_gap = height_gap_now;
    const bool at_height = ever_double_contact && height_gap_now <= 0.0;
    first_height_step = at_height && !reached_height;
    reached_height = reached_height || at_height;
  }
};

// R_pick = base + R_reach + R_contact + R_lift + R_goal. The reach component
// is supplied by the caller and only counted before the first double contact;
// the lift term runs from the first double contact on.
inline double pickup_reward(const PickupStage& stage, double reach_component,
                            const RewardConfig& cfg) {
  if (stage.height_gap < 0.0)
    throw InputError("pickup_reward: height gap must be >= 0");
  double r = cfg.pickup_base;
  if (!stage.ever_double_contact) r += reach_component;
  if (stage.currently_double_contact)
    r += stage.first_contact_step ? cfg.contact_first_bonus
                                  : cfg.contact_repeat_bonus;
  if (stage.ever_double_contact) r += 1.0 - cfg.lift_slope * stage.height_gap;
  if (stage.first_height_step) r += cfg.goal_bonus;
  return r;
}

}  // namespace maskrl
