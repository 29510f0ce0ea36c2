#pragma once

#include "maskrl/common.hpp"
#include "maskrl/goal.hpp"
#include "maskrl/image.hpp"
#include "maskrl/mask_ops.hpp"

#include <deque>
#include <vector>

namespace maskrl {

// State handed to the agent: channel-stacked image (12 channels in mask
// mode, 9 otherwise) plus the proprioceptive vector.
struct Observation {
  Image image;
  std::vector<float> vec;
};

// Assembles the proprioceptive vector: joint positions, the last K actions
// (padded with zeros after reset), and the touch flags when present.
class ProprioBuilder {
 public:
  ProprioBuilder(int dof, int action_dim, int history, bool touch)
      : dof_(dof), action_dim_(action_dim), history_(history), touch_(touch) {}

  void reset() { actions_.clear(); }

  void record_action(const std::vector<float>& action) {
    actions_.push_front(action);
    while (static_cast<int>(actions_.size()) > history_) actions_.pop_back();
  }

  std::vector<float> build(const Eigen::VectorXd& joint_angles, bool touch_left,
                           bool touch_right) const {
    std::vector<float> v;
    v.reserve(size());
    for (int i = 0; i < dof_; ++i) v.push_back(static_cast<float>(joint_angles[i]));
    for (int k = 0; k < history_; ++k) {
      if (k < static_cast<int>(actions_.size())) {
        for (float a : actions_[k]) v.push_back(a);
      } else {
        for (int i = 0; i < action_dim_; ++i) v.push_back(0.0f);
      }
    }
    if (touch_) {
      v.push_back(touch_left ? 1.0f : 0.0f);
      v.push_back(touch_right ? 1.0f : 0.0f);
    }
    return v;
  }

  int size() const { return dof_ + history_ * action_dim_ + (touch_ ? 2 : 0); }

 private:
  int dof_, action_dim_, history_;
  bool touch_;
  std::deque<std::vector<float>> actions_;  // front = newest
};

inline int observation_channels(GoalMode mode) {
  return mode == GoalMode::mask ? 12 : 9;
}

// Channels the encoder consumes: stacked observation plus the goal image in
// target_image mode.
inline int encoder_channels(GoalMode mode) {
  int c = observation_channels(mode);
  if (mode == GoalMode::target_image) c += 3;
  return c;
}

inline int goal_vector_size(GoalMode mode) {
  switch (mode) {
    case GoalMode::one_hot: return kOneHotSize;
    case GoalMode::position_3d: return 3;
    case GoalMode::embedding_file: return kEmbeddingSize;
    default: return 0;
  }
}

}  // namespace maskrl
