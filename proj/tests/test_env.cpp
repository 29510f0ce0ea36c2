#include "test_helpers.hpp"

#include "maskrl/env.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace maskrl;
using testutil::desk_env;

TEST_CASE("env reset produces a 12-channel observation in mask mode") {
  Environment env(desk_env());
  const Observation obs = env.reset(1);
  REQUIRE(obs.image.c == 12);
  REQUIRE(obs.image.h == 45);
  REQUIRE(obs.image.w == 80);
  // joint positions + last action, no touch flags for reach
  REQUIRE(static_cast<int>(obs.vec.size()) == 3 + 3);
}

TEST_CASE("env reset produces 9 channels for vector goal modes") {
  Environment env(desk_env(Task::reach, GoalMode::one_hot));
  const Observation obs = env.reset(1);
  REQUIRE(obs.image.c == 9);
  REQUIRE(env.goal().vec_size() == 20);
  int active = 0;
  for (float v : env.goal().vec) active += v == 1.0f;
  REQUIRE(active == 1);
}

TEST_CASE("env observation frames replicate at reset") {
  Environment env(desk_env());
  const Observation obs = env.reset(2);
  for (int block = 1; block < 3; ++block)
    for (int ch = 0; ch < 4; ++ch)
      for (int y = 0; y < obs.image.h; y += 5)
        for (int x = 0; x < obs.image.w; x += 7)
          REQUIRE(obs.image.at(block * 4 + ch, y, x) == obs.image.at(ch, y, x));
}

TEST_CASE("env steps are deterministic per seed and action sequence") {
  auto run = [](uint64_t seed) {
    Environment env(desk_env());
    env.reset(seed);
    std::vector<float> outs;
    Rng rng = make_rng(4);
    for (int i = 0; i < 20; ++i) {
      std::vector<float> a(3);
      for (auto& v : a) v = static_cast<float>(uniform(rng, -1.0, 1.0));
      auto [obs, info] = env.step(a);
      outs.push_back(static_cast<float>(info.reward));
      outs.insert(outs.end(), obs.vec.begin(), obs.vec.end());
      outs.insert(outs.end(), obs.image.data.begin(), obs.image.data.end());
      if (info.done || info.truncated) break;
    }
    return outs;
  };
  REQUIRE(run(9) == run(9));
}

TEST_CASE("env mask is visible for in-view targets at reset") {
  Environment env(desk_env());
  int visible = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    env.reset(seed);
    if (env.current_mask().count() > 0) visible++;
  }
  // camera home pose should see the target most of the time
  REQUIRE(visible >= 15);
}

TEST_CASE("env distance reward matches the formula") {
  EnvConfig cfg = desk_env();
  cfg.reward.family = RewardFamily::distance;
  Environment env(cfg);
  env.reset(3);
  auto [obs, info] = env.step({0.1f, 0.0f, 0.0f});
  if (info.outcome == Outcome::running)
    REQUIRE(info.reward == Catch::Approx(-info.distance).margin(1e-12));
}

TEST_CASE("env mask reward family pays sigmoid minus step penalty") {
  EnvConfig cfg = desk_env();
  cfg.reward.family = RewardFamily::mask;
  Environment env(cfg);
  env.reset(3);
  auto [obs, info] = env.step({0.0f, 0.0f, 0.0f});
  const double expect =
      mask_reward_from_fraction(info.obs_mask_fraction) - 1.0 +
      (info.outcome == Outcome::success ? 5.0 : 0.0);
  REQUIRE(info.reward == Catch::Approx(expect).margin(1e-9));
}

TEST_CASE("env timeout is flagged truncated, not done") {
  EnvConfig cfg = desk_env();
  cfg.episode.episode_length = 3;
  Environment env(cfg);
  env.reset(14);
  StepInfo last;
  for (int i = 0; i < 3; ++i) {
    auto [obs, info] = env.step({0.0f, 0.0f, 0.0f});
    last = info;
  }
  REQUIRE(last.outcome == Outcome::timeout);
  REQUIRE(last.truncated);
  REQUIRE(!last.done);
}

TEST_CASE("env pickup wiring: touch flags, blank mask, composite reward") {
  EnvConfig cfg = desk_env(Task::pickup);
  cfg.reward.family = RewardFamily::pickup;
  cfg.reward.pickup_reach = ReachComponent::mask;
  Environment env(cfg);
  const Observation obs = env.reset(5);
  // proprio: 3 joints + 4 action channels + 2 touch flags
  REQUIRE(static_cast<int>(obs.vec.size()) == 3 + 4 + 2);
  REQUIRE(env.action_dim() == 4);

  auto [obs2, info] = env.step({0.0f, 0.0f, 0.0f, 0.0f});
  // pre-contact: base + roi-gated mask reward, no contact terms
  const Mask gated = roi_filter(env.current_mask(), cfg.reward.roi);
  const double expect = -1.1 + mask_reward(gated);
  REQUIRE(info.reward == Catch::Approx(expect).margin(1e-9));
}

TEST_CASE("env target_image goal carries a close-up render") {
  Environment env(desk_env(Task::reach, GoalMode::target_image));
  env.reset(6);
  const GoalSpec& g = env.goal();
  REQUIRE(g.mode == GoalMode::target_image);
  REQUIRE(g.image.c == 3);
  REQUIRE(g.image.h == 45);
  REQUIRE(g.image.w == 80);
  // the close-up should actually show the object: some non-background pixels
  size_t distinct = 0;
  for (int y = 0; y < g.image.h; ++y)
    for (int x = 0; x < g.image.w; ++x)
      if (std::abs(g.image.at(0, y, x) - 0.5f) > 0.05f) distinct++;
  REQUIRE(distinct > 20);
}

TEST_CASE("env color_filter mask source approximates the silhouette") {
  EnvConfig cfg = desk_env();
  cfg.mask_source = MaskSource::color_filter;
  Environment env(cfg);
  EnvConfig cfg2 = desk_env();
  Environment env2(cfg2);

  for (uint64_t seed = 0; seed < 5; ++seed) {
    env.reset(seed);
    env2.reset(seed);
    const Mask& a = env.current_mask();
    const Mask& b = env2.current_mask();
    size_t inter = 0, uni = 0;
    for (size_t i = 0; i < a.bits.size(); ++i) {
      inter += a.bits[i] && b.bits[i];
      uni += a.bits[i] || b.bits[i];
    }
    if (uni == 0) continue;
    REQUIRE(static_cast<double>(inter) / uni >= 0.99);
  }
}
