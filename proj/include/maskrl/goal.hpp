#pragma once

#include "maskrl/common.hpp"
#include "maskrl/image.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace maskrl {

enum class GoalMode { mask, one_hot, position_3d, target_image, embedding_file };

inline const char* to_string(GoalMode m) {
  switch (m) {
    case GoalMode::mask: return "mask";
    case GoalMode::one_hot: return "one_hot";
    case GoalMode::position_3d: return "position_3d";
    case GoalMode::target_image: return "target_image";
    case GoalMode::embedding_file: return "embedding_file";
  }
  return "?";
}

inline GoalMode goal_mode_from_string(const std::string& s) {
  if (s == "mask") return GoalMode::mask;
  if (s == "one_hot") return GoalMode::one_hot;
  if (s == "position_3d") return GoalMode::position_3d;
  if (s == "target_image") return GoalMode::target_image;
  if (s == "embedding_file") return GoalMode::embedding_file;
  throw ConfigError("unknown goal mode: " + s);
}

constexpr int kOneHotSize = 20;
constexpr int kEmbeddingSize = 512;

// Per-episode goal payload. Vector-valued modes fill `vec`; target_image
// fills `image`; mask mode needs no payload (the goal lives in the mask
// channel of the observation).
struct GoalSpec {
  GoalMode mode = GoalMode::mask;
  std::vector<float> vec;
  Image image;

  int vec_size() const { return static_cast<int>(vec.size()); }
};

// Binary embedding file: magic "EMB1", u32 little-endian length, then
// float32 little-endian values.
inline std::vector<float> read_embedding_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "EMB1", 4) != 0)
    throw IoError("bad embedding file magic: " + path);
  uint32_t len = 0;
  in.read(reinterpret_cast<char*>(&len), 4);
  std::vector<float> vec(len);
  in.read(reinterpret_cast<char*>(vec.data()), static_cast<std::streamsize>(len) * 4);
  if (!in) throw IoError("truncated embedding file: " + path);
  return vec;
}

inline void write_embedding_file(const std::string& path,
                                 const std::vector<float>& vec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write("EMB1", 4);
  const uint32_t len = static_cast<uint32_t>(vec.size());
  out.write(reinterpret_cast<const char*>(&len), 4);
  out.write(reinterpret_cast<const char*>(vec.data()),
            static_cast<std::streamsize>(vec.size()) * 4);
}

inline GoalSpec encode_goal_one_hot(int index) {
  if (index < 0 || index >= kOneHotSize)
    throw InputError("one_hot goal: index must be in [0, 20)");
  GoalSpec g;
  g.mode = GoalMode::one_hot;
  g.vec.assign(kOneHotSize, 0.0f);
  g.vec[index] = 1.0f;
  return g;
}

inline GoalSpec encode_goal_position(const Vec3& target_position) {
  GoalSpec g;
  g.mode = GoalMode::position_3d;
  g.vec = {static_cast<float>(target_position.x()),
           static_cast<float>(target_position.y()),
           static_cast<float>(target_position.z())};
  return g;
}

inline GoalSpec encode_goal_embedding(const std::string& path) {
  GoalSpec g;
  g.mode = GoalMode::embedding_file;
  g.vec = read_embedding_file(path);
  if (g.vec_size() != kEmbeddingSize)
    throw IoError("embedding file must hold exactly 512 values: " + path);
  return g;
}

inline GoalSpec encode_goal_target_image(const Image& close_up) {
  GoalSpec g;
  g.mode = GoalMode::target_image;
  g.image = close_up;
  return g;
}

inline GoalSpec encode_goal_mask() {
  GoalSpec g;
  g.mode = GoalMode::mask;
  return g;
}

}  // namespace maskrl
