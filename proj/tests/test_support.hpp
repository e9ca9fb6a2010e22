#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "lampwalk/lamplighter.hpp"
#include "lampwalk/schreier_graph.hpp"

namespace lampwalk::testing {

inline std::shared_ptr<const SchreierGraph> shared_graph() {
  static auto g = std::make_shared<const SchreierGraph>();
  return g;
}

// Seeded generator of orbit points and finite configurations.
class ConfigGen {
 public:
  explicit ConfigGen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  StructuralAddress address(int max_depth, int max_offset) {
    StructuralAddress a;
    int d = uniform(0, max_depth);
    for (int i = 0; i < d; ++i) a.path.push_back(uniform(0, 1) ? Side::Right : Side::Left);
    a.offset = uniform(0, max_offset);
    if (a.offset > 0) a.hair_exit = uniform(0, 1) ? Letter::A : Letter::B;
    // Non-root bases have a single hair, fixed by the last side.
    if (a.offset > 0 && d > 0) a.hair_exit = shared_graph()->child_letter(a.path.back()) == Letter::a ? Letter::B : Letter::A;
    return a;
  }

  Dyadic point(int max_depth = 7, int max_offset = 6) {
    return shared_graph()->vertex_at(address(max_depth, max_offset));
  }

  Config config(int max_size = 4, int max_depth = 7, int max_offset = 6) {
    std::vector<Dyadic> pts;
    int k = uniform(0, max_size);
    for (int i = 0; i < k; ++i) pts.push_back(point(max_depth, max_offset));
    if (uniform(0, 3) == 0) pts.push_back(root_point());
    return Config(std::move(pts));
  }

  Config nonempty_config(int max_size = 4, int max_depth = 7, int max_offset = 6) {
    Config c;
    while (c.empty()) c = config(max_size, max_depth, max_offset);
    return c;
  }

  LampWord word(int length) {
    LampWord w;
    for (int i = 0; i < length; ++i) w.letters.push_back(kLampLetters[static_cast<std::size_t>(uniform(0, 4))]);
    return w;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace lampwalk::testing
