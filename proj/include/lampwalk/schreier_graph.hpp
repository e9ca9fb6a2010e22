#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "lampwalk/dyadic.hpp"
#include "lampwalk/letters.hpp"
#include "lampwalk/numeric.hpp"

namespace lampwalk {

// Base point of the orbit, 5/8.
const Dyadic& root_point();

// Action of a generator (or inverse) on a point of the orbit.
Dyadic act(Letter g, const Dyadic& x);
// Order a, b, A, B.
std::array<Dyadic, 4> neighbors(const Dyadic& v);
// Number of distinct neighbors other than v itself.
int distinct_degree(const Dyadic& v);

enum class Side : std::uint8_t { Left, Right };

// LR: the a-child is the Left child.
enum class Orientation : std::uint8_t { LR, RL };

// Which of the root's two hairs hair_point(root, m) uses.
enum class RootHair : std::uint8_t { ViaAInverse, ViaBInverse };

struct GraphOptions {
  Orientation orientation = Orientation::LR;
  RootHair root_hair = RootHair::ViaBInverse;
  int probe_depth = 8;
  int probe_depth_cap = 1 << 14;
  std::size_t ball_vertex_cap = 4'000'000;
};

// Skeleton vertex: path from the root, offset 0.
// Hair vertex: base path, offset m >= 1 and the inverse generator (A or B)
// that leads from the base into the hair and outward along it.
struct StructuralAddress {
  std::vector<Side> path;
  int offset = 0;
  Letter hair_exit = Letter::A;

  bool on_skeleton() const { return offset == 0; }
  int depth() const { return static_cast<int>(path.size()); }
  // i when the base lies in T_i (path starts Left^i Right).
  std::optional<int> subtree_index() const;

  friend bool operator==(const StructuralAddress&, const StructuralAddress&) = default;
};

using AddressPtr = std::shared_ptr<const StructuralAddress>;

std::string to_string(const StructuralAddress& a);

struct Ball {
  struct Edge {
    int from;
    Letter label;
    int to;
  };
  Dyadic center;
  int radius = 0;
  std::vector<Dyadic> vertices;  // BFS order, neighbors visited as a, b, A, B
  std::vector<int> distance;
  std::vector<Edge> edges;       // every edge-end whose target is inside the ball
  std::unordered_map<Dyadic, int, DyadicHash> index;

  bool contains(const Dyadic& v) const { return index.count(v) != 0; }
  bool interior(int i) const { return distance[static_cast<std::size_t>(i)] < radius; }
};

class SchreierGraph {
 public:
  explicit SchreierGraph(GraphOptions options = {});

  const GraphOptions& options() const { return options_; }

  // Retries with doubled probe depth up to the cap; throws Undetermined.
  AddressPtr classify(const Dyadic& v) const;
  // Single attempt at the given probe depth.
  AddressPtr classify(const Dyadic& v, int probe_depth) const;

  Dyadic vertex_at(const StructuralAddress& a) const;
  // Same move computed on addresses only.
  StructuralAddress move(const StructuralAddress& a, Letter g) const;
  void move_in_place(StructuralAddress& a, Letter g) const;

  Letter child_letter(Side s) const;
  Side side_of(Letter child) const;

  // m steps into the hair of a skeleton vertex; m == 0 returns the base.
  Dyadic hair_point(const Dyadic& base, int m) const;
  bool in_subtree(int i, const Dyadic& v) const;
  // p, a p, ..., a^i p, b a^i p.
  std::vector<Dyadic> golden_path(int i) const;
  // All golden-path prefixes up to i_max land where the orientation says.
  bool validate_orientation(int i_max = 6) const;

  Ball ball(const Dyadic& center, int radius) const;

  std::size_t memo_size() const;

 private:
  struct Probe;
  AddressPtr lookup(const Dyadic& v) const;
  AddressPtr remember(const Dyadic& v, StructuralAddress a) const;
  AddressPtr classify_skeleton(const Dyadic& v) const;

  GraphOptions options_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Dyadic, AddressPtr, DyadicHash> memo_;
};

// Boundary edge-ends of a vertex set divided by 4|S|.
Rational boundary_ratio(const std::vector<Dyadic>& set);
// Hair offsets 1..L on the designated root hair.
std::vector<Dyadic> folner_hair_segment(const SchreierGraph& g, int length);

}  // namespace lampwalk
