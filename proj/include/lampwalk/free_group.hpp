#pragma once

#include <array>
#include <compare>
#include <random>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lampwalk/lamplighter.hpp"
#include "lampwalk/letters.hpp"
#include "lampwalk/numeric.hpp"

namespace lampwalk {

// Vertex of Z: a reduced word of F_2 not starting with a, or the tail vertex t:k (k >= 1).
struct ZVertex {
  std::vector<Letter> word;
  int tail = 0;

  static ZVertex identity() { return {}; }
  static ZVertex tail_at(int k);
  // "e", "t:k", or a reduced word such as "bA".
  static ZVertex parse(std::string_view text);

  bool on_tail() const { return tail > 0; }
  std::string str() const;

  friend bool operator==(const ZVertex&, const ZVertex&) = default;
  friend std::strong_ordering operator<=>(const ZVertex& x, const ZVertex& y);
};

}  // namespace lampwalk

template <>
struct std::hash<lampwalk::ZVertex> {
  std::size_t operator()(const lampwalk::ZVertex& v) const;
};

namespace lampwalk {

// Right multiplication v·g, with e·a leading onto the tail and b acting trivially there.
ZVertex z_move(const ZVertex& v, Letter g);
// Order a, b, A, B.
std::array<ZVertex, 4> z_neighbors(const ZVertex& v);

Rational phi_Z(const ZVertex& v);

template <>
struct LampAction<ZVertex> {
  static const ZVertex& root() {
    static const ZVertex e;
    return e;
  }
  static ZVertex move(const ZVertex& v, Letter g) { return z_move(v, g); }
  // Words are written in the order they act.
  static constexpr bool kRightToLeft = false;
  static std::string vertex_str(const ZVertex& v) { return v.str(); }
};

using ZConfig = BasicConfig<ZVertex>;
using ZSetFn = BasicSetFn<ZVertex>;

// Comma-separated ZVertex list.
ZConfig parse_zconfig(std::string_view text);

// min of phi_Z over E; 1 on ∅.
ZSetFn minfun_Z();

struct ZWitness {
  LampWord word;  // written in action order
  int case_index = 1;
  Rational ratio;  // f(E g) / f(E)
  ZConfig image;
};

// Case 1 (f(E) = 1 with no word point below 1): switch then b.
// Case 2: one letter extending the word of a φ-minimizer.
ZWitness witness_word(const ZConfig& e);

// Every vertex within distance r of e, breadth first.
std::vector<ZVertex> z_ball(int r);

// Up to max_size points drawn from ball; one draw in five uses tail vertices t:1..t:tail_len only.
ZConfig sample_zconfig(const std::vector<ZVertex>& ball, std::mt19937_64& rng, int max_size, int tail_len);

// Boundary edge-ends over 4|S|.
Rational z_boundary_ratio(const std::vector<ZVertex>& set);
// t:1 .. t:L.
std::vector<ZVertex> z_tail_segment(int L);

}  // namespace lampwalk
