#include "lampwalk/schreier_graph.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_set>

#include "lampwalk/errors.hpp"

namespace lampwalk {

const Dyadic& root_point() {
  static const Dyadic p(BigInt(5), 3);
  return p;
}

Dyadic act(Letter g, const Dyadic& x) { return generator_map(g)(x); }

std::array<Dyadic, 4> neighbors(const Dyadic& v) {
  return {act(Letter::a, v), act(Letter::b, v), act(Letter::A, v), act(Letter::B, v)};
}

int distinct_degree(const Dyadic& v) {
  auto nb = neighbors(v);
  int count = 0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (nb[i] == v) continue;
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j) seen = seen || nb[j] == nb[i];
    if (!seen) ++count;
  }
  return count;
}

std::optional<int> StructuralAddress::subtree_index() const {
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] == Side::Right) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string to_string(const StructuralAddress& a) {
  std::string s = "[";
  for (Side x : a.path) s.push_back(x == Side::Left ? 'L' : 'R');
  s.push_back(']');
  if (!a.on_skeleton()) s += "+" + std::to_string(a.offset) + to_char(a.hair_exit);
  return s;
}

SchreierGraph::SchreierGraph(GraphOptions options) : options_(options) {
  if (options_.probe_depth < 1 || options_.probe_depth_cap < options_.probe_depth)
    throw PreconditionFailed("bad probe depth settings");
}

std::size_t SchreierGraph::memo_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

AddressPtr SchreierGraph::lookup(const Dyadic& v) const {
  std::shared_lock lock(mutex_);
  auto it = memo_.find(v);
  return it == memo_.end() ? nullptr : it->second;
}

AddressPtr SchreierGraph::remember(const Dyadic& v, StructuralAddress a) const {
  auto ptr = std::make_shared<const StructuralAddress>(std::move(a));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = memo_.emplace(v, ptr);
  return it->second;
}

Letter SchreierGraph::child_letter(Side s) const {
  bool left_is_a = options_.orientation == Orientation::LR;
  return (s == Side::Left) == left_is_a ? Letter::a : Letter::b;
}

Side SchreierGraph::side_of(Letter child) const {
  bool left_is_a = options_.orientation == Orientation::LR;
  return (child == Letter::a) == left_is_a ? Side::Left : Side::Right;
}

AddressPtr SchreierGraph::classify(const Dyadic& v) const {
  for (int depth = options_.probe_depth;; depth *= 2) {
    try {
      return classify(v, std::min(depth, options_.probe_depth_cap));
    } catch (const Undetermined&) {
      if (depth >= options_.probe_depth_cap) throw;
    }
  }
}

AddressPtr SchreierGraph::classify_skeleton(const Dyadic& v) const {
  // Climb by the label rule: exactly one of A v, B v is the parent.
  std::vector<Letter> chain;
  std::vector<Dyadic> visited;
  Dyadic cur = v;
  AddressPtr top;
  while (true) {
    if (auto hit = lookup(cur)) {
      top = hit;
      break;
    }
    if (cur == root_point()) {
      top = remember(cur, StructuralAddress{});
      break;
    }
    Dyadic up_a = act(Letter::A, cur);
    Dyadic up_b = act(Letter::B, cur);
    bool sa = distinct_degree(up_a) >= 3;
    bool sb = distinct_degree(up_b) >= 3;
    if (sa == sb) throw StructuralAssertFailed("skeleton vertex " + cur.str() + " has no unique parent");
    visited.push_back(cur);
    chain.push_back(sa ? Letter::a : Letter::b);
    cur = sa ? std::move(up_a) : std::move(up_b);
  }
  if (!top->on_skeleton()) throw StructuralAssertFailed("climb reached a hair vertex at " + cur.str());
  StructuralAddress addr = *top;
  AddressPtr out = top;
  for (std::size_t k = chain.size(); k-- > 0;) {
    addr.path.push_back(side_of(chain[k]));
    out = remember(visited[k], addr);
  }
  return out;
}

AddressPtr SchreierGraph::classify(const Dyadic& v, int probe_depth) const {
  if (auto hit = lookup(v)) return hit;
  int deg = distinct_degree(v);
  if (deg >= 3) return classify_skeleton(v);
  if (deg != 2) throw StructuralAssertFailed("vertex " + v.str() + " has degree " + std::to_string(deg));

  struct Walker {
    Letter first;  // letter of the first step out of v
    Dyadic prev, cur;
    std::vector<Dyadic> trail;
  };
  std::vector<Walker> walkers;
  for (Letter g : kMoves) {
    Dyadic w = act(g, v);
    if (w == v) continue;
    bool dup = false;
    for (const auto& wk : walkers) dup = dup || wk.cur == w;
    if (!dup) walkers.push_back(Walker{g, v, std::move(w), {}});
  }
  if (walkers.size() != 2) throw StructuralAssertFailed("hair vertex without two directions");

  for (int step = 1; step <= probe_depth; ++step) {
    for (std::size_t wi = 0; wi < 2; ++wi) {
      Walker& w = walkers[wi];
      Walker& other = walkers[1 - wi];
      AddressPtr known = lookup(w.cur);
      bool skeleton = known ? known->on_skeleton() : distinct_degree(w.cur) >= 3;
      if (skeleton || known) {
        StructuralAddress base;
        Letter exit;
        int offset;
        if (skeleton) {
          AddressPtr b = known ? known : classify_skeleton(w.cur);
          base = *b;
          const Dyadic& hair_start = w.trail.empty() ? v : w.trail.back();
          if (act(Letter::A, w.cur) == hair_start) {
            exit = Letter::A;
          } else if (act(Letter::B, w.cur) == hair_start) {
            exit = Letter::B;
          } else {
            throw StructuralAssertFailed("hair start not reached by an inverse generator");
          }
          if (!base.path.empty()) {
            Letter expected = child_letter(base.path.back()) == Letter::a ? Letter::B : Letter::A;
            if (exit != expected) throw StructuralAssertFailed("hair exit contradicts child label");
          }
          offset = step;
        } else {
          base = *known;
          exit = known->hair_exit;
          base.offset = 0;
          base.hair_exit = Letter::A;
          if (w.first == exit) {
            offset = known->offset - step;
          } else if (w.first == inverse(exit)) {
            offset = known->offset + step;
          } else {
            throw StructuralAssertFailed("hair walk left along a loop letter");
          }
          if (offset < 1) throw StructuralAssertFailed("inconsistent hair offsets");
        }
        // Direction of this walker: towards the base iff it moves by inverse(exit).
        int sign = w.first == exit ? 1 : -1;
        StructuralAddress addr = base;
        addr.hair_exit = exit;
        addr.offset = offset;
        AddressPtr out = remember(v, addr);
        for (std::size_t j = 0; j < w.trail.size(); ++j) {
          addr.offset = offset + sign * static_cast<int>(j + 1);
          if (addr.offset >= 1) remember(w.trail[j], addr);
        }
        for (std::size_t j = 0; j < other.trail.size(); ++j) {
          addr.offset = offset - sign * static_cast<int>(j + 1);
          if (addr.offset >= 1) remember(other.trail[j], addr);
        }
        return out;
      }
      // Still on the hair: the next vertex is the other distinct neighbor.
      std::optional<Dyadic> next;
      for (Letter g : kMoves) {
        Dyadic x = act(g, w.cur);
        if (x == w.cur || x == w.prev) continue;
        if (next && *next != x) throw StructuralAssertFailed("hair vertex " + w.cur.str() + " branches");
        next = std::move(x);
      }
      if (!next) throw StructuralAssertFailed("hair ends at " + w.cur.str());
      w.trail.push_back(w.cur);
      w.prev = std::move(w.cur);
      w.cur = std::move(*next);
    }
  }
  throw Undetermined("no skeleton vertex within " + std::to_string(probe_depth) + " steps of " + v.str());
}

Dyadic SchreierGraph::vertex_at(const StructuralAddress& a) const {
  Dyadic x = root_point();
  for (Side s : a.path) x = act(child_letter(s), x);
  for (int m = 0; m < a.offset; ++m) x = act(a.hair_exit, x);
  return x;
}

void SchreierGraph::move_in_place(StructuralAddress& a, Letter g) const {
  if (g == Letter::s) throw PreconditionFailed("switch letter does not move vertices");
  if (a.offset == 0) {
    if (g == Letter::a || g == Letter::b) {
      a.path.push_back(side_of(g));
      return;
    }
    if (!a.path.empty() && child_letter(a.path.back()) == inverse(g)) {
      a.path.pop_back();
    } else {
      a.offset = 1;
      a.hair_exit = g;
    }
    return;
  }
  if (g == a.hair_exit) {
    ++a.offset;
  } else if (g == inverse(a.hair_exit)) {
    if (--a.offset == 0) a.hair_exit = Letter::A;
  }
}

StructuralAddress SchreierGraph::move(const StructuralAddress& a, Letter g) const {
  StructuralAddress out = a;
  move_in_place(out, g);
  return out;
}

Dyadic SchreierGraph::hair_point(const Dyadic& base, int m) const {
  if (m < 0) throw PreconditionFailed("negative hair offset");
  AddressPtr b = classify(base);
  if (!b->on_skeleton()) throw PreconditionFailed("hair_point base " + base.str() + " is not a skeleton vertex");
  Letter exit;
  if (b->path.empty()) {
    exit = options_.root_hair == RootHair::ViaAInverse ? Letter::A : Letter::B;
  } else {
    exit = child_letter(b->path.back()) == Letter::a ? Letter::B : Letter::A;
  }
  Dyadic x = base;
  for (int i = 0; i < m; ++i) x = act(exit, x);
  return x;
}

bool SchreierGraph::in_subtree(int i, const Dyadic& v) const {
  auto idx = classify(v)->subtree_index();
  return idx && *idx == i;
}

std::vector<Dyadic> SchreierGraph::golden_path(int i) const {
  if (i < 0) throw PreconditionFailed("negative golden path index");
  std::vector<Dyadic> out{root_point()};
  for (int k = 0; k < i; ++k) out.push_back(act(Letter::a, out.back()));
  out.push_back(act(Letter::b, out.back()));
  return out;
}

bool SchreierGraph::validate_orientation(int i_max) const {
  for (int i = 0; i <= i_max; ++i) {
    auto path = golden_path(i);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      AddressPtr a = classify(path[k]);
      if (!a->on_skeleton() || a->subtree_index()) return false;
    }
    if (!in_subtree(i, path.back())) return false;
  }
  return true;
}

Ball SchreierGraph::ball(const Dyadic& center, int radius) const {
  if (radius < 0) throw PreconditionFailed("negative radius");
  Ball b;
  b.center = center;
  b.radius = radius;
  b.vertices.push_back(center);
  b.distance.push_back(0);
  b.index.emplace(center, 0);
  for (std::size_t head = 0; head < b.vertices.size(); ++head) {
    if (b.distance[head] == radius) continue;
    for (Letter g : kMoves) {
      Dyadic w = act(g, b.vertices[head]);
      if (b.index.count(w)) continue;
      if (b.vertices.size() >= options_.ball_vertex_cap)
        throw CapExceeded("ball exceeds " + std::to_string(options_.ball_vertex_cap) + " vertices");
      b.index.emplace(w, static_cast<int>(b.vertices.size()));
      b.vertices.push_back(std::move(w));
      b.distance.push_back(b.distance[head] + 1);
    }
  }
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    for (Letter g : kMoves) {
      auto it = b.index.find(act(g, b.vertices[i]));
      if (it != b.index.end()) b.edges.push_back({static_cast<int>(i), g, it->second});
    }
  }
  return b;
}

Rational boundary_ratio(const std::vector<Dyadic>& set) {
  if (set.empty()) throw PreconditionFailed("boundary ratio of an empty set");
  std::unordered_set<Dyadic, DyadicHash> s(set.begin(), set.end());
  long leaving = 0;
  for (const Dyadic& v : s) {
    for (Letter g : kMoves) leaving += s.count(act(g, v)) ? 0 : 1;
  }
  return Rational(leaving, 4 * static_cast<long>(s.size()));
}

std::vector<Dyadic> folner_hair_segment(const SchreierGraph& g, int length) {
  if (length < 1) throw PreconditionFailed("segment length must be positive");
  std::vector<Dyadic> out;
  Dyadic x = g.hair_point(root_point(), 1);
  Letter exit = g.options().root_hair == RootHair::ViaAInverse ? Letter::A : Letter::B;
  for (int m = 1; m <= length; ++m) {
    out.push_back(x);
    x = act(exit, x);
  }
  return out;
}

}  // namespace lampwalk
