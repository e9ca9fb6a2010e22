#include "lampwalk/vertex_fn.hpp"

#include <queue>

#include "lampwalk/errors.hpp"

namespace lampwalk {

const Dyadic& Site::id() const {
  if (!id_) id_ = graph_->vertex_at(*addr_);
  return *id_;
}

const StructuralAddress& Site::address() const {
  if (!addr_) addr_ = graph_->classify(*id_);
  return *addr_;
}

VertexFn::VertexFn(std::shared_ptr<const SchreierGraph> graph, Eval eval, VertexFnInfo info)
    : graph_(std::move(graph)), eval_(std::move(eval)), info_(std::move(info)) {
  if (!graph_) throw PreconditionFailed("vertex function without a graph");
}

Rational markov_apply_X(const VertexFn& phi, const Site& v) {
  Rational sum = 0;
  if (phi.info().structural) {
    for (Letter g : kMoves) sum += phi(Site(phi.graph(), phi.graph().move(v.address(), g)));
  } else {
    for (Letter g : kMoves) sum += phi(Site(phi.graph(), act(g, v.id())));
  }
  return sum / 4;
}

Rational markov_apply_X(const VertexFn& phi, const Dyadic& v) {
  return markov_apply_X(phi, Site(phi.graph(), v));
}

SuperharmonicReport is_superharmonic_on(const VertexFn& phi, const Ball& region) {
  SuperharmonicReport rep;
  for (std::size_t i = 0; i < region.vertices.size(); ++i) {
    if (!region.interior(static_cast<int>(i))) continue;
    const Dyadic& v = region.vertices[i];
    Rational margin = phi(v) - markov_apply_X(phi, v);
    ++rep.checked;
    if (margin < 0) rep.violations.push_back({v, margin});
    rep.margins.push_back({v, std::move(margin)});
  }
  return rep;
}

VertexFn canonical_phi_u(GraphPtr g) {
  return VertexFn(
      std::move(g), [](const Site& s) { return pow2(2 - s.address().depth()); },
      VertexFnInfo{"phi_u", 0, true, true});
}

VertexFn phi_u_shift(GraphPtr g, const Rational& c) {
  return VertexFn(
      std::move(g), [c](const Site& s) { return pow2(2 - s.address().depth()) + c; },
      VertexFnInfo{"phi_u_shift:" + to_string(c), c, true, true});
}

VertexFn phi_family(GraphPtr g, int n) {
  if (n < 0) throw PreconditionFailed("phi_family index must be non-negative");
  return VertexFn(
      std::move(g),
      [n](const Site& s) {
        const auto& a = s.address();
        auto t = a.subtree_index();
        return (t && *t == n) ? pow2(-a.depth()) : pow2(-n);
      },
      VertexFnInfo{"phi:" + std::to_string(n), 0, true, true});
}

VertexFn phi_ramp(GraphPtr g) {
  return VertexFn(
      std::move(g),
      [](const Site& s) {
        const auto& a = s.address();
        auto u = static_cast<unsigned>(a.depth());
        BigInt p2 = BigInt(1) << u;
        BigInt p3 = ipow(BigInt(3), u);
        // min(m, K_u) where K_u = floor(6 (3^u - 2^u) / 2^u)
        BigInt k = BigInt(6 * (p3 - p2)) / p2;
        BigInt m = a.offset;
        BigInt steps = m < k ? m : k;
        return Rational(p2, p3) * (1 + Rational(steps, 6));
      },
      VertexFnInfo{"phi_ramp", 0, true, false});
}

VertexFn constant_fn(GraphPtr g, const Rational& c) {
  return VertexFn(
      std::move(g), [c](const Site&) { return c; }, VertexFnInfo{"const:" + to_string(c), c, true, true});
}

VertexFn shifted(const VertexFn& phi, const Rational& c) {
  VertexFnInfo info = phi.info();
  info.name = phi.name() + "+" + to_string(c);
  info.infimum += c;
  return VertexFn(
      phi.graph_ptr(), [phi, c](const Site& s) { return phi(s) + c; }, info);
}

VertexFn scaled(const VertexFn& phi, const Rational& c) {
  VertexFnInfo info = phi.info();
  info.name = to_string(c) + "*" + phi.name();
  info.infimum *= c;
  return VertexFn(
      phi.graph_ptr(), [phi, c](const Site& s) { return c * phi(s); }, info);
}

VertexFn perturbed(const VertexFn& phi, const Dyadic& v, const Rational& value) {
  VertexFnInfo info = phi.info();
  info.name = phi.name() + "@" + v.str() + "=" + to_string(value);
  info.structural = false;
  info.hair_constant = false;
  if (value < info.infimum) info.infimum = value;
  return VertexFn(
      phi.graph_ptr(), [phi, v, value](const Site& s) { return s.id() == v ? value : phi(s); }, info);
}

HairPropertyReport hair_property_suite(const VertexFn& phi, const Dyadic& base, int M) {
  if (M < 1) throw PreconditionFailed("hair segment needs M >= 1");
  const SchreierGraph& g = phi.graph();
  HairPropertyReport rep;
  std::vector<Dyadic> pts;
  for (int m = 0; m <= M; ++m) pts.push_back(g.hair_point(base, m));
  for (const Dyadic& x : pts) {
    Rational v = phi(x);
    if (v <= 0) throw PreconditionFailed("function is not positive at " + x.str());
    if (v < markov_apply_X(phi, x)) throw PreconditionFailed("function is not superharmonic at " + x.str());
    for (Letter l : kMoves) {
      if (phi(act(l, x)) <= 0) throw PreconditionFailed("function is not positive next to " + x.str());
    }
    rep.values.push_back(std::move(v));
  }
  const auto& a = rep.values;
  for (int m = 1; m < M; ++m) {
    if (2 * a[m] < a[m - 1] + a[m + 1]) {
      rep.concave = false;
      rep.failures.push_back("concavity fails at m=" + std::to_string(m));
    }
  }
  for (int m = 0; m < M; ++m) {
    if (a[m + 1] < a[m]) {
      rep.nondecreasing = false;
      rep.failures.push_back("decrease at m=" + std::to_string(m));
    }
  }
  for (int m = 0; m <= M; ++m) {
    if (a[m] > (3 * m + 1) * a[0]) {
      rep.estimate = false;
      rep.failures.push_back("growth estimate fails at m=" + std::to_string(m));
    }
  }
  return rep;
}

namespace {

// Calls fn(address) for every skeleton vertex on the given level, Left before Right.
template <class Fn>
void for_each_on_level(int level, Fn&& fn) {
  StructuralAddress a;
  a.path.reserve(static_cast<std::size_t>(level));
  auto rec = [&](auto&& self) -> void {
    if (a.depth() == level) {
      fn(a);
      return;
    }
    for (Side s : {Side::Left, Side::Right}) {
      a.path.push_back(s);
      self(self);
      a.path.pop_back();
    }
  };
  rec(rec);
}

void check_level_preconditions(const VertexFn& phi) {
  const SchreierGraph& g = phi.graph();
  Ball probe = g.ball(root_point(), 3);
  Rational top = phi(root_point());
  for (const Dyadic& v : probe.vertices) {
    if (phi(v) > top) throw PreconditionFailed("maximum is not attained at the root (" + v.str() + ")");
  }
  if (!is_superharmonic_on(phi, probe).pass()) throw PreconditionFailed("function is not superharmonic");
}

}  // namespace

Rational level_minimum(const VertexFn& phi, int n, int level_cap) {
  if (n < 0) throw PreconditionFailed("negative level");
  if (n > level_cap) throw CapExceeded("level " + std::to_string(n) + " exceeds cap " + std::to_string(level_cap));
  std::optional<Rational> best;
  for_each_on_level(n, [&](const StructuralAddress& a) {
    Rational v = phi.at(a);
    if (!best || v < *best) best = std::move(v);
  });
  return *best;
}

LevelMin level_min(const VertexFn& phi, int n, int level_cap) {
  if (n < 0) throw PreconditionFailed("negative level");
  if (n > level_cap) throw CapExceeded("level " + std::to_string(n) + " exceeds cap " + std::to_string(level_cap));
  check_level_preconditions(phi);
  LevelMin out;
  StructuralAddress best_addr;
  for (int level = 0; level <= n; ++level) {
    std::optional<Rational> lv;
    StructuralAddress arg;
    for_each_on_level(level, [&](const StructuralAddress& a) {
      Rational v = phi.at(a);
      if (!lv || v < *lv) {
        lv = std::move(v);
        arg = a;
      }
    });
    if (level == 0 || *lv <= out.value) {
      out.value = *lv;
      out.witness_level = level;
      best_addr = arg;
    }
    out.per_level.push_back(std::move(*lv));
  }
  out.witness = phi.graph().vertex_at(best_addr);
  return out;
}

std::optional<Dyadic> harmonic_witness_search(const VertexFn& h, const Rational& sup, int n, int d,
                                              const std::vector<Dyadic>& region) {
  if (n < 1 || d < 1) throw PreconditionFailed("n and d must be positive");
  Rational bound = sup - Rational(1, BigInt(n) * ipow(BigInt(d), static_cast<unsigned>(n)));
  for (const Dyadic& y : region) {
    if (h(y) > bound) return y;
  }
  return std::nullopt;
}

SkeletonHit find_skeleton_below(const VertexFn& phi, const Rational& threshold,
                                const std::set<std::vector<Side>>& exclude, std::size_t max_expansions) {
  struct Node {
    Rational value;
    std::vector<Side> path;
  };
  auto worse = [](const Node& x, const Node& y) {
    if (x.value != y.value) return x.value > y.value;
    if (x.path.size() != y.path.size()) return x.path.size() < y.path.size();
    return x.path > y.path;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> frontier(worse);
  frontier.push(Node{phi.at(StructuralAddress{}), {}});
  std::size_t expansions = 0;
  while (!frontier.empty()) {
    Node top = frontier.top();
    frontier.pop();
    if (top.value < threshold && !exclude.count(top.path)) {
      StructuralAddress a;
      a.path = std::move(top.path);
      return SkeletonHit{std::move(a), std::move(top.value)};
    }
    if (++expansions > max_expansions) {
      throw SearchExhausted("no skeleton vertex below " + to_string(threshold) + " within " +
                                std::to_string(max_expansions) + " expansions",
                            frontier.size());
    }
    for (Side s : {Side::Left, Side::Right}) {
      StructuralAddress child;
      child.path = top.path;
      child.path.push_back(s);
      Rational v = phi.at(child);
      frontier.push(Node{std::move(v), std::move(child.path)});
    }
  }
  throw SearchExhausted("skeleton exhausted", 0);
}

}  // namespace lampwalk
