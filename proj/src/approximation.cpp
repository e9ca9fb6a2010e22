#include "lampwalk/approximation.hpp"

#include <algorithm>
#include <set>

#include "lampwalk/errors.hpp"

namespace lampwalk {

BetaSchedule BetaSchedule::inv_n() {
  return BetaSchedule{"inv_n", [](int n) { return Rational(1, std::max(n, 1)); }};
}

BetaSchedule BetaSchedule::inv_2n() {
  return BetaSchedule{"inv_2n", [](int n) { return pow2(-std::max(n, 0)); }};
}

BetaSchedule BetaSchedule::parse(const std::string& name) {
  if (name == "inv_n") return inv_n();
  if (name == "inv_2n") return inv_2n();
  throw ParseError("unknown beta schedule '" + name + "' (expected inv_n or inv_2n)");
}

namespace {

// φ - inf φ.
VertexFn zero_infimum(const VertexFn& phi) {
  return phi.info().infimum == 0 ? phi : shifted(phi, -phi.info().infimum);
}

Rational ball_min(const VertexFn& phi, const Ball& ball) {
  Rational best = phi(ball.vertices.front());
  for (const Dyadic& v : ball.vertices) {
    Rational x = phi(v);
    if (x < best) best = std::move(x);
  }
  return best;
}

Config hair_config(const SchreierGraph& g, const std::vector<StructuralAddress>& bases, int m) {
  std::vector<Dyadic> pts;
  for (const auto& b : bases) pts.push_back(hair_point_at(g, b, m));
  return Config(std::move(pts));
}

void require_n(int n, int least) {
  if (n < least) throw PreconditionFailed("n must be at least " + std::to_string(least));
}

}  // namespace

Dyadic hair_point_at(const SchreierGraph& g, const StructuralAddress& base, int m) {
  if (!base.on_skeleton()) throw PreconditionFailed("hair base must lie on the skeleton");
  StructuralAddress a = base;
  a.offset = m;
  if (m > 0) {
    if (base.path.empty()) {
      a.hair_exit = g.options().root_hair == RootHair::ViaBInverse ? Letter::B : Letter::A;
    } else {
      a.hair_exit = g.child_letter(base.path.back()) == Letter::a ? Letter::B : Letter::A;
    }
  }
  return g.vertex_at(a);
}

Construction construct_En_single(const VertexFn& phi, int n, int level_cap) {
  require_n(n, 4);
  const SchreierGraph& g = phi.graph();
  VertexFn shifted_phi = zero_infimum(phi);
  Construction out;
  out.offset = n * n;
  if (shifted_phi(root_point()) == 0) {
    // φ is constant; every singleton works.
    out.bases.push_back(StructuralAddress{});
    out.config = Config({root_point()});
    out.offset = 0;
    out.recipe = "single:constant";
    return out;
  }
  Rational r_n = level_min(shifted_phi, n, level_cap).value;
  Rational target = r_n / (4 * n * n);
  Rational r = r_n;
  int big_n = n;
  while (!(r < target)) {
    if (++big_n > level_cap) {
      throw SearchExhausted("no level up to " + std::to_string(level_cap) + " has r_N < r_n/(4n^2)",
                            static_cast<std::size_t>(level_cap));
    }
    Rational lv = level_minimum(shifted_phi, big_n, level_cap);
    if (lv < r) r = std::move(lv);
  }
  LevelMin lm = level_min(shifted_phi, big_n, level_cap);
  out.bases.push_back(*g.classify(lm.witness));
  out.config = hair_config(g, out.bases, out.offset);
  out.recipe = "single";
  out.notes.push_back("N=" + std::to_string(big_n));
  out.notes.push_back("r_n=" + to_string(r_n));
  out.notes.push_back("r_N=" + to_string(lm.value));
  return out;
}

Construction construct_En_sum(const std::vector<VertexFn>& phis, int n) {
  require_n(n, 4);
  if (phis.empty()) throw PreconditionFailed("construct_En_sum needs at least one function");
  const SchreierGraph& g = phis.front().graph();
  Ball ball = g.ball(root_point(), n);
  std::vector<VertexFn> live;
  for (const auto& phi : phis) {
    VertexFn s = zero_infimum(phi);
    if (s(root_point()) != 0) live.push_back(std::move(s));  // constants never move the ratio
  }
  Construction out;
  out.offset = n * n;
  out.recipe = "sum";
  if (live.empty()) {
    out.bases.push_back(StructuralAddress{});
    out.config = Config({root_point()});
    out.offset = 0;
    out.recipe = "sum:constant";
    return out;
  }
  Rational eps = ball_min(live.front(), ball);
  for (const auto& s : live) eps = std::min(eps, ball_min(s, ball));
  Rational threshold = eps / (4 * n * n);
  std::set<std::vector<Side>> used;
  for (const auto& s : live) {
    SkeletonHit hit = find_skeleton_below(s, threshold, used);
    used.insert(hit.address.path);
    out.bases.push_back(std::move(hit.address));
  }
  out.config = hair_config(g, out.bases, out.offset);
  out.notes.push_back("eps=" + to_string(eps));
  return out;
}

Construction construct_En_markov(const std::vector<VertexFn>& phis, const std::vector<int>& powers, int n, int cap) {
  if (powers.size() != phis.size()) throw PreconditionFailed("one Markov power per function");
  int top = 0;
  for (int p : powers) {
    if (p < 0) throw PreconditionFailed("negative Markov power");
    if (p > cap) throw CapExceeded("Markov power " + std::to_string(p) + " exceeds cap " + std::to_string(cap));
    top = std::max(top, p);
  }
  Construction out = construct_En_sum(phis, n + top);
  out.recipe = "markov";
  out.notes.push_back("m=" + std::to_string(n + top));
  return out;
}

CountableFamily phi_family_countable(GraphPtr g) {
  return CountableFamily{[g](int i) { return phi_family(g, i); }, phi_family_tail_bound};
}

Construction construct_En_countable(const CountableFamily& family, int n) {
  require_n(n, 4);
  if (!family.tail) throw MissingTailBound("countable construction needs a tail bound");
  VertexFn first = zero_infimum(family.member(0));
  const SchreierGraph& g = first.graph();
  Ball ball = g.ball(root_point(), n);
  const int nn = 16 * n * n;
  Construction out;
  out.offset = 4 * n * n;
  out.recipe = "countable";
  std::set<std::vector<Side>> used;
  SkeletonHit z0 = find_skeleton_below(first, ball_min(first, ball) / nn, used);
  Rational delta = z0.value;
  int big_n = family.tail(delta / (3 * n));
  used.insert(z0.address.path);
  out.bases.push_back(std::move(z0.address));
  for (int i = 1; i <= big_n; ++i) {
    VertexFn phi = zero_infimum(family.member(i));
    SkeletonHit z = find_skeleton_below(phi, ball_min(phi, ball) / nn, used);
    used.insert(z.address.path);
    out.bases.push_back(std::move(z.address));
  }
  out.config = hair_config(g, out.bases, out.offset);
  out.notes.push_back("delta=" + to_string(delta));
  out.notes.push_back("N=" + std::to_string(big_n));
  return out;
}

Config explicit_En_hairs(const SchreierGraph& g, int n) {
  require_n(n, 1);
  std::vector<Dyadic> pts;
  std::vector<int> hits(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    Dyadic x = root_point();
    for (int i = 0; i < k; ++i) x = act(Letter::a, x);
    for (int i = 0; i < n; ++i) x = act(Letter::b, x);
    for (int i = 0; i < n; ++i) x = act(Letter::A, x);
    AddressPtr a = g.classify(x);
    auto t = a->subtree_index();
    if (!t || *t >= n || a->offset != n) {
      throw StructuralAssertFailed("a^-n b^n a^k p for n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                   " classified as " + to_string(*a));
    }
    ++hits[static_cast<std::size_t>(*t)];
    pts.push_back(std::move(x));
  }
  for (int k = 0; k < n; ++k) {
    if (hits[static_cast<std::size_t>(k)] != 1) {
      throw StructuralAssertFailed("T_" + std::to_string(k) + " holds " + std::to_string(hits[static_cast<std::size_t>(k)]) +
                                   " points instead of one");
    }
  }
  return Config(std::move(pts));
}

std::optional<GoldenWitness> golden_witness(GraphPtr g, const Config& e, int n) {
  require_n(n, 2);
  std::vector<bool> hit(static_cast<std::size_t>(n - 1), false);
  for (const Dyadic& x : e) {
    auto t = g->classify(x)->subtree_index();
    if (t && *t <= n - 2) hit[static_cast<std::size_t>(*t)] = true;
  }
  auto miss = std::find(hit.begin(), hit.end(), false);
  if (miss == hit.end()) return std::nullopt;
  const int i = static_cast<int>(miss - hit.begin());
  // Nearest golden-path point: the deepest a^j p already in E.
  int nearest = -1;
  Dyadic x = root_point();
  for (int j = 0; j <= i; ++j) {
    if (e.contains(x)) nearest = j;
    x = act(Letter::a, x);
  }
  std::vector<Letter> seq;
  if (nearest < 0) seq.push_back(Letter::s);
  seq.insert(seq.end(), static_cast<std::size_t>(i - std::max(nearest, 0)), Letter::a);
  seq.push_back(Letter::b);
  GoldenWitness w;
  w.subtree = i;
  w.word = word_from_action_order<Dyadic>(std::move(seq));
  SetFn f = phi_family_sum(g, pow2(-(n + 2))).fn;
  Rational base = f(e);
  w.deviation = abs(Rational(f(apply_word(e, w.word)) / base - 1));
  return w;
}

GeneralizedSearch generalized_En_search(const GeneralizedMinFn& f, int n, int budget) {
  require_n(n, 1);
  GeneralizedSearch out;
  if (budget <= 0) return out;
  VertexFn phi = zero_infimum(f.phi);
  const SchreierGraph& g = phi.graph();
  const int m = f.r.arity;
  Rational eps = ball_min(phi, g.ball(root_point(), n));
  for (int j = 0; j < budget; ++j) {
    ++out.candidates_tried;
    Construction c;
    c.recipe = "generalized";
    if (eps == 0) {
      // Constant φ: F is constant.
      c.bases.push_back(StructuralAddress{});
      c.config = Config({root_point()});
    } else {
      c.offset = (n + 1) << j;
      Rational threshold = eps / (3 * (c.offset + n) + 1);
      std::set<std::vector<Side>> used;
      for (int i = 0; i < m; ++i) {
        SkeletonHit hit = find_skeleton_below(phi, threshold, used);
        used.insert(hit.address.path);
        c.bases.push_back(std::move(hit.address));
      }
      c.config = hair_config(g, c.bases, c.offset);
    }
    VerifyReport rep = strong_verify(f.fn, c.config, n, BetaSchedule::inv_n());
    out.deviations.push_back(rep.worst_deviation);
    if (rep.pass) {
      c.notes.push_back("candidate=" + std::to_string(j));
      out.found = std::move(c);
      out.report = std::move(rep);
      return out;
    }
  }
  return out;
}

}  // namespace lampwalk
