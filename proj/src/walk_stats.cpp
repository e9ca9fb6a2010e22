#include "lampwalk/walk_stats.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lampwalk/errors.hpp"

namespace lampwalk {

namespace {

void check_cap(int n, int cap, const char* what) {
  if (n < 0) throw PreconditionFailed(std::string(what) + ": negative step count");
  if (n > cap) throw CapExceeded(std::string(what) + ": " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

BigInt from_u128(unsigned __int128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

// Runs body(trial) for every trial; results land in trial order whatever the thread count.
template <class R, class Body>
std::vector<R> run_trials(const WalkConfig& cfg, Body body) {
  std::vector<R> out(static_cast<std::size_t>(std::max(cfg.trials, 0)));
  const int threads = std::clamp(cfg.threads, 1, 64);
  if (threads == 1) {
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = body(t);
    return out;
  }
  std::vector<std::thread> pool;
  for (int k = 0; k < threads; ++k) {
    pool.emplace_back([&, k] {
      for (std::size_t t = static_cast<std::size_t>(k); t < out.size(); t += static_cast<std::size_t>(threads)) {
        out[t] = body(t);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

constexpr Letter kStepLetters[4] = {Letter::a, Letter::b, Letter::A, Letter::B};

std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  if (xs.empty()) return {0, 0};
  double n = static_cast<double>(xs.size()), sum = 0, sq = 0;
  for (double x : xs) sum += x;
  double mean = sum / n;
  for (double x : xs) sq += (x - mean) * (x - mean);
  double var = xs.size() > 1 ? sq / (n - 1) : 0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

Rational Distribution::mass(const Dyadic& v) const {
  auto it = counts.find(v);
  if (it == counts.end()) return 0;
  return Rational(BigInt(it->second), BigInt(1) << (2 * steps));
}

Rational Distribution::total() const {
  BigInt sum = 0;
  for (const auto& [v, c] : counts) sum += c;
  return Rational(sum, BigInt(1) << (2 * steps));
}

Distribution pn_exact(const Dyadic& x, int n, int cap) {
  check_cap(n, std::min(cap, 31), "pn_exact");
  Distribution d;
  d.counts.emplace(x, 1);
  for (int step = 0; step < n; ++step) {
    std::unordered_map<Dyadic, std::uint64_t, DyadicHash> next;
    next.reserve(d.counts.size() * 2);
    for (const auto& [v, c] : d.counts) {
      for (Letter g : kMoves) next[act(g, v)] += c;
    }
    d.counts = std::move(next);
    d.steps = step + 1;
  }
  return d;
}

std::vector<Rational> radial_return_masses(int N, int cap) {
  check_cap(N, cap, "radial chain");
  // counts[u][m]: labeled paths from p ending at depth u, hair offset m.
  // Only states that can still return in time are kept (u + m <= N - n).
  const int L = N / 2 + 1;
  std::vector<std::vector<BigInt>> cur(static_cast<std::size_t>(L + 1), std::vector<BigInt>(static_cast<std::size_t>(L + 1)));
  cur[0][0] = 1;
  std::vector<Rational> out{Rational(1)};
  for (int n = 1; n <= N; ++n) {
    const int reach = std::min(n, N - n);
    std::vector<std::vector<BigInt>> next(cur.size(), std::vector<BigInt>(cur.size()));
    auto add = [&](int u, int m, const BigInt& c, int mult) {
      if (u + m > reach) return;
      next[static_cast<std::size_t>(u)][static_cast<std::size_t>(m)] += c * mult;
    };
    const int prev = std::min(n - 1, N - n + 1);
    for (int u = 0; u <= prev; ++u) {
      for (int m = 0; u + m <= prev; ++m) {
        const BigInt& c = cur[static_cast<std::size_t>(u)][static_cast<std::size_t>(m)];
        if (c == 0) continue;
        if (m > 0) {
          add(u, m + 1, c, 1);
          add(u, m - 1, c, 1);
          add(u, m, c, 2);
        } else if (u == 0) {
          add(1, 0, c, 2);
          add(0, 1, c, 2);  // two hairs at the root
        } else {
          add(u + 1, 0, c, 2);
          add(u - 1, 0, c, 1);
          add(u, 1, c, 1);
        }
      }
    }
    cur = std::move(next);
    out.emplace_back(cur[0][0], BigInt(1) << (2 * n));
  }
  return out;
}

std::vector<Rational> return_masses(const Dyadic& x, const Dyadic& y, int N, int cap) {
  if (x == root_point() && y == root_point() && N <= kRadialCap) return radial_return_masses(N);
  const int K = (N + 1) / 2;
  check_cap(K, cap, "return masses");
  std::vector<Distribution> dx, dy;
  for (int k = 0; k <= K; ++k) {
    dx.push_back(k == 0 ? pn_exact(x, 0, cap) : Distribution{});
    if (k > 0) {
      Distribution next;
      next.steps = k;
      for (const auto& [v, c] : dx[static_cast<std::size_t>(k - 1)].counts) {
        for (Letter g : kMoves) next.counts[act(g, v)] += c;
      }
      dx.back() = std::move(next);
    }
  }
  if (x == y) {
    dy = dx;
  } else {
    dy.push_back(pn_exact(y, 0, cap));
    for (int k = 1; k <= K; ++k) {
      Distribution next;
      next.steps = k;
      for (const auto& [v, c] : dy.back().counts) {
        for (Letter g : kMoves) next.counts[act(g, v)] += c;
      }
      dy.push_back(std::move(next));
    }
  }
  std::vector<Rational> out;
  for (int n = 0; n <= N; ++n) {
    const auto& a = dx[static_cast<std::size_t>((n + 1) / 2)].counts;
    const auto& b = dy[static_cast<std::size_t>(n / 2)].counts;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    unsigned __int128 sum = 0;
    for (const auto& [v, c] : small) {
      auto it = large.find(v);
      if (it != large.end()) sum += static_cast<unsigned __int128>(c) * it->second;
    }
    out.emplace_back(from_u128(sum), BigInt(1) << (2 * n));
  }
  return out;
}

Rational green_partial(const Dyadic& x, const Dyadic& y, const Rational& z, int N, int cap) {
  if (z < 0 || z > 1) throw PreconditionFailed("z must lie in [0,1]");
  std::vector<Rational> p = return_masses(x, y, N, cap);
  Rational sum = 0, zn = 1;
  for (int n = 0; n <= N; ++n) {
    sum += p[static_cast<std::size_t>(n)] * zn;
    zn *= z;
  }
  return sum;
}

std::vector<Rational> first_return_masses(const std::vector<Rational>& returns) {
  std::vector<Rational> f(returns.size());
  for (std::size_t n = 1; n < returns.size(); ++n) {
    Rational v = returns[n];
    for (std::size_t k = 1; k < n; ++k) v -= f[k] * returns[n - k];
    f[n] = std::move(v);
  }
  return f;
}

Rational return_prob(const Dyadic& x, int N, int cap) {
  std::vector<Rational> f = first_return_masses(return_masses(x, x, N, cap));
  Rational sum = 0;
  for (const auto& v : f) sum += v;
  return sum;
}

double spectral_radius_proxy(int n, int cap) {
  if (n < 1) throw PreconditionFailed("n must be positive");
  std::vector<Rational> p = radial_return_masses(2 * n, cap);
  return std::pow(to_double(p.back()), 1.0 / (2 * n));
}

double lamplighter_spectral_radius_proxy(int n) {
  if (n < 1) throw PreconditionFailed("n must be positive");
  // Symmetric measure: P_2n(∅,∅) = sum_C P_n(∅,C)^2.
  BigInt sum = 0;
  for (const auto& [c, w] : lamp_distribution(Config{}, n)) sum += w * w;
  Rational p(sum, ipow(BigInt(25), static_cast<unsigned>(n)));
  return std::pow(to_double(p), 1.0 / (2 * n));
}

DeltaReport delta_check_phi_u(GraphPtr g, int R) {
  if (R < 2) throw PreconditionFailed("radius must be at least 2");
  Ball ball = g->ball(root_point(), R);
  SuperharmonicReport rep = is_superharmonic_on(canonical_phi_u(g), ball);
  DeltaReport out;
  out.radius = R;
  out.checked = rep.checked;
  for (auto& e : rep.margins) {
    if (e.vertex == root_point()) {
      out.root_margin = e.margin;
    } else if (e.margin != 0) {
      ++out.nonzero_off_root;
    }
  }
  out.margins = std::move(rep.margins);
  return out;
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

std::uint32_t bounded_draw(std::mt19937_64& rng, std::uint32_t bound) {
  // Multiply-shift with rejection of the short interval.
  std::uint64_t m = (rng() >> 32) * bound;
  auto low = static_cast<std::uint32_t>(m);
  if (low < bound) {
    const std::uint32_t floor = static_cast<std::uint32_t>(-bound) % bound;
    while (low < floor) {
      m = (rng() >> 32) * bound;
      low = static_cast<std::uint32_t>(m);
    }
  }
  return static_cast<std::uint32_t>(m >> 32);
}

StructuralAddress sample_address(const SchreierGraph& g, std::mt19937_64& rng, int max_depth, int max_offset) {
  if (max_depth < 0 || max_offset < 0) throw PreconditionFailed("negative sampling bound");
  StructuralAddress a;
  auto d = bounded_draw(rng, static_cast<std::uint32_t>(max_depth) + 1);
  for (std::uint32_t i = 0; i < d; ++i) a.path.push_back(bounded_draw(rng, 2) ? Side::Right : Side::Left);
  a.offset = static_cast<int>(bounded_draw(rng, static_cast<std::uint32_t>(max_offset) + 1));
  if (a.offset > 0) {
    if (a.path.empty()) {
      a.hair_exit = bounded_draw(rng, 2) ? Letter::A : Letter::B;
    } else {
      a.hair_exit = g.child_letter(a.path.back()) == Letter::a ? Letter::B : Letter::A;
    }
  }
  return a;
}

Config sample_config(const SchreierGraph& g, std::mt19937_64& rng, int max_size, int max_depth, int max_offset) {
  if (max_size < 0) throw PreconditionFailed("negative size bound");
  std::vector<Dyadic> pts;
  auto k = bounded_draw(rng, static_cast<std::uint32_t>(max_size) + 1);
  for (std::uint32_t i = 0; i < k; ++i) pts.push_back(g.vertex_at(sample_address(g, rng, max_depth, max_offset)));
  return Config(std::move(pts));
}

McEstimate green_mc(const SchreierGraph& g, const Dyadic& x, const Dyadic& y, const WalkConfig& cfg) {
  const StructuralAddress start = *g.classify(x);
  const StructuralAddress target = *g.classify(y);
  const bool at_root = target.path.empty() && target.offset == 0;
  auto visits = run_trials<double>(cfg, [&](std::size_t t) {
    std::mt19937_64 rng = trial_stream(cfg.seed, t);
    StructuralAddress a = start;
    std::uint64_t count = a == target ? 1 : 0;
    for (int s = 0; s < cfg.steps; ++s) {
      g.move_in_place(a, kStepLetters[bounded_draw(rng, 4)]);
      if (at_root ? (a.offset == 0 && a.path.empty()) : a == target) ++count;
    }
    return static_cast<double>(count);
  });
  auto [mean, se] = mean_stderr(visits);
  McEstimate out;
  out.mean = mean;
  out.stderr_ = se;
  out.trials = cfg.trials;
  out.cap = cfg.steps;
  out.caveat = "visits after step " + std::to_string(cfg.steps) + " are not counted; the estimate is biased low";
  return out;
}

namespace {

std::vector<CheckpointStats> checkpoint_stats(const std::vector<int>& checkpoints,
                                              const std::vector<std::vector<double>>& per_trial) {
  std::vector<CheckpointStats> out;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    std::vector<double> xs;
    for (const auto& tr : per_trial) xs.push_back(tr[c]);
    auto [mean, se] = mean_stderr(xs);
    out.push_back(CheckpointStats{checkpoints[c], mean, se});
  }
  return out;
}

struct TrialResult {
  std::size_t states = 0;
  std::size_t violations = 0;
  std::vector<double> values;
};

}  // namespace

SupermartingaleReport supermartingale_check(const VertexFn& phi, const WalkConfig& cfg,
                                            const std::vector<int>& checkpoints) {
  const SchreierGraph& g = phi.graph();
  if (!is_superharmonic_on(phi, g.ball(root_point(), 3)).pass()) {
    throw PreconditionFailed(phi.name() + " is not superharmonic near the root");
  }
  auto results = run_trials<TrialResult>(cfg, [&](std::size_t t) {
    std::mt19937_64 rng = trial_stream(cfg.seed, t);
    TrialResult r;
    StructuralAddress a;
    std::size_t next = 0;
    for (int s = 0;; ++s) {
      Rational v = phi.at(a);
      Rational avg = 0;
      for (Letter l : kMoves) avg += phi.at(g.move(a, l));
      ++r.states;
      if (4 * v < avg) ++r.violations;
      while (next < checkpoints.size() && checkpoints[next] == s) {
        r.values.push_back(to_double(v));
        ++next;
      }
      if (s == cfg.steps) break;
      g.move_in_place(a, kStepLetters[bounded_draw(rng, 4)]);
    }
    r.values.resize(checkpoints.size(), 0.0);
    return r;
  });
  SupermartingaleReport out;
  std::vector<std::vector<double>> values;
  for (auto& r : results) {
    out.states_checked += r.states;
    out.violations += r.violations;
    values.push_back(std::move(r.values));
  }
  out.checkpoints = checkpoint_stats(checkpoints, values);
  return out;
}

SupermartingaleReport supermartingale_check(const SetFn& f, const WalkConfig& cfg,
                                            const std::vector<int>& checkpoints) {
  auto results = run_trials<TrialResult>(cfg, [&](std::size_t t) {
    std::mt19937_64 rng = trial_stream(cfg.seed, t);
    TrialResult r;
    Config e;
    std::size_t next = 0;
    for (int s = 0;; ++s) {
      Rational v = f(e);
      ++r.states;
      if (v < markov_apply_set(f, e)) ++r.violations;
      while (next < checkpoints.size() && checkpoints[next] == s) {
        r.values.push_back(to_double(v));
        ++next;
      }
      if (s == cfg.steps) break;
      e = apply_letter(e, kLampLetters[bounded_draw(rng, 5)]);
    }
    r.values.resize(checkpoints.size(), 0.0);
    return r;
  });
  SupermartingaleReport out;
  std::vector<std::vector<double>> values;
  for (auto& r : results) {
    out.states_checked += r.states;
    out.violations += r.violations;
    values.push_back(std::move(r.values));
  }
  out.checkpoints = checkpoint_stats(checkpoints, values);
  return out;
}

Rational RadialMinSum::operator()(int max_depth) const {
  Rational s = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) s += weights[i] * profiles[i](max_depth);
  return s;
}

bool RadialMinSum::constant_on(int depth_probe) const {
  Rational top = (*this)(0);
  for (int u = 1; u <= depth_probe; ++u)
    if ((*this)(u) != top) return false;
  return true;
}

RadialMinSum radial_min_sum(const std::vector<VertexFn>& phis, const std::vector<Rational>& weights, int probe_depth) {
  if (phis.empty() || phis.size() != weights.size()) throw PreconditionFailed("radial sum needs matching lists");
  RadialMinSum out;
  out.name = "radial(";
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const VertexFn& phi = phis[i];
    if (weights[i] <= 0) throw PreconditionFailed("weights must be positive");
    if (!phi.info().structural || !phi.info().hair_constant) {
      throw PreconditionFailed(phi.name() + " is not a hair-constant structural function");
    }
    auto profile = [phi](int u) {
      StructuralAddress a;
      a.path.assign(static_cast<std::size_t>(u), Side::Left);
      return phi.at(a);
    };
    // Every vertex at depth u agrees with Left^u, and values never increase with depth.
    for (int u = 0; u <= probe_depth; ++u) {
      Rational ref = profile(u);
      if (u > 0 && ref > profile(u - 1)) throw PreconditionFailed(phi.name() + " increases with depth");
      for (std::uint32_t bits = 0; bits < (1u << u); ++bits) {
        StructuralAddress a;
        for (int k = 0; k < u; ++k) a.path.push_back((bits >> k) & 1u ? Side::Right : Side::Left);
        if (phi.at(a) != ref) throw PreconditionFailed(phi.name() + " depends on more than the depth");
      }
    }
    out.weights.push_back(weights[i]);
    out.profiles.push_back(profile);
    out.name += (i ? "," : "") + to_string(weights[i]) + "*minfun:" + phi.name();
  }
  out.name += ")";
  return out;
}

LampWalker::LampWalker(const SchreierGraph& g) : g_(&g) {}

void LampWalker::add_depth(int d, int delta) {
  auto& c = depth_counts_[d];
  c = static_cast<std::size_t>(static_cast<std::int64_t>(c) + delta);
  if (c == 0) depth_counts_.erase(d);
}

void LampWalker::to_hair(std::vector<Side> path, Letter exit, int offset) {
  int e = exit_index(exit);
  add_depth(static_cast<int>(path.size()), +1);
  hairs_[e].emplace(offset - shift_[e], HairPoint{std::move(path), offset - shift_[e]});
}

void LampWalker::step(Letter l) {
  if (l == Letter::s) {
    auto it = std::find_if(skeleton_.begin(), skeleton_.end(), [](const auto& p) { return p.empty(); });
    if (it != skeleton_.end()) {
      skeleton_.erase(it);
    } else {
      skeleton_.emplace_back();
    }
    return;
  }
  // Skeleton points move one by one; hair points move through the shared counters.
  std::vector<std::vector<Side>> stay;
  std::vector<std::pair<std::vector<Side>, Letter>> leaving;
  for (auto& path : skeleton_) {
    if (l == Letter::a || l == Letter::b) {
      path.push_back(g_->side_of(l));
      stay.push_back(std::move(path));
    } else if (!path.empty() && g_->child_letter(path.back()) == inverse(l)) {
      path.pop_back();
      stay.push_back(std::move(path));
    } else {
      leaving.emplace_back(std::move(path), l);
    }
  }
  skeleton_ = std::move(stay);
  for (Letter exit : {Letter::A, Letter::B}) {
    int e = exit_index(exit);
    if (l == exit) {
      ++shift_[e];
    } else if (l == inverse(exit)) {
      --shift_[e];
      auto [lo, hi] = hairs_[e].equal_range(-shift_[e]);
      for (auto it = lo; it != hi; ++it) {
        add_depth(static_cast<int>(it->second.path.size()), -1);
        skeleton_.push_back(std::move(it->second.path));
      }
      hairs_[e].erase(lo, hi);
    }
  }
  for (auto& [path, exit] : leaving) to_hair(std::move(path), exit, 1);
}

namespace {

std::optional<int> max_of(std::optional<int> a, int b) { return a ? std::max(*a, b) : b; }

}  // namespace

std::optional<int> LampWalker::max_depth() const {
  std::optional<int> m;
  if (!depth_counts_.empty()) m = depth_counts_.rbegin()->first;
  for (const auto& p : skeleton_) m = max_of(m, static_cast<int>(p.size()));
  return m;
}

std::optional<int> LampWalker::max_depth_after(Letter l) const {
  std::optional<int> m;
  if (!depth_counts_.empty()) m = depth_counts_.rbegin()->first;
  if (l == Letter::s) {
    bool has_root = std::any_of(skeleton_.begin(), skeleton_.end(), [](const auto& p) { return p.empty(); });
    for (const auto& p : skeleton_)
      if (!p.empty()) m = max_of(m, static_cast<int>(p.size()));
    if (!has_root) m = max_of(m, 0);
    return m;
  }
  for (const auto& p : skeleton_) {
    int d = static_cast<int>(p.size());
    if (l == Letter::a || l == Letter::b) {
      ++d;
    } else if (!p.empty() && g_->child_letter(p.back()) == inverse(l)) {
      --d;
    }
    m = max_of(m, d);
  }
  return m;
}

std::size_t LampWalker::size() const { return skeleton_.size() + hairs_[0].size() + hairs_[1].size(); }

std::vector<StructuralAddress> LampWalker::snapshot() const {
  std::vector<StructuralAddress> out;
  for (const auto& p : skeleton_) out.push_back(StructuralAddress{p, 0, Letter::A});
  for (Letter exit : {Letter::A, Letter::B}) {
    int e = exit_index(exit);
    for (const auto& [key, hp] : hairs_[e]) {
      out.push_back(StructuralAddress{hp.path, static_cast<int>(key + shift_[e]), exit});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return to_string(x) < to_string(y); });
  return out;
}

namespace {

Rational quantile(const std::vector<Rational>& sorted, int num, int den) {
  // Lower empirical quantile; the median of an even sample averages the middle pair.
  const std::size_t n = sorted.size();
  if (num * 2 == den && n % 2 == 0) return (sorted[n / 2 - 1] + sorted[n / 2]) / 2;
  std::size_t idx = static_cast<std::size_t>((n - 1) * static_cast<std::size_t>(num) / static_cast<std::size_t>(den));
  return sorted[idx];
}

struct DecayTrial {
  std::size_t states = 0;
  std::size_t violations = 0;
  std::vector<int> depth;  // max depth (∅ counts as 0) at each checkpoint
  std::vector<std::size_t> size;
};

}  // namespace

DecayReport potential_decay_experiment(const SchreierGraph& g, const RadialMinSum& f, const WalkConfig& cfg,
                                       const std::vector<int>& checkpoints) {
  if (checkpoints.empty() || !std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw PreconditionFailed("checkpoints must be sorted and non-empty");
  const int horizon = std::min(cfg.steps, checkpoints.back());
  // F by max depth, extended on demand by the owning trial.
  auto results = run_trials<DecayTrial>(cfg, [&](std::size_t t) {
    std::mt19937_64 rng = trial_stream(cfg.seed, t);
    std::vector<Rational> table;
    auto value = [&](std::optional<int> d) -> const Rational& {
      const auto u = static_cast<std::size_t>(d.value_or(0));
      while (table.size() <= u) table.push_back(f(static_cast<int>(table.size())));
      return table[u];
    };
    DecayTrial r;
    LampWalker w(g);
    w.step(Letter::s);  // E_0 = {p}
    std::size_t next = 0;
    for (int s = 0;; ++s) {
      Rational avg = 0;
      for (Letter l : kLampLetters) avg += value(w.max_depth_after(l));
      ++r.states;
      if (5 * value(w.max_depth()) < avg) ++r.violations;
      while (next < checkpoints.size() && checkpoints[next] == s) {
        r.depth.push_back(w.max_depth().value_or(0));
        r.size.push_back(w.size());
        ++next;
      }
      if (s == horizon) break;
      w.step(kLampLetters[bounded_draw(rng, 5)]);
    }
    return r;
  });
  DecayReport out;
  out.fn = f.name;
  std::size_t reached = results.empty() ? 0 : results.front().depth.size();
  for (const auto& r : results) {
    out.states_checked += r.states;
    out.supermartingale_violations += r.violations;
  }
  for (std::size_t c = 0; c < reached; ++c) {
    std::vector<Rational> vals;
    double sum = 0, nonempty = 0, size = 0;
    for (const auto& r : results) {
      vals.push_back(f(r.depth[c]));
      sum += to_double(vals.back());
      nonempty += r.size[c] > 0 ? 1 : 0;
      size += static_cast<double>(r.size[c]);
    }
    std::sort(vals.begin(), vals.end());
    const double n = static_cast<double>(vals.size());
    out.checkpoints.push_back(DecayCheckpoint{checkpoints[c], quantile(vals, 1, 2), quantile(vals, 1, 4),
                                              quantile(vals, 3, 4), vals.front(), vals.back(), sum / n,
                                              nonempty / n, size / n});
  }
  if (f.constant_on(8)) {
    out.notice = "F is constant; no decay is expected and the ordering check is skipped";
  } else if (out.checkpoints.size() >= 2) {
    out.decay_asserted = true;
    out.decayed = out.checkpoints.back().median < out.checkpoints.front().median;
  } else {
    out.notice = "fewer than two checkpoints reached; the ordering check is skipped";
  }
  return out;
}

}  // namespace lampwalk
