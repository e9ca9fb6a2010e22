#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "lampwalk/lamplighter.hpp"
#include "lampwalk/numeric.hpp"
#include "lampwalk/schreier_graph.hpp"
#include "lampwalk/vertex_fn.hpp"

namespace lampwalk {

inline constexpr int kPnCap = 16;
inline constexpr int kRadialCap = 512;

// Exact n-step distribution on X: counts of the 4^n labeled step sequences.
struct Distribution {
  int steps = 0;
  std::unordered_map<Dyadic, std::uint64_t, DyadicHash> counts;

  Rational mass(const Dyadic& v) const;
  Rational total() const;
  std::size_t support() const { return counts.size(); }
};

// Throws CapExceeded for n > cap (cap itself at most 31).
Distribution pn_exact(const Dyadic& x, int n, int cap = kPnCap);

// P_n(p,p) for n = 0..N from the lumped (depth, hair offset) chain, exact.
std::vector<Rational> radial_return_masses(int N, int cap = kRadialCap);

// P_n(x,y) for n = 0..N. (p,p) uses the radial chain; other pairs use
// P_n(x,y) = sum_v P_k(x,v) P_{n-k}(y,v) with k, n-k <= cap.
std::vector<Rational> return_masses(const Dyadic& x, const Dyadic& y, int N, int cap = kPnCap);

// sum_{n <= N} P_n(x,y) z^n.
Rational green_partial(const Dyadic& x, const Dyadic& y, const Rational& z, int N, int cap = kPnCap);

// First-return masses f_1..f_N from P_n(x,x) = sum_{k <= n} f_k P_{n-k}(x,x).
std::vector<Rational> first_return_masses(const std::vector<Rational>& returns);
// sum_{n <= N} f_n.
Rational return_prob(const Dyadic& x, int N, int cap = kPnCap);

// P_{2n}(p,p)^(1/2n).
double spectral_radius_proxy(int n, int cap = kRadialCap);
// Same on the lamplighter orbit of ∅ with the 1/5 measure; n <= 8.
double lamplighter_spectral_radius_proxy(int n);

struct DeltaReport {
  int radius = 0;
  std::size_t checked = 0;
  Rational root_margin;
  std::size_t nonzero_off_root = 0;
  std::vector<SuperharmonicReport::Entry> margins;
  bool pass() const { return nonzero_off_root == 0 && root_margin != 0; }
};

// Margins φ_u - Pφ_u on the interior of ball(p, R).
DeltaReport delta_check_phi_u(GraphPtr g, int R);

struct WalkConfig {
  std::uint64_t seed = 1;
  int steps = 10'000;  // per-trajectory cap
  int trials = 1'000;
  int threads = 1;
};

// Deterministic stream for one trial.
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial);
// Unbiased draw from {0, ..., bound - 1}.
std::uint32_t bounded_draw(std::mt19937_64& rng, std::uint32_t bound);

// Random address with depth <= max_depth and hair offset <= max_offset (hair exit forced off the root).
StructuralAddress sample_address(const SchreierGraph& g, std::mt19937_64& rng, int max_depth, int max_offset);
// Up to max_size points from sample_address, duplicates merged.
Config sample_config(const SchreierGraph& g, std::mt19937_64& rng, int max_size, int max_depth, int max_offset);

struct McEstimate {
  double mean = 0;
  double stderr_ = 0;
  int trials = 0;
  int cap = 0;
  std::string caveat;
};

// Mean number of visits to y in steps 0..cap, walking on structural addresses.
McEstimate green_mc(const SchreierGraph& g, const Dyadic& x, const Dyadic& y, const WalkConfig& cfg);

struct CheckpointStats {
  int step = 0;
  double mean = 0;
  double stderr_ = 0;
};

struct SupermartingaleReport {
  std::size_t states_checked = 0;
  std::size_t violations = 0;
  std::vector<CheckpointStats> checkpoints;
  bool pass() const { return violations == 0; }
};

// Walks on X; checks φ(v) >= (Pφ)(v) exactly at every visited state.
// Throws PreconditionFailed unless φ is superharmonic on ball(p, 3).
SupermartingaleReport supermartingale_check(const VertexFn& phi, const WalkConfig& cfg,
                                            const std::vector<int>& checkpoints);
// Lamplighter walks from ∅ on dyadic configurations; checks F(E) >= (P F)(E).
SupermartingaleReport supermartingale_check(const SetFn& f, const WalkConfig& cfg, const std::vector<int>& checkpoints);

// F(E) = sum_i λ_i g_i(max base depth over E), g_i non-increasing; F(∅) = F({p}).
// This is the min-function sum of the depth-only functions x ↦ g_i(u(x)).
struct RadialMinSum {
  std::string name;
  std::vector<Rational> weights;
  std::vector<std::function<Rational(int)>> profiles;

  Rational operator()(int max_depth) const;
  bool constant_on(int depth_probe) const;
};

// Reads the depth profile of each φ; throws PreconditionFailed unless φ depends on depth
// only (probed on the first levels) and is non-increasing in depth.
RadialMinSum radial_min_sum(const std::vector<VertexFn>& phis, const std::vector<Rational>& weights,
                            int probe_depth = 6);

// Lamplighter state on structural addresses. Hair points share an offset counter
// per exit letter, so a step costs O(skeleton points + points leaving hairs).
class LampWalker {
 public:
  explicit LampWalker(const SchreierGraph& g);

  void step(Letter l);
  std::optional<int> max_depth() const;  // nullopt for ∅
  // max_depth after one more letter, without moving.
  std::optional<int> max_depth_after(Letter l) const;
  std::size_t size() const;
  // Current points, sorted by their string form.
  std::vector<StructuralAddress> snapshot() const;

 private:
  struct HairPoint {
    std::vector<Side> path;
    std::int64_t key;  // offset = key + shift[exit]
  };
  int exit_index(Letter exit) const { return exit == Letter::A ? 0 : 1; }
  void add_depth(int d, int delta);
  void to_hair(std::vector<Side> path, Letter exit, int offset);

  const SchreierGraph* g_;
  std::vector<std::vector<Side>> skeleton_;
  std::int64_t shift_[2] = {0, 0};
  std::multimap<std::int64_t, HairPoint> hairs_[2];
  std::map<int, std::size_t> depth_counts_;
};

struct DecayCheckpoint {
  int step = 0;
  Rational median;
  Rational q25;
  Rational q75;
  Rational min;
  Rational max;
  double mean = 0;
  double nonempty_fraction = 0;
  double mean_size = 0;
};

struct DecayReport {
  std::string fn;
  std::vector<DecayCheckpoint> checkpoints;
  std::size_t states_checked = 0;
  std::size_t supermartingale_violations = 0;
  bool decay_asserted = false;  // false when F is constant (no decay expected)
  bool decayed = false;         // median at the last checkpoint < median at the first
  std::string notice;
  bool pass() const { return supermartingale_violations == 0 && (!decay_asserted || decayed); }
};

// Lamplighter walks from {p}; F quantiles at the checkpoints; exact one-step check at every state.
DecayReport potential_decay_experiment(const SchreierGraph& g, const RadialMinSum& f, const WalkConfig& cfg,
                                       const std::vector<int>& checkpoints = {100, 1000, 10000});

}  // namespace lampwalk
