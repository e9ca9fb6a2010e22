#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lampwalk/lamplighter.hpp"
#include "lampwalk/min_fn.hpp"
#include "lampwalk/numeric.hpp"
#include "lampwalk/vertex_fn.hpp"

namespace lampwalk {

// Positive, non-increasing tolerance sequence.
struct BetaSchedule {
  std::string name;
  std::function<Rational(int)> eval;

  Rational operator()(int n) const { return eval(n); }

  static BetaSchedule inv_n();   // 1/n
  static BetaSchedule inv_2n();  // 2^-n
  // "inv_n" or "inv_2n"; throws ParseError.
  static BetaSchedule parse(const std::string& name);
};

template <class V>
struct BasicVerifyReport {
  int n = 0;
  Rational beta;
  bool pass = false;
  Rational base_value;  // F(E)
  LampWord worst_word;
  BasicConfig<V> worst_config;
  Rational worst_value;
  Rational worst_deviation;  // max |F(wE)/F(E) - 1| over the orbit
  std::size_t words_examined = 0;  // distinct configurations
  double seconds = 0;
};

using VerifyReport = BasicVerifyReport<Dyadic>;

// Every configuration reachable by a word of length <= n, each visited once.
// Ties for the worst deviation go to the first configuration in breadth-first order.
template <class V>
BasicVerifyReport<V> strong_verify(const BasicSetFn<V>& f, const BasicConfig<V>& e, int n, const BetaSchedule& beta,
                                   std::size_t cap = kOrbitCap) {
  auto t0 = std::chrono::steady_clock::now();
  BasicVerifyReport<V> rep;
  rep.n = n;
  rep.beta = beta(n);
  rep.base_value = f(e);
  if (rep.base_value == 0) throw ZeroBase("F(E) = 0 for E = {" + e.str() + "}");
  rep.worst_config = e;
  rep.worst_value = rep.base_value;
  rep.worst_deviation = 0;
  auto orbit = orbit_enumerate(e, n, cap);
  rep.words_examined = orbit.size();
  for (const auto& o : orbit) {
    Rational v = f(o.config);
    Rational dev = abs(Rational(v / rep.base_value - 1));
    if (dev > rep.worst_deviation) {
      rep.worst_deviation = dev;
      rep.worst_word = o.witness;
      rep.worst_config = o.config;
      rep.worst_value = std::move(v);
    }
  }
  rep.pass = rep.worst_deviation < rep.beta;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct WeakReport {
  Rational base_value;
  Rational markov_value;  // (P F)(E)
  Rational deviation;     // |PF(E)/F(E) - 1|
  Rational tol;
  bool pass = false;
};

template <class V>
WeakReport weak_verify(const BasicSetFn<V>& f, const BasicConfig<V>& e, const Rational& tol) {
  WeakReport rep;
  rep.base_value = f(e);
  if (rep.base_value == 0) throw ZeroBase("F(E) = 0 for E = {" + e.str() + "}");
  rep.markov_value = markov_apply_set(f, e);
  rep.deviation = abs(Rational(rep.markov_value / rep.base_value - 1));
  rep.tol = tol;
  rep.pass = rep.deviation < tol;
  return rep;
}

struct Construction {
  Config config;
  std::vector<StructuralAddress> bases;  // skeleton bases, in construction order
  int offset = 0;                        // hair offset of every point
  std::string recipe;
  std::vector<std::string> notes;
};

// Hair point m steps from a skeleton base (the root uses the graph's designated hair).
Dyadic hair_point_at(const SchreierGraph& g, const StructuralAddress& base, int m);

// Deepest level-minimum q_N with φ'(q_N) < φ'(q_n)/(4n^2), φ' = φ - inf φ; E = {q_N + n^2}.
Construction construct_En_single(const VertexFn& phi, int n, int level_cap = 22);

// One skeleton point per φ_i below ε/(4n^2), ε = min over ball(p,n) of the shifted φ_i.
// Bases are pairwise distinct. E = the bases moved n^2 into their hairs.
Construction construct_En_sum(const std::vector<VertexFn>& phis, int n);

// construct_En_sum at length n + max power.
Construction construct_En_markov(const std::vector<VertexFn>& phis, const std::vector<int>& powers, int n,
                                 int cap = kMarkovIterateCap);

struct CountableFamily {
  std::function<VertexFn(int)> member;  // indexed from 0
  TailBound tail;                       // N with sum_{i > N} φ_i(p) < eps
};

CountableFamily phi_family_countable(GraphPtr g);

// δ = φ_0(z_0) < ε_0/(16n^2); N from the tail bound at δ/(3n); one point per
// i <= N with φ_i(z_i) < ε_i/(16n^2), all at hair offset 4n^2.
Construction construct_En_countable(const CountableFamily& family, int n);

// a^-n b^n a^k p for k < n. Throws StructuralAssertFailed unless there is exactly
// one point in each T_k, k < n, each n steps into its hair.
Config explicit_En_hairs(const SchreierGraph& g, int n);

struct GoldenWitness {
  int subtree = 0;  // the T_i that E misses
  LampWord word;
  Rational deviation;  // |F(gE)/F(E) - 1| with F the φ_n family sum
};

// Refuter for the φ_n family sum at tolerance 2^-n. nullopt when E meets T_0 .. T_{n-2}.
std::optional<GoldenWitness> golden_witness(GraphPtr g, const Config& e, int n);

struct GeneralizedSearch {
  std::optional<Construction> found;
  std::optional<VerifyReport> report;
  int candidates_tried = 0;
  std::vector<Rational> deviations;  // per rejected or accepted candidate
};

// Candidate j: m distinct low bases, hair offset (n+1) 2^j. The first candidate
// passing strong_verify at β(n) = 1/n is accepted; budget bounds j.
GeneralizedSearch generalized_En_search(const GeneralizedMinFn& f, int n, int budget);

}  // namespace lampwalk
