#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lampwalk/lamplighter.hpp"
#include "lampwalk/numeric.hpp"
#include "lampwalk/vertex_fn.hpp"

namespace lampwalk {

// f(E) = min over E of φ, f(∅) = φ(p).
SetFn minfun(const VertexFn& phi);
// True when φ(p) is maximal on ball(p, radius).
bool max_at_root_on_probe(const VertexFn& phi, int radius = 3);

// α · (average over a, b, A, B of F(gE)) + (1 - α) · F(E Δ {p}).
Rational T_operator(const SetFn& f, const Config& e, const Rational& alpha);

struct TransferReport {
  Dyadic q;
  Rational phi_margin;  // φ(q) - Pφ(q) < 0
  Rational set_margin;  // f({q}) - (P f)({q}) = 4/5 phi_margin
  Rational t_margin;    // f({q}) - T f({q}) at α = 1/2
  bool violated() const { return set_margin < 0; }
};

// φ fails superharmonicity at q, so the min-function fails it at {q}.
TransferReport non_superharmonic_transfer(const VertexFn& phi, const Dyadic& q);

SetFn weighted_sum(const std::vector<SetFn>& fs, const std::vector<Rational>& weights);

// Smallest N with sum_{i > N} φ_i(p) < ε.
using TailBound = std::function<int(const Rational& eps)>;

struct CountableSum {
  SetFn fn;        // sum of the first `terms` min-functions
  int terms = 0;
  Rational error_bound;  // the true sum exceeds fn by less than this
};

CountableSum countable_sum(const std::function<VertexFn(int)>& family, const Rational& eps, const TailBound& tail);
// The φ_n family with its geometric tail.
CountableSum phi_family_sum(GraphPtr g, const Rational& eps);
int phi_family_tail_bound(const Rational& eps);

SetFn markov_image(const SetFn& f, int n, int cap = kMarkovIterateCap);

struct SymmetricConcaveFn {
  std::string name;
  int arity = 1;
  std::function<Rational(const std::vector<Rational>&)> eval;

  Rational operator()(const std::vector<Rational>& x) const { return eval(x); }
};

struct PropertyReport {
  std::size_t probes = 0;
  std::size_t symmetry_failures = 0;
  std::size_t concavity_failures = 0;
  std::size_t monotonicity_failures = 0;
  std::size_t sign_failures = 0;
  bool pass() const {
    return symmetry_failures + concavity_failures + monotonicity_failures + sign_failures == 0;
  }
};

// Random probes on (0,1]^m: permutations, segment midpoints, coordinate bumps.
PropertyReport self_test(const SymmetricConcaveFn& r, std::size_t probes = 1000, std::uint64_t seed = 1);

// Mean of the k smallest of m coordinates.
SymmetricConcaveFn r_family_kmean(int k, int m);

struct GeneralizedMinFn {
  SetFn fn;
  SymmetricConcaveFn r;
  VertexFn phi;
  Rational normalization;  // φ(p); values are r(φ/φ(p)) · φ(p)
};

// Sorts the normalized φ values of E, keeps the m smallest, pads with 1.
// Throws PropertySelfTestFailed if r fails its probes, ZeroBase if φ(p) <= 0.
GeneralizedMinFn generalized_minfun(const SymmetricConcaveFn& r, const VertexFn& phi);

}  // namespace lampwalk
