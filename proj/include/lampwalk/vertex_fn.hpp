#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lampwalk/dyadic.hpp"
#include "lampwalk/numeric.hpp"
#include "lampwalk/schreier_graph.hpp"

namespace lampwalk {

// A vertex known by its dyadic id, its address, or both; the other is resolved on demand.
class Site {
 public:
  Site(const SchreierGraph& g, Dyadic id) : graph_(&g), id_(std::move(id)) {}
  Site(const SchreierGraph& g, AddressPtr a) : graph_(&g), addr_(std::move(a)) {}
  Site(const SchreierGraph& g, const StructuralAddress& a)
      : graph_(&g), addr_(std::make_shared<const StructuralAddress>(a)) {}

  const Dyadic& id() const;
  const StructuralAddress& address() const;
  const SchreierGraph& graph() const { return *graph_; }

 private:
  const SchreierGraph* graph_;
  mutable std::optional<Dyadic> id_;
  mutable AddressPtr addr_;
};

struct VertexFnInfo {
  std::string name;
  Rational infimum = 0;
  // Evaluation reads only the address; neighbors can then be taken structurally.
  bool structural = false;
  bool hair_constant = false;
};

class VertexFn {
 public:
  using Eval = std::function<Rational(const Site&)>;

  VertexFn(std::shared_ptr<const SchreierGraph> graph, Eval eval, VertexFnInfo info);

  Rational operator()(const Site& s) const { return eval_(s); }
  Rational operator()(const Dyadic& v) const { return eval_(Site(*graph_, v)); }
  Rational at(const StructuralAddress& a) const { return eval_(Site(*graph_, a)); }

  const SchreierGraph& graph() const { return *graph_; }
  const std::shared_ptr<const SchreierGraph>& graph_ptr() const { return graph_; }
  const VertexFnInfo& info() const { return info_; }
  const std::string& name() const { return info_.name; }

 private:
  std::shared_ptr<const SchreierGraph> graph_;
  Eval eval_;
  VertexFnInfo info_;
};

// (Pφ)(v) = average of φ over the four generator images.
Rational markov_apply_X(const VertexFn& phi, const Site& v);
Rational markov_apply_X(const VertexFn& phi, const Dyadic& v);

struct SuperharmonicReport {
  struct Entry {
    Dyadic vertex;
    Rational margin;  // φ(v) - (Pφ)(v)
  };
  std::size_t checked = 0;
  std::vector<Entry> margins;  // interior vertices, ball order
  std::vector<Entry> violations;
  bool pass() const { return violations.empty(); }
};

// Checks every interior vertex of the ball.
SuperharmonicReport is_superharmonic_on(const VertexFn& phi, const Ball& region);

using GraphPtr = std::shared_ptr<const SchreierGraph>;

// 2^(2-u) with u the depth of the nearest skeleton vertex.
VertexFn canonical_phi_u(GraphPtr g);
// φ_u + c, infimum c.
VertexFn phi_u_shift(GraphPtr g, const Rational& c);
// 2^-n outside T_n, 2^-u on T_n (u = base depth).
VertexFn phi_family(GraphPtr g, int n);
// (2/3)^u (1 + min(m, K_u)/6) with K_u = floor(6((3/2)^u - 1)): superharmonic,
// maximal at the root, increasing and concave along hairs.
VertexFn phi_ramp(GraphPtr g);
VertexFn constant_fn(GraphPtr g, const Rational& c);
VertexFn shifted(const VertexFn& phi, const Rational& c);
VertexFn scaled(const VertexFn& phi, const Rational& c);
// φ with the value at one vertex replaced.
VertexFn perturbed(const VertexFn& phi, const Dyadic& v, const Rational& value);

struct HairPropertyReport {
  std::vector<Rational> values;  // a_0 .. a_M
  bool concave = true;
  bool nondecreasing = true;
  bool estimate = true;  // a_m <= (3m+1) a_0
  std::vector<std::string> failures;
  bool pass() const { return concave && nondecreasing && estimate; }
};

// Throws PreconditionFailed unless φ is positive and superharmonic along the segment.
HairPropertyReport hair_property_suite(const VertexFn& phi, const Dyadic& base, int M);

struct LevelMin {
  Rational value;
  Dyadic witness;
  int witness_level = 0;
  std::vector<Rational> per_level;  // minimum of each level 0..n
};

// Minimum over skeleton levels 0..n. Throws PreconditionFailed when φ is not
// maximal at the root or not superharmonic on a small probe ball.
LevelMin level_min(const VertexFn& phi, int n, int level_cap = 22);
// Minimum over skeleton level n only.
Rational level_minimum(const VertexFn& phi, int n, int level_cap = 22);

std::optional<Dyadic> harmonic_witness_search(const VertexFn& h, const Rational& sup, int n, int d,
                                              const std::vector<Dyadic>& region);

struct SkeletonHit {
  StructuralAddress address;
  Rational value;
};

// Best-first descent through the skeleton (value ascending, depth descending,
// Left before Right). Paths in `exclude` are skipped as answers.
// Throws SearchExhausted after max_expansions.
SkeletonHit find_skeleton_below(const VertexFn& phi, const Rational& threshold,
                                const std::set<std::vector<Side>>& exclude = {},
                                std::size_t max_expansions = 1'000'000);

}  // namespace lampwalk
