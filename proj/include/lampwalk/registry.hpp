#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lampwalk/approximation.hpp"
#include "lampwalk/lamplighter.hpp"
#include "lampwalk/min_fn.hpp"
#include "lampwalk/vertex_fn.hpp"

namespace lampwalk {

// phi_u | phi_u_shift:<q> | phi:<i> | phi_ramp | const:<q>
VertexFn make_vertex_fn(GraphPtr g, std::string_view name);

// minfun:<vertex fn>
// gmin:kmean:<k>:<m>:<vertex fn>
// sum:phi_family:eps=<q>
// sum:<set fn>+<set fn>+...   (unit weights)
// markov:<k>:<set fn>
SetFn make_set_fn(GraphPtr g, std::string_view name);

struct SetSpec {
  Config config;
  std::optional<Construction> construction;
  // The function the construction was built for, when there is one.
  std::optional<SetFn> natural_fn;
  std::optional<std::string> natural_fn_name;
};

// explicit:<n>
// single:<n>[:<vertex fn>]           default phi_u
// sum:<n>[:<vertex fn>,<vertex fn>]  default phi:0,phi:1,phi:2
// markov:<n>[:<k>,<k>,...]           phi:0, phi:1, ... with those powers; default 1,1
// countable:<n>
// file:<path>                         a configuration literal read from disk
// empty | <num/2^exp>,...
SetSpec make_set(GraphPtr g, std::string_view spec);

}  // namespace lampwalk
