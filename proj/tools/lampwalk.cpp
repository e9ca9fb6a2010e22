#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lampwalk/approximation.hpp"
#include "lampwalk/errors.hpp"
#include "lampwalk/free_group.hpp"
#include "lampwalk/min_fn.hpp"
#include "lampwalk/registry.hpp"
#include "lampwalk/report_io.hpp"
#include "lampwalk/schreier_graph.hpp"
#include "lampwalk/vertex_fn.hpp"
#include "lampwalk/walk_stats.hpp"

namespace lw = lampwalk;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitResource = 2;
constexpr int kExitUsage = 64;

struct Global {
  std::string out = "out";
  std::string orientation = "lr";
  int threads = 1;
};

// What a command hands back: verdict, report body, optional CSV, manifest extras.
struct Outcome {
  bool pass = true;
  lw::Json result = lw::Json::object();
  std::optional<lw::CsvTable> series;
  lw::Json seeds = lw::Json::array();
  lw::Json caps = lw::Json::object();
};

struct GraphChoice {
  std::shared_ptr<const lw::SchreierGraph> graph;
  std::string requested;
  std::string effective;
};

GraphChoice make_graph(const std::string& orientation) {
  lw::GraphOptions opts;
  if (orientation == "rl") opts.orientation = lw::Orientation::RL;
  auto g = std::make_shared<const lw::SchreierGraph>(opts);
  GraphChoice out{g, orientation, orientation};
  // Exactly one orientation passes; a failing request is flipped.
  if (!g->validate_orientation()) {
    opts.orientation = opts.orientation == lw::Orientation::LR ? lw::Orientation::RL : lw::Orientation::LR;
    out.graph = std::make_shared<const lw::SchreierGraph>(opts);
    out.effective = orientation == "lr" ? "rl" : "lr";
    if (!out.graph->validate_orientation()) throw lw::StructuralAssertFailed("neither orientation validates");
  }
  return out;
}

lw::Dyadic parse_vertex(const std::string& s) { return s == "p" ? lw::root_point() : lw::Dyadic::parse(s); }

// The integer right after "<kind>:" in a --set value.
std::optional<int> spec_n(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::size_t end = colon + 1;
  while (end < spec.size() && std::isdigit(static_cast<unsigned char>(spec[end]))) ++end;
  if (end == colon + 1) return std::nullopt;
  return std::stoi(spec.substr(colon + 1, end - colon - 1));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<std::string> parse_name_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// ---- graph explore ----

struct ExploreOpts {
  std::string center = "p";
  int radius = 6;
};

Outcome graph_explore(const GraphChoice& gc, const ExploreOpts& o) {
  Outcome out;
  lw::Ball ball = gc.graph->ball(parse_vertex(o.center), o.radius);
  std::size_t skeleton = 0;
  std::vector<int> per_distance(static_cast<std::size_t>(o.radius) + 1, 0);
  lw::CsvTable csv({"vertex", "distance", "path", "offset"});
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    auto a = gc.graph->classify(ball.vertices[i]);
    skeleton += a->on_skeleton() ? 1 : 0;
    ++per_distance[static_cast<std::size_t>(ball.distance[i])];
    std::string path;
    for (lw::Side s : a->path) path.push_back(s == lw::Side::Left ? 'L' : 'R');
    csv.add_row({ball.vertices[i].str(), std::to_string(ball.distance[i]), path, std::to_string(a->offset)});
  }
  out.result = lw::Json{{"ball", lw::to_json(ball)},
                        {"vertices", ball.vertices.size()},
                        {"skeleton_vertices", skeleton},
                        {"hair_vertices", ball.vertices.size() - skeleton},
                        {"per_distance", per_distance},
                        {"orientation_valid", gc.graph->validate_orientation()}};
  out.series = std::move(csv);
  out.caps["ball_vertex_cap"] = gc.graph->options().ball_vertex_cap;
  return out;
}

// ---- fn check ----

struct FnCheckOpts {
  std::string fn = "phi_u";
  int radius = 6;
  int hair_length = 20;
};

Outcome fn_check(const GraphChoice& gc, const FnCheckOpts& o) {
  Outcome out;
  lw::VertexFn phi = lw::make_vertex_fn(gc.graph, o.fn);
  lw::Ball ball = gc.graph->ball(lw::root_point(), o.radius);
  lw::SuperharmonicReport sh = lw::is_superharmonic_on(phi, ball);
  bool max_at_root = lw::max_at_root_on_probe(phi, o.radius);
  lw::CsvTable csv({"vertex", "distance", "value", "margin"});
  std::size_t m = 0;
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    if (!ball.interior(static_cast<int>(i))) continue;
    csv.add_row({ball.vertices[i].str(), std::to_string(ball.distance[i]), lw::to_string(phi(ball.vertices[i])),
                 lw::to_string(sh.margins[m++].margin)});
  }
  lw::Json violations = lw::Json::array();
  for (const auto& v : sh.violations) violations.push_back({{"vertex", v.vertex.str()}, {"margin", lw::to_json(v.margin)}});
  lw::Json hair;
  try {
    auto rep = lw::hair_property_suite(phi, lw::root_point(), o.hair_length);
    hair = lw::Json{{"concave", rep.concave},
                    {"nondecreasing", rep.nondecreasing},
                    {"estimate", rep.estimate},
                    {"failures", rep.failures}};
  } catch (const lw::PreconditionFailed& e) {
    hair = lw::Json{{"skipped", e.what()}};
  }
  out.pass = sh.pass() && max_at_root;
  out.result = lw::Json{{"fn", phi.name()},
                        {"radius", o.radius},
                        {"interior_checked", sh.checked},
                        {"superharmonic", sh.pass()},
                        {"violations", violations},
                        {"max_at_root", max_at_root},
                        {"infimum", lw::to_json(phi.info().infimum)},
                        {"root_hair", hair}};
  out.series = std::move(csv);
  return out;
}

// ---- approx verify / construct / refute ----

struct VerifyOpts {
  std::string fn;
  std::string set;
  std::optional<int> n;
  std::string beta = "inv_n";
  std::size_t cap = lw::kOrbitCap;
};

lw::SetFn resolve_fn(const GraphChoice& gc, const std::string& name, const lw::SetSpec& spec, std::string& used) {
  if (!name.empty()) {
    used = name;
    return lw::make_set_fn(gc.graph, name);
  }
  if (!spec.natural_fn) throw lw::ParseError("--fn is required for this --set");
  used = *spec.natural_fn_name;
  return *spec.natural_fn;
}

lw::Json verify_block(const lw::SetFn& f, const lw::Config& e, int n, const lw::BetaSchedule& beta, std::size_t cap,
                      bool& pass) {
  lw::VerifyReport strong = lw::strong_verify(f, e, n, beta, cap);
  lw::WeakReport weak = lw::weak_verify(f, e, beta(n));
  pass = strong.pass;
  return lw::Json{{"strong", lw::to_json(strong)}, {"weak", lw::to_json(weak)}};
}

Outcome approx_verify(const GraphChoice& gc, const VerifyOpts& o) {
  Outcome out;
  lw::SetSpec spec = lw::make_set(gc.graph, o.set);
  std::string used;
  lw::SetFn f = resolve_fn(gc, o.fn, spec, used);
  int n = o.n ? *o.n : spec_n(o.set).value_or(4);
  lw::BetaSchedule beta = lw::BetaSchedule::parse(o.beta);
  out.result = lw::Json{{"fn", used}, {"set", o.set}, {"config", lw::to_json(spec.config)}};
  out.result["verify"] = verify_block(f, spec.config, n, beta, o.cap, out.pass);
  out.caps["orbit"] = o.cap;
  return out;
}

Outcome approx_construct(const GraphChoice& gc, const VerifyOpts& o) {
  Outcome out;
  lw::SetSpec spec = lw::make_set(gc.graph, o.set);
  if (!spec.construction) throw lw::ParseError("--set must name a constructor (single, sum, markov, countable)");
  std::string used;
  lw::SetFn f = resolve_fn(gc, o.fn, spec, used);
  int n = o.n ? *o.n : spec_n(o.set).value_or(4);
  lw::BetaSchedule beta = lw::BetaSchedule::parse(o.beta);
  out.result = lw::Json{{"fn", used}, {"set", o.set}, {"construction", lw::to_json(*spec.construction)}};
  out.result["verify"] = verify_block(f, spec.config, n, beta, o.cap, out.pass);
  out.caps["orbit"] = o.cap;
  return out;
}

struct RefuteOpts {
  std::string set;
  int n = 4;
  int samples = 200;
  std::uint64_t seed = 1;
  std::string expect = "refuted";
};

Outcome approx_refute(const GraphChoice& gc, const RefuteOpts& o) {
  Outcome out;
  std::vector<lw::Config> configs;
  if (!o.set.empty()) {
    configs.push_back(lw::make_set(gc.graph, o.set).config);
  } else {
    for (int i = 0; i < o.samples; ++i) {
      auto rng = lw::trial_stream(o.seed, static_cast<std::uint64_t>(i));
      configs.push_back(lw::sample_config(*gc.graph, rng, std::max(o.n - 2, 0), o.n + 3, 6));
    }
    out.seeds.push_back(o.seed);
  }
  const lw::Rational bar = lw::pow2(-o.n);
  lw::CsvTable csv({"sample", "size", "refuted", "subtree", "word", "deviation"});
  std::size_t refuted = 0;
  lw::Rational min_dev = -1;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto w = lw::golden_witness(gc.graph, configs[i], o.n);
    bool ok = w && w->deviation >= bar;
    refuted += ok ? 1 : 0;
    if (w && (min_dev < 0 || w->deviation < min_dev)) min_dev = w->deviation;
    csv.add_row({std::to_string(i), std::to_string(configs[i].size()), ok ? "1" : "0",
                 w ? std::to_string(w->subtree) : "", w ? w->word.str() : "", w ? lw::to_string(w->deviation) : ""});
  }
  bool all = refuted == configs.size();
  out.pass = o.expect == "refuted" ? all : refuted == 0;
  out.result = lw::Json{{"n", o.n},
                        {"threshold", lw::to_json(bar)},
                        {"configs", configs.size()},
                        {"refuted", refuted},
                        {"min_deviation", min_dev < 0 ? lw::Json(nullptr) : lw::to_json(min_dev)},
                        {"expect", o.expect}};
  if (configs.size() == 1) out.result["config"] = lw::to_json(configs.front());
  out.series = std::move(csv);
  return out;
}

// ---- walk green / return / decay ----

struct GreenOpts {
  std::string x = "p";
  std::string y = "p";
  int cap = 10'000;
  int trials = 100'000;
  std::uint64_t seed = 7;
  int exact = 30;
  std::vector<double> band;
};

Outcome walk_green(const GraphChoice& gc, const GreenOpts& o, int threads) {
  Outcome out;
  lw::Dyadic x = parse_vertex(o.x), y = parse_vertex(o.y);
  std::vector<lw::Rational> masses = lw::return_masses(x, y, o.exact);
  lw::CsvTable csv({"N", "P_N", "partial_green"});
  lw::Rational partial = 0;
  for (std::size_t n = 0; n < masses.size(); ++n) {
    partial += masses[n];
    csv.add_row({std::to_string(n), lw::to_string(masses[n]), fmt(lw::to_double(partial))});
  }
  lw::WalkConfig cfg{o.seed, o.cap, o.trials, threads};
  lw::McEstimate mc = lw::green_mc(*gc.graph, x, y, cfg);
  out.result = lw::Json{{"x", x.str()},
                        {"y", y.str()},
                        {"exact_N", o.exact},
                        {"exact_partial", lw::to_json(partial)},
                        {"exact_partial_approx", lw::to_double(partial)},
                        {"mc", lw::to_json(mc)}};
  if (!o.band.empty()) {
    if (o.band.size() != 2) throw lw::ParseError("--band takes lo,hi");
    out.pass = mc.mean >= o.band[0] && mc.mean <= o.band[1];
    out.result["band"] = o.band;
  }
  out.series = std::move(csv);
  out.seeds.push_back(o.seed);
  out.caps = lw::Json{{"steps", o.cap}, {"trials", o.trials}, {"exact", o.exact}};
  return out;
}

struct ReturnOpts {
  std::string x = "p";
  int N = 30;
};

Outcome walk_return(const ReturnOpts& o) {
  Outcome out;
  lw::Dyadic x = parse_vertex(o.x);
  std::vector<lw::Rational> masses = lw::return_masses(x, x, o.N);
  std::vector<lw::Rational> first = lw::first_return_masses(masses);
  lw::CsvTable csv({"N", "P_N", "f_N", "return_partial"});
  lw::Rational sum = 0;
  for (std::size_t n = 1; n < masses.size(); ++n) {
    sum += first[n];
    csv.add_row({std::to_string(n), lw::to_string(masses[n]), lw::to_string(first[n]), fmt(lw::to_double(sum))});
  }
  out.result = lw::Json{{"x", x.str()}, {"N", o.N}, {"return_partial", lw::to_json(sum)},
                        {"return_partial_approx", lw::to_double(sum)}};
  out.series = std::move(csv);
  return out;
}

struct DecayOpts {
  std::string fns = "phi_u";
  int trials = 500;
  int steps = 10'000;
  std::uint64_t seed = 1;
  std::string checkpoints = "100,1000,10000";
};

Outcome walk_decay(const GraphChoice& gc, const DecayOpts& o, int threads) {
  Outcome out;
  std::vector<lw::VertexFn> phis;
  for (const auto& name : parse_name_list(o.fns)) phis.push_back(lw::make_vertex_fn(gc.graph, name));
  lw::RadialMinSum f = lw::radial_min_sum(phis, std::vector<lw::Rational>(phis.size(), lw::Rational(1)));
  lw::WalkConfig cfg{o.seed, o.steps, o.trials, threads};
  lw::DecayReport rep = lw::potential_decay_experiment(*gc.graph, f, cfg, parse_int_list(o.checkpoints));
  lw::CsvTable csv({"step", "q25", "median", "q75", "min", "max", "mean", "nonempty_fraction", "mean_size"});
  for (const auto& c : rep.checkpoints) {
    csv.add_row({std::to_string(c.step), fmt(lw::to_double(c.q25)), fmt(lw::to_double(c.median)),
                 fmt(lw::to_double(c.q75)), fmt(lw::to_double(c.min)), fmt(lw::to_double(c.max)), fmt(c.mean),
                 fmt(c.nonempty_fraction), fmt(c.mean_size)});
  }
  out.pass = rep.pass();
  out.result = lw::to_json(rep);
  out.series = std::move(csv);
  out.seeds.push_back(o.seed);
  out.caps = lw::Json{{"steps", o.steps}, {"trials", o.trials}};
  return out;
}

// ---- cx scan ----

struct ScanOpts {
  int samples = 1000;
  std::uint64_t seed = 1;
  int radius = 10;
  int max_size = 5;
  std::string set;
};

Outcome cx_scan(const ScanOpts& o) {
  Outcome out;
  std::vector<lw::ZConfig> configs;
  if (!o.set.empty()) {
    configs.push_back(o.set == "empty" ? lw::ZConfig() : lw::parse_zconfig(o.set));
  } else {
    std::vector<lw::ZVertex> ball = lw::z_ball(o.radius);
    for (int i = 0; i < o.samples; ++i) {
      auto rng = lw::trial_stream(o.seed, static_cast<std::uint64_t>(i));
      configs.push_back(lw::sample_zconfig(ball, rng, o.max_size, o.radius));
    }
    out.seeds.push_back(o.seed);
  }
  const lw::Rational third(1, 3);
  lw::CsvTable csv({"sample", "set", "case", "word", "ratio"});
  std::size_t refuted = 0;
  lw::Rational worst = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    lw::ZWitness w = lw::witness_word(configs[i]);
    bool ok = w.word.size() <= 2 && w.ratio <= third;
    refuted += ok ? 1 : 0;
    worst = std::max(worst, w.ratio);
    csv.add_row({std::to_string(i), configs[i].str(), std::to_string(w.case_index), w.word.str(), lw::to_string(w.ratio)});
  }
  lw::Json folner = lw::Json::array();
  bool folner_ok = true;
  for (int L : {10, 100, 1000}) {
    lw::Rational r = lw::z_boundary_ratio(lw::z_tail_segment(L));
    folner_ok = folner_ok && r <= lw::Rational(2, L);
    folner.push_back({{"L", L}, {"ratio", lw::to_json(r)}});
  }
  out.pass = refuted == configs.size() && folner_ok;
  out.result = lw::Json{{"samples", configs.size()},
                        {"refuted", refuted},
                        {"worst_ratio", lw::to_json(worst)},
                        {"word_notation", "letters act in the order written"},
                        {"tail_folner", folner}};
  if (configs.size() == 1) out.result["witness"] = lw::to_json(lw::witness_word(configs.front()));
  out.series = std::move(csv);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lampwalk: potential theory on the dyadic Schreier graph and its lamplighter"};
  app.set_config("--config", "", "TOML/INI file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--out", global.out, "Output directory")->capture_default_str();
  app.add_option("--orientation", global.orientation, "Skeleton orientation")
      ->check(CLI::IsMember({"lr", "rl"}))
      ->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads; outputs do not depend on it")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  auto group = [&](const char* name, const char* desc) {
    auto* s = app.add_subcommand(name, desc);
    s->require_subcommand(1);
    s->fallthrough();
    return s;
  };

  auto* graph = group("graph", "Schreier graph structure");
  ExploreOpts explore;
  auto* explore_cmd = graph->add_subcommand("explore", "Export a ball with its classification");
  explore_cmd->add_option("--center", explore.center)->capture_default_str();
  explore_cmd->add_option("--radius", explore.radius)->check(CLI::Range(0, 20))->capture_default_str();

  auto* fn = group("fn", "Vertex functions");
  FnCheckOpts fncheck;
  auto* fncheck_cmd = fn->add_subcommand("check", "Superharmonicity and root maximum on a ball");
  fncheck_cmd->add_option("--fn", fncheck.fn)->capture_default_str();
  fncheck_cmd->add_option("--radius", fncheck.radius)->check(CLI::Range(1, 16))->capture_default_str();
  fncheck_cmd->add_option("--hair-length", fncheck.hair_length)->check(CLI::Range(1, 10000))->capture_default_str();

  auto* approx = group("approx", "Strong and weak approximation");
  VerifyOpts verify;
  int verify_n = 0;
  auto add_verify_opts = [&](CLI::App* c, bool need_set) {
    c->add_option("--fn", verify.fn, "Set function from the registry");
    auto* s = c->add_option("--set", verify.set, "Set to verify (see README for the grammar)");
    if (need_set) s->required();
    c->add_option("--n", verify_n, "Word length")->check(CLI::Range(0, 12));
    c->add_option("--beta", verify.beta)->check(CLI::IsMember({"inv_n", "inv_2n"}))->capture_default_str();
    c->add_option("--cap", verify.cap, "Orbit size cap")->capture_default_str();
  };
  auto* verify_cmd = approx->add_subcommand("verify", "Check every word of length <= n");
  add_verify_opts(verify_cmd, true);
  auto* construct_cmd = approx->add_subcommand("construct", "Build E_n and verify it");
  add_verify_opts(construct_cmd, true);
  RefuteOpts refute;
  auto* refute_cmd = approx->add_subcommand("refute", "Golden-path refutation of small sets");
  refute_cmd->add_option("--set", refute.set, "Single set; random sets when absent");
  refute_cmd->add_option("--n", refute.n)->check(CLI::Range(2, 40))->capture_default_str();
  refute_cmd->add_option("--samples", refute.samples)->check(CLI::Range(1, 10'000'000))->capture_default_str();
  refute_cmd->add_option("--seed", refute.seed)->capture_default_str();
  refute_cmd->add_option("--expect", refute.expect)->check(CLI::IsMember({"refuted", "pass"}))->capture_default_str();

  auto* walk = group("walk", "Random walk statistics");
  GreenOpts green;
  auto* green_cmd = walk->add_subcommand("green", "Green's function: exact partial sums and Monte Carlo");
  green_cmd->add_option("--x", green.x)->capture_default_str();
  green_cmd->add_option("--y", green.y)->capture_default_str();
  green_cmd->add_option("--cap", green.cap, "Steps per trajectory")->check(CLI::Range(1, 100'000'000))->capture_default_str();
  green_cmd->add_option("--trials", green.trials)->check(CLI::Range(1, 100'000'000))->capture_default_str();
  green_cmd->add_option("--seed", green.seed)->capture_default_str();
  green_cmd->add_option("--exact", green.exact, "Exact partial sum length")->check(CLI::Range(0, 512))->capture_default_str();
  green_cmd->add_option("--band", green.band, "Accept the estimate inside lo,hi")->delimiter(',')->expected(2);
  ReturnOpts ret;
  auto* return_cmd = walk->add_subcommand("return", "Exact return and first-return masses");
  return_cmd->add_option("--x", ret.x)->capture_default_str();
  return_cmd->add_option("--N", ret.N)->check(CLI::Range(1, 512))->capture_default_str();
  DecayOpts decay;
  auto* decay_cmd = walk->add_subcommand("decay", "Lamplighter trajectories under a min-function sum");
  decay_cmd->add_option("--fn", decay.fns, "Comma-separated vertex functions, unit weights")->capture_default_str();
  decay_cmd->add_option("--trials", decay.trials)->check(CLI::Range(1, 10'000'000))->capture_default_str();
  decay_cmd->add_option("--steps", decay.steps)->check(CLI::Range(1, 100'000'000))->capture_default_str();
  decay_cmd->add_option("--seed", decay.seed)->capture_default_str();
  decay_cmd->add_option("--checkpoints", decay.checkpoints)->capture_default_str();

  auto* cx = group("cx", "Free-group counterexample");
  ScanOpts scan;
  auto* scan_cmd = cx->add_subcommand("scan", "Witness words for random finite subsets of Z");
  scan_cmd->add_option("--samples", scan.samples)->check(CLI::Range(1, 10'000'000))->capture_default_str();
  scan_cmd->add_option("--seed", scan.seed)->capture_default_str();
  scan_cmd->add_option("--radius", scan.radius)->check(CLI::Range(1, 12))->capture_default_str();
  scan_cmd->add_option("--max-size", scan.max_size)->check(CLI::Range(0, 64))->capture_default_str();
  scan_cmd->add_option("--set", scan.set, "Single set: e, t:k or reduced words, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (verify_cmd->count("--n") || construct_cmd->count("--n")) verify.n = verify_n;

  std::string command;
  CLI::App* leaf = nullptr;
  for (CLI::App* top : app.get_subcommands()) {
    for (CLI::App* sub : top->get_subcommands()) {
      command = top->get_name() + " " + sub->get_name();
      leaf = sub;
    }
  }

  auto t0 = std::chrono::steady_clock::now();
  Outcome outcome;
  GraphChoice gc;
  try {
    if (command != "cx scan" && command != "walk return") gc = make_graph(global.orientation);
    if (command == "graph explore") outcome = graph_explore(gc, explore);
    else if (command == "fn check") outcome = fn_check(gc, fncheck);
    else if (command == "approx verify") outcome = approx_verify(gc, verify);
    else if (command == "approx construct") outcome = approx_construct(gc, verify);
    else if (command == "approx refute") outcome = approx_refute(gc, refute);
    else if (command == "walk green") outcome = walk_green(gc, green, global.threads);
    else if (command == "walk return") outcome = walk_return(ret);
    else if (command == "walk decay") outcome = walk_decay(gc, decay, global.threads);
    else if (command == "cx scan") outcome = cx_scan(scan);
  } catch (const lw::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lw::PreconditionFailed& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lw::ZeroBase& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lw::PropertySelfTestFailed& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lw::Error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: out of memory\n";
    return kExitResource;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  lw::Json report{{"command", command}, {"pass", outcome.pass}, {"result", outcome.result}};
  lw::OutputSet files;
  files.add("report.json", report.dump(2) + "\n");
  if (outcome.series) files.add("series.csv", outcome.series->str());

  lw::RunManifest manifest;
  manifest.command = command;
  lw::Json cfg = lw::Json::object();
  for (const CLI::Option* opt : leaf->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    auto res = opt->results();
    cfg[opt->get_name()] = res.empty() ? opt->get_default_str() : CLI::detail::join(res, ",");
  }
  cfg["--out"] = global.out;
  cfg["--threads"] = global.threads;
  manifest.config = cfg;
  manifest.seeds = outcome.seeds;
  manifest.caps = outcome.caps;
  manifest.orientation = gc.graph ? gc.effective : global.orientation;
  if (gc.graph && gc.effective != gc.requested) manifest.caps["orientation_requested"] = gc.requested;
  manifest.hashes = files.hashes();
  manifest.wall_clock_seconds = seconds;
  files.add("manifest.json", manifest.to_json().dump(2) + "\n");

  try {
    files.commit(global.out);
  } catch (const lw::Error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  }
  std::cout << command << ": " << (outcome.pass ? "pass" : "FAIL") << " (" << global.out << "/report.json)\n";
  return outcome.pass ? kExitPass : kExitFailure;
}
