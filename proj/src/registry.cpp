#include "lampwalk/registry.hpp"

#include <fstream>
#include <sstream>

#include "lampwalk/errors.hpp"

namespace lampwalk {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

int parse_int(std::string_view s, std::string_view what) {
  if (s.empty()) throw ParseError("missing " + std::string(what));
  int v = 0;
  bool neg = s.front() == '-';
  if (neg) s.remove_prefix(1);
  if (s.empty()) throw ParseError("bad " + std::string(what));
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
    if (v > 100'000'000) throw ParseError(std::string(what) + " out of range");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

// Splits off the text before the first ':'; rest receives what follows it.
std::string_view head(std::string_view s, std::string_view& rest) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    rest = {};
    return s;
  }
  rest = s.substr(colon + 1);
  return s.substr(0, colon);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

VertexFn make_vertex_fn(GraphPtr g, std::string_view name) {
  if (name == "phi_u") return canonical_phi_u(std::move(g));
  if (name == "phi_ramp") return phi_ramp(std::move(g));
  if (starts_with(name, "phi_u_shift:")) return phi_u_shift(std::move(g), parse_rational(name.substr(12)));
  if (starts_with(name, "phi:")) return phi_family(std::move(g), parse_int(name.substr(4), "family index"));
  if (starts_with(name, "const:")) return constant_fn(std::move(g), parse_rational(name.substr(6)));
  throw ParseError("unknown vertex function '" + std::string(name) + "'");
}

SetFn make_set_fn(GraphPtr g, std::string_view name) {
  if (starts_with(name, "minfun:")) return minfun(make_vertex_fn(std::move(g), name.substr(7)));
  if (starts_with(name, "gmin:kmean:")) {
    std::string_view rest;
    std::string_view k = head(name.substr(11), rest);
    std::string_view vfn;
    std::string_view m = head(rest, vfn);
    auto r = r_family_kmean(parse_int(k, "k"), parse_int(m, "m"));
    return generalized_minfun(r, make_vertex_fn(std::move(g), vfn)).fn;
  }
  if (starts_with(name, "sum:phi_family:eps=")) return phi_family_sum(std::move(g), parse_rational(name.substr(19))).fn;
  if (starts_with(name, "sum:")) {
    std::vector<SetFn> fs;
    for (std::string_view part : split(name.substr(4), '+')) fs.push_back(make_set_fn(g, part));
    return weighted_sum(fs, std::vector<Rational>(fs.size(), Rational(1)));
  }
  if (starts_with(name, "markov:")) {
    std::string_view inner;
    int k = parse_int(head(name.substr(7), inner), "Markov power");
    return markov_image(make_set_fn(std::move(g), inner), k);
  }
  throw ParseError("unknown set function '" + std::string(name) + "'");
}

SetSpec make_set(GraphPtr g, std::string_view spec) {
  SetSpec out;
  std::string_view rest;
  std::string_view kind = head(spec, rest);

  auto finish = [&](Construction c, std::string fn_name) {
    out.config = c.config;
    out.construction = std::move(c);
    out.natural_fn = make_set_fn(g, fn_name);
    out.natural_fn_name = std::move(fn_name);
    return out;
  };

  if (kind == "explicit") {
    int n = parse_int(rest, "n");
    out.config = explicit_En_hairs(*g, n);
    out.natural_fn_name = "sum:phi_family:eps=1/" + (BigInt(1) << 64).str();
    out.natural_fn = make_set_fn(g, *out.natural_fn_name);
    return out;
  }
  if (kind == "single") {
    std::string_view vfn;
    int n = parse_int(head(rest, vfn), "n");
    std::string name = vfn.empty() ? "phi_u" : std::string(vfn);
    return finish(construct_En_single(make_vertex_fn(g, name), n), "minfun:" + name);
  }
  if (kind == "sum") {
    std::string_view list;
    int n = parse_int(head(rest, list), "n");
    std::vector<std::string_view> names =
        list.empty() ? std::vector<std::string_view>{"phi:0", "phi:1", "phi:2"} : split(list, ',');
    std::vector<VertexFn> phis;
    std::string fn_name = "sum:";
    for (std::size_t i = 0; i < names.size(); ++i) {
      phis.push_back(make_vertex_fn(g, names[i]));
      fn_name += (i ? "+minfun:" : "minfun:") + std::string(names[i]);
    }
    return finish(construct_En_sum(phis, n), fn_name);
  }
  if (kind == "markov") {
    std::string_view list;
    int n = parse_int(head(rest, list), "n");
    std::vector<int> powers;
    if (list.empty()) {
      powers = {1, 1};
    } else {
      for (std::string_view k : split(list, ',')) powers.push_back(parse_int(k, "Markov power"));
    }
    std::vector<VertexFn> phis;
    std::string fn_name = "sum:";
    for (std::size_t i = 0; i < powers.size(); ++i) {
      phis.push_back(phi_family(g, static_cast<int>(i)));
      fn_name += (i ? "+markov:" : "markov:") + std::to_string(powers[i]) + ":minfun:phi:" + std::to_string(i);
    }
    return finish(construct_En_markov(phis, powers, n), fn_name);
  }
  if (kind == "countable") {
    int n = parse_int(rest, "n");
    return finish(construct_En_countable(phi_family_countable(g), n),
                  "sum:phi_family:eps=1/" + (BigInt(1) << 64).str());
  }
  if (kind == "file") {
    std::ifstream in{std::string(rest)};
    if (!in) throw ParseError("cannot read set file '" + std::string(rest) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
    out.config = parse_config(text);
    return out;
  }
  if (spec == "empty") return out;
  out.config = parse_config(spec);
  return out;
}

}  // namespace lampwalk
