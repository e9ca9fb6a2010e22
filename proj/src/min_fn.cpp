#include "lampwalk/min_fn.hpp"

#include <algorithm>
#include <random>

#include "lampwalk/errors.hpp"

namespace lampwalk {

SetFn minfun(const VertexFn& phi) {
  Rational top = phi(root_point());
  return SetFn{"minfun:" + phi.name(), [phi, top](const Config& e) {
                 if (e.empty()) return top;
                 Rational best = phi(e.points().front());
                 for (std::size_t i = 1; i < e.size(); ++i) {
                   Rational v = phi(e.points()[i]);
                   if (v < best) best = std::move(v);
                 }
                 return best;
               }};
}

bool max_at_root_on_probe(const VertexFn& phi, int radius) {
  Rational top = phi(root_point());
  for (const Dyadic& v : phi.graph().ball(root_point(), radius).vertices) {
    if (phi(v) > top) return false;
  }
  return true;
}

Rational T_operator(const SetFn& f, const Config& e, const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) throw PreconditionFailed("alpha must lie in (0,1)");
  Rational moves = 0;
  for (Letter g : kMoves) moves += f(apply_letter(e, g));
  return alpha * moves / 4 + (1 - alpha) * f(apply_letter(e, Letter::s));
}

TransferReport non_superharmonic_transfer(const VertexFn& phi, const Dyadic& q) {
  Rational phi_margin = phi(q) - markov_apply_X(phi, q);
  if (phi_margin >= 0) throw PreconditionFailed("φ is superharmonic at " + q.str());
  Rational top = phi(root_point());
  std::vector<Dyadic> probe = phi.graph().ball(root_point(), 3).vertices;
  probe.push_back(q);
  for (Letter g : kMoves) probe.push_back(act(g, q));
  for (const Dyadic& v : probe) {
    if (phi(v) > top) throw PreconditionFailed("φ exceeds φ(p) at " + v.str());
  }
  SetFn f = minfun(phi);
  Config e({q});
  Rational fe = f(e);
  return TransferReport{q, phi_margin, fe - markov_apply_set(f, e), fe - T_operator(f, e, Rational(1, 2))};
}

SetFn weighted_sum(const std::vector<SetFn>& fs, const std::vector<Rational>& weights) {
  if (fs.size() != weights.size() || fs.empty()) throw PreconditionFailed("weighted_sum needs matching non-empty lists");
  std::string name = "sum(";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (weights[i] <= 0) throw PreconditionFailed("weights must be positive");
    name += (i ? "," : "") + to_string(weights[i]) + "*" + fs[i].name;
  }
  name += ")";
  return SetFn{name, [fs, weights](const Config& e) {
                 Rational s = 0;
                 for (std::size_t i = 0; i < fs.size(); ++i) s += weights[i] * fs[i](e);
                 return s;
               }};
}

CountableSum countable_sum(const std::function<VertexFn(int)>& family, const Rational& eps, const TailBound& tail) {
  if (!tail) throw MissingTailBound("countable_sum needs a tail bound N(eps)");
  if (eps <= 0) throw PreconditionFailed("eps must be positive");
  int n = tail(eps);
  std::vector<SetFn> fs;
  for (int i = 0; i <= n; ++i) fs.push_back(minfun(family(i)));
  std::string name = "sum:" + (fs.empty() ? std::string("?") : fs.front().name) + "..;eps=" + to_string(eps);
  SetFn fn{name, [fs](const Config& e) {
             Rational s = 0;
             for (const auto& f : fs) s += f(e);
             return s;
           }};
  return CountableSum{std::move(fn), n + 1, eps};
}

int phi_family_tail_bound(const Rational& eps) {
  if (eps <= 0) throw PreconditionFailed("eps must be positive");
  // sum_{i > N} 2^-i = 2^-N
  int n = 0;
  while (pow2(-n) >= eps) ++n;
  return n;
}

CountableSum phi_family_sum(GraphPtr g, const Rational& eps) {
  if (eps <= 0) throw PreconditionFailed("eps must be positive");
  const int last = phi_family_tail_bound(eps);
  // f_i(E) = 2^-max(i, deepest base of E in T_i); one classification per point.
  SetFn fn{"sum:phi_family:eps=" + to_string(eps), [g, last](const Config& e) {
             std::vector<int> deepest(static_cast<std::size_t>(last) + 1, -1);
             for (const Dyadic& x : e) {
               AddressPtr a = g->classify(x);
               auto t = a->subtree_index();
               if (t && *t <= last) {
                 int& d = deepest[static_cast<std::size_t>(*t)];
                 d = std::max(d, a->depth());
               }
             }
             int top = 0;
             for (int i = 0; i <= last; ++i) top = std::max({top, i, deepest[static_cast<std::size_t>(i)]});
             BigInt num = 0;
             for (int i = 0; i <= last; ++i) {
               num += BigInt(1) << static_cast<unsigned>(top - std::max(i, deepest[static_cast<std::size_t>(i)]));
             }
             return Rational(num, BigInt(1) << static_cast<unsigned>(top));
           }};
  return CountableSum{std::move(fn), last + 1, eps};
}

SetFn markov_image(const SetFn& f, int n, int cap) {
  if (n < 0) throw PreconditionFailed("negative power");
  if (n > cap) throw CapExceeded("Markov power " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n == 0) return f;
  return SetFn{"markov:" + std::to_string(n) + ":" + f.name,
               [f, n, cap](const Config& e) { return markov_iterate(f, e, n, cap); }};
}

namespace {

Rational random_unit(std::mt19937_64& rng) {
  // Uniform on {1, ..., 2^16} / 2^16.
  return Rational(static_cast<long>(rng() % 65536) + 1, 65536);
}

}  // namespace

PropertyReport self_test(const SymmetricConcaveFn& r, std::size_t probes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyReport rep;
  const auto m = static_cast<std::size_t>(r.arity);
  auto draw = [&] {
    std::vector<Rational> x(m);
    for (auto& v : x) v = random_unit(rng);
    return x;
  };
  for (std::size_t t = 0; t < probes; ++t) {
    ++rep.probes;
    std::vector<Rational> x = draw(), y = draw();
    Rational rx = r(x);
    if (rx < 0) ++rep.sign_failures;
    std::vector<Rational> perm = x;
    std::shuffle(perm.begin(), perm.end(), rng);
    if (r(perm) != rx) ++rep.symmetry_failures;
    std::vector<Rational> mid(m);
    for (std::size_t i = 0; i < m; ++i) mid[i] = (x[i] + y[i]) / 2;
    if (2 * r(mid) < rx + r(y)) ++rep.concavity_failures;
    std::size_t i = static_cast<std::size_t>(rng() % m);
    std::vector<Rational> bump = x;
    bump[i] = bump[i] + (1 - bump[i]) * random_unit(rng);
    if (r(bump) < rx) ++rep.monotonicity_failures;
  }
  return rep;
}

SymmetricConcaveFn r_family_kmean(int k, int m) {
  if (k < 1 || k > m) throw PreconditionFailed("kmean needs 1 <= k <= m");
  return SymmetricConcaveFn{"kmean:" + std::to_string(k) + ":" + std::to_string(m), m,
                            [k, m](const std::vector<Rational>& x) {
                              if (x.size() != static_cast<std::size_t>(m))
                                throw PreconditionFailed("kmean arity mismatch");
                              std::vector<Rational> s = x;
                              std::partial_sort(s.begin(), s.begin() + k, s.end());
                              Rational sum = 0;
                              for (int i = 0; i < k; ++i) sum += s[static_cast<std::size_t>(i)];
                              return sum / k;
                            }};
}

GeneralizedMinFn generalized_minfun(const SymmetricConcaveFn& r, const VertexFn& phi) {
  PropertyReport rep = self_test(r);
  if (!rep.pass()) throw PropertySelfTestFailed("r = " + r.name + " failed its property probes");
  Rational c = phi(root_point());
  if (c <= 0) throw ZeroBase("φ(p) must be positive to normalize");
  const auto m = static_cast<std::size_t>(r.arity);
  SetFn fn{"gmin:" + r.name + ":" + phi.name(), [r, phi, c, m](const Config& e) {
             std::vector<Rational> vals;
             vals.reserve(e.size());
             for (const Dyadic& x : e) vals.push_back(phi(x) / c);
             std::sort(vals.begin(), vals.end());
             vals.resize(m, Rational(1));
             return c * r(vals);
           }};
  return GeneralizedMinFn{std::move(fn), r, phi, c};
}

}  // namespace lampwalk
