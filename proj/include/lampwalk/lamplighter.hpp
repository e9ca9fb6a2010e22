#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lampwalk/dyadic.hpp"
#include "lampwalk/errors.hpp"
#include "lampwalk/letters.hpp"
#include "lampwalk/numeric.hpp"
#include "lampwalk/schreier_graph.hpp"

namespace lampwalk {

// Per-space traits: base point, generator action, word convention.
template <class V>
struct LampAction;

template <>
struct LampAction<Dyadic> {
  static const Dyadic& root() { return root_point(); }
  static Dyadic move(const Dyadic& v, Letter g) { return act(g, v); }
  // Words act on X from the right end.
  static constexpr bool kRightToLeft = true;
  static std::string vertex_str(const Dyadic& v) { return v.str(); }
};

// Finite set of lit lamps, kept sorted and duplicate-free.
template <class V>
class BasicConfig {
 public:
  BasicConfig() = default;
  explicit BasicConfig(std::vector<V> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  const std::vector<V>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  bool contains(const V& v) const { return std::binary_search(pts_.begin(), pts_.end(), v); }

  BasicConfig toggled(const V& v) const {
    BasicConfig out;
    out.pts_.reserve(pts_.size() + 1);
    auto it = std::lower_bound(pts_.begin(), pts_.end(), v);
    out.pts_.assign(pts_.begin(), it);
    bool present = it != pts_.end() && *it == v;
    if (!present) out.pts_.push_back(v);
    out.pts_.insert(out.pts_.end(), present ? it + 1 : it, pts_.end());
    return out;
  }

  std::size_t hash() const {
    std::size_t h = pts_.size();
    for (const V& v : pts_) h ^= std::hash<V>{}(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
  }

  friend bool operator==(const BasicConfig&, const BasicConfig&) = default;
  friend auto operator<=>(const BasicConfig& x, const BasicConfig& y) { return x.pts_ <=> y.pts_; }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (i) out.push_back(',');
      out += LampAction<V>::vertex_str(pts_[i]);
    }
    return out;
  }

 private:
  std::vector<V> pts_;
};

template <class V>
struct ConfigHash {
  std::size_t operator()(const BasicConfig<V>& c) const { return c.hash(); }
};

using Config = BasicConfig<Dyadic>;

// "num/2^exp,num/2^exp,..."; empty text is the empty set. Duplicates are rejected.
Config parse_config(std::string_view text);

// Word over {a, A, b, B, s}, stored as written.
struct LampWord {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  std::string str() const { return letters_to_string(letters); }
  static LampWord parse(std::string_view text) { return LampWord{parse_letters(text, true)}; }
  friend bool operator==(const LampWord&, const LampWord&) = default;
};

template <class V>
BasicConfig<V> apply_letter(const BasicConfig<V>& e, Letter g) {
  if (g == Letter::s) return e.toggled(LampAction<V>::root());
  std::vector<V> out;
  out.reserve(e.size());
  for (const V& v : e) out.push_back(LampAction<V>::move(v, g));
  return BasicConfig<V>(std::move(out));
}

// Letters in the order they act.
template <class V>
std::vector<Letter> action_order(const LampWord& w) {
  std::vector<Letter> seq = w.letters;
  if (LampAction<V>::kRightToLeft) std::reverse(seq.begin(), seq.end());
  return seq;
}

template <class V>
LampWord word_from_action_order(std::vector<Letter> seq) {
  if (LampAction<V>::kRightToLeft) std::reverse(seq.begin(), seq.end());
  return LampWord{std::move(seq)};
}

template <class V>
BasicConfig<V> apply_word(const BasicConfig<V>& e, const LampWord& w) {
  BasicConfig<V> cur = e;
  for (Letter g : action_order<V>(w)) cur = apply_letter(cur, g);
  return cur;
}

template <class V>
struct BasicSetFn {
  std::string name;
  std::function<Rational(const BasicConfig<V>&)> eval;

  Rational operator()(const BasicConfig<V>& e) const { return eval(e); }
};

using SetFn = BasicSetFn<Dyadic>;

// (P F)(E) = 1/5 sum over the five letters of F(gE).
template <class V>
Rational markov_apply_set(const BasicSetFn<V>& f, const BasicConfig<V>& e) {
  Rational sum = 0;
  for (Letter g : kLampLetters) sum += f(apply_letter(e, g));
  return sum / 5;
}

inline constexpr int kMarkovIterateCap = 8;

// Distribution of E after n letters: distinct configs with word counts (total 5^n).
template <class V>
std::unordered_map<BasicConfig<V>, BigInt, ConfigHash<V>> lamp_distribution(const BasicConfig<V>& e, int n,
                                                                          int cap = kMarkovIterateCap) {
  if (n < 0) throw PreconditionFailed("negative power");
  if (n > cap) throw CapExceeded("Markov power " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::unordered_map<BasicConfig<V>, BigInt, ConfigHash<V>> layer{{e, BigInt(1)}};
  for (int step = 0; step < n; ++step) {
    std::unordered_map<BasicConfig<V>, BigInt, ConfigHash<V>> next;
    for (const auto& [c, w] : layer) {
      for (Letter g : kLampLetters) next[apply_letter(c, g)] += w;
    }
    layer = std::move(next);
  }
  return layer;
}

// (P^n F)(E), exact, by dynamic programming over distinct configurations.
template <class V>
Rational markov_iterate(const BasicSetFn<V>& f, const BasicConfig<V>& e, int n, int cap = kMarkovIterateCap) {
  Rational sum = 0;
  for (const auto& [c, w] : lamp_distribution(e, n, cap)) sum += Rational(w) * f(c);
  return sum / Rational(ipow(BigInt(5), static_cast<unsigned>(n)));
}

template <class V>
struct OrbitEntry {
  BasicConfig<V> config;
  LampWord witness;  // shortest word reaching config, in the space's written convention
  int depth = 0;
};

inline constexpr std::size_t kOrbitCap = 1'000'000;

// All gE with |g| <= n, breadth first; witnesses are shortest, first found in letter order a b A B s.
template <class V>
std::vector<OrbitEntry<V>> orbit_enumerate(const BasicConfig<V>& e, int n, std::size_t cap = kOrbitCap) {
  if (n < 0) throw PreconditionFailed("negative word length");
  struct Node {
    BasicConfig<V> config;
    std::int64_t parent;
    Letter letter;
    int depth;
  };
  std::vector<Node> nodes{{e, -1, Letter::s, 0}};
  std::unordered_map<BasicConfig<V>, std::size_t, ConfigHash<V>> seen{{e, 0}};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth == n) continue;
    for (Letter g : kLampLetters) {
      BasicConfig<V> c = apply_letter(nodes[head].config, g);
      if (seen.count(c)) continue;
      if (nodes.size() >= cap) throw CapExceeded("orbit exceeds " + std::to_string(cap) + " configurations");
      seen.emplace(c, nodes.size());
      int depth = nodes[head].depth + 1;
      nodes.push_back(Node{std::move(c), static_cast<std::int64_t>(head), g, depth});
    }
  }
  std::vector<OrbitEntry<V>> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<Letter> seq;
    for (std::int64_t j = static_cast<std::int64_t>(i); nodes[static_cast<std::size_t>(j)].parent >= 0;
         j = nodes[static_cast<std::size_t>(j)].parent) {
      seq.push_back(nodes[static_cast<std::size_t>(j)].letter);
    }
    std::reverse(seq.begin(), seq.end());
    out.push_back(OrbitEntry<V>{nodes[i].config, word_from_action_order<V>(std::move(seq)), nodes[i].depth});
  }
  return out;
}

struct InvarianceReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  bool pass() const { return violations == 0; }
};

// F(E) == F(E with the lamp at the root toggled).
template <class V>
InvarianceReport switch_invariant_check(const BasicSetFn<V>& f, const std::vector<BasicConfig<V>>& samples) {
  InvarianceReport rep;
  for (const auto& e : samples) {
    ++rep.checked;
    if (f(e) != f(apply_letter(e, Letter::s))) ++rep.violations;
  }
  return rep;
}

}  // namespace lampwalk

template <class V>
struct std::hash<lampwalk::BasicConfig<V>> {
  std::size_t operator()(const lampwalk::BasicConfig<V>& c) const { return c.hash(); }
};
