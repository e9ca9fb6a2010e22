#include "lampwalk/free_group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "lampwalk/errors.hpp"
#include "lampwalk/walk_stats.hpp"

namespace lampwalk {

ZVertex ZVertex::tail_at(int k) {
  if (k < 1) throw PreconditionFailed("tail index must be positive");
  ZVertex v;
  v.tail = k;
  return v;
}

ZVertex ZVertex::parse(std::string_view text) {
  if (text == "e") return identity();
  if (text.rfind("t:", 0) == 0) {
    std::string_view num = text.substr(2);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("bad tail vertex '" + std::string(text) + "'");
    return tail_at(std::stoi(std::string(num)));
  }
  ZVertex v;
  v.word = parse_letters(text, false);
  if (v.word.empty()) throw ParseError("empty vertex; write e for the identity");
  if (v.word.front() == Letter::a) throw ParseError("words starting with a are cut off: '" + std::string(text) + "'");
  for (std::size_t i = 1; i < v.word.size(); ++i) {
    if (v.word[i] == inverse(v.word[i - 1])) throw ParseError("word is not reduced: '" + std::string(text) + "'");
  }
  return v;
}

std::string ZVertex::str() const {
  if (on_tail()) return "t:" + std::to_string(tail);
  if (word.empty()) return "e";
  return letters_to_string(word);
}

std::strong_ordering operator<=>(const ZVertex& x, const ZVertex& y) {
  if (auto c = x.tail <=> y.tail; c != 0) return c;
  if (auto c = x.word.size() <=> y.word.size(); c != 0) return c;
  return x.word <=> y.word;
}

ZVertex z_move(const ZVertex& v, Letter g) {
  if (!is_move(g)) throw PreconditionFailed("switch letter does not move vertices");
  if (v.on_tail()) {
    if (g == Letter::a) return ZVertex::tail_at(v.tail + 1);
    if (g == Letter::A) return v.tail == 1 ? ZVertex::identity() : ZVertex::tail_at(v.tail - 1);
    return v;
  }
  if (v.word.empty() && g == Letter::a) return ZVertex::tail_at(1);
  ZVertex out = v;
  if (!out.word.empty() && out.word.back() == inverse(g)) {
    out.word.pop_back();
  } else {
    out.word.push_back(g);
  }
  return out;
}

std::array<ZVertex, 4> z_neighbors(const ZVertex& v) {
  return {z_move(v, Letter::a), z_move(v, Letter::b), z_move(v, Letter::A), z_move(v, Letter::B)};
}

Rational phi_Z(const ZVertex& v) {
  if (v.on_tail()) return 1;
  return Rational(1, ipow(BigInt(3), static_cast<unsigned>(v.word.size())));
}

ZConfig parse_zconfig(std::string_view text) {
  std::vector<ZVertex> pts;
  std::size_t start = 0;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return ZConfig();
  while (true) {
    auto comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    pts.push_back(ZVertex::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  ZConfig c(pts);
  if (c.size() != pts.size()) throw ParseError("configuration lists a vertex twice");
  return c;
}

ZSetFn minfun_Z() {
  return ZSetFn{"minfun_Z", [](const ZConfig& e) {
                  Rational best = 1;
                  for (const ZVertex& v : e) best = std::min(best, phi_Z(v));
                  return best;
                }};
}

ZWitness witness_word(const ZConfig& e) {
  ZSetFn f = minfun_Z();
  ZWitness w;
  // Minimizer among word vertices; tail vertices all sit at the maximum 1.
  const ZVertex* x = nullptr;
  for (const ZVertex& v : e) {
    if (!v.on_tail() && (!x || v.word.size() > x->word.size())) x = &v;
  }
  if (!x) {
    w.case_index = 1;
    w.word = LampWord{{Letter::s, Letter::b}};
  } else {
    w.case_index = 2;
    for (Letter g : kMoves) {
      if (x->word.empty() ? g != Letter::a : g != inverse(x->word.back())) {
        w.word = LampWord{{g}};
        break;
      }
    }
  }
  w.image = apply_word(e, w.word);
  w.ratio = f(w.image) / f(e);
  return w;
}

std::vector<ZVertex> z_ball(int r) {
  if (r < 0) throw PreconditionFailed("negative radius");
  std::vector<ZVertex> out{ZVertex::identity()};
  std::unordered_set<ZVertex> seen{out.front()};
  std::vector<int> dist{0};
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (dist[head] == r) continue;
    for (const ZVertex& w : z_neighbors(out[head])) {
      if (seen.insert(w).second) {
        out.push_back(w);
        dist.push_back(dist[head] + 1);
      }
    }
  }
  return out;
}

ZConfig sample_zconfig(const std::vector<ZVertex>& ball, std::mt19937_64& rng, int max_size, int tail_len) {
  if (ball.empty() || max_size < 0 || tail_len < 1) throw PreconditionFailed("bad sampling bounds");
  std::vector<ZVertex> pts;
  auto k = bounded_draw(rng, static_cast<std::uint32_t>(max_size) + 1);
  bool tail_only = bounded_draw(rng, 5) == 0;
  for (std::uint32_t j = 0; j < k; ++j) {
    if (tail_only) {
      pts.push_back(ZVertex::tail_at(1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint32_t>(tail_len)))));
    } else {
      pts.push_back(ball[bounded_draw(rng, static_cast<std::uint32_t>(ball.size()))]);
    }
  }
  return ZConfig(std::move(pts));
}

Rational z_boundary_ratio(const std::vector<ZVertex>& set) {
  if (set.empty()) throw PreconditionFailed("empty set");
  std::unordered_set<ZVertex> in(set.begin(), set.end());
  long boundary = 0;
  for (const ZVertex& v : in) {
    for (const ZVertex& w : z_neighbors(v)) boundary += in.count(w) ? 0 : 1;
  }
  return Rational(boundary, 4 * static_cast<long>(in.size()));
}

std::vector<ZVertex> z_tail_segment(int L) {
  if (L < 1) throw PreconditionFailed("segment length must be positive");
  std::vector<ZVertex> out;
  for (int k = 1; k <= L; ++k) out.push_back(ZVertex::tail_at(k));
  return out;
}

}  // namespace lampwalk

std::size_t std::hash<lampwalk::ZVertex>::operator()(const lampwalk::ZVertex& v) const {
  std::size_t h = std::hash<int>{}(v.tail);
  for (lampwalk::Letter l : v.word) h = h * 31 + static_cast<std::size_t>(l) + 1;
  return h;
}
