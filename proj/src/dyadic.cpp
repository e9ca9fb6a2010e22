#include "lampwalk/dyadic.hpp"

#include <algorithm>
#include <string>

#include "lampwalk/errors.hpp"

namespace lampwalk {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(BigInt num, std::int64_t exp) : num_(std::move(num)), exp_(exp) { normalize(); }

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ < 0) {
    num_ <<= static_cast<unsigned>(-exp_);
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  auto tz = static_cast<std::int64_t>(mp::lsb(num_ < 0 ? BigInt(-num_) : num_));
  auto k = std::min(tz, exp_);
  if (k > 0) {
    num_ >>= static_cast<unsigned>(k);
    exp_ -= k;
  }
}

Rational Dyadic::to_rational() const { return Rational(num_, BigInt(1) << static_cast<unsigned>(exp_)); }

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (exp_ == o.exp_) return Dyadic(num_ + o.num_, exp_);
  if (exp_ > o.exp_) return Dyadic(num_ + (o.num_ << static_cast<unsigned>(exp_ - o.exp_)), exp_);
  return Dyadic((num_ << static_cast<unsigned>(o.exp_ - exp_)) + o.num_, o.exp_);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::shifted(std::int64_t e) const { return Dyadic(num_, exp_ - e); }

std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) {
  int c;
  if (x.exp_ == y.exp_) {
    c = x.num_.compare(y.num_);
  } else if (x.exp_ > y.exp_) {
    c = x.num_.compare(BigInt(y.num_ << static_cast<unsigned>(x.exp_ - y.exp_)));
  } else {
    c = BigInt(x.num_ << static_cast<unsigned>(y.exp_ - x.exp_)).compare(y.num_);
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const { return num_.str() + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    Rational q = parse_rational(text);
    if (denominator(q) != 1) throw ParseError("not a dyadic: " + std::string(text));
    return Dyadic(numerator(q), 0);
  }
  std::string_view den = text.substr(slash + 1);
  if (den.starts_with("2^")) {
    Rational e = parse_rational(den.substr(2));
    Rational n = parse_rational(text.substr(0, slash));
    if (denominator(e) != 1 || denominator(n) != 1 || e < 0 || e > 1'000'000)
      throw ParseError("not a dyadic: " + std::string(text));
    return Dyadic(numerator(n), static_cast<std::int64_t>(numerator(e)));
  }
  Rational q = parse_rational(text);
  const BigInt& d = denominator(q);
  if ((d & (d - 1)) != 0) throw ParseError("denominator is not a power of two: " + std::string(text));
  return Dyadic(numerator(q), static_cast<std::int64_t>(mp::msb(d)));
}

std::size_t Dyadic::hash() const {
  const auto& be = num_.backend();
  std::size_t h = static_cast<std::size_t>(exp_) * 0x9E3779B97F4A7C15ull ^ (num_ < 0 ? 0x5bd1e995u : 0u);
  const auto* limbs = be.limbs();
  for (unsigned i = 0; i < be.size(); ++i) {
    h ^= static_cast<std::size_t>(limbs[i]) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------

PLMap::PLMap() : pieces_{Piece{Dyadic(), Dyadic(), 0}} {}

PLMap PLMap::from_pieces(std::vector<Piece> pieces) {
  if (pieces.empty() || !pieces.front().start.is_zero() || !pieces.front().image.is_zero())
    throw PreconditionFailed("PL map must start at (0,0)");
  std::vector<Piece> fused;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Dyadic end = i + 1 < pieces.size() ? pieces[i + 1].start : Dyadic::from_int(1);
    if (end <= pieces[i].start) throw PreconditionFailed("PL pieces not increasing");
    Dyadic end_image = pieces[i].image + (end - pieces[i].start).shifted(pieces[i].slope_exp);
    Dyadic expected = i + 1 < pieces.size() ? pieces[i + 1].image : Dyadic::from_int(1);
    if (end_image != expected) throw PreconditionFailed("PL pieces not continuous or not onto [0,1]");
    if (!fused.empty() && fused.back().slope_exp == pieces[i].slope_exp) continue;
    fused.push_back(pieces[i]);
  }
  PLMap m;
  m.pieces_ = std::move(fused);
  return m;
}

std::size_t PLMap::piece_index(const Dyadic& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Dyadic& v, const Piece& p) { return v < p.start; });
  return it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

Dyadic PLMap::operator()(const Dyadic& x) const {
  const Piece& p = pieces_[piece_index(x)];
  return p.image + (x - p.start).shifted(p.slope_exp);
}

PLMap PLMap::inverse() const {
  PLMap m;
  m.pieces_.clear();
  for (const Piece& p : pieces_) m.pieces_.push_back(Piece{p.image, p.start, -p.slope_exp});
  return m;
}

bool PLMap::is_identity() const { return pieces_.size() == 1 && pieces_[0].slope_exp == 0; }

std::vector<Dyadic> PLMap::breakpoints() const {
  std::vector<Dyadic> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].start);
  return out;
}

int PLMap::slope_right(const Dyadic& x) const { return pieces_[piece_index(x)].slope_exp; }

int PLMap::slope_left(const Dyadic& x) const {
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Piece& p, const Dyadic& v) { return p.start < v; });
  std::size_t i = it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
  return pieces_[i].slope_exp;
}

PLMap compose(const PLMap& f, const PLMap& g) {
  std::vector<Dyadic> cuts;
  for (const auto& p : g.pieces()) cuts.push_back(p.start);
  PLMap g_inv = g.inverse();
  for (const auto& p : f.pieces()) cuts.push_back(g_inv(p.start));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<PLMap::Piece> pieces;
  pieces.reserve(cuts.size());
  for (const Dyadic& c : cuts) {
    Dyadic gc = g(c);
    pieces.push_back({c, f(gc), f.slope_right(gc) + g.slope_right(c)});
  }
  return PLMap::from_pieces(std::move(pieces));
}

namespace {

Dyadic dy(long n, int e) { return Dyadic(BigInt(n), e); }

PLMap make_g0() {
  return PLMap::from_pieces({{dy(0, 0), dy(0, 0), -1}, {dy(1, 1), dy(1, 2), 0}, {dy(3, 2), dy(1, 1), 1}});
}

PLMap make_g1() {
  return PLMap::from_pieces({{dy(0, 0), dy(0, 0), 0},
                             {dy(1, 1), dy(1, 1), -1},
                             {dy(3, 2), dy(5, 3), 0},
                             {dy(7, 3), dy(3, 2), 1}});
}

}  // namespace

const PLMap& g0() {
  static const PLMap m = make_g0();
  return m;
}

const PLMap& g1() {
  static const PLMap m = make_g1();
  return m;
}

const PLMap& gen_a() {
  static const PLMap m = compose(g1(), g0().inverse());
  return m;
}

const PLMap& gen_b() { return g1(); }

const PLMap& generator_map(Letter g) {
  static const PLMap a_inv = gen_a().inverse();
  static const PLMap b_inv = gen_b().inverse();
  switch (g) {
    case Letter::a: return gen_a();
    case Letter::A: return a_inv;
    case Letter::b: return gen_b();
    case Letter::B: return b_inv;
    case Letter::s: break;
  }
  throw PreconditionFailed("switch letter has no action on [0,1]");
}

Dyadic g0_apply(const Dyadic& x) { return g0()(x); }
Dyadic g1_apply(const Dyadic& x) { return g1()(x); }
Dyadic g0_inv_apply(const Dyadic& x) {
  static const PLMap m = g0().inverse();
  return m(x);
}
Dyadic g1_inv_apply(const Dyadic& x) {
  static const PLMap m = g1().inverse();
  return m(x);
}
Dyadic gen_a_apply(const Dyadic& x) { return gen_a()(x); }
Dyadic gen_b_apply(const Dyadic& x) { return gen_b()(x); }

FWord FWord::reduced() const {
  FWord out;
  for (Letter g : letters) {
    if (!out.letters.empty() && out.letters.back() == lampwalk::inverse(g)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(g);
    }
  }
  return out;
}

FWord FWord::inverse() const {
  FWord out;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(lampwalk::inverse(*it));
  return out;
}

std::string FWord::str() const { return letters_to_string(letters); }

FWord FWord::parse(std::string_view text) { return FWord{parse_letters(text, false)}; }

PLMap word_to_pl(const FWord& w) {
  PLMap out;
  for (Letter g : w.letters) out = compose(out, generator_map(g));
  return out;
}

int cocycle_eval(const PLMap& g, const Dyadic& x) {
  if (x <= Dyadic() || x >= Dyadic::from_int(1)) return 0;
  return g.slope_right(x) - g.slope_left(x);
}

bool cocycle_identity_check(const PLMap& g, const PLMap& h, const Dyadic& x) {
  return cocycle_eval(compose(g, h), x) == cocycle_eval(g, h(x)) + cocycle_eval(h, x);
}

}  // namespace lampwalk
