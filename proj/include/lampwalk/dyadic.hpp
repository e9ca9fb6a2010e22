#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lampwalk/letters.hpp"
#include "lampwalk/numeric.hpp"

namespace lampwalk {

// num / 2^exp in lowest terms: num odd, or num == 0 with exp == 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt num, std::int64_t exp);
  static Dyadic from_int(long v) { return Dyadic(BigInt(v), 0); }

  const BigInt& num() const { return num_; }
  std::int64_t exp() const { return exp_; }

  Rational to_rational() const;
  bool is_zero() const { return num_ == 0; }

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  // Multiplication by 2^e.
  Dyadic shifted(std::int64_t e) const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y);

  // "num/2^exp"
  std::string str() const;
  // Accepts "num/2^exp", "num/den" with den a power of two, or an integer.
  static Dyadic parse(std::string_view text);

  std::size_t hash() const;

 private:
  void normalize();

  BigInt num_;
  std::int64_t exp_ = 0;
};

struct DyadicHash {
  std::size_t operator()(const Dyadic& d) const { return d.hash(); }
};

// Piecewise-linear homeomorphism of [0,1] with dyadic breakpoints and slopes 2^k.
class PLMap {
 public:
  struct Piece {
    Dyadic start;  // left end of the piece
    Dyadic image;  // value at start
    int slope_exp;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  PLMap();  // identity
  // Pieces must start at 0, be increasing, continuous and map 1 to 1.
  static PLMap from_pieces(std::vector<Piece> pieces);

  Dyadic operator()(const Dyadic& x) const;
  PLMap inverse() const;
  bool is_identity() const;

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::vector<Dyadic> breakpoints() const;
  int slope_right(const Dyadic& x) const;  // on [x, x+eps)
  int slope_left(const Dyadic& x) const;   // on (x-eps, x]

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  std::size_t piece_index(const Dyadic& x) const;  // last piece with start <= x

  std::vector<Piece> pieces_;
};

// (f ∘ g)(x) = f(g(x)).
PLMap compose(const PLMap& f, const PLMap& g);

const PLMap& g0();
const PLMap& g1();
// a = g1 ∘ g0^{-1}, b = g1.
const PLMap& gen_a();
const PLMap& gen_b();
// Generator or inverse for a, A, b, B.
const PLMap& generator_map(Letter g);

Dyadic g0_apply(const Dyadic& x);
Dyadic g1_apply(const Dyadic& x);
Dyadic g0_inv_apply(const Dyadic& x);
Dyadic g1_inv_apply(const Dyadic& x);
Dyadic gen_a_apply(const Dyadic& x);
Dyadic gen_b_apply(const Dyadic& x);

// Word over {a, A, b, B}; the rightmost letter acts first.
struct FWord {
  std::vector<Letter> letters;

  FWord reduced() const;
  FWord inverse() const;
  std::string str() const;
  static FWord parse(std::string_view text);
};

PLMap word_to_pl(const FWord& w);

// k with g'_+(x) / g'_-(x) = 2^k; zero away from breakpoints.
int cocycle_eval(const PLMap& g, const Dyadic& x);
// c(g∘h)(x) == c(g)(h(x)) + c(h)(x)
bool cocycle_identity_check(const PLMap& g, const PLMap& h, const Dyadic& x);

}  // namespace lampwalk

template <>
struct std::hash<lampwalk::Dyadic> {
  std::size_t operator()(const lampwalk::Dyadic& d) const { return d.hash(); }
};
