#include "lampwalk/numeric.hpp"

#include <cctype>
#include <string>

#include "lampwalk/errors.hpp"
#include "lampwalk/letters.hpp"

namespace lampwalk {

Rational pow2(int e) {
  BigInt one = 1;
  if (e >= 0) return Rational(one << e);
  return Rational(one, one << (-e));
}

BigInt ipow(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("bad number: " + std::string(whole));
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("bad number: " + std::string(whole));
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw ParseError("bad number: " + std::string(whole));
  }
  BigInt v(std::string(s.substr(i)));
  return s[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_integer(text.substr(0, slash), text);
    BigInt q = parse_integer(text.substr(slash + 1), text);
    if (q == 0) throw ParseError("zero denominator: " + std::string(text));
    return Rational(p, q);
  }
  std::string_view mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    exp10 = static_cast<long>(parse_integer(text.substr(e + 1), text));
  }
  std::string digits;
  bool neg = false;
  std::size_t i = 0;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    i = 1;
  }
  bool seen_point = false;
  for (; i < mant.size(); ++i) {
    char c = mant[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) --exp10;
    } else {
      throw ParseError("bad number: " + std::string(text));
    }
  }
  if (digits.empty()) throw ParseError("bad number: " + std::string(text));
  BigInt v(digits);
  if (neg) v = -v;
  if (exp10 > 1000 || exp10 < -1000) throw ParseError("exponent out of range: " + std::string(text));
  BigInt p10 = ipow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  return exp10 >= 0 ? Rational(v * p10) : Rational(v, p10);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

char to_char(Letter g) {
  switch (g) {
    case Letter::a: return 'a';
    case Letter::A: return 'A';
    case Letter::b: return 'b';
    case Letter::B: return 'B';
    case Letter::s: return 's';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'A': return Letter::A;
    case 'b': return Letter::b;
    case 'B': return Letter::B;
    case 's': return Letter::s;
    default: throw ParseError(std::string("unknown letter '") + c + "'");
  }
}

std::vector<Letter> parse_letters(std::string_view text, bool allow_switch) {
  std::vector<Letter> out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    Letter g = letter_from_char(c);
    if (!allow_switch && g == Letter::s) throw ParseError("switch letter not allowed here");
    out.push_back(g);
  }
  return out;
}

std::string letters_to_string(const std::vector<Letter>& w) {
  std::string out;
  out.reserve(w.size());
  for (Letter g : w) out.push_back(to_char(g));
  return out;
}

}  // namespace lampwalk
