#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lampwalk {

// Upper case is the inverse; s is the lamp switch.
enum class Letter : std::uint8_t { a, A, b, B, s };

inline constexpr std::array<Letter, 4> kMoves = {Letter::a, Letter::b, Letter::A, Letter::B};
inline constexpr std::array<Letter, 5> kLampLetters = {Letter::a, Letter::b, Letter::A, Letter::B,
                                                      Letter::s};

constexpr Letter inverse(Letter g) {
  switch (g) {
    case Letter::a: return Letter::A;
    case Letter::A: return Letter::a;
    case Letter::b: return Letter::B;
    case Letter::B: return Letter::b;
    case Letter::s: return Letter::s;
  }
  return g;
}

constexpr bool is_move(Letter g) { return g != Letter::s; }

char to_char(Letter g);
Letter letter_from_char(char c);  // throws ParseError

// Whitespace is ignored.
std::vector<Letter> parse_letters(std::string_view text, bool allow_switch);
std::string letters_to_string(const std::vector<Letter>& w);

}  // namespace lampwalk
