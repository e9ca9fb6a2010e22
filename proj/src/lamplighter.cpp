#include "lampwalk/lamplighter.hpp"

#include <cctype>
#include <string>

namespace lampwalk {

Config parse_config(std::string_view text) {
  std::vector<Dyadic> pts;
  std::size_t start = 0;
  bool any = false;
  for (char c : text) any = any || !std::isspace(static_cast<unsigned char>(c));
  if (!any) return Config();
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    pts.push_back(Dyadic::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  Config c(pts);
  if (c.size() != pts.size()) throw ParseError("configuration lists a point twice");
  return c;
}

}  // namespace lampwalk
