#include "ssnreg/penalty.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace ssnreg {

std::string_view to_string(Penalty family) {
  return family == Penalty::Mcp ? "mcp" : "scad";
}

Penalty parse_penalty(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "mcp") return Penalty::Mcp;
  if (lower == "scad") return Penalty::Scad;
  throw InvalidArgument("unknown penalty '" + std::string(name) + "' (expected mcp or scad)");
}

}  // namespace ssnreg
