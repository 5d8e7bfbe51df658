#include "hyperspin/types.hpp"

#include <algorithm>
#include <cctype>

namespace hyperspin {

std::string_view to_string(Component c) {
  switch (c) {
    case Component::Psi1: return "psi1";
    case Component::Psi2: return "psi2";
    case Component::Psi3: return "psi3";
  }
  return "?";
}

std::string_view to_string(ExponentVariant v) {
  switch (v) {
    case ExponentVariant::V1: return "V1";
    case ExponentVariant::V2: return "V2";
    case ExponentVariant::V3: return "V3";
    case ExponentVariant::V4: return "V4";
  }
  return "?";
}

std::string_view to_string(LevelKind k) {
  switch (k) {
    case LevelKind::nonrel: return "nonrel";
    case LevelKind::rel_phi2: return "rel_phi2";
    case LevelKind::rel_gprime: return "rel_gprime";
    case LevelKind::rel_phi0prime: return "rel_phi0prime";
  }
  return "?";
}

std::string_view to_string(LadderKind k) {
  switch (k) {
    case LadderKind::a_minus: return "a_minus";
    case LadderKind::a_plus: return "a_plus";
    case LadderKind::a: return "a";
    case LadderKind::b_minus: return "b_minus";
    case LadderKind::b_plus: return "b_plus";
    case LadderKind::b: return "b";
  }
  return "?";
}

namespace {
std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}
}  // namespace

std::optional<Component> parse_component(std::string_view text) {
  const std::string s = lower(text);
  if (s == "psi1" || s == "1" || s == "+1") return Component::Psi1;
  if (s == "psi2" || s == "2" || s == "0") return Component::Psi2;
  if (s == "psi3" || s == "3" || s == "-1") return Component::Psi3;
  return std::nullopt;
}

std::optional<LevelKind> parse_level_kind(std::string_view text) {
  const std::string s = lower(text);
  if (s == "nonrel") return LevelKind::nonrel;
  if (s == "rel_phi2" || s == "phi2") return LevelKind::rel_phi2;
  if (s == "rel_gprime" || s == "gprime") return LevelKind::rel_gprime;
  if (s == "rel_phi0prime" || s == "phi0prime") return LevelKind::rel_phi0prime;
  return std::nullopt;
}

}  // namespace hyperspin
