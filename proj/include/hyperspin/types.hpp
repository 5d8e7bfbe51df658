#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperspin {

/// External field and mass, both measured in units of the curvature radius.
struct FieldConfig {
  double B = 0.0;  ///< magnetic field strength, either sign
  double M = 1.0;  ///< mass parameter, must be positive

  void validate() const {
    if (!(M > 0.0)) throw std::invalid_argument("FieldConfig: mass M must be positive");
  }
};

/// Spin-projection channel of the nonrelativistic big components.
enum class Component { Psi1, Psi2, Psi3 };

/// Projection of the channel onto the field axis: +1, 0, -1.
/// The same integer is the offset that shifts m in the channel's exponents.
constexpr int spin_projection(Component c) {
  switch (c) {
    case Component::Psi1: return +1;
    case Component::Psi2: return 0;
    case Component::Psi3: return -1;
  }
  return 0;
}

/// Offset d such that the channel equation depends on (m + d) near the origin
/// and on (2B - m + d) at infinity. Equals -spin_projection.
constexpr int channel_offset(Component c) { return -spin_projection(c); }

/// Psi1 <-> Psi3 under (m, B) -> (-m, -B); Psi2 maps to itself.
constexpr Component mirror(Component c) {
  switch (c) {
    case Component::Psi1: return Component::Psi3;
    case Component::Psi2: return Component::Psi2;
    case Component::Psi3: return Component::Psi1;
  }
  return c;
}

enum class LadderKind { a_minus, a_plus, a, b_minus, b_plus, b };

/// Sign pattern (A, C): V1 (-,-), V2 (+,-), V3 (+,+), V4 (-,+).
enum class ExponentVariant { V1, V2, V3, V4 };

enum class LevelKind { nonrel, rel_phi2, rel_gprime, rel_phi0prime };

std::string_view to_string(Component c);
std::string_view to_string(ExponentVariant v);
std::string_view to_string(LevelKind k);
std::string_view to_string(LadderKind k);

/// Accepts "psi1"/"Psi1"/"1" style names.
std::optional<Component> parse_component(std::string_view text);
std::optional<LevelKind> parse_level_kind(std::string_view text);

}  // namespace hyperspin
