#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace swipt {

/// Secondary access / PT powering policy used in the first stage of a slot.
enum class SchemeId { First, Second, Third, Fourth, Fifth };

inline constexpr std::array<SchemeId, 5> kAllSchemes = {
    SchemeId::First, SchemeId::Second, SchemeId::Third, SchemeId::Fourth, SchemeId::Fifth};

constexpr std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::First: return "first";
    case SchemeId::Second: return "second";
    case SchemeId::Third: return "third";
    case SchemeId::Fourth: return "fourth";
    case SchemeId::Fifth: return "fifth";
  }
  return "?";
}

constexpr std::optional<SchemeId> scheme_from_name(std::string_view name) {
  for (SchemeId id : kAllSchemes)
    if (scheme_name(id) == name) return id;
  return std::nullopt;
}

}  // namespace swipt
