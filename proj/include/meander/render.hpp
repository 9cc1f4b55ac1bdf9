#pragma once

#include <cstdint>
#include <string>

#include "meander/core.hpp"

namespace meander {

enum class RenderFormat : std::uint8_t { Ascii, Svg, Tikz };

RenderFormat render_format_from_name(std::string_view name);

// Arc diagram of a valid code: l as a horizontal line, arcs as
// semicircles on their forced sides, touch feet as same-side arc pairs.
// Deterministic output; invalid codes are refused.
std::string render(const MeanderCode& code, RenderFormat format);

}  // namespace meander
