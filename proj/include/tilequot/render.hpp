#pragma once

// SVG pictures of tiling patches and quotient fundamental domains, vertices
// coloured by orbit.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "tilequot/quotient.hpp"

namespace tilequot {

enum class ColorBy { H, G, Full, Aut };

/// Accepts H, G, FULL, AUT (any case). Throws std::invalid_argument.
ColorBy parse_color_by(const std::string& s);

struct RenderSpec {
  const PeriodicTiling* tiling = nullptr;
  std::optional<Sublattice> quotient;  // draw K / Gamma instead of a patch
  std::int64_t x0 = 0, x1 = 2, y0 = 0, y1 = 2;  // patch cells, inclusive
  ColorBy color_by = ColorBy::Full;
  std::optional<Vec2> center;  // for G; defaults to a center attaining the minimum
  std::filesystem::path output;
};

struct RenderResult {
  std::string svg;
  int color_classes = 0;  // equals the block count of the chosen partition
  int vertex_disks = 0;
};

/// Throws std::invalid_argument for AUT on a patch or an empty extent.
RenderResult render_svg_string(const RenderSpec& spec);
/// Writes spec.output. Throws std::runtime_error on I/O failure.
RenderResult render_svg(const RenderSpec& spec);

}  // namespace tilequot
