#pragma once

#include <string>

#include "crowdbound/omega.hpp"

namespace crowdbound::cli {

/// Renders a phase grid as a standalone SVG heatmap with a diverging color
/// scale centered at 0.5. Output bytes are deterministic for a given grid.
std::string render_phase_svg(const PhaseGrid& grid, const std::string& title);

}  // namespace crowdbound::cli
