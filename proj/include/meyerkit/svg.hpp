#pragma once

#include <optional>
#include <string>

#include "meyerkit/cps.hpp"
#include "meyerkit/modelset.hpp"
#include "meyerkit/pointset.hpp"

namespace meyerkit {

/*
 * SVG figure of a point pattern in dimension 1 or 2, one color per label.
 * With a scheme and windows (m = 1) a second panel plots the lattice points
 * over the carrier as (physical, internal) pairs, with the window intervals
 * drawn as bands. Throws InvalidArgument for other dimensions.
 */
std::string svg_figure(const MultiPointSet& P, const std::string& title,
                       const CutProjectScheme* S = nullptr, const WindowSet* W = nullptr);

}  // namespace meyerkit
