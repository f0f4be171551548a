#pragma once

#include <string>

#include "flatsurf/bolza.hpp"

namespace flatsurf {

/// Static figure of one octagon of the optimal metric: the 16-triangle
/// subdivision (each of the 8 center wedges split at the foot of its
/// apothem), the 8 half-chords of the shortest closed geodesics from the
/// center to the side midpoints, and the shaded inner octagon through whose
/// every point four of those geodesic families pass (the intersection of the
/// four side-length-wide parallel strips around the chords). Output is
/// deterministic byte-for-byte for a given model.
std::string octagon_figure_svg(const bolza::BolzaOctagonModel& model);

/// Writes the figure to `path`; throws IoError on failure.
void save_octagon_figure(const bolza::BolzaOctagonModel& model, const std::string& path);

}  // namespace flatsurf
