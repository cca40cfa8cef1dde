#pragma once

#include "pulsewalk/bloch_sim.hpp"
#include "pulsewalk/catalog.hpp"
#include "pulsewalk/walks.hpp"

#include <span>
#include <string>

namespace pulsewalk {

/// Columns t, px, py, pz, step_index (1-based). Numbers are written with 17 significant digits,
/// so identical inputs give byte-identical files.
std::string walk_csv(const Walk& w, std::size_t per_segment = 16);

/// Top view (x'y'-projection) of the walk. Odd steps are drawn in a dark stroke, even steps in a
/// lighter one; detuning walks carry a +/- mark at each chord for lunes above/below the plane.
std::string walk_svg(const Walk& w, const std::string& title, std::size_t per_segment = 48);

/// Columns t, rx, ry, rz.
std::string trajectory_csv(std::span<const TrajectoryPoint> points);

/// Columns error, deviation.
std::string slope_csv(const SlopeReport& report);

/// Columns alpha, residual, area_z.
std::string scan_csv(std::span<const AlphaScanPoint> points);

}  // namespace pulsewalk
