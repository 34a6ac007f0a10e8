// io.hpp - deterministic writers for the toolkit's file formats: CSV with
// '#' header lines, binary P5 PGM heatmaps, and shortest round-trip float
// formatting shared by all of them.

#pragma once

#include <filesystem>
#include <string>

#include "passage/propagator.hpp"
#include "passage/spectrum.hpp"
#include "passage/sweep.hpp"

namespace passage::io {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

void write_surfaces_csv(const std::filesystem::path& file, const SurfaceGrid& grid);

void write_timeseries_csv(const std::filesystem::path& file,
                          const PropagationResult& result);

// grid: one of the sweep population matrices; axes echoed in the header.
void write_grid_csv(const std::filesystem::path& file, const SweepResult& sweep,
                    const Eigen::MatrixXd& grid, const std::string& state_name);

void write_boundaries_csv(const std::filesystem::path& file,
                          const BoundarySet& boundaries);

// 8-bit binary P5 graymap: pixel = round(255 * population), missing data
// rendered as 0. Columns follow delta_p, rows delta_s descending (axes as
// in the published efficiency maps).
void write_pgm(const std::filesystem::path& file, const Eigen::MatrixXd& grid);

}  // namespace passage::io
