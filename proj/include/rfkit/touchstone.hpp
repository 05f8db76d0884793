#pragma once

#include <filesystem>

#include "rfkit/netsim.hpp"

namespace rfkit {

/// Touchstone v1 two-port file. Option line `# HZ S RI R <z_ref>`, one data
/// line per frequency with 9 columns (f, then Re/Im of S11 S21 S12 S22),
/// ascending frequency, scientific notation with 10 significant digits.
void write_touchstone(const SParamSweep& sweep, const std::filesystem::path& path);

/// Parses files produced by write_touchstone (HZ/S/RI option line required).
/// The returned sweep carries a linear grid descriptor spanning the data.
SParamSweep read_touchstone(const std::filesystem::path& path);

/// CSV with header `freq_hz,s11_db,s21_db`; magnitudes in dB clipped at
/// -200 dB.
void write_csv(const SParamSweep& sweep, const std::filesystem::path& path);

} // namespace rfkit
