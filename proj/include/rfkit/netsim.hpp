#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rfkit/netlist.hpp"

namespace rfkit {

using Complex = std::complex<double>;

enum class GridSpacing { Linear, Log };

struct SweepGrid {
    double f_start_hz = 0.0;
    double f_stop_hz = 0.0;
    int n_points = 0;  // >= 2
    GridSpacing spacing = GridSpacing::Linear;
};

void validate_grid(const SweepGrid& grid);

/// Frequencies of the grid, ascending, size n_points.
std::vector<double> grid_frequencies(const SweepGrid& grid);

struct STwoPort {
    Complex s11, s12, s21, s22;
};

struct SParamSweep {
    SweepGrid grid;
    double z_ref = 50.0;  // port reference impedance the S data is normalized to
    std::vector<double> freq_hz;
    std::vector<STwoPort> s;
    /// Indices of samples whose nodal system was singular; their S entries
    /// are NaN. Empty for every netlist this toolkit emits.
    std::vector<int> singular_points;
};

/// Node-admittance matrix of the netlist at one frequency, ports NOT
/// terminated. Row/column k corresponds to node k+1 (ground eliminated).
/// Conventional stamps for R/L/C; an ideal inverter J between i,j adds
/// +jJ at (i,j) and (j,i) and nothing on the diagonal.
Eigen::MatrixXcd stamp_admittance(const Netlist& netlist, double f_hz);

/// Terminate ports, solve the nodal system per excitation, convert to the
/// 2x2 scattering matrix referenced to the port impedances. Nodes with no
/// element path to either port are pruned before stamping (they cannot
/// affect port waves, and an isolated resonator row at exact resonance
/// would otherwise be singular).
SParamSweep sweep_sparams(const Netlist& netlist, const SweepGrid& grid);

/// One passband found by return-loss thresholding.
struct BandMetrics {
    double f_center_hz;  // midpoint of the threshold crossings
    double il_db;        // insertion loss at f_center (positive dB)
    double il_min_db;    // minimum in-band insertion loss (transmission peak)
    double rl_min_db;    // worst in-band return loss
    double f_lo_hz;
    double f_hi_hz;
    double fbw;
};

/// Maximal contiguous runs with RL >= threshold; edges linearly interpolated
/// at the crossings. Empty result when nothing crosses.
std::vector<BandMetrics> extract_band_metrics(const SParamSweep& sweep,
                                              double rl_threshold_db);

} // namespace rfkit
