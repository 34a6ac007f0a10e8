// sweep.hpp - 2-D detuning-plane sweeps of final transfer efficiencies and
// the analytic boundary curves predicted by the surface topology.

#pragma once

#include <string>
#include <vector>

#include "passage/propagator.hpp"

namespace passage {

// Detuning axes are dimensionless multiples of the peak Rabi frequency
// Omega_max = max(peak_p, peak_s); physical detunings are sample * Omega_max.
struct SweepSpec {
    std::vector<double> delta_p_axis;  // ascending, units of Omega_max
    std::vector<double> delta_s_axis;
    PulseOrder sequence = PulseOrder::Counterintuitive;
    double tau = 100.0;
    double delay = 50.0;
    double peak_p = 1.0;
    double peak_s = 1.0;
    Shape shape = Shape::SineSquared;
    int initial_state = 1;
    double tol = 1e-10;
    int workers = 0;  // 0 = hardware concurrency

    double omega_max() const { return std::max(peak_p, peak_s); }
};

// Default Fig.-7-style window: [-1.2, 1.2] Omega_max with n points per axis.
std::vector<double> default_detuning_axis(int n = 41);

struct Polyline {
    std::string name;
    std::vector<std::array<double, 2>> points;  // (delta_p, delta_s), physical units
};

// Straight lines delta_p = 0 / delta_s = 0 plus both hyperbola branches
//   delta_s = delta_p - Omega_max^2 / (4 delta_p)  ("pump" hyperbola)
//   delta_p = delta_s - Omega_max^2 / (4 delta_s)  ("stokes" hyperbola)
// sampled on the given physical axes, excluding each hyperbola's singular
// axis point.
struct BoundarySet {
    Polyline dp_zero;
    Polyline ds_zero;
    std::vector<Polyline> hyperbolas;  // one polyline per branch
};

BoundarySet boundary_curves(double omega_max, const std::vector<double>& dp_axis,
                            const std::vector<double>& ds_axis);

constexpr double kMissingData = -1.0;  // sentinel for failed grid points

struct SweepResult {
    SweepSpec spec;
    // grids indexed (i, j) = (delta_p index, delta_s index), row-major in i
    Eigen::MatrixXd p1, p2, p3;
    BoundarySet boundaries;
    int failed_points = 0;

    std::size_t rows() const { return spec.delta_p_axis.size(); }
    std::size_t cols() const { return spec.delta_s_axis.size(); }
};

// One propagation per grid point; per-point failures are recorded as
// kMissingData markers and never abort the sweep. Deterministic assembly
// independent of worker count.
SweepResult efficiency_map(const SweepSpec& spec);

// Adiabatic prediction for delayed equal-length pulses whose edge segments
// reach the given peak amplitudes: the diabatic state (1..3) left populated,
// equal to initial_state when no transfer is expected. Throws
// DegenerateError on the classification boundary lines.
int region_prediction(double delta_p, double delta_s, double peak_pump_edge,
                      double peak_stokes_edge, PulseOrder sequence,
                      int initial_state);

inline int region_prediction(double delta_p, double delta_s, double omega_max,
                             PulseOrder sequence, int initial_state) {
    return region_prediction(delta_p, delta_s, omega_max, omega_max, sequence,
                             initial_state);
}

}  // namespace passage
