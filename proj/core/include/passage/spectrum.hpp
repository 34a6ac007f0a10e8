// spectrum.hpp - eigenenergies and eigenvectors of the effective
// Hamiltonians, eigenenergy surfaces over parameter planes, zero-field
// topology classification, conical-intersection location, and adiabatic
// connectivity tracking along parameter paths.

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "passage/model.hpp"

namespace passage {

// Diagonalization result for a real symmetric matrix. Values ascending;
// vectors orthonormal, column i paired with value i. Sign convention:
// in each vector the first component of largest magnitude is nonnegative.
struct EigenSystem {
    Eigen::Vector3d values;
    Eigen::Matrix3d vectors;
};

struct EigenSystem2 {
    Eigen::Vector2d values;
    Eigen::Matrix2d vectors;
};

enum class TopologyCase { C123, C132, C213, C231, C312, C321, Degenerate };

std::string to_string(TopologyCase c);

// Closed-form two-level eigenenergies: (Delta -+ sqrt(Omega^2+Delta^2))/2,
// returned as (lower, upper).
std::pair<double, double> eigen2_closed(const TwoLevelParams& p);

// Mixing angle Theta in [-pi/2, 0] with tan 2Theta = Omega/Delta and
// -pi <= 2Theta <= 0, continuous across Delta = 0 (where 2Theta = -pi/2).
// Throws std::domain_error at (0, 0).
double mixing_angle(const TwoLevelParams& p);

// Cyclic-Jacobi diagonalization of a real symmetric matrix.
EigenSystem2 eigen_symmetric2(const Eigen::Matrix2d& h);
EigenSystem eigen_symmetric3(const Eigen::Matrix3d& h);

// Eigensystem of h3(p); residual |Hv - lambda v| <= 1e-12 max(1, |H|).
EigenSystem eigen3_numeric(const ThreeLevelParams& p);

// Ranks the zero-field energies (state 1: 0, state 2: Dp, state 3: Dp-Ds)
// in ascending order; Degenerate when any two coincide exactly.
TopologyCase classify_case(double delta_p, double delta_s);

// State labels (1..3) at zero field ordered by ascending energy, i.e. the
// digits of the topology case tag. Throws DegenerateError.
std::array<int, 3> zero_field_order(double delta_p, double delta_s);

// A true-crossing point on one of the field-plane boundary edges.
struct CrossingPoint {
    double omega_p = 0.0;
    double omega_s = 0.0;
    std::array<int, 2> states{0, 0};  // diabatic states whose surfaces cross, ascending
};

// Conical intersections on the boundary edges: on Omega_S = 0 at
// Omega_P* = 2 sqrt(Ds (Ds - Dp)) when that product is positive, and on
// Omega_P = 0 at Omega_S* = 2 sqrt(Dp (Dp - Ds)) likewise. Throws
// DegenerateError when Dp * Ds == 0.
std::vector<CrossingPoint> conical_intersections(double delta_p, double delta_s);

// Eigenenergy sheets sampled over an (Omega_P, Omega_S) grid, with a
// per-point permutation mapping sorted sheet index -> diabatic label,
// assigned by continuity sweeping outward from the zero-field corner.
struct SurfaceGrid {
    std::vector<double> axis_p;  // ascending, starting at 0
    std::vector<double> axis_s;
    // index (i, j) -> i * axis_s.size() + j
    std::vector<std::array<double, 3>> sheets;  // ascending per point
    std::vector<std::array<int, 3>> labels;     // 0 = undefined (degenerate origin)

    std::size_t index(std::size_t i, std::size_t j) const { return i * axis_s.size() + j; }
};

// allow_degenerate: sheets are always computed; with a degenerate origin,
// labels stay 0 instead of raising.
SurfaceGrid surface_grid(double delta_p, double delta_s,
                         const std::vector<double>& axis_p,
                         const std::vector<double>& axis_s,
                         bool allow_degenerate = false);

// Ordered (Omega_P, Omega_S) samples; consecutive points must be close
// enough for eigenvector-overlap tracking.
struct ParameterPath {
    std::vector<std::array<double, 2>> samples;
};

// For each column of `cur`, the index of the `ref` column with the
// largest |overlap|, assigned greedily into a permutation.
std::array<int, 3> overlap_permutation(const Eigen::Matrix3d& ref,
                                       const Eigen::Matrix3d& cur);

// Follows the eigenvector branch along the path by maximal-overlap
// matching, passing through exact crossings (mute resonances) by diabatic
// continuity, and returns the diabatic label (1..3) connected at the end.
// Both path ends must have (numerically) zero fields.
// Throws AmbiguousPathError when the path is too coarse and
// DegenerateError when the zero-field labels are undefined.
int track_path(double delta_p, double delta_s, const ParameterPath& path,
               int start_label);

}  // namespace passage
