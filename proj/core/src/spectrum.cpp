#include "passage/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "passage/errors.hpp"

namespace passage {

namespace {

// One Jacobi rotation zeroing a(p,q), accumulating into v.
template <typename Mat>
void jacobi_rotate(Mat& a, Mat& v, int p, int q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double diff = a(q, q) - a(p, p);
    double t;
    if (std::abs(diff) + 100.0 * std::abs(apq) == std::abs(diff)) {
        t = apq / diff;  // off-diagonal negligible: first-order rotation
    } else {
        const double theta = 0.5 * diff / apq;
        t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const double tau = s / (1.0 + c);
    const int n = static_cast<int>(a.rows());

    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const double aip = a(i, p);
        const double aiq = a(i, q);
        a(i, p) = aip - s * (aiq + tau * aip);
        a(p, i) = a(i, p);
        a(i, q) = aiq + s * (aip - tau * aiq);
        a(q, i) = a(i, q);
    }
    for (int i = 0; i < n; ++i) {
        const double vip = v(i, p);
        const double viq = v(i, q);
        v(i, p) = vip - s * (viq + tau * vip);
        v(i, q) = viq + s * (vip - tau * viq);
    }
}

// Nonnegative first component of largest magnitude (deterministic sign).
template <typename Mat>
void fix_column_signs(Mat& v) {
    const int n = static_cast<int>(v.rows());
    for (int c = 0; c < n; ++c) {
        int k = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v(i, c)) > std::abs(v(k, c))) k = i;
        if (v(k, c) < 0.0) v.col(c) = -v.col(c);
    }
}

}  // namespace

// Greedy permutation assignment by descending eigenvector overlap.
std::array<int, 3> overlap_permutation(const Eigen::Matrix3d& prev,
                                       const Eigen::Matrix3d& cur) {
    const Eigen::Matrix3d o = (prev.transpose() * cur).cwiseAbs();
    std::array<int, 3> prev_of_cur{-1, -1, -1};
    std::array<bool, 3> prev_used{false, false, false};
    std::array<bool, 3> cur_used{false, false, false};
    for (int pick = 0; pick < 3; ++pick) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int i = 0; i < 3; ++i) {
            if (prev_used[i]) continue;
            for (int j = 0; j < 3; ++j) {
                if (cur_used[j]) continue;
                if (o(i, j) > best) {
                    best = o(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        prev_of_cur[bj] = bi;
        prev_used[bi] = true;
        cur_used[bj] = true;
    }
    return prev_of_cur;
}

std::string to_string(TopologyCase c) {
    switch (c) {
        case TopologyCase::C123: return "123";
        case TopologyCase::C132: return "132";
        case TopologyCase::C213: return "213";
        case TopologyCase::C231: return "231";
        case TopologyCase::C312: return "312";
        case TopologyCase::C321: return "321";
        case TopologyCase::Degenerate: return "degenerate";
    }
    return "?";
}

std::pair<double, double> eigen2_closed(const TwoLevelParams& p) {
    const double root = std::hypot(p.rabi, p.detuning);
    return {0.5 * (p.detuning - root), 0.5 * (p.detuning + root)};
}

double mixing_angle(const TwoLevelParams& p) {
    if (p.rabi == 0.0 && p.detuning == 0.0)
        throw std::domain_error("mixing_angle: undefined at Omega = Delta = 0");
    // 2 Theta = atan2(Omega, Delta) - pi lands in [-pi, 0] for Omega >= 0
    return 0.5 * (std::atan2(p.rabi, p.detuning) - std::numbers::pi);
}

EigenSystem2 eigen_symmetric2(const Eigen::Matrix2d& h) {
    Eigen::Matrix2d a = h;
    Eigen::Matrix2d v = Eigen::Matrix2d::Identity();
    jacobi_rotate(a, v, 0, 1);
    EigenSystem2 es;
    if (a(0, 0) <= a(1, 1)) {
        es.values << a(0, 0), a(1, 1);
        es.vectors = v;
    } else {
        es.values << a(1, 1), a(0, 0);
        es.vectors.col(0) = v.col(1);
        es.vectors.col(1) = v.col(0);
    }
    fix_column_signs(es.vectors);
    return es;
}

EigenSystem eigen_symmetric3(const Eigen::Matrix3d& h) {
    Eigen::Matrix3d a = h;
    Eigen::Matrix3d v = Eigen::Matrix3d::Identity();
    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
        if (off <= scale * 1e-17) break;
        jacobi_rotate(a, v, 0, 1);
        jacobi_rotate(a, v, 0, 2);
        jacobi_rotate(a, v, 1, 2);
    }
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return a(i, i) < a(j, j); });
    EigenSystem es;
    for (int c = 0; c < 3; ++c) {
        es.values(c) = a(idx[c], idx[c]);
        es.vectors.col(c) = v.col(idx[c]);
    }
    fix_column_signs(es.vectors);
    return es;
}

EigenSystem eigen3_numeric(const ThreeLevelParams& p) {
    return eigen_symmetric3(h3(p));
}

TopologyCase classify_case(double delta_p, double delta_s) {
    // zero-field energies: state 1 -> 0, state 2 -> Dp, state 3 -> Dp - Ds
    if (delta_p == 0.0 || delta_s == 0.0 || delta_p == delta_s)
        return TopologyCase::Degenerate;
    const double e2 = delta_p;
    const double e3 = delta_p - delta_s;
    std::array<std::pair<double, int>, 3> ranked{{{0.0, 1}, {e2, 2}, {e3, 3}}};
    std::sort(ranked.begin(), ranked.end());
    const int code = ranked[0].second * 100 + ranked[1].second * 10 + ranked[2].second;
    switch (code) {
        case 123: return TopologyCase::C123;
        case 132: return TopologyCase::C132;
        case 213: return TopologyCase::C213;
        case 231: return TopologyCase::C231;
        case 312: return TopologyCase::C312;
        case 321: return TopologyCase::C321;
    }
    return TopologyCase::Degenerate;  // unreachable
}

std::array<int, 3> zero_field_order(double delta_p, double delta_s) {
    if (classify_case(delta_p, delta_s) == TopologyCase::Degenerate)
        throw DegenerateError("zero_field_order: coinciding zero-field energies");
    std::array<std::pair<double, int>, 3> ranked{
        {{0.0, 1}, {delta_p, 2}, {delta_p - delta_s, 3}}};
    std::sort(ranked.begin(), ranked.end());
    return {ranked[0].second, ranked[1].second, ranked[2].second};
}

std::vector<CrossingPoint> conical_intersections(double delta_p, double delta_s) {
    if (delta_p * delta_s == 0.0)
        throw DegenerateError("conical_intersections: requires Dp != 0 and Ds != 0");
    const double delta = delta_p - delta_s;
    std::vector<CrossingPoint> out;
    // Omega_S = 0 edge: pump-block eigenvalue meets the decoupled level delta.
    const double qp = delta_s * (delta_s - delta_p);
    if (qp > 0.0) {
        CrossingPoint c;
        c.omega_p = 2.0 * std::sqrt(qp);
        c.omega_s = 0.0;
        const int block_state = (delta > std::max(0.0, delta_p)) ? (delta_p > 0.0 ? 2 : 1)
                                                                 : (delta_p > 0.0 ? 1 : 2);
        c.states = {std::min(block_state, 3), std::max(block_state, 3)};
        out.push_back(c);
    }
    // Omega_P = 0 edge: Stokes-block eigenvalue meets the decoupled level 0.
    const double qs = delta_p * (delta_p - delta_s);
    if (qs > 0.0) {
        CrossingPoint c;
        c.omega_p = 0.0;
        c.omega_s = 2.0 * std::sqrt(qs);
        const int block_state = (0.0 > std::max(delta_p, delta)) ? (delta_p > delta ? 2 : 3)
                                                                 : (delta_p < delta ? 2 : 3);
        c.states = {1, block_state};
        out.push_back(c);
    }
    return out;
}

SurfaceGrid surface_grid(double delta_p, double delta_s,
                         const std::vector<double>& axis_p,
                         const std::vector<double>& axis_s,
                         bool allow_degenerate) {
    auto check_axis = [](const std::vector<double>& ax, const char* name) {
        if (ax.empty()) throw std::invalid_argument(std::string("surface_grid: empty ") + name);
        if (ax.front() != 0.0)
            throw std::invalid_argument(std::string("surface_grid: ") + name + " must start at 0");
        for (std::size_t i = 1; i < ax.size(); ++i)
            if (!(ax[i] > ax[i - 1]))
                throw std::invalid_argument(std::string("surface_grid: ") + name + " must ascend");
    };
    check_axis(axis_p, "axis_p");
    check_axis(axis_s, "axis_s");

    const std::size_t np = axis_p.size();
    const std::size_t ns = axis_s.size();
    SurfaceGrid grid;
    grid.axis_p = axis_p;
    grid.axis_s = axis_s;
    grid.sheets.resize(np * ns);
    grid.labels.assign(np * ns, {0, 0, 0});

    std::array<int, 3> origin{0, 0, 0};
    bool labeled = true;
    try {
        origin = zero_field_order(delta_p, delta_s);
    } catch (const DegenerateError&) {
        if (!allow_degenerate) throw;
        labeled = false;
    }

    std::vector<Eigen::Matrix3d> prev_col(np), cur_col(np);
    for (std::size_t j = 0; j < ns; ++j) {
        for (std::size_t i = 0; i < np; ++i) {
            const EigenSystem es =
                eigen3_numeric({delta_p, delta_s, axis_p[i], axis_s[j]});
            auto& sh = grid.sheets[grid.index(i, j)];
            sh = {es.values(0), es.values(1), es.values(2)};
            cur_col[i] = es.vectors;
        }
        if (labeled) {
            for (std::size_t i = 0; i < np; ++i) {
                auto& lab = grid.labels[grid.index(i, j)];
                if (i == 0 && j == 0) {
                    lab = origin;
                } else {
                    // continuity against the neighbor toward the origin
                    const Eigen::Matrix3d& ref =
                        (j == 0) ? cur_col[i - 1] : prev_col[i];
                    const auto& ref_lab = (j == 0)
                                              ? grid.labels[grid.index(i - 1, j)]
                                              : grid.labels[grid.index(i, j - 1)];
                    const auto from = overlap_permutation(ref, cur_col[i]);
                    for (int c = 0; c < 3; ++c) lab[c] = ref_lab[from[c]];
                }
            }
        }
        prev_col.swap(cur_col);
    }
    return grid;
}

int track_path(double delta_p, double delta_s, const ParameterPath& path,
               int start_label) {
    const auto& pts = path.samples;
    if (pts.size() < 2)
        throw std::invalid_argument("track_path: need at least 2 samples");
    if (start_label < 1 || start_label > 3)
        throw std::invalid_argument("track_path: start_label must be 1..3");
    double fmax = 0.0;
    for (const auto& p : pts) {
        if (p[0] < 0.0 || p[1] < 0.0)
            throw std::invalid_argument("track_path: Rabi components must be >= 0");
        fmax = std::max({fmax, p[0], p[1]});
    }
    const double zero_tol = 1e-9 * std::max(1.0, fmax);
    if (std::max(pts.front()[0], pts.front()[1]) > zero_tol ||
        std::max(pts.back()[0], pts.back()[1]) > zero_tol)
        throw std::invalid_argument("track_path: path must start and end at zero fields");

    zero_field_order(delta_p, delta_s);  // degenerate-start check

    Eigen::Vector3d ref = Eigen::Vector3d::Zero();
    ref(start_label - 1) = 1.0;

    for (const auto& p : pts) {
        const ThreeLevelParams params{delta_p, delta_s, p[0], p[1]};
        const Eigen::Matrix3d h = h3(params);
        const EigenSystem es = eigen_symmetric3(h);
        const double crossing_tol = 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff());

        Eigen::Vector3d overlap = (es.vectors.transpose() * ref).cwiseAbs();
        int best = 0, second = 1;
        if (overlap(1) > overlap(0)) std::swap(best, second);
        if (overlap(2) > overlap(best)) {
            second = best;
            best = 2;
        } else if (overlap(2) > overlap(second)) {
            second = 2;
        }

        if (overlap(best) < 0.9) {
            // Inside a crossing subspace the solver returns arbitrary
            // mixtures; hold the reference vector and pass through.
            if (std::abs(es.values(best) - es.values(second)) < crossing_tol) continue;
            throw AmbiguousPathError(
                "track_path: eigenvector overlap below 0.9; path too coarse");
        }
        const double gap_min =
            std::min(best > 0 ? es.values(best) - es.values(best - 1)
                              : std::numeric_limits<double>::infinity(),
                     best < 2 ? es.values(best + 1) - es.values(best)
                              : std::numeric_limits<double>::infinity());
        if (gap_min < crossing_tol) continue;  // on a mute crossing: diabatic hold
        Eigen::Vector3d next = es.vectors.col(best);
        if (ref.dot(next) < 0.0) next = -next;
        ref = next;
    }

    Eigen::Index end_label = 0;
    ref.cwiseAbs().maxCoeff(&end_label);
    if (std::abs(ref(end_label)) < 0.9)
        throw AmbiguousPathError("track_path: end state not a clean diabatic state");
    return static_cast<int>(end_label) + 1;
}

}  // namespace passage
