#include "passage/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "passage/errors.hpp"

namespace passage {

namespace {

// One boundary edge of the field plane: a 2x2 coupled block plus the
// decoupled third state. Branch energies follow the closed two-level form.
struct Edge {
    int decoupled_state = 0;
    int block_lo_state = 0;  // block states ordered by zero-field energy
    int block_hi_state = 0;
    double e_lo = 0.0, e_hi = 0.0, e_dec = 0.0;

    double lo(double x) const { return 0.5 * (e_lo + e_hi - std::hypot(x, e_hi - e_lo)); }
    double hi(double x) const { return 0.5 * (e_lo + e_hi + std::hypot(x, e_hi - e_lo)); }
};

Edge pump_edge(double delta_p, double delta) {
    Edge e;
    e.decoupled_state = 3;
    e.e_dec = delta;
    if (delta_p >= 0.0) {
        e.block_lo_state = 1;
        e.e_lo = 0.0;
        e.block_hi_state = 2;
        e.e_hi = delta_p;
    } else {
        e.block_lo_state = 2;
        e.e_lo = delta_p;
        e.block_hi_state = 1;
        e.e_hi = 0.0;
    }
    return e;
}

Edge stokes_edge(double delta_p, double delta) {
    Edge e;
    e.decoupled_state = 1;
    e.e_dec = 0.0;
    if (delta_p <= delta) {
        e.block_lo_state = 2;
        e.e_lo = delta_p;
        e.block_hi_state = 3;
        e.e_hi = delta;
    } else {
        e.block_lo_state = 3;
        e.e_lo = delta;
        e.block_hi_state = 2;
        e.e_hi = delta_p;
    }
    return e;
}

// Branch tags: -1 block lower, +1 block upper, 0 decoupled.
std::array<std::pair<double, int>, 3> corner_energies(const Edge& e, double x) {
    std::array<std::pair<double, int>, 3> v{
        {{e.lo(x), -1}, {e.e_dec, 0}, {e.hi(x), +1}}};
    std::sort(v.begin(), v.end());
    return v;
}

int state_of_tag(const Edge& e, int tag) {
    if (tag == 0) return e.decoupled_state;
    return tag < 0 ? e.block_lo_state : e.block_hi_state;
}

int tag_of_state(const Edge& e, int state) {
    if (state == e.decoupled_state) return 0;
    return state == e.block_lo_state ? -1 : +1;
}

void parallel_for_index(std::size_t n, int workers,
                        const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned count =
        workers > 0 ? static_cast<unsigned>(workers) : hw;
    if (count <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

void check_axis(const std::vector<double>& ax, const char* name) {
    if (ax.empty())
        throw std::invalid_argument(std::string("sweep: empty ") + name);
    for (std::size_t i = 1; i < ax.size(); ++i)
        if (!(ax[i] > ax[i - 1]))
            throw std::invalid_argument(std::string("sweep: ") + name + " must ascend");
}

}  // namespace

std::vector<double> default_detuning_axis(int n) {
    if (n < 1) throw std::invalid_argument("default_detuning_axis: n must be >= 1");
    std::vector<double> ax(n);
    if (n == 1) {
        ax[0] = 0.0;
        return ax;
    }
    for (int i = 0; i < n; ++i)
        ax[i] = -1.2 + 2.4 * static_cast<double>(i) / (n - 1);
    return ax;
}

BoundarySet boundary_curves(double omega_max, const std::vector<double>& dp_axis,
                            const std::vector<double>& ds_axis) {
    if (!(omega_max > 0.0))
        throw std::invalid_argument("boundary_curves: omega_max must be > 0");
    check_axis(dp_axis, "delta_p axis");
    check_axis(ds_axis, "delta_s axis");

    BoundarySet b;
    b.dp_zero.name = "delta_p_zero";
    for (double ds : ds_axis) b.dp_zero.points.push_back({0.0, ds});
    b.ds_zero.name = "delta_s_zero";
    for (double dp : dp_axis) b.ds_zero.points.push_back({dp, 0.0});

    const double w2 = omega_max * omega_max;
    Polyline dp_neg{"hyperbola_dp_neg", {}}, dp_pos{"hyperbola_dp_pos", {}};
    for (double dp : dp_axis) {
        if (dp == 0.0) continue;  // singular axis point
        const double ds = dp - w2 / (4.0 * dp);
        (dp < 0.0 ? dp_neg : dp_pos).points.push_back({dp, ds});
    }
    Polyline ds_neg{"hyperbola_ds_neg", {}}, ds_pos{"hyperbola_ds_pos", {}};
    for (double ds : ds_axis) {
        if (ds == 0.0) continue;
        const double dp = ds - w2 / (4.0 * ds);
        (ds < 0.0 ? ds_neg : ds_pos).points.push_back({dp, ds});
    }
    for (auto& pl : {dp_neg, dp_pos, ds_neg, ds_pos})
        if (!pl.points.empty()) b.hyperbolas.push_back(pl);
    return b;
}

int region_prediction(double delta_p, double delta_s, double peak_pump_edge,
                      double peak_stokes_edge, PulseOrder sequence,
                      int initial_state) {
    if (classify_case(delta_p, delta_s) == TopologyCase::Degenerate)
        throw DegenerateError("region_prediction: degenerate input on a boundary line");
    if (!(peak_pump_edge > 0.0) || !(peak_stokes_edge > 0.0))
        throw std::invalid_argument("region_prediction: peak amplitudes must be > 0");
    if (initial_state < 1 || initial_state > 3)
        throw std::invalid_argument("region_prediction: initial_state must be 1..3");

    const double delta = delta_p - delta_s;
    const Edge pump = pump_edge(delta_p, delta);
    const Edge stokes = stokes_edge(delta_p, delta);

    const bool stokes_first = sequence == PulseOrder::Counterintuitive;
    const Edge& entry = stokes_first ? stokes : pump;
    const Edge& exit = stokes_first ? pump : stokes;
    const double entry_peak = stokes_first ? peak_stokes_edge : peak_pump_edge;
    const double exit_peak = stokes_first ? peak_pump_edge : peak_stokes_edge;

    // Rank of the followed branch at the entry corner: the initial state
    // rides its own block branch (or stays decoupled) along the entry edge.
    const int entry_tag = tag_of_state(entry, initial_state);
    const auto entry_sorted = corner_energies(entry, entry_peak);
    int rank = 0;
    for (int r = 0; r < 3; ++r)
        if (entry_sorted[r].second == entry_tag) rank = r;

    // Interior traversal preserves the rank (no interior crossings); the
    // branch of that rank at the exit corner connects diabatically to a
    // unique state as the exit edge field falls to zero.
    const auto exit_sorted = corner_energies(exit, exit_peak);
    return state_of_tag(exit, exit_sorted[rank].second);
}

SweepResult efficiency_map(const SweepSpec& spec) {
    check_axis(spec.delta_p_axis, "delta_p axis");
    check_axis(spec.delta_s_axis, "delta_s axis");
    if (!(spec.tau > 0.0) || !(spec.peak_p > 0.0) || !(spec.peak_s > 0.0))
        throw std::invalid_argument("efficiency_map: tau and peaks must be > 0");
    if (spec.initial_state < 1 || spec.initial_state > 3)
        throw std::invalid_argument("efficiency_map: initial_state must be 1..3");
    if (spec.shape != Shape::SineSquared)
        throw std::invalid_argument("efficiency_map: only sine-squared sweeps supported");

    const double wmax = spec.omega_max();
    const std::size_t np = spec.delta_p_axis.size();
    const std::size_t ns = spec.delta_s_axis.size();

    SweepResult out;
    out.spec = spec;
    out.p1 = Eigen::MatrixXd::Constant(np, ns, kMissingData);
    out.p2 = Eigen::MatrixXd::Constant(np, ns, kMissingData);
    out.p3 = Eigen::MatrixXd::Constant(np, ns, kMissingData);

    std::atomic<int> failed{0};
    PropagateOptions popts;
    popts.tol = spec.tol;
    popts.samples = 129;
    popts.with_margin = false;

    parallel_for_index(np * ns, spec.workers, [&](std::size_t k) {
        const std::size_t i = k / ns;
        const std::size_t j = k % ns;
        const double dp = spec.delta_p_axis[i] * wmax;
        const double ds = spec.delta_s_axis[j] * wmax;
        try {
            const Protocol proto = stirap_schedule(spec.sequence, spec.tau,
                                                   spec.delay, spec.peak_p,
                                                   spec.peak_s, dp, ds);
            const PropagationResult res =
                propagate(proto, spec.initial_state, popts);
            const Eigen::VectorXd& p = res.final_populations();
            out.p1(i, j) = p(0);
            out.p2(i, j) = p(1);
            out.p3(i, j) = p(2);
        } catch (const std::exception&) {
            ++failed;  // grids keep the missing-data marker
        }
    });
    out.failed_points = failed.load();

    std::vector<double> dp_phys(np), ds_phys(ns);
    for (std::size_t i = 0; i < np; ++i) dp_phys[i] = spec.delta_p_axis[i] * wmax;
    for (std::size_t j = 0; j < ns; ++j) ds_phys[j] = spec.delta_s_axis[j] * wmax;
    out.boundaries = boundary_curves(wmax, dp_phys, ds_phys);
    return out;
}

}  // namespace passage
