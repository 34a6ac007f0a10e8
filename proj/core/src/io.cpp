#include "passage/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "passage/version.hpp"

namespace passage::io {

namespace {

std::ofstream open_out(const std::filesystem::path& file, bool binary = false) {
    std::ofstream out(file, binary ? std::ios::binary : std::ios::out);
    if (!out)
        throw std::runtime_error("cannot open output file: " + file.string());
    return out;
}

void write_axis(std::ofstream& out, const char* name, const std::vector<double>& ax) {
    out << "# " << name << ":";
    for (double v : ax) out << ' ' << format_double(v);
    out << '\n';
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_surfaces_csv(const std::filesystem::path& file, const SurfaceGrid& grid) {
    auto out = open_out(file);
    out << "# " << kToolName << ' ' << kVersion << " eigenenergy surfaces\n";
    out << "# units: dimensionless multiples of the reference frequency\n";
    out << "# columns: omega_p,omega_s,lambda1,lambda2,lambda3,label1,label2,label3\n";
    out << "# labels: diabatic state per ascending sheet; 0 = undefined\n";
    for (std::size_t i = 0; i < grid.axis_p.size(); ++i) {
        for (std::size_t j = 0; j < grid.axis_s.size(); ++j) {
            const auto& sh = grid.sheets[grid.index(i, j)];
            const auto& lab = grid.labels[grid.index(i, j)];
            out << format_double(grid.axis_p[i]) << ',' << format_double(grid.axis_s[j]);
            for (double v : sh) out << ',' << format_double(v);
            for (int l : lab) out << ',' << l;
            out << '\n';
        }
    }
}

void write_timeseries_csv(const std::filesystem::path& file,
                          const PropagationResult& result) {
    auto out = open_out(file);
    const int n = result.states.empty() ? 0 : static_cast<int>(result.states.front().size());
    out << "# " << kToolName << ' ' << kVersion << " propagation time series\n";
    out << "# units: time in inverse reference frequency; amplitudes dimensionless\n";
    out << "# columns: t";
    for (int k = 1; k <= n; ++k) out << ",re_a" << k << ",im_a" << k;
    for (int k = 1; k <= n; ++k) out << ",p" << k;
    out << '\n';
    for (std::size_t s = 0; s < result.times.size(); ++s) {
        out << format_double(result.times[s]);
        const auto& psi = result.states[s];
        for (int k = 0; k < n; ++k)
            out << ',' << format_double(psi(k).real()) << ','
                << format_double(psi(k).imag());
        const auto& pop = result.populations[s];
        for (int k = 0; k < n; ++k) out << ',' << format_double(pop(k));
        out << '\n';
    }
}

void write_grid_csv(const std::filesystem::path& file, const SweepResult& sweep,
                    const Eigen::MatrixXd& grid, const std::string& state_name) {
    auto out = open_out(file);
    out << "# " << kToolName << ' ' << kVersion << " sweep grid: " << state_name << '\n';
    out << "# units: detuning axes in multiples of omega_max = "
        << format_double(sweep.spec.omega_max()) << '\n';
    write_axis(out, "delta_p_axis", sweep.spec.delta_p_axis);
    write_axis(out, "delta_s_axis", sweep.spec.delta_s_axis);
    out << "# rows: delta_p index; columns: delta_s index; missing data = -1\n";
    for (Eigen::Index i = 0; i < grid.rows(); ++i) {
        for (Eigen::Index j = 0; j < grid.cols(); ++j) {
            if (j) out << ',';
            out << format_double(grid(i, j));
        }
        out << '\n';
    }
}

void write_boundaries_csv(const std::filesystem::path& file,
                          const BoundarySet& boundaries) {
    auto out = open_out(file);
    out << "# " << kToolName << ' ' << kVersion << " topology boundary curves\n";
    out << "# units: dimensionless multiples of the reference frequency\n";
    out << "# columns: curve,delta_p,delta_s\n";
    auto dump = [&out](const Polyline& pl) {
        for (const auto& pt : pl.points)
            out << pl.name << ',' << format_double(pt[0]) << ','
                << format_double(pt[1]) << '\n';
    };
    dump(boundaries.dp_zero);
    dump(boundaries.ds_zero);
    for (const auto& h : boundaries.hyperbolas) dump(h);
}

void write_pgm(const std::filesystem::path& file, const Eigen::MatrixXd& grid) {
    auto out = open_out(file, true);
    const Eigen::Index width = grid.rows();   // delta_p axis
    const Eigen::Index height = grid.cols();  // delta_s axis
    out << "P5\n" << width << ' ' << height << "\n255\n";
    for (Eigen::Index row = 0; row < height; ++row) {
        const Eigen::Index j = height - 1 - row;  // top row = largest delta_s
        for (Eigen::Index i = 0; i < width; ++i) {
            const double v = grid(i, j);
            const double clamped = std::clamp(v, 0.0, 1.0);
            const unsigned char byte =
                v == kMissingData
                    ? 0
                    : static_cast<unsigned char>(std::lround(255.0 * clamped));
            out.put(static_cast<char>(byte));
        }
    }
}

}  // namespace passage::io
