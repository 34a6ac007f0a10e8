// passage - command-line front end: parses configs, dispatches the five
// subcommands, and writes deterministic output files.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "config.hpp"
#include "passage/errors.hpp"
#include "passage/io.hpp"
#include "passage/propagator.hpp"
#include "passage/spectrum.hpp"
#include "passage/sweep.hpp"
#include "passage/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace passage;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNumeric = 4;

struct GlobalOptions {
    std::string config_path;
    std::string out_override;
    int workers = -1;       // -1: not given
    double tol = -1.0;      // <= 0: not given
    bool allow_degenerate = false;
};

json base_metadata(const char* command, const cli::RunConfig& cfg) {
    json meta;
    meta["tool"] = kToolName;
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["config"] = json::parse(cfg.echo);
    meta["unit"] = {{"reference_frequency", cfg.unit.reference_frequency}};
    return meta;
}

void write_json(const fs::path& file, const json& j) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open output file: " + file.string());
    out << j.dump(2) << '\n';
}

json margin_to_json(double margin) {
    if (std::isnan(margin)) return nullptr;
    if (std::isinf(margin)) return "inf";
    return margin;
}

cli::RunConfig load(const GlobalOptions& g) {
    if (g.config_path.empty())
        throw cli::ConfigError("this subcommand requires --config <file>");
    cli::RunConfig cfg = cli::load_config(g.config_path);
    if (!g.out_override.empty()) cfg.out = g.out_override;
    if (g.workers >= 0) {
        cfg.workers = g.workers;
        if (cfg.sweep) cfg.sweep->workers = g.workers;
    }
    if (g.tol > 0.0) {
        cfg.tol = g.tol;
        if (cfg.sweep) cfg.sweep->tol = g.tol;
    }
    return cfg;
}

fs::path ensure_out_dir(const cli::RunConfig& cfg) {
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    return dir;
}

int cmd_classify(double dp, double ds) {
    const TopologyCase c = classify_case(dp, ds);
    std::cout << to_string(c) << '\n';
    std::cout << "zero-field energies: E1=0 E2=" << io::format_double(dp)
              << " E3=" << io::format_double(dp - ds) << '\n';
    if (c != TopologyCase::Degenerate) {
        const auto order = zero_field_order(dp, ds);
        std::cout << "ascending order: " << order[0] << ' ' << order[1] << ' '
                  << order[2] << '\n';
    }
    return kExitOk;
}

int cmd_surfaces(const GlobalOptions& g) {
    const cli::RunConfig cfg = load(g);
    if (!cfg.surfaces)
        throw cli::ConfigError("surfaces: config needs a \"surfaces\" section");
    const auto& spec = *cfg.surfaces;

    const TopologyCase c = classify_case(spec.delta_p, spec.delta_s);
    if (c == TopologyCase::Degenerate && !g.allow_degenerate)
        throw DegenerateError(
            "surfaces: degenerate zero-field classification (rerun with "
            "--allow-degenerate to emit sheets without labels)");

    const SurfaceGrid grid = surface_grid(spec.delta_p, spec.delta_s, spec.axis_p,
                                          spec.axis_s, g.allow_degenerate);

    json meta = base_metadata("surfaces", cfg);
    meta["case"] = to_string(c);
    meta["delta_p"] = spec.delta_p;
    meta["delta_s"] = spec.delta_s;
    meta["intersections"] = json::array();
    if (c != TopologyCase::Degenerate) {
        for (const auto& x : conical_intersections(spec.delta_p, spec.delta_s)) {
            meta["intersections"].push_back({{"omega_p", x.omega_p},
                                             {"omega_s", x.omega_s},
                                             {"states", x.states}});
        }
    }

    const fs::path dir = ensure_out_dir(cfg);
    io::write_surfaces_csv(dir / "surfaces.csv", grid);
    meta["files"] = {"surfaces.csv"};
    write_json(dir / "surfaces.meta.json", meta);
    return kExitOk;
}

int cmd_propagate(const GlobalOptions& g) {
    const cli::RunConfig cfg = load(g);
    if (!cfg.protocol)
        throw cli::ConfigError("propagate: config needs a \"protocol\" section");
    const auto& run = *cfg.protocol;

    const fs::path dir = ensure_out_dir(cfg);
    json meta = base_metadata("propagate", cfg);
    meta["initial_state"] = run.initial_state;
    meta["tol"] = cfg.tol;

    try {
        const PropagationResult res =
            propagate(run.protocol, run.initial_state,
                      {.tol = cfg.tol, .samples = cfg.samples, .with_margin = true});
        io::write_timeseries_csv(dir / "timeseries.csv", res);
        json pops = json::array();
        for (Eigen::Index k = 0; k < res.final_populations().size(); ++k)
            pops.push_back(res.final_populations()(k));
        meta["final_populations"] = pops;
        meta["adiabaticity_margin"] = margin_to_json(res.adiabaticity_margin);
        meta["norm_drift"] = res.norm_drift;
        meta["steps"] = res.steps;
        meta["files"] = {"timeseries.csv"};
        write_json(dir / "summary.json", meta);
    } catch (const StepUnderflowError& e) {
        meta["error"] = e.what();
        write_json(dir / "summary.json", meta);
        std::cerr << "propagate: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::domain_error& e) {
        meta["error"] = e.what();
        write_json(dir / "summary.json", meta);
        std::cerr << "propagate: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_sweep(const GlobalOptions& g) {
    const cli::RunConfig cfg = load(g);
    if (!cfg.sweep)
        throw cli::ConfigError("sweep: config needs a \"sweep\" section");

    const SweepResult res = efficiency_map(*cfg.sweep);

    const fs::path dir = ensure_out_dir(cfg);
    io::write_grid_csv(dir / "p1.csv", res, res.p1, "p1");
    io::write_grid_csv(dir / "p2.csv", res, res.p2, "p2");
    io::write_grid_csv(dir / "p3.csv", res, res.p3, "p3");
    io::write_boundaries_csv(dir / "boundaries.csv", res.boundaries);

    json meta = base_metadata("sweep", cfg);
    meta["omega_max"] = res.spec.omega_max();
    meta["failed_points"] = res.failed_points;
    meta["points"] = static_cast<int>(res.rows() * res.cols());
    meta["files"] = {"p1.csv", "p2.csv", "p3.csv", "boundaries.csv"};
    if (cfg.pgm) {
        io::write_pgm(dir / "p1.pgm", res.p1);
        io::write_pgm(dir / "p2.pgm", res.p2);
        io::write_pgm(dir / "p3.pgm", res.p3);
        for (const char* f : {"p1.pgm", "p2.pgm", "p3.pgm"})
            meta["files"].push_back(f);
    }

    const int total = static_cast<int>(res.rows() * res.cols());
    const bool too_many_failures = res.failed_points * 20 > total;  // > 5%
    if (too_many_failures)
        meta["error"] = "more than 5% of grid points failed to propagate";
    write_json(dir / "sweep.meta.json", meta);
    if (too_many_failures) {
        std::cerr << "sweep: " << res.failed_points << " of " << total
                  << " points failed\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_boundaries(const GlobalOptions& g, std::optional<double> omega_max_flag) {
    cli::RunConfig cfg;
    if (!g.config_path.empty()) {
        cfg = cli::load_config(g.config_path);
    } else {
        cfg.echo = "{}";
    }
    if (!g.out_override.empty()) cfg.out = g.out_override;
    if (omega_max_flag && cfg.boundaries)
        throw cli::ConfigError(
            "boundaries: --omega-max conflicts with the config section");

    cli::BoundariesSpec spec;
    if (cfg.boundaries) {
        spec = *cfg.boundaries;
    } else if (omega_max_flag) {
        spec.omega_max = *omega_max_flag;
        if (!(spec.omega_max > 0.0))
            throw cli::ConfigError("boundaries: omega_max must be > 0");
        spec.dp_axis = cli::linspace(-1.2 * spec.omega_max, 1.2 * spec.omega_max, 241);
        spec.ds_axis = cli::linspace(-1.2 * spec.omega_max, 1.2 * spec.omega_max, 241);
    } else {
        throw cli::ConfigError(
            "boundaries: give --omega-max or a config with a \"boundaries\" section");
    }

    const BoundarySet b = boundary_curves(spec.omega_max, spec.dp_axis, spec.ds_axis);

    json meta = base_metadata("boundaries", cfg);
    meta["omega_max"] = spec.omega_max;
    meta["warnings"] = json::array();
    const double vertex = 0.5 * spec.omega_max;
    if (spec.dp_axis.front() > -vertex || spec.dp_axis.back() < vertex ||
        spec.ds_axis.front() > -vertex || spec.ds_axis.back() < vertex)
        meta["warnings"].push_back(
            "axes do not cover the hyperbola vertices at |delta| = omega_max/2");

    const fs::path dir = ensure_out_dir(cfg);
    io::write_boundaries_csv(dir / "boundaries.csv", b);
    meta["files"] = {"boundaries.csv"};
    write_json(dir / "boundaries.meta.json", meta);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"passage: eigenenergy-surface topology and adiabatic-passage "
                 "dynamics for driven two- and three-level systems"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON run configuration");
    app.add_option("--out", g.out_override, "output directory (overrides config)");
    app.add_option("--workers", g.workers, "sweep worker threads");
    app.add_option("--tol", g.tol, "integrator tolerance (overrides config)");
    app.add_flag("--allow-degenerate", g.allow_degenerate,
                 "emit surfaces without labels at degenerate classifications");

    auto* surfaces = app.add_subcommand(
        "surfaces", "eigenenergy sheets over the (omega_p, omega_s) plane");
    auto* classify =
        app.add_subcommand("classify", "zero-field topology case for (dp, ds)");
    double dp = 0.0, ds = 0.0;
    classify->add_option("--dp", dp, "pump one-photon detuning")->required();
    classify->add_option("--ds", ds, "Stokes one-photon detuning")->required();
    auto* propagate_cmd = app.add_subcommand(
        "propagate", "integrate the Schroedinger equation for a protocol");
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "final-population maps over the detuning plane");
    auto* boundaries_cmd = app.add_subcommand(
        "boundaries", "analytic transfer-region boundary curves");
    std::optional<double> omega_max_flag;
    boundaries_cmd->add_option("--omega-max", omega_max_flag,
                               "peak Rabi frequency for the hyperbolas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (surfaces->parsed()) return cmd_surfaces(g);
        if (classify->parsed()) return cmd_classify(dp, ds);
        if (propagate_cmd->parsed()) return cmd_propagate(g);
        if (sweep_cmd->parsed()) return cmd_sweep(g);
        if (boundaries_cmd->parsed()) return cmd_boundaries(g, omega_max_flag);
    } catch (const cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const StepUnderflowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
