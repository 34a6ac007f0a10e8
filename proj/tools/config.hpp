// config.hpp - JSON run-configuration parsing for the command-line tool.
// Unknown keys anywhere in the document are a hard error.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "passage/model.hpp"
#include "passage/pulses.hpp"
#include "passage/sweep.hpp"

namespace passage::cli {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ProtocolRun {
    Protocol protocol;
    int initial_state = 1;
};

struct SurfacesSpec {
    double delta_p = 0.0;
    double delta_s = 0.0;
    std::vector<double> axis_p;
    std::vector<double> axis_s;
};

struct BoundariesSpec {
    double omega_max = 1.0;
    std::vector<double> dp_axis;
    std::vector<double> ds_axis;
};

struct RunConfig {
    UnitSystem unit{1.0};
    std::string out = ".";
    int workers = 0;
    double tol = 1e-10;
    int samples = 1024;
    bool pgm = false;

    std::optional<ProtocolRun> protocol;
    std::optional<SurfacesSpec> surfaces;
    std::optional<SweepSpec> sweep;
    std::optional<BoundariesSpec> boundaries;

    std::string echo;  // the parsed document, reserialized
};

// Parses and validates the configuration document at `path`.
RunConfig load_config(const std::string& path);

// Evenly spaced samples including both endpoints (n >= 2), or {lo} for n == 1.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace passage::cli
