#include "config.hpp"

#include <fstream>
#include <initializer_list>
#include <json.hpp>

namespace passage::cli {

using nlohmann::json;

namespace {

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

double get_number(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(where + ": missing required key \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(where + ": \"" + std::string(key) + "\" must be a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& where, const char* key,
                     double fallback) {
    return obj.contains(key) ? get_number(obj, where, key) : fallback;
}

int get_int(const json& obj, const std::string& where, const char* key,
            int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(where + ": \"" + std::string(key) + "\" must be an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(where + ": missing required key \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_string())
        throw ConfigError(where + ": \"" + std::string(key) + "\" must be a string");
    return v.get<std::string>();
}

Shape parse_shape(const std::string& s, const std::string& where) {
    if (s == "sine_squared") return Shape::SineSquared;
    if (s == "gaussian") return Shape::Gaussian;
    throw ConfigError(where + ": unknown shape \"" + s + "\"");
}

PulseOrder parse_order(const std::string& s, const std::string& where) {
    if (s == "intuitive") return PulseOrder::Intuitive;
    if (s == "counterintuitive") return PulseOrder::Counterintuitive;
    throw ConfigError(where + ": unknown sequence \"" + s + "\"");
}

SchemeKind parse_scheme_kind(const std::string& s, const std::string& where) {
    if (s == "lambda") return SchemeKind::Lambda;
    if (s == "ladder") return SchemeKind::Ladder;
    if (s == "vee") return SchemeKind::Vee;
    throw ConfigError(where + ": unknown level scheme \"" + s + "\"");
}

Envelope parse_envelope(const json& obj, const std::string& where) {
    expect_keys(obj, where, {"shape", "peak", "center", "width"});
    Envelope e;
    e.shape = parse_shape(get_string(obj, where, "shape"), where);
    e.peak = get_number(obj, where, "peak");
    e.center = get_number(obj, where, "center");
    e.width = get_number(obj, where, "width");
    return e;
}

std::optional<TimeSpan> parse_span(const json& obj, const std::string& where) {
    if (!obj.contains("span")) return std::nullopt;
    const auto& v = obj.at("span");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(where + ": \"span\" must be [t_start, t_end]");
    return TimeSpan{v[0].get<double>(), v[1].get<double>()};
}

// Detunings either directly or derived from a bare level scheme.
struct SchemeDetunings {
    Detunings d;
    std::optional<SchemeKind> kind;
};

SchemeDetunings parse_detunings(const json& obj, const std::string& where) {
    const bool direct = obj.contains("delta_p") || obj.contains("delta_s");
    const bool scheme = obj.contains("level_scheme");
    if (direct && scheme)
        throw ConfigError(where + ": give either delta_p/delta_s or level_scheme, not both");
    SchemeDetunings out;
    if (scheme) {
        const auto& s = obj.at("level_scheme");
        expect_keys(s, where + ".level_scheme",
                    {"kind", "energies", "omega_p", "omega_s"});
        const auto kind =
            parse_scheme_kind(get_string(s, where, "kind"), where + ".level_scheme");
        const auto& en = s.at("energies");
        if (!en.is_array() || en.size() != 3)
            throw ConfigError(where + ".level_scheme: \"energies\" must be [E1, E2, E3]");
        const LevelScheme ls{kind, en[0].get<double>(), en[1].get<double>(),
                             en[2].get<double>(),
                             get_number(s, where + ".level_scheme", "omega_p"),
                             get_number(s, where + ".level_scheme", "omega_s")};
        out.d = detunings_from_scheme(ls);
        out.kind = kind;
    } else {
        out.d.delta_p = get_number(obj, where, "delta_p");
        out.d.delta_s = get_number(obj, where, "delta_s");
        out.d.two_photon = out.d.delta_p - out.d.delta_s;
    }
    return out;
}

ProtocolRun parse_protocol(const json& obj) {
    const std::string where = "protocol";
    const std::string kind = get_string(obj, where, "kind");
    ProtocolRun run;

    if (kind == "stirap") {
        expect_keys(obj, where,
                    {"kind", "sequence", "tau", "delay", "peak_pump", "peak_stokes",
                     "pump", "stokes", "delta_p", "delta_s", "level_scheme",
                     "initial_state"});
        const auto det = parse_detunings(obj, where);
        const bool explicit_envelopes = obj.contains("pump") || obj.contains("stokes");
        if (explicit_envelopes) {
            if (!obj.contains("pump") || !obj.contains("stokes"))
                throw ConfigError(where + ": explicit form needs both pump and stokes");
            run.protocol = make_stirap(parse_envelope(obj.at("pump"), where + ".pump"),
                                       parse_envelope(obj.at("stokes"), where + ".stokes"),
                                       det.d.delta_p, det.d.delta_s);
        } else {
            const auto seq = parse_order(get_string(obj, where, "sequence"), where);
            run.protocol = stirap_schedule(seq, get_number(obj, where, "tau"),
                                           get_number(obj, where, "delay"),
                                           get_number(obj, where, "peak_pump"),
                                           get_number(obj, where, "peak_stokes"),
                                           det.d.delta_p, det.d.delta_s);
        }
        run.initial_state =
            get_int(obj, where, "initial_state",
                    det.kind ? initial_state_for(*det.kind) : 1);
        return run;
    }

    ProtocolKind pk;
    if (kind == "direct_chirp")
        pk = ProtocolKind::DirectChirp;
    else if (kind == "scrap_b")
        pk = ProtocolKind::ScrapB;
    else if (kind == "scrap_c")
        pk = ProtocolKind::ScrapC;
    else
        throw ConfigError(where + ": unknown kind \"" + kind + "\"");

    expect_keys(obj, where,
                {"kind", "delta_in", "chirp_rate", "pump", "stark", "span",
                 "initial_state"});
    const double delta_in = get_number(obj, where, "delta_in");
    if (!obj.contains("pump"))
        throw ConfigError(where + ": missing required key \"pump\"");
    const Envelope pump = parse_envelope(obj.at("pump"), where + ".pump");
    Envelope stark;
    if (pk != ProtocolKind::DirectChirp) {
        if (!obj.contains("stark"))
            throw ConfigError(where + ": SCRAP kinds need a \"stark\" envelope");
        stark = parse_envelope(obj.at("stark"), where + ".stark");
    }
    const double rate = get_number_or(obj, where, "chirp_rate", 0.0);
    run.protocol = chirp_schedule(pk, delta_in, pump, stark, rate,
                                  parse_span(obj, where));
    run.initial_state = get_int(obj, where, "initial_state", 1);
    return run;
}

SurfacesSpec parse_surfaces(const json& obj) {
    const std::string where = "surfaces";
    expect_keys(obj, where,
                {"delta_p", "delta_s", "level_scheme", "omega_p_max", "omega_s_max",
                 "points_p", "points_s"});
    SurfacesSpec spec;
    const auto det = parse_detunings(obj, where);
    spec.delta_p = det.d.delta_p;
    spec.delta_s = det.d.delta_s;
    const int np = get_int(obj, where, "points_p", 41);
    const int ns = get_int(obj, where, "points_s", 41);
    if (np < 1 || ns < 1)
        throw ConfigError(where + ": grid must have at least one point per axis");
    spec.axis_p = linspace(0.0, get_number(obj, where, "omega_p_max"), np);
    spec.axis_s = linspace(0.0, get_number(obj, where, "omega_s_max"), ns);
    return spec;
}

SweepSpec parse_sweep(const json& obj, double tol, int workers) {
    const std::string where = "sweep";
    expect_keys(obj, where,
                {"sequence", "tau", "delay", "peak_pump", "peak_stokes",
                 "delta_p_min", "delta_p_max", "points_p", "delta_s_min",
                 "delta_s_max", "points_s", "initial_state"});
    SweepSpec spec;
    spec.sequence = parse_order(get_string(obj, where, "sequence"), where);
    spec.tau = get_number(obj, where, "tau");
    spec.delay = get_number_or(obj, where, "delay", 0.5 * spec.tau);
    spec.peak_p = get_number(obj, where, "peak_pump");
    spec.peak_s = get_number(obj, where, "peak_stokes");
    const int np = get_int(obj, where, "points_p", 41);
    const int ns = get_int(obj, where, "points_s", 41);
    if (np < 1 || ns < 1)
        throw ConfigError(where + ": grid must have at least one point per axis");
    spec.delta_p_axis = linspace(get_number_or(obj, where, "delta_p_min", -1.2),
                                 get_number_or(obj, where, "delta_p_max", 1.2), np);
    spec.delta_s_axis = linspace(get_number_or(obj, where, "delta_s_min", -1.2),
                                 get_number_or(obj, where, "delta_s_max", 1.2), ns);
    spec.initial_state = get_int(obj, where, "initial_state", 1);
    spec.tol = tol;
    spec.workers = workers;
    return spec;
}

BoundariesSpec parse_boundaries(const json& obj) {
    const std::string where = "boundaries";
    expect_keys(obj, where,
                {"omega_max", "delta_p_min", "delta_p_max", "points_p",
                 "delta_s_min", "delta_s_max", "points_s"});
    BoundariesSpec spec;
    spec.omega_max = get_number(obj, where, "omega_max");
    if (!(spec.omega_max > 0.0))
        throw ConfigError(where + ": omega_max must be > 0");
    const double w = spec.omega_max;
    const int np = get_int(obj, where, "points_p", 241);
    const int ns = get_int(obj, where, "points_s", 241);
    if (np < 1 || ns < 1)
        throw ConfigError(where + ": axes must have at least one point");
    spec.dp_axis = linspace(get_number_or(obj, where, "delta_p_min", -1.2 * w),
                            get_number_or(obj, where, "delta_p_max", 1.2 * w), np);
    spec.ds_axis = linspace(get_number_or(obj, where, "delta_s_min", -1.2 * w),
                            get_number_or(obj, where, "delta_s_max", 1.2 * w), ns);
    return spec;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw ConfigError("linspace: need at least one point");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    expect_keys(doc, "config",
                {"unit", "out", "workers", "tol", "samples", "pgm", "protocol",
                 "surfaces", "sweep", "boundaries"});

    RunConfig cfg;
    if (doc.contains("unit")) {
        expect_keys(doc.at("unit"), "unit", {"reference_frequency"});
        cfg.unit = UnitSystem(
            get_number(doc.at("unit"), "unit", "reference_frequency"));
    }
    if (doc.contains("out")) cfg.out = get_string(doc, "config", "out");
    cfg.workers = get_int(doc, "config", "workers", 0);
    cfg.tol = get_number_or(doc, "config", "tol", 1e-10);
    cfg.samples = get_int(doc, "config", "samples", 1024);
    if (cfg.samples < 2) throw ConfigError("config: samples must be >= 2");
    if (doc.contains("pgm")) {
        if (!doc.at("pgm").is_boolean())
            throw ConfigError("config: \"pgm\" must be a boolean");
        cfg.pgm = doc.at("pgm").get<bool>();
    }

    if (doc.contains("protocol")) cfg.protocol = parse_protocol(doc.at("protocol"));
    if (doc.contains("surfaces")) cfg.surfaces = parse_surfaces(doc.at("surfaces"));
    if (doc.contains("sweep"))
        cfg.sweep = parse_sweep(doc.at("sweep"), cfg.tol, cfg.workers);
    if (doc.contains("boundaries"))
        cfg.boundaries = parse_boundaries(doc.at("boundaries"));

    cfg.echo = doc.dump();
    return cfg;
}

}  // namespace passage::cli
