#include "hnls/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hnls/errors.hpp"
#include "hnls/io.hpp"
#include "json.hpp"

namespace hnls {

namespace {

using json = nlohmann::json;

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
    const auto it = parent.find(key);
    if (it == parent.end()) throw ConfigInvalid("missing required field " + path);
    if (!it->is_object()) throw ConfigInvalid(path + " must be an object");
    return *it;
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigInvalid(path + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigInvalid(path + " must be finite");
    return d;
}

double require_number(const json& obj, const std::string& key, const std::string& prefix) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigInvalid("missing required field " + prefix + "." + key);
    return number_at(*it, prefix + "." + key);
}

double optional_number(const json& obj, const std::string& key, const std::string& prefix, double fallback) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : number_at(*it, prefix + "." + key);
}

int optional_int(const json& obj, const std::string& key, const std::string& prefix, int fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer()) throw ConfigInvalid(prefix + "." + key + " must be an integer");
    return it->get<int>();
}

std::string optional_string(const json& obj, const std::string& key, const std::string& prefix,
                            const std::string& fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) throw ConfigInvalid(prefix + "." + key + " must be a string");
    return it->get<std::string>();
}

PresetSpec parse_preset(const json& data, const std::string& key, bool required) {
    const std::string path = "data." + key;
    PresetSpec p;
    const auto it = data.find(key);
    if (it == data.end()) {
        if (required) throw ConfigInvalid("missing required field " + path);
        return p;
    }
    if (!it->is_object()) throw ConfigInvalid(path + " must be an object");
    const json& o = *it;
    if (o.contains("file")) {
        p.kind = "file";
        p.path = optional_string(o, "file", path, "");
    } else {
        if (!o.contains("preset")) throw ConfigInvalid("missing required field " + path + ".preset");
        p.kind = optional_string(o, "preset", path, "zero");
        p.amplitude = optional_number(o, "amplitude", path, p.amplitude);
        p.a = optional_number(o, "a", path, p.a);
        p.center = optional_number(o, "center", path, p.center);
        p.width = optional_number(o, "width", path, p.width);
        p.lo = optional_number(o, "lo", path, p.lo);
        p.hi = optional_number(o, "hi", path, p.hi);
    }
    p.validate(path);
    return p;
}

std::string resolve(const std::string& base, const std::string& path) {
    const std::filesystem::path p(path);
    return p.is_absolute() ? path : (std::filesystem::path(base) / p).string();
}

std::vector<cplx> load_uniform(const std::string& file, double length, const std::string& field) {
    const SampledColumn c = read_samples_csv(file);
    const std::size_t n = c.coordinate.size();
    const double h = length / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(c.coordinate[i] - i * h) > 1e-9 * length) {
            throw ConfigInvalid(field + ": samples must lie on the uniform grid over [0, " + format_double(length) + "]");
        }
    }
    return c.values;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigInvalid("configuration must be a JSON object");
    ScenarioConfig c;
    c.base_dir = base_dir;

    const json& disp = require_object(root, "dispersion", "dispersion");
    c.params.beta = require_number(disp, "beta", "dispersion");
    c.params.alpha = require_number(disp, "alpha", "dispersion");
    c.params.delta = require_number(disp, "delta", "dispersion");
    if (!(c.params.beta > 0.0)) throw ConfigInvalid("dispersion.beta must be positive");

    const json& geo = require_object(root, "geometry", "geometry");
    c.ell = require_number(geo, "ell", "geometry");
    c.horizon = require_number(geo, "horizon", "geometry");
    if (!(c.ell > 0.0)) throw ConfigInvalid("geometry.ell must be positive");
    if (!(c.horizon > 0.0)) throw ConfigInvalid("geometry.horizon must be positive");

    const json& data = require_object(root, "data", "data");
    c.data.u0 = parse_preset(data, "u0", true);
    c.data.g0 = parse_preset(data, "g0", true);
    c.data.h0 = parse_preset(data, "h0", true);
    c.data.h1 = parse_preset(data, "h1", true);
    c.data.forcing = parse_preset(data, "forcing", false);
    if (c.data.forcing.kind == "plane_wave") throw ConfigInvalid("data.forcing.preset plane_wave is not a forcing");
    c.data.samples = optional_int(data, "samples", "data", c.data.samples);
    c.data.forcing_nx = optional_int(data, "forcing_nx", "data", c.data.forcing_nx);
    c.data.forcing_nt = optional_int(data, "forcing_nt", "data", c.data.forcing_nt);
    if (c.data.samples < 4) throw ConfigInvalid("data.samples must be at least 4");

    const json& nl = require_object(root, "nonlinearity", "nonlinearity");
    c.kappa = cplx(optional_number(nl, "kappa_re", "nonlinearity", 0.0), optional_number(nl, "kappa_im", "nonlinearity", 0.0));
    c.lambda = optional_number(nl, "lambda", "nonlinearity", 3.0);
    if (!(c.lambda > 1.0)) throw ConfigInvalid("nonlinearity.lambda must exceed 1");

    const json& sol = require_object(root, "solver", "solver");
    SolverSettings& s = c.solver;
    s.grid.nx = optional_int(sol, "nx", "solver", s.grid.nx);
    s.grid.nt = optional_int(sol, "nt", "solver", s.grid.nt);
    if (s.grid.nx < 5) throw ConfigInvalid("solver.nx must be at least 5");
    if (s.grid.nt < 4) throw ConfigInvalid("solver.nt must be at least 4");
    s.budget.contour_nodes = optional_int(sol, "contour_nodes", "solver", s.budget.contour_nodes);
    s.budget.real_axis_window = optional_number(sol, "real_axis_window", "solver", s.budget.real_axis_window);
    s.budget.real_axis_nodes = optional_int(sol, "real_axis_nodes", "solver", s.budget.real_axis_nodes);
    s.budget.tolerance = optional_number(sol, "tolerance", "solver", s.budget.tolerance);
    try {
        s.budget.validate();
    } catch (const ConfigInvalid& e) {
        throw ConfigInvalid(std::string("solver: ") + e.what());
    }
    s.s = optional_number(sol, "s", "solver", s.s);
    if (!(s.s >= 0.0)) throw ConfigInvalid("solver.s must be nonnegative");
    s.picard_max_iter = optional_int(sol, "picard_max_iter", "solver", s.picard_max_iter);
    s.picard_tol = optional_number(sol, "picard_tol", "solver", s.picard_tol);
    if (s.picard_max_iter < 1) throw ConfigInvalid("solver.picard_max_iter must be at least 1");
    if (!(s.picard_tol > 0.0)) throw ConfigInvalid("solver.picard_tol must be positive");
    if (const auto it = sol.find("proxies"); it != sol.end()) {
        if (!it->is_object()) throw ConfigInvalid("solver.proxies must be an object");
        for (const auto& [name, value] : it->items()) s.proxies[name] = number_at(value, "solver.proxies." + name);
    }
    try {
        for (const std::string& name : required_proxies(lifespan_regime(s.s, c.lambda))) {
            if (!s.proxies.count(name)) {
                s.proxies[name] = 1.0;
                s.defaulted_proxies.push_back(name);
            }
        }
    } catch (const ConfigInvalid&) {
        // no lifespan regime at this (s, lambda); the indicator is skipped
    }
    if (const auto it = sol.find("oracle"); it != sol.end()) {
        if (!it->is_object()) throw ConfigInvalid("solver.oracle must be an object");
        const json& o = *it;
        s.oracle.nx = optional_int(o, "nx", "solver.oracle", s.oracle.nx);
        s.oracle.nt = optional_int(o, "nt", "solver.oracle", s.oracle.nt);
        s.oracle.theta = optional_number(o, "theta", "solver.oracle", s.oracle.theta);
        s.oracle.max_sweeps = optional_int(o, "max_sweeps", "solver.oracle", s.oracle.max_sweeps);
        const std::string bc = optional_string(o, "bc_mode", "solver.oracle", "full");
        if (bc == "full") {
            s.oracle.bc_mode = BoundaryMode::FullData;
        } else if (bc == "homogeneous") {
            s.oracle.bc_mode = BoundaryMode::Homogeneous;
        } else {
            throw ConfigInvalid("solver.oracle.bc_mode must be 'full' or 'homogeneous'");
        }
    }
    try {
        s.oracle.validate();
    } catch (const ConfigInvalid& e) {
        throw ConfigInvalid(std::string("solver.oracle: ") + e.what());
    }

    const json& out = require_object(root, "outputs", "outputs");
    c.outputs.directory = optional_string(out, "directory", "outputs", c.outputs.directory);
    if (const auto it = out.find("formats"); it != out.end()) {
        if (!it->is_array()) throw ConfigInvalid("outputs.formats must be an array");
        c.outputs.formats.clear();
        for (const auto& f : *it) {
            if (!f.is_string() || (f != "csv" && f != "json")) {
                throw ConfigInvalid("outputs.formats entries must be 'csv' or 'json'");
            }
            c.outputs.formats.push_back(f.get<std::string>());
        }
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open configuration " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    return parse_config(ss.str(), parent.empty() ? "." : parent.string());
}

ProblemData load_problem(const ScenarioConfig& c) {
    ProblemData d = build_problem(c.params, c.ell, c.horizon, c.data, c.kappa, c.lambda);
    if (c.data.u0.kind == "file") d.u0.samples = load_uniform(resolve(c.base_dir, c.data.u0.path), c.ell, "data.u0");
    const std::pair<TimeSeries*, std::pair<const PresetSpec*, const char*>> series[] = {
        {&d.g0, {&c.data.g0, "data.g0"}},
        {&d.h0, {&c.data.h0, "data.h0"}},
        {&d.h1, {&c.data.h1, "data.h1"}},
    };
    for (const auto& [ts, src] : series) {
        if (src.first->kind == "file") ts->samples = load_uniform(resolve(c.base_dir, src.first->path), c.horizon, src.second);
    }
    if (c.data.forcing.kind == "file") d.forcing = read_field_csv(resolve(c.base_dir, c.data.forcing.path));
    try {
        d.validate();
    } catch (const ConfigInvalid& e) {
        throw ConfigInvalid(std::string("data: ") + e.what());
    }
    return d;
}

ScenarioConfig refine(const ScenarioConfig& config, int level) {
    if (level < 0 || level > 6) throw ConfigInvalid("refine level must lie in [0, 6]");
    ScenarioConfig c = config;
    const int f = 1 << level;
    c.solver.grid.nx = (c.solver.grid.nx - 1) * f + 1;
    c.solver.grid.nt = (c.solver.grid.nt - 1) * f + 1;
    c.solver.oracle.nx *= f;
    c.solver.oracle.nt *= f;
    return c;
}

}  // namespace hnls
