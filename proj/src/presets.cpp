#include "hnls/presets.hpp"

#include <cmath>

#include "hnls/errors.hpp"

namespace hnls {

void PresetSpec::validate(const std::string& field) const {
    if (kind == "zero" || kind == "file") {
        if (kind == "file" && path.empty()) throw ConfigInvalid(field + ".path is required for file data");
        return;
    }
    if (kind == "plane_wave") {
        if (!std::isfinite(a)) throw ConfigInvalid(field + ".a must be finite");
    } else if (kind == "gaussian") {
        if (!(width > 0.0)) throw ConfigInvalid(field + ".width must be positive");
    } else if (kind == "bump") {
        if (!(hi > lo)) throw ConfigInvalid(field + ".hi must exceed " + field + ".lo");
    } else {
        throw ConfigInvalid(field + ".preset '" + kind + "' is unknown");
    }
    if (!std::isfinite(amplitude)) throw ConfigInvalid(field + ".amplitude must be finite");
}

double unit_bump(double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    const double z = 2.0 * y - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

cplx preset_value(const PresetSpec& spec, DataRole role, double s, const DispersionParams& params, double ell) {
    if (spec.kind == "zero") return 0.0;
    if (spec.kind == "gaussian") {
        const double z = (s - spec.center) / spec.width;
        return spec.amplitude * std::exp(-z * z);
    }
    if (spec.kind == "bump") return spec.amplitude * unit_bump((s - spec.lo) / (spec.hi - spec.lo));
    if (spec.kind == "plane_wave") {
        const double w = omega(params, spec.a).real();
        switch (role) {
            case DataRole::Initial:
                return spec.amplitude * std::exp(I * spec.a * s);
            case DataRole::Left:
                return spec.amplitude * std::exp(I * w * s);
            case DataRole::Right:
                return spec.amplitude * std::exp(I * (spec.a * ell + w * s));
            case DataRole::RightNeumann:
                return spec.amplitude * I * spec.a * std::exp(I * (spec.a * ell + w * s));
            case DataRole::Forcing:
                break;
        }
        throw ConfigInvalid("plane_wave is not a forcing preset");
    }
    throw ConfigInvalid("preset '" + spec.kind + "' has no analytic value");
}

ProblemData build_problem(const DispersionParams& params, double ell, double horizon, const DataSpec& spec,
                          cplx kappa, double lambda) {
    if (spec.samples < 4) throw ConfigInvalid("data.samples must be at least 4");
    ProblemData d;
    d.params = params;
    d.ell = ell;
    d.horizon = horizon;
    d.kappa = kappa;
    d.lambda = lambda;
    const int n = spec.samples;
    d.u0.ell = ell;
    if (spec.u0.kind != "file") {
        for (double x : uniform_grid(0.0, ell, n)) d.u0.samples.push_back(preset_value(spec.u0, DataRole::Initial, x, params, ell));
    }
    const std::pair<TimeSeries*, std::pair<const PresetSpec*, DataRole>> series[] = {
        {&d.g0, {&spec.g0, DataRole::Left}},
        {&d.h0, {&spec.h0, DataRole::Right}},
        {&d.h1, {&spec.h1, DataRole::RightNeumann}},
    };
    for (const auto& [ts, src] : series) {
        ts->horizon = horizon;
        if (src.first->kind == "file") continue;
        for (double t : uniform_grid(0.0, horizon, n)) ts->samples.push_back(preset_value(*src.first, src.second, t, params, ell));
    }
    if (spec.forcing.kind != "zero" && spec.forcing.kind != "file") {
        if (spec.forcing_nx < 4 || spec.forcing_nt < 4) throw ConfigInvalid("data.forcing grid needs at least 4 points per axis");
        d.forcing = Field(uniform_grid(0.0, ell, spec.forcing_nx), uniform_grid(0.0, horizon, spec.forcing_nt));
        for (std::size_t i = 0; i < d.forcing.nx(); ++i) {
            const cplx v = preset_value(spec.forcing, DataRole::Forcing, d.forcing.x[i], params, ell);
            for (std::size_t j = 0; j < d.forcing.nt(); ++j) d.forcing(i, j) = v;
        }
    }
    return d;
}

ProblemData plane_wave_problem(const DispersionParams& params, double a, double ell, double horizon, int samples) {
    DataSpec s;
    s.samples = samples;
    PresetSpec pw;
    pw.kind = "plane_wave";
    pw.a = a;
    s.u0 = s.g0 = s.h0 = s.h1 = pw;
    return build_problem(params, ell, horizon, s);
}

ProblemData gaussian_problem(const DispersionParams& params, double ell, double horizon, double center,
                             double width, int samples) {
    DataSpec s;
    s.samples = samples;
    s.u0.kind = "gaussian";
    s.u0.center = center;
    s.u0.width = width;
    return build_problem(params, ell, horizon, s);
}

ProblemData bump_problem(const DispersionParams& params, double ell, double horizon, int samples) {
    DataSpec s;
    s.samples = samples;
    s.u0.kind = "bump";
    s.u0.lo = 0.0;
    s.u0.hi = ell;
    s.g0.kind = "bump";
    s.g0.lo = 0.1 * horizon;
    s.g0.hi = 0.6 * horizon;
    s.h0.kind = "bump";
    s.h0.amplitude = 0.5;
    s.h0.lo = 0.2 * horizon;
    s.h0.hi = 0.9 * horizon;
    s.h1.kind = "bump";
    s.h1.amplitude = 0.25;
    s.h1.lo = 0.3 * horizon;
    s.h1.hi = horizon;
    return build_problem(params, ell, horizon, s);
}

}  // namespace hnls
