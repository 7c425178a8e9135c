#include "hnls/nonlinear.hpp"

#include <algorithm>
#include <cmath>

#include "hnls/fd_oracle.hpp"
#include "hnls/norms.hpp"
#include "hnls/quadrature.hpp"

namespace hnls {

namespace {

constexpr double kGrading = 0.15;
constexpr double kSmallestPanel = 1e-16;

// Composite Gauss-Legendre nodes on [a, b] graded geometrically toward `toward`
// (which must be a or b).
void graded_panels(const GaussLegendre& gl, double a, double b, bool toward_a, std::vector<double>& x,
                   std::vector<double>& w) {
    const double len = b - a;
    if (len <= 0.0) return;
    double outer = len;
    while (outer > kSmallestPanel * std::max(1.0, len)) {
        const double inner = outer * kGrading;
        if (toward_a) {
            append_gl_panel(gl, a + inner, a + outer, x, w);
        } else {
            append_gl_panel(gl, b - outer, b - inner, x, w);
        }
        outer = inner;
    }
    if (toward_a) {
        append_gl_panel(gl, a, a + outer, x, w);
    } else {
        append_gl_panel(gl, b - outer, b, x, w);
    }
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

double require(const ProxyMap& proxies, const std::string& name) {
    const auto it = proxies.find(name);
    if (it == proxies.end()) throw MissingProxy("lifespan constant proxy '" + name + "' is not supplied");
    return it->second;
}

}  // namespace

cplx power_term(cplx u, cplx kappa, double lambda) {
    const double r = std::abs(u);
    if (r == 0.0) return 0.0;
    return kappa * std::exp((lambda - 1.0) * std::log(r)) * u;
}

Field apply_nonlinearity(const Field& field, cplx kappa, double lambda) {
    if (!(lambda > 1.0)) throw ConfigInvalid("apply_nonlinearity: lambda must exceed 1");
    Field out = field;
    for (cplx& v : out.values) v = power_term(v, kappa, lambda);
    return out;
}

cplx mvt_rhs(cplx u1, cplx u2, double lambda, int tau_nodes) {
    if (tau_nodes < 2) throw ConfigInvalid("mvt_rhs: tau_nodes must be at least 2");
    const cplx d = u1 - u2;
    if (d == cplx(0.0)) return 0.0;
    const double tau_star = std::clamp(-std::real(std::conj(d) * u2) / std::norm(d), 0.0, 1.0);
    const GaussLegendre gl = gauss_legendre(tau_nodes);
    std::vector<double> x, w;
    graded_panels(gl, 0.0, tau_star, false, x, w);
    graded_panels(gl, tau_star, 1.0, true, x, w);
    double i1 = 0.0;
    cplx i2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const cplx z = u2 + x[j] * d;
        const double r = std::abs(z);
        if (r == 0.0) continue;
        const double p = std::exp((lambda - 1.0) * std::log(r));
        const cplx unit = z / r;
        i1 += w[j] * p;
        i2 += w[j] * p * unit * unit;
    }
    return 0.5 * (lambda + 1.0) * i1 * d + 0.5 * (lambda - 1.0) * i2 * std::conj(d);
}

cplx mvt_gap(cplx u1, cplx u2, double lambda, int tau_nodes) {
    const cplx direct = power_term(u1, 1.0, lambda) - power_term(u2, 1.0, lambda);
    return mvt_rhs(u1, u2, lambda, tau_nodes) - direct;
}

bool CompatibilityReport::all_passed() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
}

CompatibilityReport check_compatibility(const ProblemData& data, double s, double tolerance) {
    const std::vector<cplx>& u = data.u0.samples;
    const int n = static_cast<int>(u.size());
    cplx slope_right;
    if (data.u0.grid_kind == GridKind::Chebyshev) {
        slope_right = chebyshev_derivative(u, data.u0.ell).back();
    } else {
        const double h = data.u0.ell / (n - 1);
        slope_right = uniform_derivative_at(u, h, n - 1, 1, std::min(n, 7));
    }
    const double scale = tolerance * std::max(1.0, max_abs(u));
    auto make = [&](const std::string& name, bool active, cplx a, cplx b) {
        CompatibilityCondition c;
        c.name = name;
        c.active = active;
        c.mismatch = std::abs(a - b);
        c.passed = !active || c.mismatch <= scale;
        return c;
    };
    CompatibilityReport r;
    r.conditions.push_back(make("g0(0) = u0(0)", s > 0.5, data.g0.samples.front(), u.front()));
    r.conditions.push_back(make("h0(0) = u0(ell)", s > 0.5, data.h0.samples.front(), u.back()));
    r.conditions.push_back(make("h1(0) = u0'(ell)", s > 1.5, data.h1.samples.front(), slope_right));
    return r;
}

std::string regime_name(Regime r) { return r == Regime::High ? "high" : "low"; }

Regime lifespan_regime(double s, double lambda) {
    if (s > 0.5 && s <= 2.0 && s != 1.5) return Regime::High;
    if (s >= 0.0 && s < 0.5 && lambda >= 2.0 && lambda <= (7.0 - 2.0 * s) / (1.0 - 2.0 * s)) return Regime::Low;
    throw ConfigInvalid("no well-posedness regime covers s = " + std::to_string(s) +
                        " with lambda = " + std::to_string(lambda));
}

std::vector<std::string> required_proxies(Regime regime) {
    if (regime == Regime::High) return {"c_s", "c_s_lambda", "c1_s_T", "c2_s_T"};
    return {"c_s_lambda", "c2_s_T", "c3_s_2_T", "c3_s_p_T"};
}

LifespanIndicator lifespan_indicator(const ProblemData& data, double s, const ProxyMap& proxies) {
    const double lambda = data.lambda;
    LifespanIndicator out;
    out.regime = lifespan_regime(s, lambda);
    for (const std::string& name : required_proxies(out.regime)) require(proxies, name);
    const double T = data.horizon;
    const double boundary_s = (s + 1.0) / 3.0;
    out.data_norm_sum = sobolev_norm(data.u0, s) + time_sobolev_norm(data.g0, boundary_s) +
                        time_sobolev_norm(data.h0, boundary_s) + time_sobolev_norm(data.h1, s / 3.0);
    const double kappa = std::abs(data.kappa);
    const double growth = std::pow(out.data_norm_sum, lambda - 1.0);
    if (out.regime == Regime::High) {
        const double c2 = proxies.at("c2_s_T");
        const double c_sT = std::max({proxies.at("c1_s_T"), c2, c2 * std::sqrt(T)});
        out.t_exponent = 0.5;
        out.lhs_value = kappa * std::max(proxies.at("c_s"), proxies.at("c_s_lambda")) *
                        std::pow(2.0 * c_sT, lambda) * std::sqrt(T) * growth;
    } else {
        const double c = std::max({proxies.at("c2_s_T"), proxies.at("c3_s_2_T"), proxies.at("c3_s_p_T")});
        out.t_exponent = (7.0 - lambda + 2.0 * s * (lambda - 1.0)) / 6.0;
        out.lhs_value = kappa * proxies.at("c_s_lambda") * std::pow(2.0 * c, lambda) *
                        std::pow(T, out.t_exponent) * growth;
    }
    out.satisfied = out.lhs_value < 1.0;
    return out;
}

PicardResult picard_solve(const ProblemData& data, const OutputGrid& grid, const QuadratureBudget& budget,
                          int max_iter, double tol, bool keep_iterates) {
    if (max_iter < 1) throw ConfigInvalid("picard_solve: max_iter must be at least 1");
    if (!(tol > 0.0)) throw ConfigInvalid("picard_solve: tol must be positive");
    data.validate();
    PicardResult result;
    PicardReport& rep = result.report;
    Field u = solve_full(data, grid, budget);
    if (keep_iterates) rep.iterates.push_back(u);
    ProblemData step = data;
    for (int n = 0; n < max_iter; ++n) {
        if (data.kappa != cplx(0.0)) {
            Field f = apply_nonlinearity(u, data.kappa, data.lambda);
            if (!data.forcing.empty()) {
                const Field base = restrict_to(data.forcing, f.x, f.t);
                for (std::size_t m = 0; m < f.values.size(); ++m) f.values[m] += base.values[m];
            }
            step.forcing = std::move(f);
        }
        Field next = solve_full(step, grid, budget);
        Field diff = next;
        for (std::size_t m = 0; m < diff.values.size(); ++m) diff.values[m] -= u.values[m];
        const double dist = ct_l2(diff);
        if (!rep.distances.empty()) {
            const double prev = rep.distances.back();
            rep.contraction_ratios.push_back(prev > 0.0 ? dist / prev : 0.0);
        }
        rep.distances.push_back(dist);
        rep.iterations = n + 1;
        rep.final_residual = dist;
        u = std::move(next);
        if (keep_iterates) rep.iterates.push_back(u);
        if (dist <= tol) {
            rep.converged = true;
            break;
        }
    }
    result.solution = std::move(u);
    if (!rep.converged) {
        throw PicardNoConvergence("Picard iteration did not reach tolerance in " + std::to_string(max_iter) +
                                      " iterations",
                                  std::move(result));
    }
    return result;
}

double DissipationSeries::identity_residual() const {
    const std::size_t n = t.size();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double dm;
        if (j == 0) {
            dm = (-3.0 * mass[0] + 4.0 * mass[1] - mass[2]) / (t[2] - t[0]);
        } else if (j + 1 == n) {
            dm = (3.0 * mass[n - 1] - 4.0 * mass[n - 2] + mass[n - 3]) / (t[n - 1] - t[n - 3]);
        } else {
            dm = (mass[j + 1] - mass[j - 1]) / (t[j + 1] - t[j - 1]);
        }
        worst = std::max(worst, std::abs(0.5 * dm + boundary_flux[j] - source[j]));
    }
    return worst;
}

double DissipationSeries::max_mass_increase() const {
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < mass.size(); ++j) worst = std::max(worst, mass[j + 1] - mass[j]);
    return worst;
}

DissipationSeries dissipation_audit(const Field& field, const DispersionParams& params, cplx kappa, double lambda,
                                    double tolerance) {
    field.validate();
    const Traces tr = evaluate_traces(field);
    const double bound = tolerance * std::max(sup_abs(field), 1e-300);
    const double ell = field.x.back() - field.x.front();
    for (const TimeSeries* s : {&tr.left_dirichlet, &tr.right_dirichlet}) {
        if (max_abs(s->samples) > bound) throw InhomogeneousBoundary("Dirichlet trace is not zero");
    }
    if (max_abs(tr.right_neumann.samples) * ell > bound) throw InhomogeneousBoundary("Neumann trace is not zero");
    DissipationSeries out;
    out.t = field.t;
    const std::vector<double> wx = grid_weights(field.x);
    const int n = static_cast<int>(field.nx());
    const double h = ell / (n - 1);
    const int width = std::min(n, 7);
    for (std::size_t j = 0; j < field.nt(); ++j) {
        const std::vector<cplx> v = field.slice(j);
        double mass = 0.0;
        cplx src = 0.0;
        for (int i = 0; i < n; ++i) {
            mass += wx[i] * std::norm(v[i]);
            src += wx[i] * std::conj(v[i]) * power_term(v[i], kappa, lambda);
        }
        const cplx ux0 = uniform_derivative_at(v, h, 0, 1, width);
        out.mass.push_back(mass);
        out.boundary_flux.push_back(0.5 * params.beta * std::norm(ux0));
        out.source.push_back(src.imag());
    }
    return out;
}

}  // namespace hnls
