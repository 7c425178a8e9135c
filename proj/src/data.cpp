#include "hnls/data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hnls/errors.hpp"
#include "hnls/quadrature.hpp"

namespace hnls {

std::vector<double> uniform_grid(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / static_cast<double>(n - 1);
    if (n > 0) g.back() = b;
    return g;
}

void SpatialProfile::validate() const {
    if (!(ell > 0.0)) throw ConfigInvalid("profile length must be positive");
    if (samples.size() < 4) throw ConfigInvalid("profile needs at least 4 samples");
}

std::vector<double> SpatialProfile::grid() const {
    const int n = static_cast<int>(samples.size());
    return grid_kind == GridKind::Uniform ? uniform_grid(0.0, ell, n) : chebyshev_points(n, ell);
}

cplx SpatialProfile::at(double x) const {
    if (grid_kind == GridKind::Chebyshev) return chebyshev_interpolate(samples, ell, x);
    const double h = ell / static_cast<double>(samples.size() - 1);
    return UniformInterpolator(0.0, h, samples)(x);
}

void TimeSeries::validate() const {
    if (!(horizon > 0.0)) throw ConfigInvalid("time series horizon must be positive");
    if (samples.size() < 4) throw ConfigInvalid("time series needs at least 4 samples");
}

std::vector<double> TimeSeries::grid() const {
    return uniform_grid(0.0, horizon, static_cast<int>(samples.size()));
}

cplx TimeSeries::at(double t) const { return UniformInterpolator(0.0, step(), samples)(t); }

Field::Field(std::vector<double> xg, std::vector<double> tg)
    : x(std::move(xg)), t(std::move(tg)), values(x.size() * t.size(), cplx(0.0)) {}

std::vector<cplx> Field::slice(std::size_t j) const {
    std::vector<cplx> s(nx());
    for (std::size_t i = 0; i < nx(); ++i) s[i] = (*this)(i, j);
    return s;
}

std::vector<cplx> Field::row(std::size_t i) const {
    return std::vector<cplx>(values.begin() + static_cast<std::ptrdiff_t>(i * nt()),
                             values.begin() + static_cast<std::ptrdiff_t>((i + 1) * nt()));
}

void Field::validate() const {
    if (x.size() < 4 || t.size() < 4) throw ConfigInvalid("field grids need at least 4 points each");
    if (values.size() != x.size() * t.size()) throw ConfigInvalid("field value count mismatch");
    for (const cplx& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ConfigInvalid("field contains non-finite values");
        }
    }
}

Field make_field(double ell, double horizon, const OutputGrid& grid) {
    return Field(uniform_grid(0.0, ell, grid.nx), uniform_grid(0.0, horizon, grid.nt));
}

void ProblemData::validate() const {
    params.validate();
    if (!(ell > 0.0) || !(horizon > 0.0)) throw ConfigInvalid("ell and horizon must be positive");
    u0.validate();
    g0.validate();
    h0.validate();
    h1.validate();
    if (std::abs(u0.ell - ell) > 1e-12 * ell) throw ConfigInvalid("u0 length differs from ell");
    for (const TimeSeries* s : {&g0, &h0, &h1}) {
        if (std::abs(s->horizon - horizon) > 1e-12 * horizon) {
            throw ConfigInvalid("boundary series horizon differs from the problem horizon");
        }
    }
    if (!forcing.empty()) {
        forcing.validate();
        if (std::abs(forcing.x.back() - ell) > 1e-12 * ell || std::abs(forcing.t.back() - horizon) > 1e-12 * horizon) {
            throw ConfigInvalid("forcing grid does not cover [0, ell] x [0, T]");
        }
    }
    if (!(lambda > 1.0)) throw ConfigInvalid("nonlinearity.lambda must exceed 1");
}

std::vector<double> grid_weights(const std::vector<double>& g) {
    const std::size_t n = g.size();
    if (n < 2) return std::vector<double>(n, 0.0);
    const double h = (g.back() - g.front()) / static_cast<double>(n - 1);
    bool uniform = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(g[i + 1] - g[i] - h) > 1e-9 * std::abs(h)) uniform = false;
    }
    if (uniform) {
        const int intervals = static_cast<int>(n - 1);
        return FilonRule(g.front(), h, intervals, std::min(4, intervals)).real_weights();
    }
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = g[i + 1] - g[i];
        w[i] += 0.5 * d;
        w[i + 1] += 0.5 * d;
    }
    return w;
}

double l2_xt(const Field& f) {
    const auto wx = grid_weights(f.x);
    const auto wt = grid_weights(f.t);
    double s = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nt(); ++j) s += wx[i] * wt[j] * std::norm(f(i, j));
    return std::sqrt(s);
}

double relative_l2(const Field& a, const Field& b) {
    if (a.values.size() != b.values.size()) throw ConfigInvalid("relative_l2: grid mismatch");
    Field d = a;
    for (std::size_t n = 0; n < d.values.size(); ++n) d.values[n] -= b.values[n];
    const double nb = l2_xt(b);
    return nb > 0.0 ? l2_xt(d) / nb : l2_xt(d);
}

double ct_l2(const Field& f) {
    const auto wx = grid_weights(f.x);
    double best = 0.0;
    for (std::size_t j = 0; j < f.nt(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < f.nx(); ++i) s += wx[i] * std::norm(f(i, j));
        best = std::max(best, std::sqrt(s));
    }
    return best;
}

double sup_abs(const Field& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace hnls
