#include "hnls/norms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

#include "hnls/errors.hpp"
#include "hnls/quadrature.hpp"

namespace hnls {

namespace {

constexpr int kReflectionOrder = 4;
constexpr int kMinUniformIntervals = 512;

bool is_integer(double s) { return std::abs(s - std::round(s)) < 1e-12; }

double lp_weighted(const std::vector<double>& w, const std::vector<cplx>& v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const cplx& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::norm(v[i]);
        return std::sqrt(s);
    }
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::pow(std::abs(v[i]), p);
    return std::pow(s, 1.0 / p);
}

double lp_on_grid(const std::vector<double>& x, const std::vector<cplx>& v, double p) {
    return lp_weighted(grid_weights(x), v, p);
}

// Quadrature weights matching the sample layout of a profile.
std::vector<double> profile_weights(const SpatialProfile& profile) {
    if (profile.grid_kind == GridKind::Chebyshev) {
        return clenshaw_curtis_weights(static_cast<int>(profile.samples.size()), profile.ell);
    }
    return grid_weights(profile.grid());
}

// Samples on a uniform grid over [0, ell]; Chebyshev data are resampled.
std::vector<cplx> uniform_samples(const SpatialProfile& profile) {
    if (profile.grid_kind == GridKind::Uniform) return profile.samples;
    const int n = std::max(kMinUniformIntervals, 4 * static_cast<int>(profile.samples.size())) + 1;
    const std::vector<double> x = uniform_grid(0.0, profile.ell, n);
    std::vector<cplx> v(n);
    for (int i = 0; i < n; ++i) v[i] = chebyshev_interpolate(profile.samples, profile.ell, x[i]);
    return v;
}

// Coefficients c_m of the discrete Fourier series of one period of samples,
// normalized so that f_j = sum_m c_m exp(2 pi i m j / N).
std::vector<cplx> fourier_coefficients(const std::vector<cplx>& f) {
    const int n = static_cast<int>(f.size());
    std::vector<cplx> in(f), out(n);
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    for (cplx& c : out) c /= static_cast<double>(n);
    return out;
}

std::vector<cplx> synthesize(const std::vector<cplx>& c) {
    const int n = static_cast<int>(c.size());
    std::vector<cplx> in(c), out(n);
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

// Wavenumber of coefficient index m for a period of length L sampled at n points.
double wavenumber(int m, int n, double period) {
    const int mm = (m <= n / 2) ? m : m - n;
    return 2.0 * pi * mm / period;
}

double integer_sobolev(const SpatialProfile& profile, int order) {
    const std::vector<double> w = profile_weights(profile);
    std::vector<cplx> d = profile.samples;
    const int n = static_cast<int>(d.size());
    double total = lp_weighted(w, d, 2.0);
    if (order == 0) return total;
    if (profile.grid_kind == GridKind::Chebyshev) {
        for (int j = 1; j <= order; ++j) {
            d = chebyshev_derivative(d, profile.ell);
            total += lp_weighted(w, d, 2.0);
        }
        return total;
    }
    const double h = profile.ell / (n - 1);
    for (int j = 1; j <= order; ++j) {
        const int width = std::min(n, j + 8);
        if (width <= j) throw GridTooCoarse("too few samples for the requested derivative order");
        total += lp_weighted(w, uniform_derivative(profile.samples, h, j, width), 2.0);
    }
    return total;
}

}  // namespace

void NormSpec::validate() const {
    if (!(s >= 0.0)) throw ConfigInvalid("norm order s must be nonnegative");
    if (!(p >= 2.0)) throw ConfigInvalid("norm exponent p must lie in [2, infinity]");
    if (!(q >= 2.0)) throw ConfigInvalid("norm exponent q must lie in [2, infinity]");
}

std::vector<cplx> extend_periodic(const std::vector<cplx>& samples) {
    const int m = static_cast<int>(samples.size()) - 1;
    if (m < 4) throw GridTooCoarse("extension needs at least 5 samples");
    const double h = 1.0 / m;  // unit interval; the extension is scale free
    const UniformInterpolator phi(0.0, h, samples);
    const ReflectionExtension refl = reflection_extension(kReflectionOrder);
    std::vector<cplx> e(4 * static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j <= m; ++j) e[m + j] = samples[j];
    for (int j = 1; j <= m; ++j) {
        const double s = j * h;
        const double taper = smooth_step_down(s);
        if (taper == 0.0) continue;
        cplx right = 0.0, left = 0.0;
        for (std::size_t i = 0; i < refl.a.size(); ++i) {
            right += refl.a[i] * phi(1.0 - refl.b[i] * s);
            left += refl.a[i] * phi(refl.b[i] * s);
        }
        e[2 * m + j] = taper * right;
        e[m - j] = taper * left;
    }
    return e;
}

double lp_norm(const SpatialProfile& profile, double p) {
    profile.validate();
    return lp_weighted(profile_weights(profile), profile.samples, p);
}

double sobolev_norm(const SpatialProfile& profile, double s) {
    profile.validate();
    if (!(s >= 0.0)) throw ConfigInvalid("sobolev_norm: s must be nonnegative");
    if (is_integer(s)) return integer_sobolev(profile, static_cast<int>(std::lround(s)));
    const std::vector<cplx> e = extend_periodic(uniform_samples(profile));
    const std::vector<cplx> c = fourier_coefficients(e);
    const int n = static_cast<int>(c.size());
    const double period = 4.0 * profile.ell;
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
        const double k = wavenumber(m, n, period);
        sum += std::pow(1.0 + k * k, s) * std::norm(c[m]);
    }
    return std::sqrt(period * sum);
}

double bessel_norm(const SpatialProfile& profile, double s, double p) {
    profile.validate();
    if (!(s >= 0.0)) throw ConfigInvalid("bessel_norm: s must be nonnegative");
    if (!(p >= 2.0)) throw ConfigInvalid("bessel_norm: p must lie in [2, infinity]");
    const std::vector<cplx> u = uniform_samples(profile);
    const int m = static_cast<int>(u.size()) - 1;
    std::vector<cplx> c = fourier_coefficients(extend_periodic(u));
    const int n = static_cast<int>(c.size());
    const double period = 4.0 * profile.ell;
    for (int j = 0; j < n; ++j) {
        const double k = wavenumber(j, n, period);
        c[j] *= std::pow(1.0 + k * k, 0.5 * s);
    }
    const std::vector<cplx> g = synthesize(c);
    const std::vector<cplx> restricted(g.begin() + m, g.begin() + 2 * m + 1);
    return lp_on_grid(uniform_grid(0.0, profile.ell, m + 1), restricted, p);
}

double spatial_norm(const SpatialProfile& profile, const NormSpec& spec) {
    spec.validate();
    if (spec.kind == NormKind::BesselInterval || spec.p != 2.0) return bessel_norm(profile, spec.s, spec.p);
    return sobolev_norm(profile, spec.s);
}

double time_sobolev_norm(const TimeSeries& series, double s) {
    series.validate();
    return sobolev_norm(SpatialProfile{series.horizon, series.samples, GridKind::Uniform}, s);
}

double mixed_norm(const Field& field, double q, const NormSpec& spatial) {
    if (!(q >= 2.0)) throw ConfigInvalid("mixed_norm: q must lie in [2, infinity]");
    spatial.validate();
    field.validate();
    const double ell = field.x.back();
    if (field.x.front() != 0.0) throw ConfigInvalid("mixed_norm: x grid must start at 0");
    const double h = ell / static_cast<double>(field.nx() - 1);
    for (std::size_t i = 0; i < field.nx(); ++i) {
        if (std::abs(field.x[i] - i * h) > 1e-9 * ell) throw ConfigInvalid("mixed_norm: x grid must be uniform");
    }
    const bool plain_l2 = spatial.s == 0.0 && spatial.p == 2.0;
    std::vector<double> per_slice(field.nt());
    for (std::size_t j = 0; j < field.nt(); ++j) {
        const std::vector<cplx> v = field.slice(j);
        per_slice[j] = plain_l2 ? lp_on_grid(field.x, v, 2.0)
                                : spatial_norm(SpatialProfile{ell, v, GridKind::Uniform}, spatial);
    }
    if (std::isinf(q)) return *std::max_element(per_slice.begin(), per_slice.end());
    const std::vector<double> wt = grid_weights(field.t);
    double sum = 0.0;
    for (std::size_t j = 0; j < field.nt(); ++j) sum += wt[j] * std::pow(per_slice[j], q);
    return std::pow(sum, 1.0 / q);
}

bool check_admissible_pair(double q, double p) {
    if (!(q >= 2.0) || !(p >= 2.0)) return false;
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    return std::abs(3.0 * inv_q + inv_p - 0.5) <= 1e-12;
}

}  // namespace hnls
