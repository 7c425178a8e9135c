#include "hnls/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "hnls/errors.hpp"

namespace hnls {

namespace {

int filon_degree(int intervals) { return std::min(4, intervals); }

std::vector<cplx> resample_uniform(const SpatialProfile& profile) {
    if (profile.grid_kind == GridKind::Uniform) return profile.samples;
    const int n = static_cast<int>(profile.samples.size()) - 1;
    const int m = std::max(256, 8 * n);
    std::vector<cplx> out(m + 1);
    for (int j = 0; j <= m; ++j) {
        out[j] = chebyshev_interpolate(profile.samples, profile.ell, profile.ell * j / m);
    }
    return out;
}

FilonRule rule_for(double length, std::size_t samples) {
    const int n = static_cast<int>(samples) - 1;
    return FilonRule(0.0, length / n, n, filon_degree(n));
}

}  // namespace

IntervalFourier::IntervalFourier(const SpatialProfile& profile)
    : ell_(profile.ell),
      samples_((profile.validate(), resample_uniform(profile))),
      rule_(rule_for(profile.ell, samples_.size())) {}

cplx IntervalFourier::operator()(cplx k) const {
    if (std::abs(k.imag()) * ell_ > overflow_guard) {
        throw ExponentialOverflow("interval_fourier: |Im k| ell exceeds the overflow guard");
    }
    return rule_.integrate(samples_, k);
}

cplx interval_fourier(const SpatialProfile& profile, cplx k) { return IntervalFourier(profile)(k); }

cplx tilde_transform(const TimeSeries& series, cplx w, double t_upper) {
    series.validate();
    return forcing_transform(series.samples, series.horizon, w, t_upper);
}

cplx forcing_transform(const std::vector<cplx>& f_hat_slices, double horizon, cplx w, double t_upper) {
    if (f_hat_slices.size() < 2 || !(horizon > 0.0)) {
        throw ConfigInvalid("forcing_transform: need at least two time samples and a positive horizon");
    }
    if (t_upper < 0.0 || t_upper > horizon * (1.0 + 1e-12)) {
        throw ConfigInvalid("tilde_transform: t_upper must lie in [0, horizon]");
    }
    if (std::abs(w.imag()) * t_upper > overflow_guard) {
        throw ExponentialOverflow("tilde_transform: |Im w| t exceeds the overflow guard");
    }
    const FilonRule rule = rule_for(horizon, f_hat_slices.size());
    return rule.integrate_to(f_hat_slices.data(), w, std::min(t_upper, horizon));
}

cplx forcing_transform(const Field& forcing, cplx k, cplx w, double t_upper) {
    if (forcing.empty()) return 0.0;
    forcing.validate();
    const double ell = forcing.x.back() - forcing.x.front();
    const FilonRule rx = rule_for(ell, forcing.nx());
    if (std::abs(k.imag()) * ell > overflow_guard) {
        throw ExponentialOverflow("forcing_transform: |Im k| ell exceeds the overflow guard");
    }
    const std::vector<cplx> wx = rx.weights(k);
    std::vector<cplx> slices(forcing.nt(), 0.0);
    for (std::size_t i = 0; i < forcing.nx(); ++i) {
        for (std::size_t j = 0; j < forcing.nt(); ++j) slices[j] += wx[i] * forcing(i, j);
    }
    return forcing_transform(slices, forcing.t.back() - forcing.t.front(), w, t_upper);
}

LaplaceTransform::LaplaceTransform(double r_max, std::vector<cplx> samples)
    : r_max_(r_max), samples_(std::move(samples)), rule_(rule_for(r_max, samples_.size())) {
    if (!(r_max > 0.0) || samples_.size() < 5) {
        throw ConfigInvalid("laplace_transform: need r_max > 0 and at least five samples");
    }
}

cplx LaplaceTransform::operator()(double x) const {
    if (x < 0.0) throw ConfigInvalid("laplace_transform: x must be nonnegative");
    // exp(-r x) = exp(-i kappa r) with kappa = -i x.
    return rule_.integrate(samples_, cplx(0.0, -x));
}

double LaplaceTransform::l2_norm(int panels, int order) const {
    const GaussLegendre gl = gauss_legendre(order);
    std::vector<double> s, w;
    for (int p = 0; p < panels; ++p) {
        append_gl_panel(gl, static_cast<double>(p) / panels, static_cast<double>(p + 1) / panels, s, w);
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double x = s[j] / (r_max_ * (1.0 - s[j]));
        const double jac = 1.0 / (r_max_ * (1.0 - s[j]) * (1.0 - s[j]));
        acc += w[j] * jac * std::norm((*this)(x));
    }
    return std::sqrt(acc);
}

double LaplaceTransform::input_l2_norm() const {
    const std::vector<double> w = rule_.real_weights();
    double acc = 0.0;
    for (std::size_t j = 0; j < samples_.size(); ++j) acc += w[j] * std::norm(samples_[j]);
    return std::sqrt(std::max(acc, 0.0));
}

RtotauScan rtotau_scan(const DispersionParams& p, double r_range, int samples) {
    p.validate();
    if (samples < 3) throw ConfigInvalid("rtotau_scan: need at least three samples");
    RtotauScan out;
    out.samples = samples;
    for (int j = 0; j < samples; ++j) {
        const double r = -r_range + 2.0 * r_range * j / (samples - 1);
        const double w = omega(p, r).real();
        const double lhs = std::pow(1.0 + r * r, 3);
        const double rhs = 1.0 + w * w;
        if (rhs < 0.5 * p.beta * p.beta * lhs) out.r1 = std::max(out.r1, std::abs(r));
        const double ratio = lhs / rhs;
        if (ratio > out.sup_ratio) {
            out.sup_ratio = ratio;
            out.argmax = r;
        }
    }
    out.constant = std::max(2.0 / (p.beta * p.beta), std::pow(1.0 + out.r1 * out.r1, 3));
    return out;
}

}  // namespace hnls
