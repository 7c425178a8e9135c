#pragma once

#include <vector>

#include "hnls/data.hpp"
#include "hnls/dispersion.hpp"
#include "hnls/quadrature.hpp"
#include "hnls/types.hpp"

namespace hnls {

/// Finite-interval Fourier transform  phi_hat(k) = int_0^ell exp(-i k x) phi(x) dx.
/// Chebyshev data are resampled onto a fine uniform grid once at construction;
/// the integral is then evaluated by exact-moment panel quadrature, which is
/// accurate for any complex k.
class IntervalFourier {
public:
    explicit IntervalFourier(const SpatialProfile& profile);
    cplx operator()(cplx k) const;
    const FilonRule& rule() const { return rule_; }
    const std::vector<cplx>& uniform_samples() const { return samples_; }

private:
    double ell_;
    std::vector<cplx> samples_;
    FilonRule rule_;
};

/// phi_hat(k). Throws ExponentialOverflow when |Im k| ell exceeds the guard.
cplx interval_fourier(const SpatialProfile& profile, cplx k);

/// Truncated time transform  int_0^{t_upper} exp(-i w t) phi(t) dt.
cplx tilde_transform(const TimeSeries& series, cplx w, double t_upper);

/// int_0^{t_upper} exp(-i w t) f_hat(k, t) dt for slices f_hat(k, t_j) on the
/// uniform grid over [0, horizon].
cplx forcing_transform(const std::vector<cplx>& f_hat_slices, double horizon, cplx w, double t_upper);

/// The same quantity computed from the forcing field: each time slice is
/// transformed in x at k and the result integrated in t.
cplx forcing_transform(const Field& forcing, cplx k, cplx w, double t_upper);

/// Laplace transform  L phi(x) = int_0^R exp(-r x) phi(r) dr of samples on
/// the uniform grid over [0, R]; phi is taken to vanish beyond R.
class LaplaceTransform {
public:
    LaplaceTransform(double r_max, std::vector<cplx> samples);
    cplx operator()(double x) const;
    /// L2(0, infinity) norm of L phi by Gauss-Legendre panels after the
    /// substitution x = s / (R (1 - s)).
    double l2_norm(int panels = 400, int order = 16) const;
    /// L2(0, R) norm of phi itself.
    double input_l2_norm() const;

private:
    double r_max_;
    std::vector<cplx> samples_;
    FilonRule rule_;
};

/// Scan behind the bound (1 + r^2)^3 <= c (1 + omega(r)^2) on real r.
struct RtotauScan {
    double r1 = 0.0;         ///< largest scanned |r| with 1 + omega^2 < beta^2 (1 + r^2)^3 / 2
    double constant = 0.0;   ///< max{2 / beta^2, (1 + r1^2)^3}
    double sup_ratio = 0.0;  ///< largest observed (1 + r^2)^3 / (1 + omega(r)^2)
    double argmax = 0.0;
    int samples = 0;
};
RtotauScan rtotau_scan(const DispersionParams& p, double r_range = 1e3, int samples = 2000001);

}  // namespace hnls
