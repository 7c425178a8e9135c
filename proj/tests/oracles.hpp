#pragma once

// Independent reference values used by the tests. Nothing here calls the
// library: every quantity is a closed form or a direct evaluation.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

/// beta k^3 - alpha k^2 - delta k by plain complex multiplication.
inline cplx cubic(double beta, double alpha, double delta, cplx k) {
    return beta * k * k * k - alpha * k * k - delta * k;
}

/// Integral of exp(-i k x) exp(i a x) over [0, ell].
inline cplx fourier_of_exponential(double a, double ell, cplx k) {
    const cplx d = I * (a - k);
    if (std::abs(d) < 1e-14) return ell;
    return (std::exp(d * ell) - 1.0) / d;
}

/// Integral of exp(-i w s) s over [0, t] from the antiderivative exp(-i w s)(i s / w + 1 / w^2).
inline cplx tilde_of_identity(cplx w, double t) {
    const auto F = [&](double s) { return std::exp(-I * w * s) * (I * s / w + 1.0 / (w * w)); };
    return F(t) - F(0.0);
}

/// Integral of exp(-i w s) exp(i b s) over [0, t].
inline cplx tilde_of_exponential(double b, cplx w, double t) {
    const cplx d = I * (b - w);
    if (std::abs(d) < 1e-14) return t;
    return (std::exp(d * t) - 1.0) / d;
}

/// Exact plane wave exp(i (a x + w t)).
inline cplx plane_wave(double a, double w, double x, double t) { return std::exp(I * (a * x + w * t)); }

/// Composite Simpson rule for a real integrand on [a, b] with n (even) intervals.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Least-squares slope of log(err) against log(h).
inline double convergence_rate(const std::vector<double>& h, const std::vector<double>& err) {
    const std::size_t n = h.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(h[i]);
        my += std::log(err[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (std::log(h[i]) - mx) * (std::log(err[i]) - my);
        sxx += (std::log(h[i]) - mx) * (std::log(h[i]) - mx);
    }
    return sxy / sxx;
}

/// Uniformly random complex number in the square [-r, r]^2.
inline cplx random_cplx(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> u(-r, r);
    const double re = u(rng);
    return {re, u(rng)};
}

}  // namespace oracle
