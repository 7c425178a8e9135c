#include "hnls/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hnls/errors.hpp"

namespace hnls {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
    GaussLegendre gl;
    gl.x.resize(n);
    gl.w.resize(n);
    for (int i = 0; i < n; ++i) {
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &gl.x[i], &gl.w[i], table);
    }
    gsl_integration_glfixed_table_free(table);
    return gl;
}

void append_gl_panel(const GaussLegendre& gl, double a, double b, std::vector<double>& x,
                     std::vector<double>& w) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (size_t i = 0; i < gl.x.size(); ++i) {
        x.push_back(mid + half * gl.x[i]);
        w.push_back(half * gl.w[i]);
    }
}

void exp_moments(cplx z, double u0, double u1, int m, cplx* out) {
    const double umax = std::max(std::abs(u0), std::abs(u1));
    if (std::abs(z) * umax <= static_cast<double>(m) + 2.0) {
        // Power series: sum_n z^n / n! (u1^{n+j+1} - u0^{n+j+1}) / (n+j+1).
        for (int j = 0; j <= m; ++j) out[j] = 0.0;
        std::vector<double> q0(m + 1), q1(m + 1);
        for (int j = 0; j <= m; ++j) {
            q0[j] = std::pow(u0, j + 1);
            q1[j] = std::pow(u1, j + 1);
        }
        cplx term = 1.0;  // z^n / n!
        for (int n = 0; n < 200; ++n) {
            double largest = 0.0;
            for (int j = 0; j <= m; ++j) {
                const cplx c = term * ((q1[j] - q0[j]) / static_cast<double>(n + j + 1));
                out[j] += c;
                largest = std::max(largest, std::abs(c));
                q0[j] *= u0;
                q1[j] *= u1;
            }
            term *= z / static_cast<double>(n + 1);
            if (n > 2 && largest <= 1e-18 * std::abs(out[0])) break;
            if (largest == 0.0 && n > 2) break;
        }
        return;
    }
    const cplx e0 = std::exp(z * u0);
    const cplx e1 = std::exp(z * u1);
    out[0] = (e1 - e0) / z;
    double pw0 = 1.0;
    double pw1 = 1.0;
    for (int j = 1; j <= m; ++j) {
        pw0 *= u0;
        pw1 *= u1;
        out[j] = (pw1 * e1 - pw0 * e0 - static_cast<double>(j) * out[j - 1]) / z;
    }
}

FilonRule::FilonRule(double a, double h, int n_intervals, int degree)
    : a_(a), h_(h), n_(n_intervals), p_(std::min(degree, n_intervals)) {
    if (n_intervals < 1 || !(h > 0.0)) throw std::invalid_argument("FilonRule: empty grid");
    if (p_ < 1) p_ = 1;
    const int full = n_ / p_;
    for (int q = 0; q < full; ++q) panels_.push_back({q * p_, q * p_, (q + 1) * p_});
    if (full * p_ < n_) panels_.push_back({n_ - p_, full * p_, n_});

    Eigen::MatrixXd v(p_ + 1, p_ + 1);
    for (int i = 0; i <= p_; ++i) {
        const double u = static_cast<double>(i) / p_;
        for (int j = 0; j <= p_; ++j) v(i, j) = std::pow(u, j);
    }
    const Eigen::MatrixXd vi = v.inverse();
    vinv_.resize((p_ + 1) * (p_ + 1));
    for (int j = 0; j <= p_; ++j)
        for (int i = 0; i <= p_; ++i) vinv_[j * (p_ + 1) + i] = vi(j, i);
}

void FilonRule::check_guard(cplx kappa) const {
    // |exp(-i kappa s)| = exp(Im(kappa) s); only growth toward either end matters.
    const double growth = std::max(kappa.imag() * a_, kappa.imag() * end());
    if (growth > overflow_guard) {
        throw ExponentialOverflow("transform exponent |Im k| * length exceeds the overflow guard");
    }
}

void FilonRule::local_weights(cplx z, double u0, double u1, cplx* out) const {
    cplx mom[16];
    exp_moments(z, u0, u1, p_, mom);
    const double H = p_ * h_;
    for (int i = 0; i <= p_; ++i) {
        cplx s = 0.0;
        for (int j = 0; j <= p_; ++j) s += mom[j] * vinv_[j * (p_ + 1) + i];
        out[i] = H * s;
    }
}

void FilonRule::weights(cplx kappa, cplx* w) const {
    check_guard(kappa);
    std::fill(w, w + n_ + 1, cplx(0.0));
    const double H = p_ * h_;
    const cplx z = -I * kappa * H;
    cplx full[16];
    local_weights(z, 0.0, 1.0, full);
    for (const Panel& pn : panels_) {
        const cplx phase = std::exp(-I * kappa * (a_ + pn.first * h_));
        if (pn.interval0 == pn.first && pn.interval1 == pn.first + p_) {
            for (int i = 0; i <= p_; ++i) w[pn.first + i] += phase * full[i];
        } else {
            cplx part[16];
            local_weights(z, static_cast<double>(pn.interval0 - pn.first) / p_,
                          static_cast<double>(pn.interval1 - pn.first) / p_, part);
            for (int i = 0; i <= p_; ++i) w[pn.first + i] += phase * part[i];
        }
    }
}

std::vector<cplx> FilonRule::weights(cplx kappa) const {
    std::vector<cplx> w(n_ + 1);
    weights(kappa, w.data());
    return w;
}

cplx FilonRule::integrate(const cplx* f, cplx kappa) const {
    check_guard(kappa);
    const double H = p_ * h_;
    const cplx z = -I * kappa * H;
    cplx full[16];
    local_weights(z, 0.0, 1.0, full);
    // Full panels start at q H, so their phases form the geometric sequence
    // exp(-i kappa a) rho^q; the sum over panels is evaluated by Horner's rule.
    const int n_full = n_ / p_;
    const cplx rho = std::exp(z);
    cplx acc = 0.0;
    for (int q = n_full - 1; q >= 0; --q) {
        const cplx* fq = f + q * p_;
        cplx v = 0.0;
        for (int i = 0; i <= p_; ++i) v += full[i] * fq[i];
        acc = acc * rho + v;
    }
    cplx total = std::exp(-I * kappa * a_) * acc;
    for (const Panel& pn : panels_) {
        if (pn.interval0 == pn.first && pn.interval1 == pn.first + p_) continue;
        cplx part[16];
        local_weights(z, static_cast<double>(pn.interval0 - pn.first) / p_,
                      static_cast<double>(pn.interval1 - pn.first) / p_, part);
        cplx v = 0.0;
        for (int i = 0; i <= p_; ++i) v += part[i] * f[pn.first + i];
        total += std::exp(-I * kappa * (a_ + pn.first * h_)) * v;
    }
    return total;
}

cplx FilonRule::integrate_to(const cplx* f, cplx kappa, double b) const {
    check_guard(kappa);
    const double H = p_ * h_;
    const cplx z = -I * kappa * H;
    const double pos = (b - a_) / h_;
    if (pos <= 0.0) return 0.0;
    cplx total = 0.0;
    cplx lw[16];
    for (const Panel& pn : panels_) {
        const double lo = pn.interval0;
        if (pos <= lo) break;
        const double hi = std::min(static_cast<double>(pn.interval1), pos);
        local_weights(z, (lo - pn.first) / p_, (hi - pn.first) / p_, lw);
        const cplx phase = std::exp(-I * kappa * (a_ + pn.first * h_));
        cplx s = 0.0;
        for (int i = 0; i <= p_; ++i) s += lw[i] * f[pn.first + i];
        total += phase * s;
    }
    return total;
}

void FilonRule::cumulative(const cplx* f, cplx kappa, cplx* out) const {
    check_guard(kappa);
    const double H = p_ * h_;
    const cplx z = -I * kappa * H;
    // Local weights of each elementary interval inside a panel, cached per offset.
    std::vector<cplx> cache(static_cast<size_t>(p_) * (p_ + 1));
    for (int o = 0; o < p_; ++o) {
        local_weights(z, static_cast<double>(o) / p_, static_cast<double>(o + 1) / p_,
                      &cache[static_cast<size_t>(o) * (p_ + 1)]);
    }
    out[0] = 0.0;
    cplx acc = 0.0;
    for (const Panel& pn : panels_) {
        const cplx phase = std::exp(-I * kappa * (a_ + pn.first * h_));
        for (int iv = pn.interval0; iv < pn.interval1; ++iv) {
            const cplx* lw = &cache[static_cast<size_t>(iv - pn.first) * (p_ + 1)];
            cplx s = 0.0;
            for (int i = 0; i <= p_; ++i) s += lw[i] * f[pn.first + i];
            acc += phase * s;
            out[iv + 1] = acc;
        }
    }
}

std::vector<double> FilonRule::real_weights() const {
    const std::vector<cplx> w = weights(0.0);
    std::vector<double> r(w.size());
    for (size_t i = 0; i < w.size(); ++i) r[i] = w[i].real();
    return r;
}

std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& xs, int m) {
    const int n = static_cast<int>(xs.size());
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

cplx uniform_derivative_at(const std::vector<cplx>& f, double h, int i, int order, int width) {
    const int n = static_cast<int>(f.size());
    if (width > n) throw GridTooCoarse("not enough samples for the requested stencil");
    const int lo = std::clamp(i - width / 2, 0, n - width);
    std::vector<double> xs(width);
    for (int j = 0; j < width; ++j) xs[j] = static_cast<double>(lo + j - i);
    const auto c = fornberg_weights(0.0, xs, order);
    cplx s = 0.0;
    for (int j = 0; j < width; ++j) s += c[order][j] * f[lo + j];
    return s / std::pow(h, order);
}

std::vector<cplx> uniform_derivative(const std::vector<cplx>& f, double h, int order, int width) {
    std::vector<cplx> d(f.size());
    for (size_t i = 0; i < f.size(); ++i) d[i] = uniform_derivative_at(f, h, static_cast<int>(i), order, width);
    return d;
}

UniformInterpolator::UniformInterpolator(double a, double h, std::vector<cplx> values, int degree)
    : a_(a), h_(h), v_(std::move(values)), p_(degree) {
    if (v_.size() < 2) throw std::invalid_argument("UniformInterpolator: need at least two samples");
    p_ = std::min<int>(p_, static_cast<int>(v_.size()) - 1);
}

cplx UniformInterpolator::operator()(double s) const {
    const int n = static_cast<int>(v_.size());
    const double pos = (s - a_) / h_;
    const int width = p_ + 1;
    int lo = static_cast<int>(std::floor(pos)) - (width - 1) / 2;
    lo = std::clamp(lo, 0, n - width);
    cplx total = 0.0;
    for (int j = 0; j < width; ++j) {
        double l = 1.0;
        for (int m = 0; m < width; ++m) {
            if (m != j) l *= (pos - (lo + m)) / static_cast<double>(j - m);
        }
        total += l * v_[lo + j];
    }
    return total;
}

ReflectionExtension reflection_extension(int m) {
    ReflectionExtension r;
    const int n = m + 1;
    r.b.resize(n);
    for (int j = 0; j < n; ++j) r.b[j] = std::ldexp(1.0, -j);
    Eigen::MatrixXd v(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
    for (int d = 0; d < n; ++d)
        for (int j = 0; j < n; ++j) v(d, j) = std::pow(-r.b[j], d);
    const Eigen::VectorXd a = v.fullPivLu().solve(rhs);
    r.a.assign(a.data(), a.data() + n);
    return r;
}

double smooth_step_down(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double f = std::exp(-1.0 / (1.0 - s));
    const double g = std::exp(-1.0 / s);
    return f / (f + g);
}

std::vector<double> chebyshev_points(int n, double ell) {
    std::vector<double> x(n);
    const int N = n - 1;
    for (int j = 0; j < n; ++j) x[j] = 0.5 * ell * (1.0 - std::cos(pi * j / N));
    if (n > 0) {
        x.front() = 0.0;
        x.back() = ell;
    }
    return x;
}

cplx chebyshev_interpolate(const std::vector<cplx>& values, double ell, double x) {
    const int n = static_cast<int>(values.size());
    const std::vector<double> xs = chebyshev_points(n, ell);
    cplx num = 0.0;
    double den = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = x - xs[j];
        if (d == 0.0) return values[j];
        double w = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == n - 1) w *= 0.5;
        num += (w / d) * values[j];
        den += w / d;
    }
    return num / den;
}

std::vector<double> clenshaw_curtis_weights(int n, double ell) {
    // Weights on [-1, 1] for x_j = cos(pi j / N), reordered to ascending points.
    const int N = n - 1;
    std::vector<double> w(n, 0.0);
    for (int j = 0; j <= N; ++j) {
        const double theta = pi * j / N;
        double s = 0.0;
        for (int k = 0; k <= N / 2; ++k) {
            double bk = (k == 0 || (N % 2 == 0 && k == N / 2)) ? 1.0 : 2.0;
            s += bk / (1.0 - 4.0 * k * k) * std::cos(2.0 * k * theta);
        }
        const double cj = (j == 0 || j == N) ? 1.0 : 2.0;
        w[j] = cj / N * s;
    }
    // x_j = cos(theta_j) descends; ascending index i = N - j maps to 0.5*ell*(1 - cos(pi i / N)),
    // which equals 0.5*ell*(1 + cos(pi j / N)), so the weight order is reversed and then symmetric.
    std::reverse(w.begin(), w.end());
    for (double& v : w) v *= 0.5 * ell;
    return w;
}

std::vector<cplx> chebyshev_derivative(const std::vector<cplx>& values, double ell) {
    const int n = static_cast<int>(values.size());
    const std::vector<double> xs = chebyshev_points(n, ell);
    std::vector<double> c(n, 1.0);
    c[0] = 2.0;
    c[n - 1] = 2.0;
    std::vector<cplx> d(n, 0.0);
    for (int i = 0; i < n; ++i) {
        cplx diag_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            const double dij = c[i] / c[j] * sign / (xs[i] - xs[j]);
            d[i] += dij * values[j];
            diag_sum += dij;
        }
        d[i] -= diag_sum * values[i];
    }
    return d;
}

}  // namespace hnls
