#pragma once

#include <vector>

#include "hnls/types.hpp"

namespace hnls {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};
GaussLegendre gauss_legendre(int n);

/// Appends the Gauss-Legendre rule mapped to [a, b] to (x, w).
void append_gl_panel(const GaussLegendre& gl, double a, double b, std::vector<double>& x,
                     std::vector<double>& w);

/// Oscillatory quadrature for integrals of exp(-i kappa s) f(s) over a uniform
/// grid s_j = a + j h, j = 0..n. The samples are interpolated by polynomials
/// of the given degree on consecutive panels and each panel integral is
/// evaluated exactly, so the rule stays accurate for any complex kappa.
class FilonRule {
public:
    FilonRule(double a, double h, int n_intervals, int degree = 4);

    int intervals() const { return n_; }
    int samples() const { return n_ + 1; }
    double start() const { return a_; }
    double step() const { return h_; }
    double end() const { return a_ + n_ * h_; }

    /// Weights w with sum_j w_j f_j = integral over the whole grid.
    void weights(cplx kappa, cplx* w) const;
    std::vector<cplx> weights(cplx kappa) const;

    cplx integrate(const cplx* f, cplx kappa) const;
    cplx integrate(const std::vector<cplx>& f, cplx kappa) const { return integrate(f.data(), kappa); }

    /// Integral over [a, b] with a <= b <= end().
    cplx integrate_to(const cplx* f, cplx kappa, double b) const;

    /// out[j] = integral over [a, a + j h] for j = 0..n.
    void cumulative(const cplx* f, cplx kappa, cplx* out) const;

    /// Weights for the real integral of a real-valued sampled function (kappa = 0).
    std::vector<double> real_weights() const;

private:
    struct Panel {
        int first;       // first sample index of the interpolation stencil
        int interval0;   // first interval integrated with this panel
        int interval1;   // one past the last interval integrated with this panel
    };
    void check_guard(cplx kappa) const;
    void local_weights(cplx z, double u0, double u1, cplx* out) const;

    double a_;
    double h_;
    int n_;
    int p_;
    std::vector<Panel> panels_;
    std::vector<double> vinv_;  // (p+1) x (p+1), row j = monomial coefficient j
};

/// Moments integral_{u0}^{u1} exp(z u) u^j du for j = 0..m.
void exp_moments(cplx z, double u0, double u1, int m, cplx* out);

/// Finite-difference weights (Fornberg). Returns c[d][j] for derivative
/// orders d = 0..m at x0 on the points xs.
std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& xs, int m);

/// Derivative of order `order` of uniformly sampled data at every node,
/// using stencils of `width` points shifted inward near the ends.
std::vector<cplx> uniform_derivative(const std::vector<cplx>& f, double h, int order, int width);

/// Derivative of order `order` at grid index `i` using a stencil of `width`
/// points shifted inward near the ends.
cplx uniform_derivative_at(const std::vector<cplx>& f, double h, int i, int order, int width);

/// Local Lagrange interpolation of uniformly sampled data.
class UniformInterpolator {
public:
    UniformInterpolator(double a, double h, std::vector<cplx> values, int degree = 5);
    cplx operator()(double s) const;
    double start() const { return a_; }
    double end() const { return a_ + h_ * (static_cast<double>(v_.size()) - 1.0); }

private:
    double a_;
    double h_;
    std::vector<cplx> v_;
    int p_;
};

/// Coefficients (a_j, b_j) of the reflection extension
/// f(T + s) = sum_j a_j f(T - b_j s) that matches derivatives 0..m at T.
struct ReflectionExtension {
    std::vector<double> a;
    std::vector<double> b;
};
ReflectionExtension reflection_extension(int m);

/// Smooth step equal to 1 for s <= 0 and 0 for s >= 1, flat to all orders at both ends.
double smooth_step_down(double s);

/// Chebyshev-Lobatto points on [0, ell] in ascending order.
std::vector<double> chebyshev_points(int n, double ell);
/// Barycentric interpolation of data given at chebyshev_points(n, ell).
cplx chebyshev_interpolate(const std::vector<cplx>& values, double ell, double x);
/// Clenshaw-Curtis weights for chebyshev_points(n, ell).
std::vector<double> clenshaw_curtis_weights(int n, double ell);
/// Spectral derivative of Chebyshev-Lobatto data.
std::vector<cplx> chebyshev_derivative(const std::vector<cplx>& values, double ell);

}  // namespace hnls
