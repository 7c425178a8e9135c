#pragma once

#include <cstddef>
#include <vector>

#include "hnls/dispersion.hpp"
#include "hnls/types.hpp"

namespace hnls {

enum class GridKind { Uniform, Chebyshev };

/// Complex samples of a function on [0, ell].
struct SpatialProfile {
    double ell = 1.0;
    std::vector<cplx> samples;
    GridKind grid_kind = GridKind::Uniform;

    void validate() const;
    std::vector<double> grid() const;
    /// Value at an arbitrary point of [0, ell] by interpolation of the samples.
    cplx at(double x) const;
};

/// Complex samples of a function on the uniform grid over [0, horizon].
struct TimeSeries {
    double horizon = 1.0;
    std::vector<cplx> samples;

    void validate() const;
    double step() const { return horizon / static_cast<double>(samples.size() - 1); }
    std::vector<double> grid() const;
    cplx at(double t) const;
};

/// Complex field on a rectangular (x, t) grid. Values are stored x-major:
/// value(i, j) is u(x_i, t_j).
struct Field {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<cplx> values;

    Field() = default;
    Field(std::vector<double> xg, std::vector<double> tg);

    std::size_t nx() const { return x.size(); }
    std::size_t nt() const { return t.size(); }
    bool empty() const { return values.empty(); }
    cplx& operator()(std::size_t i, std::size_t j) { return values[i * t.size() + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return values[i * t.size() + j]; }

    /// Spatial slice at time index j.
    std::vector<cplx> slice(std::size_t j) const;
    /// Time series at spatial index i.
    std::vector<cplx> row(std::size_t i) const;
    void validate() const;
};

/// Uniform output grid with nx points over [0, ell] and nt points over [0, T].
struct OutputGrid {
    int nx = 65;
    int nt = 33;
};

std::vector<double> uniform_grid(double a, double b, int n);
Field make_field(double ell, double horizon, const OutputGrid& grid);

/// Data of the forced problem
///   i u_t + i beta u_xxx + alpha u_xx + i delta u_x = f,   0 < x < ell, 0 < t < T,
///   u(x,0) = u0, u(0,t) = g0, u(ell,t) = h0, u_x(ell,t) = h1,
/// together with the power nonlinearity kappa |u|^(lambda-1) u.
struct ProblemData {
    DispersionParams params;
    double ell = 1.0;
    double horizon = 1.0;
    SpatialProfile u0;
    TimeSeries g0;
    TimeSeries h0;
    TimeSeries h1;
    Field forcing;  ///< empty means f = 0
    cplx kappa = 0.0;
    double lambda = 3.0;

    void validate() const;
};

/// Quadrature weights for a sampled grid: composite degree-4 interpolatory
/// weights on uniform grids, trapezoidal weights otherwise.
std::vector<double> grid_weights(const std::vector<double>& g);

/// Discrete L2(x, t) norm.
double l2_xt(const Field& f);
/// Relative L2(x, t) distance ||a - b|| / ||b|| on a shared grid.
double relative_l2(const Field& a, const Field& b);
/// max over t of the L2(0, ell) norm of the slices.
double ct_l2(const Field& f);
/// Largest pointwise modulus.
double sup_abs(const Field& f);

}  // namespace hnls
