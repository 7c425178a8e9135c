#pragma once

#include <string>
#include <vector>

#include "hnls/data.hpp"
#include "hnls/dispersion.hpp"
#include "hnls/types.hpp"

namespace hnls {

/// Quadrature controls of the transform solver.
struct QuadratureBudget {
    int contour_nodes = 16;         ///< Gauss-Legendre order per panel on contour segments
    double real_axis_window = 0.0;  ///< 0 selects adaptive truncation; > 0 fixes |k - c| <= window
    int real_axis_nodes = 16;       ///< Gauss-Legendre order per panel on the real axis
    double tolerance = 1e-10;       ///< truncation threshold relative to the data scale

    void validate() const;
};

/// Truncation record of one marched segment (id 0 and 10 are the two real half-lines).
struct SegmentReport {
    int id = 0;
    double reach = 0.0;  ///< |k - c| at the last node panel edge
    int nodes = 0;
    bool tolerance_met = true;
    double tail_ratio = 0.0;  ///< tail density over the previous window
};

struct SolveDiagnostics {
    double arc_radius = 0.0;
    double phi0 = 0.0;
    double extended_horizon = 0.0;
    int corner_order = 0;
    long total_nodes = 0;
    double max_arc_growth = 1.0;  ///< largest |exp(i omega t)| on the arcs
    bool tolerance_met = true;
    std::vector<SegmentReport> segments;
};

/// Solution of the forced linear problem by the transform formula.
Field solve_full(const ProblemData& data, const OutputGrid& grid, const QuadratureBudget& budget,
                 SolveDiagnostics* diagnostics = nullptr);

/// Problem with zero initial datum, zero left datum and no forcing; psi0 and
/// psi1 are the Dirichlet and Neumann data at x = ell.
Field solve_reduced(const DispersionParams& params, double ell, const TimeSeries& psi0, const TimeSeries& psi1,
                    const OutputGrid& grid, const QuadratureBudget& budget,
                    SolveDiagnostics* diagnostics = nullptr);

/// Size of the data, used to normalise residuals and truncation thresholds:
/// ell sup|u0| + T (sup|g0| + sup|h0| + sup|h1|) + ell T sup|f|.
double data_scale(const ProblemData& data);

/// Largest mismatch, over the samples k and the field times, of the identity
///   exp(-i omega t) u_hat(k, t) = u0_hat(k) + int_0^t exp(-i omega s) (B(k, s) - i f_hat(k, s)) ds,
/// where B collects the boundary values at both ends. u(0), u(ell), u_x(ell)
/// come from the data and u_x(0), u_xx(0), u_xx(ell) from the field by
/// one-sided differences. Normalised by data_scale.
double global_relation_residual(const Field& field, const ProblemData& data, const std::vector<cplx>& k_samples);

struct Traces {
    TimeSeries left_dirichlet;
    TimeSeries right_dirichlet;
    TimeSeries right_neumann;
};
/// Boundary traces of a field on a uniform x grid; the Neumann trace uses a
/// fourth-order one-sided difference.
Traces evaluate_traces(const Field& field);

}  // namespace hnls
