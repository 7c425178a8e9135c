#pragma once

#include "hnls/data.hpp"

namespace hnls {

enum class BoundaryMode { FullData, Homogeneous };

struct OracleConfig {
    int nx = 256;        ///< spatial intervals; the field has nx + 1 points
    int nt = 256;        ///< time steps; the field has nt + 1 points
    double theta = 0.55; ///< implicitness weight in [1/2, 1]
    BoundaryMode bc_mode = BoundaryMode::FullData;
    int max_sweeps = 5;  ///< fixed-point sweeps per step for the nonlinear term

    void validate() const;
};

/// Finite-difference solution of
///   i u_t + i beta u_xxx + alpha u_xx + i delta u_x = f + kappa |u|^(lambda-1) u
/// with u(0) = g0, u(ell) = h0, u_x(ell) = h1. Seven-point stencils shifted
/// inward near the ends, a ghost value beyond x = ell fixed by the Neumann
/// condition, theta-weighted time stepping with one banded factorisation.
/// Throws StepDiverged when the per-step fixed-point sweeps stop contracting.
Field oracle_solve(const ProblemData& data, const OracleConfig& config);

/// Restriction of a field to the points of a coarser grid whose nodes are a
/// subset of the fine grid (throws ConfigInvalid otherwise).
Field restrict_to(const Field& fine, const std::vector<double>& x, const std::vector<double>& t);

}  // namespace hnls
