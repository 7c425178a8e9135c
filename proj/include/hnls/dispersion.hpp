#pragma once

#include "hnls/types.hpp"

namespace hnls {

/// Coefficients of the dispersion relation omega(k) = beta k^3 - alpha k^2 - delta k.
struct DispersionParams {
    double beta = 1.0;
    double alpha = 0.0;
    double delta = 0.0;

    /// Throws ConfigInvalid unless beta > 0 and all coefficients are finite.
    void validate() const;
    /// alpha^2 + 3 beta delta.
    double discriminant() const { return alpha * alpha + 3.0 * beta * delta; }
    /// alpha / (3 beta), the centre of the branch-point configuration.
    double center() const { return alpha / (3.0 * beta); }
};

enum class BranchKind { RealPair, Coincident, ImaginaryPair };

struct BranchData {
    double discriminant = 0.0;
    cplx b_minus;
    cplx b_plus;
    BranchKind kind = BranchKind::Coincident;
};

/// The three roots nu of omega(nu) = omega(k): nu0 = k and the two symmetries.
struct SymmetryTriple {
    cplx nu0;
    cplx nu_plus;
    cplx nu_minus;
};

struct MuFactors {
    cplx mu0;       ///< nu_plus - nu_minus
    cplx mu_plus;   ///< nu_minus - nu0
    cplx mu_minus;  ///< nu0 - nu_plus
};

cplx omega(const DispersionParams& p, cplx k);
cplx omega_prime(const DispersionParams& p, cplx k);
BranchData branch_points(const DispersionParams& p);

/// Single-valued square root of (k - c)^2 - 4 D / (9 beta^2), c = alpha/(3 beta).
/// For D > 0 the cut is the real segment [b-, b+]; for D < 0 it is the vertical
/// segment joining the two conjugate branch points. Returns 0 at a branch point
/// and throws BranchCutPoint strictly inside the cut.
cplx branch_sqrt(const DispersionParams& p, cplx k);

SymmetryTriple symmetries(const DispersionParams& p, cplx k);
MuFactors mu_factors(const SymmetryTriple& triple);

}  // namespace hnls
