#pragma once

#include <map>
#include <string>
#include <vector>

#include "hnls/data.hpp"
#include "hnls/errors.hpp"
#include "hnls/linear_solver.hpp"
#include "hnls/types.hpp"

namespace hnls {

/// kappa |u|^(lambda-1) u, with 0 mapped to 0.
cplx power_term(cplx u, cplx kappa, double lambda);

/// Pointwise power nonlinearity of a field.
Field apply_nonlinearity(const Field& field, cplx kappa, double lambda);

/// Right side of the mean value identity
///   |u1|^(l-1) u1 - |u2|^(l-1) u2
///     = (l+1)/2 (int_0^1 |Z|^(l-1) dtau) (u1 - u2) + (l-1)/2 (int_0^1 |Z|^(l-3) Z^2 dtau) conj(u1 - u2),
/// Z = tau u1 + (1 - tau) u2, by composite Gauss-Legendre quadrature graded
/// toward the point of the segment closest to the origin.
cplx mvt_rhs(cplx u1, cplx u2, double lambda, int tau_nodes = 16);

/// mvt_rhs minus the direct difference |u1|^(l-1) u1 - |u2|^(l-1) u2.
cplx mvt_gap(cplx u1, cplx u2, double lambda, int tau_nodes = 16);

struct CompatibilityCondition {
    std::string name;
    bool active = false;  ///< whether the regularity s requires the condition
    double mismatch = 0.0;
    bool passed = true;  ///< inactive conditions always pass
};

struct CompatibilityReport {
    std::vector<CompatibilityCondition> conditions;
    bool all_passed() const;
};

/// Corner conditions g0(0) = u0(0), h0(0) = u0(ell) for s > 1/2 and
/// h1(0) = u0'(ell) for s > 3/2. A condition passes when its mismatch is at
/// most tolerance * max(1, sup|u0|).
CompatibilityReport check_compatibility(const ProblemData& data, double s, double tolerance = 1e-6);

enum class Regime { High, Low };
std::string regime_name(Regime r);

using ProxyMap = std::map<std::string, double>;

struct LifespanIndicator {
    Regime regime = Regime::High;
    double lhs_value = 0.0;
    bool satisfied = true;
    double t_exponent = 0.5;      ///< power of T in the condition
    double data_norm_sum = 0.0;   ///< ||u0||_{H^s} + ||g0|| + ||h0|| + ||h1|| in the boundary spaces
};

/// Regime selected by s and lambda; throws ConfigInvalid when neither applies.
Regime lifespan_regime(double s, double lambda);

/// Proxy names required by a regime: c_s, c_s_lambda, c1_s_T, c2_s_T for the
/// high regime; c_s_lambda, c2_s_T, c3_s_2_T, c3_s_p_T for the low regime.
std::vector<std::string> required_proxies(Regime regime);

/// Left side of the short-time condition evaluated with the proxy constants.
/// Throws MissingProxy when a required constant is absent.
LifespanIndicator lifespan_indicator(const ProblemData& data, double s, const ProxyMap& proxies);

struct PicardReport {
    std::vector<Field> iterates;  ///< kept only when requested
    std::vector<double> distances;
    std::vector<double> contraction_ratios;
    bool converged = false;
    double final_residual = 0.0;
    int iterations = 0;
};

struct PicardResult {
    Field solution;
    PicardReport report;
};

/// Raised by picard_solve when the iteration budget is exhausted; carries the
/// last iterate and the report.
class PicardNoConvergence : public NoConvergence {
public:
    PicardNoConvergence(const std::string& what, PicardResult result)
        : NoConvergence(what), result_(std::move(result)) {}
    const PicardResult& result() const noexcept { return result_; }

private:
    PicardResult result_;
};

/// Fixed-point iteration u^{n+1} = S[data; f + kappa |u^n|^(lambda-1) u^n]
/// starting from the linear solution, with C_t L2_x distances. A nonempty
/// data.forcing must be sampled on a grid containing the output grid.
PicardResult picard_solve(const ProblemData& data, const OutputGrid& grid, const QuadratureBudget& budget,
                          int max_iter, double tol, bool keep_iterates = false);

/// Terms of the energy identity
///   d/dt mass / 2 + (beta/2) |u_x(0, t)|^2 = Im[kappa int_0^ell conj(u) |u|^(lambda-1) u dx]
/// with mass = int_0^ell |u|^2 dx, per output time.
struct DissipationSeries {
    std::vector<double> t;
    std::vector<double> mass;
    std::vector<double> boundary_flux;
    std::vector<double> source;

    /// Largest |mass'(t)/2 + flux - source| using centred differences in t.
    double identity_residual() const;
    /// Largest increase mass(t_{n+1}) - mass(t_n), or 0.
    double max_mass_increase() const;
};

/// Requires u(0) = u(ell) = u_x(ell) = 0 to within tolerance * sup|u|
/// (InhomogeneousBoundary otherwise).
DissipationSeries dissipation_audit(const Field& field, const DispersionParams& params, cplx kappa, double lambda,
                                    double tolerance = 1e-3);

}  // namespace hnls
