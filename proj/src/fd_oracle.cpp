#include "hnls/fd_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "hnls/errors.hpp"
#include "hnls/nonlinear.hpp"
#include "hnls/quadrature.hpp"

namespace hnls {

void OracleConfig::validate() const {
    if (nx < 16 || nt < 16) throw ConfigInvalid("oracle grids need nx >= 16 and nt >= 16");
    if (!(theta >= 0.5 && theta <= 1.0)) throw ConfigInvalid("oracle theta must lie in [1/2, 1]");
    if (max_sweeps < 1) throw ConfigInvalid("oracle max_sweeps must be positive");
}

namespace {

constexpr int kStencil = 7;
constexpr int kNeumannStencil = 5;
constexpr int kLower = 4;
constexpr int kUpper = 5;

/// Forcing values at arbitrary points by local interpolation in t then x.
class ForcingSampler {
public:
    explicit ForcingSampler(const Field& f) : f_(f) {
        if (f.empty()) return;
        hx_ = (f.x.back() - f.x.front()) / static_cast<double>(f.nx() - 1);
        ht_ = (f.t.back() - f.t.front()) / static_cast<double>(f.nt() - 1);
        for (std::size_t i = 0; i < f.nx(); ++i) rows_.emplace_back(0.0, ht_, f.row(i));
    }
    bool empty() const { return f_.empty(); }
    /// Values at time t on the x points xs.
    std::vector<cplx> at_time(double t, const std::vector<double>& xs) const {
        std::vector<cplx> col(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) col[i] = rows_[i](std::min(t, f_.t.back()));
        const UniformInterpolator in_x(0.0, hx_, col);
        std::vector<cplx> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = in_x(xs[i]);
        return out;
    }

private:
    const Field& f_;
    double hx_ = 1.0, ht_ = 1.0;
    std::vector<UniformInterpolator> rows_;
};

}  // namespace

Field oracle_solve(const ProblemData& data, const OracleConfig& config) {
    data.validate();
    config.validate();
    const DispersionParams& p = data.params;
    const int N = config.nx;
    const int M = N - 1;  // interior unknowns u_1..u_{N-1}
    const double ell = data.ell, T = data.horizon;
    const double h = ell / N, dt = T / config.nt;
    const double theta = config.theta;
    const bool homogeneous = config.bc_mode == BoundaryMode::Homogeneous;

    // Rows of u_t = -beta u_xxx + i alpha u_xx - delta u_x at the interior
    // nodes, on the extended vector u_0..u_{N+1}.
    std::vector<int> first(M);
    std::vector<std::array<cplx, kStencil>> coef(M);
    for (int i = 1; i <= N - 1; ++i) {
        const int lo = std::clamp(i - kStencil / 2, 0, N + 1 - (kStencil - 1));
        first[i - 1] = lo;
        std::vector<double> xs(kStencil);
        for (int j = 0; j < kStencil; ++j) xs[j] = (lo + j - i) * h;
        const auto c = fornberg_weights(0.0, xs, 3);
        for (int j = 0; j < kStencil; ++j) {
            coef[i - 1][j] = -p.beta * c[3][j] + I * p.alpha * c[2][j] - p.delta * c[1][j];
        }
    }
    // Ghost value: u_{N+1} = (h1 - sum_{j=N-3}^{N} cn_j u_j) / cn_{N+1}.
    std::vector<double> cn(kNeumannStencil);
    {
        std::vector<double> xs(kNeumannStencil);
        for (int j = 0; j < kNeumannStencil; ++j) xs[j] = (j - (kNeumannStencil - 2)) * h;
        const auto c = fornberg_weights(0.0, xs, 1);
        for (int j = 0; j < kNeumannStencil; ++j) cn[j] = c[1][j];
    }
    const int ghost_first = N + 2 - kNeumannStencil;  // index N-3

    // Dense-in-band assembly of A (interior) and the affine map b(g0, h0, h1).
    // A is stored as LAPACK band storage for I - theta dt A.
    const int ldab = 2 * kLower + kUpper + 1;
    std::vector<lapack_complex_double> ab(static_cast<std::size_t>(ldab) * M);
    auto band = [&](int r, int c) -> lapack_complex_double& {
        return ab[static_cast<std::size_t>(c) * ldab + (kLower + kUpper + r - c)];
    };
    // Band entries of A itself, kept for the explicit half.
    std::vector<std::vector<std::pair<int, cplx>>> Arows(M);
    // Boundary coupling: contribution of (g0, h0, h1) to row r.
    std::vector<cplx> cg(M, 0.0), ch0(M, 0.0), ch1(M, 0.0);
    for (int r = 0; r < M; ++r) {
        std::vector<cplx> dense(N + 2, 0.0);
        for (int j = 0; j < kStencil; ++j) dense[first[r] + j] += coef[r][j];
        // Eliminate the ghost.
        const cplx gcoef = dense[N + 1];
        if (gcoef != cplx(0.0)) {
            for (int j = 0; j < kNeumannStencil - 1; ++j) dense[ghost_first + j] -= gcoef * cn[j] / cn.back();
            ch1[r] += gcoef / cn.back();
            dense[N + 1] = 0.0;
        }
        cg[r] = dense[0];
        ch0[r] = dense[N];
        for (int c = 1; c <= N - 1; ++c) {
            if (dense[c] == cplx(0.0)) continue;
            const int col = c - 1;
            if (r - col > kLower || col - r > kUpper) throw ConfigInvalid("oracle stencil exceeds the band");
            Arows[r].push_back({col, dense[c]});
        }
    }
    for (int r = 0; r < M; ++r) {
        for (const auto& [col, v] : Arows[r]) {
            const cplx e = -theta * dt * v;
            band(r, col) = cplx(e.real(), e.imag());
        }
        const lapack_complex_double d = band(r, r);
        band(r, r) = cplx(1.0 + d.real(), d.imag());
    }
    std::vector<lapack_int> ipiv(M);
    lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, M, M, kLower, kUpper, ab.data(), ldab, ipiv.data());
    if (info != 0) throw StepDiverged("oracle banded factorisation failed");

    Field out(uniform_grid(0.0, ell, N + 1), uniform_grid(0.0, T, config.nt + 1));
    const ForcingSampler forcing(data.forcing);
    const bool nonlinear = data.kappa != cplx(0.0);

    auto boundary = [&](double t, cplx& g, cplx& a, cplx& b) {
        if (homogeneous) {
            g = a = b = 0.0;
        } else {
            g = data.g0.at(t);
            a = data.h0.at(t);
            b = data.h1.at(t);
        }
    };
    // Source term S(u, t) = A_b(t) - i (f + kappa N(u)) on interior rows.
    auto source = [&](const std::vector<cplx>& u_full, double t, std::vector<cplx>& s) {
        cplx g, a, b;
        boundary(t, g, a, b);
        std::vector<cplx> f;
        if (!forcing.empty()) f = forcing.at_time(t, out.x);
        for (int r = 0; r < M; ++r) {
            cplx v = cg[r] * g + ch0[r] * a + ch1[r] * b;
            cplx rhs = 0.0;
            if (!f.empty()) rhs += f[r + 1];
            if (nonlinear) rhs += power_term(u_full[r + 1], data.kappa, data.lambda);
            s[r] = v - I * rhs;
        }
    };
    auto apply_A = [&](const std::vector<cplx>& u_full, std::vector<cplx>& y) {
        for (int r = 0; r < M; ++r) {
            cplx v = 0.0;
            for (const auto& [col, a] : Arows[r]) v += a * u_full[col + 1];
            y[r] = v;
        }
    };

    std::vector<cplx> u(N + 1);
    for (int i = 0; i <= N; ++i) u[i] = data.u0.at(out.x[i]);
    for (int i = 0; i <= N; ++i) out(i, 0) = u[i];

    std::vector<cplx> Au(M), s0(M), s1(M), rhs(M), next(N + 1), prev_iter(N + 1);
    std::vector<lapack_complex_double> bvec(M);
    for (int n = 0; n < config.nt; ++n) {
        const double t0 = n * dt, t1 = (n + 1) * dt;
        apply_A(u, Au);
        source(u, t0, s0);
        cplx g1, a1, b1;
        boundary(t1, g1, a1, b1);
        next = u;
        next[0] = g1;
        next[N] = a1;
        double last_delta = -1.0;
        const int sweeps = nonlinear ? config.max_sweeps : 1;
        for (int sweep = 0; sweep < sweeps; ++sweep) {
            source(next, t1, s1);
            for (int r = 0; r < M; ++r) {
                const cplx v = u[r + 1] + dt * ((1.0 - theta) * (Au[r] + s0[r]) + theta * s1[r]);
                bvec[r] = cplx(v.real(), v.imag());
            }
            info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', M, kLower, kUpper, 1, ab.data(), ldab, ipiv.data(),
                                  bvec.data(), M);
            if (info != 0) throw StepDiverged("oracle banded solve failed");
            prev_iter = next;
            double delta = 0.0, size = 0.0;
            for (int r = 0; r < M; ++r) {
                next[r + 1] = bvec[r];
                delta = std::max(delta, std::abs(next[r + 1] - prev_iter[r + 1]));
                size = std::max(size, std::abs(next[r + 1]));
            }
            if (!std::isfinite(delta)) throw StepDiverged("oracle step produced non-finite values");
            if (!nonlinear) break;
            if (delta <= 1e-14 * std::max(size, 1e-300)) break;
            if (last_delta >= 0.0 && delta >= last_delta && sweep >= 2) {
                throw StepDiverged("oracle fixed-point sweeps stopped contracting at step " + std::to_string(n));
            }
            last_delta = delta;
        }
        u = next;
        for (int i = 0; i <= N; ++i) out(i, n + 1) = u[i];
    }
    return out;
}

Field restrict_to(const Field& fine, const std::vector<double>& x, const std::vector<double>& t) {
    auto match = [](const std::vector<double>& from, const std::vector<double>& to) {
        std::vector<std::size_t> idx;
        const double tol = 1e-9 * std::max(1.0, std::abs(from.back()));
        std::size_t j = 0;
        for (double v : to) {
            while (j < from.size() && from[j] < v - tol) ++j;
            if (j == from.size() || std::abs(from[j] - v) > tol) {
                throw ConfigInvalid("restrict_to: target grid is not a subset of the source grid");
            }
            idx.push_back(j);
        }
        return idx;
    };
    const auto ix = match(fine.x, x);
    const auto it = match(fine.t, t);
    Field out(x, t);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) out(i, j) = fine(ix[i], it[j]);
    return out;
}

}  // namespace hnls
