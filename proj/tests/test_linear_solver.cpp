#include <gtest/gtest.h>

#include "hnls/fd_oracle.hpp"
#include "hnls/linear_solver.hpp"
#include "hnls/presets.hpp"
#include "oracles.hpp"

using namespace hnls;

namespace {

const DispersionParams kAiry{1.0, 0.0, 0.0};
const std::vector<cplx> kSamples{-2.0, -1.0, 0.0, {0.5, 0.5}, 1.0, 2.0, {3.0, -0.5}};

ProblemData plane_wave_data() { return plane_wave_problem(kAiry, 2.0, 1.0, 0.5); }

const Field& plane_wave_solution() {
    static const Field u = solve_full(plane_wave_data(), OutputGrid{}, QuadratureBudget{});
    return u;
}

Field exact_plane_wave(const Field& like) {
    const double w = omega(kAiry, 2.0).real();
    Field ex = like;
    for (std::size_t i = 0; i < ex.nx(); ++i) {
        for (std::size_t j = 0; j < ex.nt(); ++j) ex(i, j) = oracle::plane_wave(2.0, w, ex.x[i], ex.t[j]);
    }
    return ex;
}

ProblemData zero_data(double ell, double horizon) {
    ProblemData d;
    d.params = kAiry;
    d.ell = ell;
    d.horizon = horizon;
    d.u0.ell = ell;
    d.u0.samples.assign(65, 0.0);
    for (TimeSeries* s : {&d.g0, &d.h0, &d.h1}) {
        s->horizon = horizon;
        s->samples.assign(65, 0.0);
    }
    return d;
}

TimeSeries bump_series(double horizon, double lo, double hi, int n) {
    TimeSeries s;
    s.horizon = horizon;
    for (int j = 0; j < n; ++j) {
        const double t = horizon * j / (n - 1);
        s.samples.push_back(unit_bump((t - lo) / (hi - lo)));
    }
    return s;
}

double sup_trace_error(const TimeSeries& trace, const TimeSeries& data) {
    double e = 0.0;
    const std::vector<double> t = trace.grid();
    for (std::size_t j = 0; j < t.size(); ++j) e = std::max(e, std::abs(trace.samples[j] - data.at(t[j])));
    return e;
}

double sup_initial_error(const Field& u, const SpatialProfile& u0) {
    double e = 0.0;
    for (std::size_t i = 0; i < u.nx(); ++i) e = std::max(e, std::abs(u(i, 0) - u0.at(u.x[i])));
    return e;
}

Field difference(const Field& a, const Field& b) {
    Field d = a;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    return d;
}

void expect_recovery(const Field& u, const ProblemData& d, double tol) {
    const Traces tr = evaluate_traces(u);
    EXPECT_LE(sup_trace_error(tr.left_dirichlet, d.g0), tol);
    EXPECT_LE(sup_trace_error(tr.right_dirichlet, d.h0), tol);
    EXPECT_LE(sup_trace_error(tr.right_neumann, d.h1), tol);
    EXPECT_LE(sup_initial_error(u, d.u0), tol);
}

}  // namespace

TEST(SolveReduced, ZeroDataGivesZeroField) {
    TimeSeries zero;
    zero.horizon = 0.5;
    zero.samples.assign(33, 0.0);
    const Field v = solve_reduced(kAiry, 1.0, zero, zero, OutputGrid{33, 17}, QuadratureBudget{});
    EXPECT_EQ(sup_abs(v), 0.0);
}

TEST(SolveReduced, AiryBumpRecoversTraceAndMatchesOracle) {
    const double ell = 4.0, T = 0.1;
    const TimeSeries psi0 = bump_series(T, 0.02, 0.09, 513);
    TimeSeries psi1;
    psi1.horizon = T;
    psi1.samples.assign(513, 0.0);
    const Field v = solve_reduced(kAiry, ell, psi0, psi1, OutputGrid{257, 33}, QuadratureBudget{});
    const Traces tr = evaluate_traces(v);
    EXPECT_LE(sup_trace_error(tr.right_dirichlet, psi0), 1e-3);
    EXPECT_LE(sup_trace_error(tr.right_neumann, psi1), 1e-3);

    ProblemData d = zero_data(ell, T);
    d.h0 = psi0;
    d.h1 = psi1;
    const Field o = restrict_to(oracle_solve(d, OracleConfig{}), v.x, v.t);
    EXPECT_LE(relative_l2(v, o), 1e-2);
}

TEST(SolveFull, ZeroDataGivesZeroField) {
    const Field u = solve_full(zero_data(1.0, 0.5), OutputGrid{33, 17}, QuadratureBudget{});
    EXPECT_EQ(sup_abs(u), 0.0);
}

TEST(SolveFull, PlaneWaveManufacturedSolution) {
    const Field& u = plane_wave_solution();
    EXPECT_LE(relative_l2(u, exact_plane_wave(u)), 1e-3);
}

TEST(SolveFull, GaussianMatchesOracle) {
    const ProblemData d = gaussian_problem(kAiry, 6.0, 0.06, 3.0, 0.5, 1025);
    const Field u = solve_full(d, OutputGrid{65, 65}, QuadratureBudget{});
    const Field o = restrict_to(oracle_solve(d, OracleConfig{}), u.x, u.t);
    EXPECT_LE(relative_l2(u, o), 1e-2);
}

TEST(SolveFull, Linear) {
    const ProblemData d1 = gaussian_problem(kAiry, 6.0, 0.06, 3.0, 0.5, 513);
    const ProblemData d2 = gaussian_problem(kAiry, 6.0, 0.06, 2.2, 0.4, 513);
    const cplx a{0.8, -0.3}, b{-1.5, 0.6};
    ProblemData d3 = d1;
    for (std::size_t i = 0; i < d3.u0.samples.size(); ++i) d3.u0.samples[i] = a * d1.u0.samples[i] + b * d2.u0.samples[i];
    const OutputGrid grid{65, 17};
    const Field u1 = solve_full(d1, grid, QuadratureBudget{});
    const Field u2 = solve_full(d2, grid, QuadratureBudget{});
    const Field u3 = solve_full(d3, grid, QuadratureBudget{});
    Field combo = u1;
    for (std::size_t i = 0; i < combo.values.size(); ++i) combo.values[i] = a * u1.values[i] + b * u2.values[i];
    EXPECT_LE(relative_l2(u3, combo), 1e-8);
}

TEST(SolveFull, ContourRefinementConvergesSpectrally) {
    const ProblemData d = gaussian_problem(kAiry, 6.0, 0.06, 3.0, 0.5, 1025);
    std::vector<Field> fields;
    for (int n : {8, 16, 32}) {
        QuadratureBudget b;
        b.contour_nodes = n;
        b.real_axis_nodes = n;
        fields.push_back(solve_full(d, OutputGrid{65, 33}, b));
    }
    const double first = l2_xt(difference(fields[1], fields[0]));
    const double second = l2_xt(difference(fields[2], fields[1]));
    EXPECT_GT(first, 0.0);
    EXPECT_LE(second, 0.25 * first);
}

TEST(GlobalRelation, ZeroDataHasZeroResidual) {
    const ProblemData d = zero_data(1.0, 0.5);
    const Field u = make_field(1.0, 0.5, OutputGrid{33, 17});
    EXPECT_EQ(global_relation_residual(u, d, kSamples), 0.0);
}

TEST(GlobalRelation, PlaneWaveResidualAndNegativeControl) {
    const ProblemData d = plane_wave_data();
    const Field& u = plane_wave_solution();
    EXPECT_LE(global_relation_residual(u, d, kSamples), 1e-6);
    Field doubled = u;
    for (cplx& v : doubled.values) v *= 2.0;
    EXPECT_GE(global_relation_residual(doubled, d, kSamples), 0.1);
}

TEST(GlobalRelation, ResidualDoesNotGrowUnderBudgetRefinement) {
    const ProblemData d = plane_wave_data();
    double previous = std::numeric_limits<double>::infinity();
    for (int n : {8, 16, 24}) {
        QuadratureBudget b;
        b.contour_nodes = n;
        const double r = global_relation_residual(solve_full(d, OutputGrid{}, b), d, kSamples);
        EXPECT_LE(r, 2.0 * previous) << "contour_nodes " << n;
        previous = r;
    }
}

TEST(Traces, ConstantField) {
    Field u = make_field(1.0, 1.0, OutputGrid{33, 9});
    for (cplx& v : u.values) v = cplx(0.5, -2.0);
    const Traces tr = evaluate_traces(u);
    for (std::size_t j = 0; j < u.nt(); ++j) {
        EXPECT_NEAR(std::abs(tr.left_dirichlet.samples[j] - cplx(0.5, -2.0)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(tr.right_dirichlet.samples[j] - cplx(0.5, -2.0)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(tr.right_neumann.samples[j]), 0.0, 1e-10);
    }
}

TEST(Traces, NeumannTraceIsFourthOrder) {
    const double a = 3.0, ell = 1.0;
    std::vector<double> h, err;
    for (int n : {33, 65, 129}) {
        Field u = make_field(ell, 1.0, OutputGrid{n, 4});
        for (std::size_t i = 0; i < u.nx(); ++i) {
            for (std::size_t j = 0; j < u.nt(); ++j) u(i, j) = std::exp(I * a * u.x[i]);
        }
        const cplx exact = I * a * std::exp(I * a * ell);
        h.push_back(ell / (n - 1));
        err.push_back(std::abs(evaluate_traces(u).right_neumann.samples[0] - exact));
    }
    EXPECT_GE(oracle::convergence_rate(h, err), 3.8);
    EXPECT_LE(err.back(), 1e-6);
}

TEST(Recovery, PlaneWave) { expect_recovery(plane_wave_solution(), plane_wave_data(), 1e-3); }

TEST(Recovery, CompatibleBumpData) {
    const ProblemData d = bump_problem(kAiry, 4.0, 0.1, 513);
    const Field u = solve_full(d, OutputGrid{257, 33}, QuadratureBudget{});
    expect_recovery(u, d, 1e-3);
}

TEST(Recovery, GaussianWithZeroBoundaryData) {
    const ProblemData d = gaussian_problem(kAiry, 6.0, 0.06, 3.0, 0.5, 1025);
    const Field u = solve_full(d, OutputGrid{129, 33}, QuadratureBudget{});
    expect_recovery(u, d, 1e-3);
}
