#include <gtest/gtest.h>

#include <random>

#include "hnls/data.hpp"
#include "hnls/transforms.hpp"
#include "hnls/verify.hpp"
#include "oracles.hpp"

using namespace hnls;

namespace {

template <class F>
SpatialProfile profile_of(F f, double ell, int n) {
    SpatialProfile p;
    p.ell = ell;
    for (int i = 0; i < n; ++i) p.samples.push_back(f(ell * i / (n - 1)));
    return p;
}

template <class F>
TimeSeries series_of(F f, double horizon, int n) {
    TimeSeries s;
    s.horizon = horizon;
    for (int j = 0; j < n; ++j) s.samples.push_back(f(horizon * j / (n - 1)));
    return s;
}

template <class F>
Field field_of(F f, double ell, double horizon, int nx, int nt) {
    Field out = make_field(ell, horizon, OutputGrid{nx, nt});
    for (std::size_t i = 0; i < out.nx(); ++i) {
        for (std::size_t j = 0; j < out.nt(); ++j) out(i, j) = f(out.x[i], out.t[j]);
    }
    return out;
}

}  // namespace

TEST(IntervalFourier, ConstantAtZeroAndFullPeriod) {
    const SpatialProfile one = profile_of([](double) { return cplx(1.0); }, 1.0, 65);
    EXPECT_NEAR(std::abs(interval_fourier(one, 0.0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(interval_fourier(one, 2.0 * oracle::pi)), 0.0, 1e-13);
}

TEST(IntervalFourier, ExponentialMatchesClosedForm) {
    const SpatialProfile e = profile_of([](double x) { return std::exp(I * 3.0 * x); }, 1.0, 257);
    const cplx expected = (1.0 - std::exp(-2.0 * I)) / (2.0 * I);
    EXPECT_NEAR(std::abs(oracle::fourier_of_exponential(3.0, 1.0, 5.0) - expected), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(interval_fourier(e, 5.0) - expected), 0.0, 1e-10);
}

TEST(IntervalFourier, AccurateAtComplexArguments) {
    const SpatialProfile e = profile_of([](double x) { return std::exp(I * 2.0 * x); }, 1.5, 257);
    for (cplx k : {cplx(4.0, 3.0), cplx(-30.0, -2.0), cplx(150.0, 10.0)}) {
        const cplx expected = oracle::fourier_of_exponential(2.0, 1.5, k);
        EXPECT_LE(std::abs(interval_fourier(e, k) - expected), 1e-9 * (1.0 + std::abs(expected))) << k;
    }
}

TEST(IntervalFourier, Linear) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    SpatialProfile a, b, c;
    a.ell = b.ell = c.ell = 2.0;
    const cplx ca{0.7, -1.2}, cb{-2.0, 0.4};
    for (int i = 0; i < 129; ++i) {
        a.samples.push_back({g(rng), g(rng)});
        b.samples.push_back({g(rng), g(rng)});
        c.samples.push_back(ca * a.samples.back() + cb * b.samples.back());
    }
    for (cplx k : {cplx(0.0), cplx(3.0, 1.0), cplx(-11.0, -0.5)}) {
        const cplx lhs = interval_fourier(c, k);
        const cplx rhs = ca * interval_fourier(a, k) + cb * interval_fourier(b, k);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST(IntervalFourier, InversionRecoversBandLimitedProfile) {
    // Gaussian of width 0.08 centred in (0, 1): its transform is below 1e-10 beyond |k| = 120.
    const auto phi = [](double x) { return std::exp(-std::pow((x - 0.5) / 0.08, 2)); };
    const IntervalFourier ft(profile_of([&](double x) { return cplx(phi(x), 0.0); }, 1.0, 1025));
    const double K = 120.0;
    for (double x : {0.2, 0.5, 0.77}) {
        const double re = oracle::simpson([&](double k) { return (std::exp(I * k * x) * ft(k)).real(); }, -K, K, 8000);
        const double im = oracle::simpson([&](double k) { return (std::exp(I * k * x) * ft(k)).imag(); }, -K, K, 8000);
        const cplx back = cplx(re, im) / (2.0 * oracle::pi);
        EXPECT_LE(std::abs(back - phi(x)), 1e-8) << "x = " << x;
    }
}

TEST(TildeTransform, ConstantCases) {
    const TimeSeries one = series_of([](double) { return cplx(1.0); }, 4.0, 65);
    EXPECT_NEAR(std::abs(tilde_transform(one, 0.0, 4.0) - 4.0), 0.0, 1e-13);
    const TimeSeries one_pi = series_of([](double) { return cplx(1.0); }, oracle::pi, 65);
    EXPECT_NEAR(std::abs(tilde_transform(one_pi, 2.0, oracle::pi)), 0.0, 1e-13);
}

TEST(TildeTransform, IdentityMatchesAntiderivative) {
    const TimeSeries id = series_of([](double t) { return cplx(t); }, 1.0, 33);
    const cplx expected = oracle::tilde_of_identity(1.0, 1.0);
    EXPECT_NEAR(std::abs(expected - (std::exp(-I) * (1.0 + I) - 1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(tilde_transform(id, 1.0, 1.0) - expected), 0.0, 1e-10);
}

TEST(TildeTransform, PartialUpperLimitAndComplexFrequency) {
    const TimeSeries e = series_of([](double t) { return std::exp(I * 2.0 * t); }, 1.0, 257);
    for (double t : {0.3, 0.61, 1.0}) {
        for (cplx w : {cplx(5.0), cplx(-40.0, 3.0), cplx(200.0, -1.0)}) {
            const cplx expected = oracle::tilde_of_exponential(2.0, w, t);
            EXPECT_LE(std::abs(tilde_transform(e, w, t) - expected), 1e-10 * (1.0 + std::abs(expected)));
        }
    }
}

TEST(ForcingTransform, ZeroForcing) {
    const Field zero = field_of([](double, double) { return cplx(0.0); }, 1.0, 1.0, 33, 33);
    EXPECT_EQ(forcing_transform(zero, cplx(1.0, 2.0), cplx(-3.0, 0.5), 1.0), cplx(0.0));
}

TEST(ForcingTransform, SeparableFactorizes) {
    const auto phi = [](double x) { return cplx(std::cos(2.0 * x), x * x); };
    const auto psi = [](double t) { return cplx(1.0 + t, -std::sin(t)); };
    const Field f = field_of([&](double x, double t) { return phi(x) * psi(t); }, 1.2, 0.8, 129, 129);
    const SpatialProfile sp = profile_of(phi, 1.2, 129);
    const TimeSeries ts = series_of(psi, 0.8, 129);
    for (cplx k : {cplx(0.5), cplx(6.0, -1.0)}) {
        for (cplx w : {cplx(1.0), cplx(-9.0, 2.0)}) {
            const cplx lhs = forcing_transform(f, k, w, 0.8);
            const cplx rhs = interval_fourier(sp, k) * tilde_transform(ts, w, 0.8);
            EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST(ForcingTransform, PlaneWaveMatchesClosedForms) {
    const double a = 1.5, b = 2.0;
    const Field f = field_of([&](double x, double t) { return std::exp(I * (a * x + b * t)); }, 1.0, 1.0, 257, 257);
    for (cplx k : {cplx(3.0), cplx(-2.0, 1.0)}) {
        for (cplx w : {cplx(0.5), cplx(7.0, -0.5)}) {
            const cplx expected = oracle::fourier_of_exponential(a, 1.0, k) * oracle::tilde_of_exponential(b, w, 0.7);
            EXPECT_LE(std::abs(forcing_transform(f, k, w, 0.7) - expected), 1e-9);
        }
    }
}

TEST(LaplaceTransform, ZeroAndIndicator) {
    EXPECT_EQ(LaplaceTransform(1.0, std::vector<cplx>(33, 0.0))(1.0), cplx(0.0));
    const LaplaceTransform ind(1.0, std::vector<cplx>(33, 1.0));
    EXPECT_NEAR(std::abs(ind(1.0) - (1.0 - std::exp(-1.0))), 0.0, 1e-12);
}

TEST(LaplaceTransform, HardyBoundOnRandomProfiles) {
    std::mt19937_64 rng(32);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cplx> v(65);
        for (cplx& z : v) z = {g(rng), g(rng)};
        const LaplaceTransform L(2.0, v);
        EXPECT_LE(L.l2_norm(), std::sqrt(oracle::pi) * L.input_l2_norm());
    }
}

TEST(LaplaceTransform, HardySuiteHasNoViolations) {
    const VerifyReport r = run_verify("hardy", 1);
    ASSERT_EQ(r.properties.size(), 1u);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.properties[0].violations, 0);
    EXPECT_GE(r.properties[0].samples, 100);
    EXPECT_NEAR(r.properties[0].bound, std::sqrt(oracle::pi), 1e-15);
}

TEST(Rtotau, SupremumWithinConstant) {
    for (const DispersionParams& p : verify_parameter_sets()) {
        const RtotauScan s = rtotau_scan(p, 1e3, 200001);
        EXPECT_GT(s.sup_ratio, 0.0);
        EXPECT_LE(s.sup_ratio, s.constant);
        EXPECT_GE(s.constant, 2.0 / (p.beta * p.beta));
    }
}
