#include <gtest/gtest.h>

#include <random>

#include "hnls/dispersion.hpp"
#include "hnls/errors.hpp"
#include "oracles.hpp"

using namespace hnls;

namespace {

const DispersionParams kAiry{1.0, 0.0, 0.0};
const DispersionParams kRealPair{1.0, 0.0, 3.0};
const DispersionParams kImagPair{1.0, 0.0, -3.0};

cplx radicand(const DispersionParams& p, cplx k) {
    const BranchData b = branch_points(p);
    return (k - b.b_minus) * (k - b.b_plus);
}

std::vector<DispersionParams> random_params(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> ub(0.5, 2.0), ua(-3.0, 3.0);
    std::vector<DispersionParams> out;
    for (int i = 0; i < n; ++i) {
        const double b = ub(rng);
        const double a = ua(rng);
        out.push_back({b, a, ua(rng)});
    }
    return out;
}

}  // namespace

TEST(Omega, ZeroAtOrigin) { EXPECT_EQ(omega(kAiry, 0.0), cplx(0.0)); }

TEST(Omega, AiryAtImaginaryUnit) {
    const cplx w = omega(kAiry, I);
    EXPECT_NEAR(w.real(), 0.0, 1e-15);
    EXPECT_NEAR(w.imag(), -1.0, 1e-15);
}

TEST(Omega, GeneralCubicMatchesDirectEvaluation) {
    const cplx k{1.0, 1.0};
    const cplx expected = oracle::cubic(2.0, 1.0, -1.0, k);
    EXPECT_NEAR(std::abs(expected - cplx(-3.0, 3.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(omega({2.0, 1.0, -1.0}, k) - expected), 0.0, 1e-13);
}

TEST(Omega, RejectsNonPositiveBeta) {
    EXPECT_THROW((DispersionParams{0.0, 1.0, 1.0}.validate()), ConfigInvalid);
    EXPECT_THROW((DispersionParams{-1.0, 1.0, 1.0}.validate()), ConfigInvalid);
}

TEST(OmegaPrime, TrivialValues) {
    EXPECT_EQ(omega_prime(kAiry, 0.0), cplx(0.0));
    EXPECT_NEAR(std::abs(omega_prime(kRealPair, 3.0) - 24.0), 0.0, 1e-13);
}

TEST(OmegaPrime, MatchesMuFactorIdentityAtRandomPoints) {
    std::mt19937_64 rng(11);
    for (const DispersionParams& p : random_params(rng, 20)) {
        for (int i = 0; i < 50; ++i) {
            const cplx k = oracle::random_cplx(rng, 5.0);
            const MuFactors m = mu_factors(symmetries(p, k));
            const cplx lhs = omega_prime(p, k);
            const cplx rhs = -p.beta * m.mu_plus * m.mu_minus;
            EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1.0 + std::abs(lhs))) << "k = " << k;
        }
    }
}

TEST(BranchPoints, ThreeDiscriminantSigns) {
    const BranchData c = branch_points(kAiry);
    EXPECT_EQ(c.kind, BranchKind::Coincident);
    EXPECT_EQ(c.b_plus, cplx(0.0));
    EXPECT_EQ(c.b_minus, cplx(0.0));

    const BranchData r = branch_points(kRealPair);
    EXPECT_EQ(r.kind, BranchKind::RealPair);
    EXPECT_NEAR(std::abs(r.b_plus - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.b_minus + 2.0), 0.0, 1e-15);

    const BranchData m = branch_points(kImagPair);
    EXPECT_EQ(m.kind, BranchKind::ImaginaryPair);
    EXPECT_NEAR(std::abs(m.b_plus - 2.0 * I), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m.b_minus + 2.0 * I), 0.0, 1e-15);
}

TEST(BranchSqrt, RealRadicandBeyondBranchPoint) {
    EXPECT_NEAR(std::abs(branch_sqrt(kRealPair, 3.0) - std::sqrt(5.0)), 0.0, 1e-14);
}

TEST(BranchSqrt, SquaresBackOnPositiveAxis) {
    const cplx r = branch_sqrt(kImagPair, 10.0);
    EXPECT_LE(std::abs(r * r - cplx(104.0)), 1e-12 * 104.0);
}

TEST(BranchSqrt, ZeroAtBranchPoints) {
    EXPECT_EQ(branch_sqrt(kRealPair, 2.0), cplx(0.0));
    EXPECT_EQ(branch_sqrt(kRealPair, -2.0), cplx(0.0));
}

TEST(BranchSqrt, SquaresToRadicandEverywhere) {
    std::mt19937_64 rng(12);
    for (const DispersionParams& p : random_params(rng, 20)) {
        for (int i = 0; i < 200; ++i) {
            const cplx k = oracle::random_cplx(rng, 20.0);
            const cplx r = branch_sqrt(p, k);
            const cplx rad = radicand(p, k);
            EXPECT_LE(std::abs(r * r - rad), 1e-12 * (1.0 + std::abs(rad)));
        }
    }
}

TEST(Symmetries, AllCoincideAtAiryOrigin) {
    const SymmetryTriple s = symmetries(kAiry, 0.0);
    EXPECT_EQ(std::abs(s.nu0) + std::abs(s.nu_plus) + std::abs(s.nu_minus), 0.0);
}

TEST(Symmetries, RealPairAtThree) {
    const SymmetryTriple s = symmetries(kRealPair, 3.0);
    EXPECT_NEAR(std::abs(s.nu0 - 3.0), 0.0, 1e-13);
    const cplx a{-1.5, std::sqrt(15.0) / 2.0};
    const cplx b = std::conj(a);
    const bool direct = std::abs(s.nu_plus - a) < 1e-12 && std::abs(s.nu_minus - b) < 1e-12;
    const bool swapped = std::abs(s.nu_plus - b) < 1e-12 && std::abs(s.nu_minus - a) < 1e-12;
    EXPECT_TRUE(direct || swapped) << s.nu_plus << " " << s.nu_minus;
    EXPECT_NEAR(std::abs(omega(kRealPair, s.nu_plus) - 18.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(omega(kRealPair, s.nu_minus) - 18.0), 0.0, 1e-12);
}

TEST(Symmetries, AiryRotationOnNonnegativeAxis) {
    const cplx rot = std::exp(I * (2.0 * oracle::pi / 3.0));
    for (double k : {0.0, 0.25, 1.0, 3.5, 17.0, 250.0}) {
        const SymmetryTriple s = symmetries(kAiry, k);
        EXPECT_LE(std::abs(s.nu_plus - rot * k), 1e-14 * (1.0 + k));
        EXPECT_LE(std::abs(s.nu_minus - std::conj(rot) * k), 1e-14 * (1.0 + k));
    }
}

TEST(Symmetries, InvarianceVietaAndImaginarySum) {
    std::mt19937_64 rng(13);
    for (const DispersionParams& p : random_params(rng, 50)) {
        for (int i = 0; i < 200; ++i) {
            const cplx k = oracle::random_cplx(rng, 10.0);
            const SymmetryTriple s = symmetries(p, k);
            const cplx w = omega(p, k);
            const double scale = 1.0 + std::abs(w);
            EXPECT_LE(std::abs(omega(p, s.nu_plus) - w), 1e-10 * scale);
            EXPECT_LE(std::abs(omega(p, s.nu_minus) - w), 1e-10 * scale);
            EXPECT_LE(std::abs(s.nu0 + s.nu_plus + s.nu_minus - p.alpha / p.beta), 1e-12);
            EXPECT_LE(std::abs(s.nu0.imag() + s.nu_plus.imag() + s.nu_minus.imag()), 1e-12);
        }
    }
}

TEST(MuFactors, AiryAtOne) {
    const MuFactors m = mu_factors(symmetries(kAiry, 1.0));
    EXPECT_NEAR(std::abs(m.mu0 - I * std::sqrt(3.0)), 0.0, 1e-14);
}

TEST(MuFactors, AllZeroAtAiryOrigin) {
    const MuFactors m = mu_factors(symmetries(kAiry, 0.0));
    EXPECT_EQ(std::abs(m.mu0) + std::abs(m.mu_plus) + std::abs(m.mu_minus), 0.0);
}

TEST(MuFactors, ProductMatchesDerivativeAtThree) {
    const MuFactors m = mu_factors(symmetries(kRealPair, 3.0));
    EXPECT_NEAR(std::abs(-1.0 * m.mu_plus * m.mu_minus - 24.0), 0.0, 1e-12);
}
