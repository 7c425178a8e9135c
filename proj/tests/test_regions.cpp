#include <gtest/gtest.h>

#include <random>

#include "hnls/dispersion.hpp"
#include "hnls/regions.hpp"
#include "hnls/verify.hpp"
#include "oracles.hpp"

using namespace hnls;

namespace {

const DispersionParams kAiry{1.0, 0.0, 0.0};

// Lower-bound constants of the exponential-sum denominator.
const double kC0 = std::sqrt(5.0) / std::sqrt(2.0) -
                   (3.0 + std::sqrt(7.0) / std::sqrt(2.0)) * std::exp(-9.0 * std::sqrt(23.0) / (4.0 * std::sqrt(2.0)));
const double kCpm = (3.0 * std::sqrt(2.0) - std::sqrt(7.0)) / (2.0 * std::sqrt(2.0)) -
                    (3.0 * std::sqrt(2.0) + 3.0 * std::sqrt(7.0)) / (2.0 * std::sqrt(2.0)) * std::exp(-9.0 / 4.0);

const PropertyResult& find_property(const VerifyReport& r, const std::string& name) {
    for (const PropertyResult& p : r.properties) {
        if (p.name == name) return p;
    }
    throw std::runtime_error("property not reported: " + name);
}

}  // namespace

TEST(ImOmega, VanishesOnRealAxis) {
    for (double k : {-3.0, 0.0, 0.5, 7.0}) EXPECT_EQ(im_omega({2.0, 1.0, -1.0}, k), 0.0);
}

TEST(ImOmega, AiryAtImaginaryUnit) { EXPECT_NEAR(im_omega(kAiry, I), -1.0, 1e-15); }

TEST(ImOmega, MatchesDirectEvaluation) {
    std::mt19937_64 rng(21);
    for (const DispersionParams& p : verify_parameter_sets()) {
        for (int i = 0; i < 500; ++i) {
            const cplx k = oracle::random_cplx(rng, 10.0);
            const double direct = oracle::cubic(p.beta, p.alpha, p.delta, k).imag();
            EXPECT_LE(std::abs(im_omega(p, k) - direct), 1e-13 * (1.0 + std::abs(direct)));
        }
    }
}

TEST(ClassifyRegion, AiryExamples) {
    const double tol = default_classification_tol(kAiry, 1.0);
    EXPECT_EQ(classify_region(kAiry, I, tol), RegionLabel::D0);
    EXPECT_EQ(classify_region(kAiry, cplx(std::sqrt(3.0), -1.0), tol), RegionLabel::DPlus);
    EXPECT_EQ(classify_region(kAiry, cplx(-std::sqrt(3.0), -1.0), tol), RegionLabel::DMinus);
    EXPECT_EQ(classify_region(kAiry, 1.0, tol), RegionLabel::Boundary);
    EXPECT_EQ(classify_region(kAiry, cplx(1.0, 0.5), tol), RegionLabel::Outside);
}

TEST(RDelta, TrivialValues) {
    EXPECT_DOUBLE_EQ(r_delta(kAiry, 1.0), 9.0);
    EXPECT_DOUBLE_EQ(r_delta({1.0, 0.0, 3.0}, 1.0), 9.0);
    EXPECT_DOUBLE_EQ(r_delta({1.0, 0.0, 3.0}, 0.05), 180.0);
}

TEST(MDelta, DirectFormula) {
    EXPECT_DOUBLE_EQ(m_delta(kAiry, 1.0), 729.0);
    const double a = 1.0 / 3.0 + 9.0;
    EXPECT_NEAR(m_delta({1.0, 1.0, 0.0}, 1.0), a * a * a + a * a, 1e-9);
    EXPECT_NEAR(m_delta({1.0, 1.0, 0.0}, 1.0), 900.148, 1e-3);
}

TEST(MDelta, BoundsOmegaOnTheArc) {
    for (const DispersionParams& p : verify_parameter_sets()) {
        const double md = m_delta(p, 1.0);
        const ContourSet cs = build_contour_set(p, 1.0, 2.0 * r_delta(p, 1.0), 64);
        for (const ContourSegment& s : cs.segments) {
            if (s.kind != SegmentKind::CircularArc) continue;
            for (std::size_t j = 0; j < s.params.size(); ++j) EXPECT_LE(std::abs(omega(p, s.node(j))), md * (1.0 + 1e-12));
        }
    }
}

TEST(DeltaFn, VanishesAtAiryOrigin) { EXPECT_EQ(delta_fn(kAiry, 1.0, 0.0), cplx(0.0)); }

TEST(DeltaFn, LowerBoundAtMinusNine) {
    const cplx k = -9.0;
    const SymmetryTriple s = symmetries(kAiry, k);
    const double scaled = std::abs(std::exp(I * s.nu_minus) * delta_fn(kAiry, 1.0, k));
    EXPECT_GT(std::abs(delta_fn(kAiry, 1.0, k)), 0.0);
    EXPECT_GE(scaled, kCpm * 9.0);
}

TEST(DeltaFn, AntisymmetricUnderSwapOfNontrivialSymmetries) {
    const double ell = 1.3;
    const auto formula = [&](const SymmetryTriple& t) {
        const MuFactors m = mu_factors(t);
        return m.mu0 * std::exp(-I * t.nu0 * ell) + m.mu_plus * std::exp(-I * t.nu_plus * ell) +
               m.mu_minus * std::exp(-I * t.nu_minus * ell);
    };
    for (cplx k : {cplx(0.3, 0.7), cplx(-2.0, 1.5), cplx(4.0, -0.2)}) {
        SymmetryTriple t = symmetries({1.0, 0.5, 2.0}, k);
        const cplx d = delta_fn({1.0, 0.5, 2.0}, ell, k);
        EXPECT_LE(std::abs(formula(t) - d), 1e-12 * (1.0 + std::abs(d)));
        std::swap(t.nu_plus, t.nu_minus);
        EXPECT_LE(std::abs(formula(t) + d), 1e-12 * (1.0 + std::abs(d)));
    }
}

TEST(ContourSet, AiryArcHalfAngle) {
    const ContourSet cs = build_contour_set(kAiry, 1.0, 20.0, 64);
    EXPECT_NEAR(cs.phi0, oracle::pi / 6.0, 1e-12);
    EXPECT_NEAR(arc_half_angle(kAiry, 9.0), oracle::pi / 6.0, 1e-12);
    const ContourSegment& arc = cs.segments.at(1);
    ASSERT_EQ(arc.id, 2);
    ASSERT_EQ(arc.kind, SegmentKind::CircularArc);
    EXPECT_NEAR(arc.param_lo, oracle::pi / 2.0 - cs.phi0, 1e-12);
    EXPECT_NEAR(arc.param_hi, oracle::pi / 2.0 + cs.phi0, 1e-12);
    // The arc ends on the lines Im omega = 0, which for omega = k^3 sit at 60 degrees.
    EXPECT_NEAR(std::arg(arc.first_point()), 2.0 * oracle::pi / 3.0, 1e-12);
    EXPECT_NEAR(std::arg(arc.last_point()), oracle::pi / 3.0, 1e-12);
}

TEST(ContourSet, BranchNodesLieOnTheRealOmegaCurve) {
    for (const DispersionParams& p : verify_parameter_sets()) {
        const double md = m_delta(p, 1.0);
        const ContourSet cs = build_contour_set(p, 1.0, 4.0 * r_delta(p, 1.0), 64);
        for (const ContourSegment& s : cs.segments) {
            if (s.kind != SegmentKind::HyperbolaBranch) continue;
            for (std::size_t j = 0; j < s.params.size(); ++j) {
                EXPECT_LE(std::abs(im_omega(p, s.node(j))), 1e-9 * md) << "segment " << s.id;
            }
        }
    }
}

TEST(ContourSet, ConsecutiveSegmentsShareEndpoints) {
    for (const DispersionParams& p : verify_parameter_sets()) {
        const ContourSet cs = build_contour_set(p, 1.0, 3.0 * r_delta(p, 1.0), 32);
        ASSERT_EQ(cs.segments.size(), 9u);
        for (int region = 0; region < 3; ++region) {
            for (int j = 0; j < 2; ++j) {
                const ContourSegment& a = cs.segments[3 * region + j];
                const ContourSegment& b = cs.segments[3 * region + j + 1];
                EXPECT_LE(std::abs(a.last_point() - b.first_point()), 1e-10 * (1.0 + std::abs(a.last_point())))
                    << "segments " << a.id << " and " << b.id;
            }
        }
    }
}

TEST(ContourSet, ArcNodesPushedOutwardLandInTheirRegion) {
    const DispersionParams p{1.0, -2.0, 1.0};
    const ContourSet cs = build_contour_set(p, 1.0, 40.0, 32);
    const double tol = default_classification_tol(p, 1.0);
    for (const ContourSegment& s : cs.segments) {
        if (s.kind != SegmentKind::CircularArc) continue;
        for (std::size_t j = 0; j < s.params.size(); ++j) {
            const cplx k = s.node(j);
            EXPECT_EQ(classify_region(p, k + (k - s.center) * 1e-6, tol), s.region) << "segment " << s.id;
        }
    }
}

TEST(RegionBounds, VerifySuitePassesWithZeroViolations) {
    const VerifyReport r = run_verify("regions", 1);
    for (const PropertyResult& p : r.properties) {
        EXPECT_TRUE(p.passed) << p.name;
        EXPECT_EQ(p.violations, 0) << p.name;
        EXPECT_GE(p.samples, 1000) << p.name;
    }
    EXPECT_NEAR(find_property(r, "regions.chardbar_d0_lower_bound").bound, std::sqrt(23.0) / (4.0 * std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(find_property(r, "regions.chardbar_dpm_lower_bound").bound, 0.25, 1e-15);
}

TEST(RegionBounds, DeltaBoundSuiteUsesExplicitConstants) {
    const VerifyReport r = run_verify("delta_bounds", 1);
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(find_property(r, "delta_bounds.d0").bound, kC0, 1e-12);
    EXPECT_NEAR(find_property(r, "delta_bounds.dplus").bound, kCpm, 1e-12);
    EXPECT_NEAR(find_property(r, "delta_bounds.dminus").bound, kCpm, 1e-12);
}
