#include "hnls/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "hnls/errors.hpp"

namespace hnls {

void DispersionParams::validate() const {
    if (!std::isfinite(beta) || !std::isfinite(alpha) || !std::isfinite(delta)) {
        throw ConfigInvalid("dispersion coefficients must be finite");
    }
    if (!(beta > 0.0)) {
        std::ostringstream os;
        os << "dispersion.beta must be positive, got " << beta;
        throw ConfigInvalid(os.str());
    }
}

cplx omega(const DispersionParams& p, cplx k) {
    return k * ((p.beta * k - p.alpha) * k - p.delta);
}

cplx omega_prime(const DispersionParams& p, cplx k) {
    return (3.0 * p.beta * k - 2.0 * p.alpha) * k - p.delta;
}

BranchData branch_points(const DispersionParams& p) {
    BranchData b;
    b.discriminant = p.discriminant();
    const double c = p.center();
    const double half_gap = 2.0 / (3.0 * p.beta) * std::sqrt(std::abs(b.discriminant));
    if (b.discriminant > 0.0) {
        b.kind = BranchKind::RealPair;
        b.b_minus = c - half_gap;
        b.b_plus = c + half_gap;
    } else if (b.discriminant < 0.0) {
        b.kind = BranchKind::ImaginaryPair;
        b.b_minus = cplx(c, -half_gap);
        b.b_plus = cplx(c, half_gap);
    } else {
        b.kind = BranchKind::Coincident;
        b.b_minus = c;
        b.b_plus = c;
    }
    return b;
}

namespace {

/// Angle of z measured counterclockwise from the direction `ref`, in [0, 2 pi).
double angle_from(cplx z, double ref) {
    double a = std::arg(z) - ref;
    a = std::fmod(a, 2.0 * pi);
    if (a < 0.0) a += 2.0 * pi;
    if (a >= 2.0 * pi) a -= 2.0 * pi;
    return a;
}

}  // namespace

cplx branch_sqrt(const DispersionParams& p, cplx k) {
    const BranchData b = branch_points(p);
    if (b.kind == BranchKind::Coincident) return k - p.center();

    const cplx zm = k - b.b_minus;
    const cplx zp = k - b.b_plus;
    const double rm = std::abs(zm);
    const double rp = std::abs(zp);
    if (rm == 0.0 || rp == 0.0) return 0.0;

    if (b.kind == BranchKind::RealPair) {
        if (k.imag() == 0.0 && k.real() > b.b_minus.real() && k.real() < b.b_plus.real()) {
            throw BranchCutPoint("k lies strictly inside the real branch cut");
        }
        const double tm = angle_from(zm, 0.0);
        const double tp = angle_from(zp, 0.0);
        return std::sqrt(rm * rp) * std::exp(I * (0.5 * (tm + tp)));
    }

    if (k.real() == p.center() && k.imag() > b.b_minus.imag() && k.imag() < b.b_plus.imag()) {
        throw BranchCutPoint("k lies strictly inside the vertical branch cut");
    }
    const double tm = angle_from(zm, 0.5 * pi);
    const double tp = angle_from(zp, 0.5 * pi);
    return std::sqrt(rm * rp) * std::exp(I * (0.5 * (tm + tp + pi)));
}

SymmetryTriple symmetries(const DispersionParams& p, cplx k) {
    const cplx s = branch_sqrt(p, k);
    const cplx mid = -0.5 * (k - p.alpha / p.beta);
    const cplx half = (0.5 * std::sqrt(3.0)) * I * s;
    return {k, mid + half, mid - half};
}

MuFactors mu_factors(const SymmetryTriple& t) {
    return {t.nu_plus - t.nu_minus, t.nu_minus - t.nu0, t.nu0 - t.nu_plus};
}

}  // namespace hnls
