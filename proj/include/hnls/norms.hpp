#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hnls/data.hpp"
#include "hnls/types.hpp"

namespace hnls {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

enum class NormKind { SobolevInterval, BesselInterval, MixedTime };

/// Exponents of a spatial or space-time norm. p and q may be infinity.
struct NormSpec {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    NormKind kind = NormKind::SobolevInterval;

    void validate() const;
};

/// H^s(0, ell) norm. Integer s: sum over j <= s of the L2 norms of the j-th
/// derivatives. Fractional s: whole-line Fourier multiplier norm of the
/// reflect-and-taper extension (see extend_periodic).
double sobolev_norm(const SpatialProfile& profile, double s);

/// Bessel potential norm: L^p(0, ell) norm of the restriction of
/// F^{-1}{(1 + k^2)^{s/2} F{E phi}}, where E is the extension.
double bessel_norm(const SpatialProfile& profile, double s, double p);

/// Plain L^p(0, ell) norm (grid maximum for p = infinity).
double lp_norm(const SpatialProfile& profile, double p);

/// Spatial norm selected by spec.kind (SobolevInterval or BesselInterval).
double spatial_norm(const SpatialProfile& profile, const NormSpec& spec);

/// H^s(0, T) norm of a boundary time series.
double time_sobolev_norm(const TimeSeries& series, double s);

/// L^q(0, T) norm of the per-slice spatial norms of a field on a uniform
/// x grid starting at 0. q = infinity takes the maximum over the t grid.
double mixed_norm(const Field& field, double q, const NormSpec& spatial);

/// True iff q, p >= 2 and 3/q + 1/p = 1/2 to 1e-12.
bool check_admissible_pair(double q, double p);

/// Smooth extension of uniform samples on [0, ell] to one period of length
/// 4 ell. Samples are returned for the points -ell + j h, j = 0..4(n-1)-1,
/// with h = ell/(n-1); the original samples occupy indices n-1..2(n-1).
std::vector<cplx> extend_periodic(const std::vector<cplx>& samples);

/// One row of a norm table.
struct NormRow {
    std::string quantity;
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    double value = 0.0;
};

}  // namespace hnls
