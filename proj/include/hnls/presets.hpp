#pragma once

#include <string>

#include "hnls/data.hpp"
#include "hnls/dispersion.hpp"
#include "hnls/types.hpp"

namespace hnls {

/// Analytic data preset. Coordinates (center, width, lo, hi) are absolute:
/// positions in x for the initial datum and the forcing, times for the
/// boundary series.
struct PresetSpec {
    std::string kind = "zero";  ///< zero, plane_wave, gaussian, bump, file
    double amplitude = 1.0;
    double a = 2.0;        ///< plane_wave wavenumber
    double center = 0.5;   ///< gaussian centre
    double width = 0.1;    ///< gaussian width
    double lo = 0.0;       ///< bump support start
    double hi = 1.0;       ///< bump support end
    std::string path;      ///< sampled data file for kind = file

    void validate(const std::string& field) const;
};

enum class DataRole { Initial, Left, Right, RightNeumann, Forcing };

/// Smooth bump on (0, 1), flat to all orders at both ends, peak 1 at 1/2.
double unit_bump(double y);

/// Value of an analytic preset in the given role at coordinate s (x for the
/// initial datum and the forcing, t for boundary series). plane_wave is the
/// exact solution amplitude exp(i(a x + omega(a) t)), so its boundary roles
/// carry the matching traces; it is rejected for the forcing.
cplx preset_value(const PresetSpec& spec, DataRole role, double s, const DispersionParams& params, double ell);

struct DataSpec {
    PresetSpec u0;
    PresetSpec g0;
    PresetSpec h0;
    PresetSpec h1;
    PresetSpec forcing;
    int samples = 257;     ///< samples of each analytic profile or series
    int forcing_nx = 65;   ///< forcing grid points in x (analytic presets)
    int forcing_nt = 65;   ///< forcing grid points in t (analytic presets)
};

/// Data of a scenario from presets; file presets must already be loaded into
/// the returned structure by the caller (see load_problem).
ProblemData build_problem(const DispersionParams& params, double ell, double horizon, const DataSpec& spec,
                          cplx kappa = 0.0, double lambda = 3.0);

/// Plane wave exp(i(a x + omega(a) t)) read off as initial and boundary data.
ProblemData plane_wave_problem(const DispersionParams& params, double a, double ell, double horizon,
                               int samples = 257);

/// Gaussian initial datum exp(-((x - center)/width)^2) with zero boundary data.
ProblemData gaussian_problem(const DispersionParams& params, double ell, double horizon, double center,
                             double width, int samples = 257);

/// Compatible bump data: an initial bump supported on [0, ell] and boundary
/// bumps supported inside (0, T], all vanishing to all orders at the corners.
ProblemData bump_problem(const DispersionParams& params, double ell, double horizon, int samples = 257);

}  // namespace hnls
