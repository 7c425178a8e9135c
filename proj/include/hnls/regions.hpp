#pragma once

#include <iosfwd>
#include <vector>

#include "hnls/dispersion.hpp"
#include "hnls/types.hpp"

namespace hnls {

enum class RegionLabel { D0, DPlus, DMinus, Outside, Boundary };
enum class SegmentKind { HyperbolaBranch, CircularArc, RealRay };

const char* region_name(RegionLabel r);

/// Closed form of Im omega(k).
double im_omega(const DispersionParams& p, cplx k);
RegionLabel classify_region(const DispersionParams& p, cplx k, double tol);
/// Scale-aware classification tolerance 1e-12 (1 + M_Delta).
double default_classification_tol(const DispersionParams& p, double ell);

/// Radius of the excluded disk around alpha/(3 beta).
double r_delta(const DispersionParams& p, double ell);
/// Bound on |omega| over that disk.
double m_delta(const DispersionParams& p, double ell);
/// Exponential-sum denominator of the solution formula.
cplx delta_fn(const DispersionParams& p, double ell, cplx k);

/// Half-angle, measured from the upward vertical, of the arc of radius
/// `radius` centred at alpha/(3 beta) that lies between the two upper
/// branches of the curve Im omega = 0.
double arc_half_angle(const DispersionParams& p, double radius);

/// One oriented piece of the boundary of the punctured regions.
struct ContourSegment {
    int id = 0;  ///< 1..9 in traversal order, starting at the upper-left branch
    SegmentKind kind = SegmentKind::RealRay;
    RegionLabel region = RegionLabel::D0;
    double param_lo = 0.0;
    double param_hi = 0.0;
    int orientation = 1;  ///< +1 when traversed with increasing parameter

    // Geometry.
    double center = 0.0;  ///< alpha / (3 beta)
    double radius = 0.0;  ///< arc radius
    int sx = 1;           ///< sign of Re(k - center) on hyperbola branches and rays
    int sy = 1;           ///< sign of Im k on hyperbola branches
    double beta = 1.0;
    double disc = 0.0;

    /// Quadrature in the parameter (weights are positive).
    std::vector<double> params;
    std::vector<double> weights;

    cplx point(double s) const;
    cplx tangent(double s) const;
    /// First and last points in traversal order.
    cplx first_point() const;
    cplx last_point() const;
    /// Quadrature node k and oriented complex weight dk for entry j.
    cplx node(std::size_t j) const { return point(params[j]); }
    cplx dk(std::size_t j) const { return static_cast<double>(orientation) * weights[j] * tangent(params[j]); }
};

struct ContourSet {
    std::vector<ContourSegment> segments;
    double r_delta = 0.0;  ///< arc radius
    double phi0 = 0.0;
    double truncation_radius = 0.0;
    int nodes_per_segment = 0;
};

/// The nine segments without quadrature nodes, for an arc radius `radius`
/// and truncation at |k - alpha/(3 beta)| = truncation_radius.
std::vector<ContourSegment> contour_geometry(const DispersionParams& p, double radius,
                                             double truncation_radius);

/// Contour set around the disk of radius r_delta(p, ell), truncated at
/// truncation_radius, with Gauss-Legendre panels of 8 nodes whose width is
/// halved next to finite junctions.
ContourSet build_contour_set(const DispersionParams& p, double ell, double truncation_radius,
                             int nodes_per_segment);

/// CSV rows: segment_id, param, re_k, im_k, weight (signed parameter weight).
void write_contour_csv(std::ostream& os, const ContourSet& set);

}  // namespace hnls
