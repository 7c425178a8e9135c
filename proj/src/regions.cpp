#include "hnls/regions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hnls/errors.hpp"
#include "hnls/quadrature.hpp"

namespace hnls {

const char* region_name(RegionLabel r) {
    switch (r) {
        case RegionLabel::D0: return "D0";
        case RegionLabel::DPlus: return "DPlus";
        case RegionLabel::DMinus: return "DMinus";
        case RegionLabel::Outside: return "Outside";
        case RegionLabel::Boundary: return "Boundary";
    }
    return "?";
}

double im_omega(const DispersionParams& p, cplx k) {
    const double x = k.real() - p.center();
    const double y = k.imag();
    return p.beta * y * (3.0 * x * x - y * y - p.discriminant() / (3.0 * p.beta * p.beta));
}

RegionLabel classify_region(const DispersionParams& p, cplx k, double tol) {
    const double w = im_omega(p, k);
    if (w > tol) return RegionLabel::Outside;
    if (w >= -tol) return RegionLabel::Boundary;
    if (k.imag() > 0.0) return RegionLabel::D0;
    return k.real() - p.center() > 0.0 ? RegionLabel::DPlus : RegionLabel::DMinus;
}

double r_delta(const DispersionParams& p, double ell) {
    const double geometric = 2.0 * std::sqrt(2.0) / (std::sqrt(3.0) * p.beta) * std::sqrt(std::abs(p.discriminant()));
    return std::max(geometric, 9.0 / ell);
}

double m_delta(const DispersionParams& p, double ell) {
    const double r = std::abs(p.center()) + r_delta(p, ell);
    return p.beta * r * r * r + std::abs(p.alpha) * r * r + std::abs(p.delta) * r;
}

double default_classification_tol(const DispersionParams& p, double ell) {
    return 1e-12 * (1.0 + m_delta(p, ell));
}

cplx delta_fn(const DispersionParams& p, double ell, cplx k) {
    const SymmetryTriple s = symmetries(p, k);
    const MuFactors m = mu_factors(s);
    for (cplx z : {s.nu0, s.nu_plus, s.nu_minus}) {
        if (std::abs(z.imag()) * ell > overflow_guard) {
            throw ExponentialOverflow("delta_fn: exponent exceeds the overflow guard");
        }
    }
    return m.mu0 * std::exp(-I * s.nu0 * ell) + m.mu_plus * std::exp(-I * s.nu_plus * ell) +
           m.mu_minus * std::exp(-I * s.nu_minus * ell);
}

double arc_half_angle(const DispersionParams& p, double radius) {
    // On the upper branch 3 X^2 - Y^2 = D / (3 beta^2) with X = radius sin(phi0),
    // Y = radius cos(phi0), so sin^2(phi0) = (1 + D / (3 beta^2 radius^2)) / 4.
    const double s2 = 0.25 * (1.0 + p.discriminant() / (3.0 * p.beta * p.beta * radius * radius));
    if (s2 < 0.0 || s2 > 1.0) {
        throw InvalidTruncation("arc radius does not reach the curve Im omega = 0");
    }
    return std::asin(std::sqrt(s2));
}

cplx ContourSegment::point(double s) const {
    switch (kind) {
        case SegmentKind::CircularArc: return center + radius * std::exp(I * s);
        case SegmentKind::RealRay: return cplx(center + sx * s, 0.0);
        case SegmentKind::HyperbolaBranch: {
            const double x = std::sqrt(3.0 * beta * beta * s * s + disc) / (3.0 * beta);
            return cplx(center + sx * x, sy * s);
        }
    }
    return 0.0;
}

cplx ContourSegment::tangent(double s) const {
    switch (kind) {
        case SegmentKind::CircularArc: return I * radius * std::exp(I * s);
        case SegmentKind::RealRay: return cplx(sx, 0.0);
        case SegmentKind::HyperbolaBranch: {
            const double root = std::sqrt(3.0 * beta * beta * s * s + disc);
            return cplx(sx * beta * s / root, sy);
        }
    }
    return 0.0;
}

cplx ContourSegment::first_point() const { return point(orientation > 0 ? param_lo : param_hi); }
cplx ContourSegment::last_point() const { return point(orientation > 0 ? param_hi : param_lo); }

std::vector<ContourSegment> contour_geometry(const DispersionParams& p, double radius,
                                             double truncation_radius) {
    if (!(truncation_radius >= radius)) {
        throw InvalidTruncation("truncation radius is smaller than the arc radius");
    }
    const double phi0 = arc_half_angle(p, radius);
    const double D = p.discriminant();
    const double r0 = radius * std::cos(phi0);
    const double rmax = std::sqrt(std::max(0.75 * (truncation_radius * truncation_radius - D / (9.0 * p.beta * p.beta)), r0 * r0));

    auto base = [&](int id, SegmentKind kind, RegionLabel region) {
        ContourSegment s;
        s.id = id;
        s.kind = kind;
        s.region = region;
        s.center = p.center();
        s.radius = radius;
        s.beta = p.beta;
        s.disc = D;
        return s;
    };
    auto hyperbola = [&](int id, RegionLabel region, int sx, int sy, int orientation) {
        ContourSegment s = base(id, SegmentKind::HyperbolaBranch, region);
        s.sx = sx;
        s.sy = sy;
        s.param_lo = r0;
        s.param_hi = rmax;
        s.orientation = orientation;
        return s;
    };
    auto arc = [&](int id, RegionLabel region, double from, double to) {
        ContourSegment s = base(id, SegmentKind::CircularArc, region);
        s.param_lo = std::min(from, to);
        s.param_hi = std::max(from, to);
        s.orientation = to > from ? 1 : -1;
        return s;
    };
    auto ray = [&](int id, RegionLabel region, int sx, int orientation) {
        ContourSegment s = base(id, SegmentKind::RealRay, region);
        s.sx = sx;
        s.param_lo = radius;
        s.param_hi = truncation_radius;
        s.orientation = orientation;
        return s;
    };

    std::vector<ContourSegment> segs;
    segs.push_back(hyperbola(1, RegionLabel::D0, -1, 1, -1));
    segs.push_back(arc(2, RegionLabel::D0, 0.5 * pi + phi0, 0.5 * pi - phi0));
    segs.push_back(hyperbola(3, RegionLabel::D0, 1, 1, 1));
    segs.push_back(ray(4, RegionLabel::DPlus, 1, -1));
    segs.push_back(arc(5, RegionLabel::DPlus, 0.0, -(0.5 * pi - phi0)));
    segs.push_back(hyperbola(6, RegionLabel::DPlus, 1, -1, 1));
    segs.push_back(hyperbola(7, RegionLabel::DMinus, -1, -1, -1));
    segs.push_back(arc(8, RegionLabel::DMinus, 1.5 * pi - phi0, pi));
    segs.push_back(ray(9, RegionLabel::DMinus, -1, 1));
    return segs;
}

namespace {

/// Panel edges on [lo, hi] with `panels` panels; the panel touching each end
/// flagged as a junction is half as wide as the others.
std::vector<double> graded_edges(double lo, double hi, int panels, bool junction_lo, bool junction_hi) {
    std::vector<double> widths(panels, 1.0);
    if (panels >= 2) {
        if (junction_lo) widths.front() = 0.5;
        if (junction_hi) widths.back() = 0.5;
    }
    double total = 0.0;
    for (double w : widths) total += w;
    std::vector<double> edges{lo};
    double acc = 0.0;
    for (double w : widths) {
        acc += w;
        edges.push_back(lo + (hi - lo) * acc / total);
    }
    edges.back() = hi;
    return edges;
}

}  // namespace

ContourSet build_contour_set(const DispersionParams& p, double ell, double truncation_radius,
                             int nodes_per_segment) {
    p.validate();
    if (nodes_per_segment < 8) throw InvalidTruncation("nodes_per_segment must be at least 8");
    const double rd = r_delta(p, ell);
    if (truncation_radius < rd) throw InvalidTruncation("truncation radius is smaller than R_Delta");

    ContourSet set;
    set.r_delta = rd;
    set.phi0 = arc_half_angle(p, rd);
    set.truncation_radius = truncation_radius;
    set.nodes_per_segment = nodes_per_segment;
    set.segments = contour_geometry(p, rd, truncation_radius);

    const GaussLegendre gl = gauss_legendre(8);
    const int panels = std::max(1, nodes_per_segment / 8);
    for (ContourSegment& s : set.segments) {
        const bool arc = s.kind == SegmentKind::CircularArc;
        // Hyperbola branches and rays meet the arcs at the lower end of their parameter.
        const auto edges = graded_edges(s.param_lo, s.param_hi, panels, true, arc);
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            append_gl_panel(gl, edges[e], edges[e + 1], s.params, s.weights);
        }
    }
    return set;
}

void write_contour_csv(std::ostream& os, const ContourSet& set) {
    os << "segment_id,param,re_k,im_k,weight\n";
    os << std::setprecision(17);
    for (const ContourSegment& s : set.segments) {
        for (std::size_t j = 0; j < s.params.size(); ++j) {
            const cplx k = s.node(j);
            os << s.id << ',' << s.params[j] << ',' << k.real() << ',' << k.imag() << ','
               << s.orientation * s.weights[j] << '\n';
        }
    }
}

}  // namespace hnls
