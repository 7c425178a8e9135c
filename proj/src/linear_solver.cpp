#include "hnls/linear_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "hnls/errors.hpp"
#include "hnls/quadrature.hpp"
#include "hnls/regions.hpp"
#include "hnls/transforms.hpp"

namespace hnls {

void QuadratureBudget::validate() const {
    if (contour_nodes < 2) throw ConfigInvalid("budget.contour_nodes must be at least 2");
    if (real_axis_nodes < 2) throw ConfigInvalid("budget.real_axis_nodes must be at least 2");
    if (!(tolerance > 0.0)) throw ConfigInvalid("budget.tolerance must be positive");
    if (!(real_axis_window >= 0.0)) throw ConfigInvalid("budget.real_axis_window must be nonnegative");
}

namespace {

constexpr int kCornerOrder = 4;
constexpr double kPanelPhase = 10.0;
constexpr double kArcPanelPhase = 2.5;
constexpr double kPhaseBudget = 1e4;
constexpr double kExponentCap = 650.0;
constexpr int kBlock = 2048;
// A truncated tail still this large relative to the peak is treated as divergence.
constexpr double kDivergenceFraction = 1e-3;

double sup_series(const TimeSeries& s) {
    double m = 0.0;
    for (const cplx& v : s.samples) m = std::max(m, std::abs(v));
    return m;
}

bool is_uniform(const std::vector<double>& g) {
    const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        if (std::abs(g[i + 1] - g[i] - h) > 1e-9 * std::abs(h)) return false;
    }
    return true;
}

FilonRule uniform_rule(double a, double length, int intervals) {
    return FilonRule(a, length / intervals, intervals, std::min(4, intervals));
}

// ---------------------------------------------------------------------------
// Corner subtraction: a polynomial P matching the end jets of u0, evolved
// exactly as w = sum_n t^n / n! L^n P with L = -beta D^3 + i alpha D^2 - delta D.

using Poly = std::vector<cplx>;  // coefficients in xi = x / ell

Poly poly_derivative(const Poly& c) {
    if (c.size() <= 1) return Poly{0.0};
    Poly d(c.size() - 1);
    for (std::size_t n = 1; n < c.size(); ++n) d[n - 1] = static_cast<double>(n) * c[n];
    return d;
}

cplx poly_eval(const Poly& c, double xi) {
    cplx s = 0.0;
    for (std::size_t n = c.size(); n-- > 0;) s = s * xi + c[n];
    return s;
}

bool poly_is_zero(const Poly& c) {
    return std::all_of(c.begin(), c.end(), [](const cplx& v) { return v == cplx(0.0); });
}

/// Derivatives d^j/dxi^j of u0 at one end for j = 0..m, from a least-squares
/// polynomial fit to the samples nearest to that end.
std::vector<cplx> endpoint_jet(const SpatialProfile& u0, bool right, int m) {
    const std::vector<double> xs = u0.grid();
    const int n = static_cast<int>(xs.size());
    const int npts = std::min(n, 16);
    const int deg = std::min(npts - 2, 10);
    const double x_end = right ? u0.ell : 0.0;
    const double span = right ? u0.ell - xs[n - npts] : xs[npts - 1];
    Eigen::MatrixXcd A(npts, deg + 1);
    Eigen::VectorXcd b(npts);
    for (int r = 0; r < npts; ++r) {
        const int idx = right ? n - npts + r : r;
        const double s = (xs[idx] - x_end) / span;
        double pw = 1.0;
        for (int j = 0; j <= deg; ++j) {
            A(r, j) = pw;
            pw *= s;
        }
        b(r) = u0.samples[idx];
    }
    const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
    std::vector<cplx> jet(m + 1, 0.0);
    double fact = 1.0;
    for (int j = 0; j <= m && j <= deg; ++j) {
        if (j > 0) fact *= j;
        jet[j] = c(j) * fact * std::pow(u0.ell / span, j);
    }
    return jet;
}

struct CornerSolution {
    double ell = 1.0;
    int order = 0;
    std::vector<Poly> terms;  // L^n P, n = 0, 1, ...

    CornerSolution(const ProblemData& data) : ell(data.ell) {
        const int n = static_cast<int>(data.u0.samples.size());
        order = std::max(0, std::min(kCornerOrder, (std::min(n, 16) - 4) / 2));
        const int m = order;
        const int deg = 2 * m + 1;
        const std::vector<cplx> j0 = endpoint_jet(data.u0, false, m);
        const std::vector<cplx> j1 = endpoint_jet(data.u0, true, m);
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(deg + 1, deg + 1);
        Eigen::VectorXcd b(deg + 1);
        for (int j = 0; j <= m; ++j) {
            // d^j/dxi^j at xi = 0 and xi = 1.
            double fj = 1.0;
            for (int q = 2; q <= j; ++q) fj *= q;
            A(j, j) = fj;
            b(j) = j0[j];
            for (int c = j; c <= deg; ++c) {
                double f = 1.0;
                for (int q = c - j + 1; q <= c; ++q) f *= q;
                A(m + 1 + j, c) = f;
            }
            b(m + 1 + j) = j1[j];
        }
        const Eigen::VectorXcd pc = A.partialPivLu().solve(b);
        Poly p(pc.data(), pc.data() + pc.size());
        const DispersionParams& q = data.params;
        const double l1 = 1.0 / ell, l2 = l1 * l1, l3 = l2 * l1;
        terms.push_back(p);
        for (int it = 0; it < deg + 2; ++it) {
            const Poly& c = terms.back();
            const Poly d1 = poly_derivative(c);
            const Poly d2 = poly_derivative(d1);
            const Poly d3 = poly_derivative(d2);
            Poly next(d1.size(), 0.0);
            for (std::size_t k = 0; k < d1.size(); ++k) next[k] -= q.delta * l1 * d1[k];
            for (std::size_t k = 0; k < d2.size(); ++k) next[k] += I * q.alpha * l2 * d2[k];
            for (std::size_t k = 0; k < d3.size(); ++k) next[k] -= q.beta * l3 * d3[k];
            if (poly_is_zero(next)) break;
            terms.push_back(next);
        }
    }

    /// d^dx/dx^dx w(x, t).
    cplx eval(double x, double t, int dx = 0) const {
        cplx s = 0.0;
        double tn = 1.0;
        for (std::size_t n = 0; n < terms.size(); ++n) {
            if (n > 0) tn *= t / static_cast<double>(n);
            Poly c = terms[n];
            for (int d = 0; d < dx; ++d) c = poly_derivative(c);
            s += tn * poly_eval(c, x / ell);
        }
        return s * std::pow(1.0 / ell, dx);
    }
};

// ---------------------------------------------------------------------------
// Smooth extension past T followed by a cutoff that vanishes at Tf.

struct TimeExtension {
    double T;
    double Tf;
    ReflectionExtension ext = reflection_extension(kCornerOrder);

    cplx operator()(const std::function<cplx(double)>& r, double t) const {
        if (t <= T) return r(std::max(t, 0.0));
        const double s = t - T;
        cplx v = 0.0;
        for (std::size_t j = 0; j < ext.a.size(); ++j) v += ext.a[j] * r(T - ext.b[j] * s);
        return v * smooth_step_down(s / (Tf - T));
    }
};

// ---------------------------------------------------------------------------
// Blocked accumulation U += E_x C with E_x(i, n) = exp(i k_n x_i).

class FieldAccumulator {
public:
    FieldAccumulator(const std::vector<double>& x, const std::vector<double>& t)
        : x_(x), t_(t), U_(Eigen::MatrixXcd::Zero(x.size(), t.size())),
          Ex_(x.size(), kBlock), C_(kBlock, t.size()) {}

    void next_row(cplx k) {
        if (fill_ == kBlock) flush();
        for (std::size_t i = 0; i < x_.size(); ++i) Ex_(i, fill_) = std::exp(I * k * x_[i]);
        ++count_;
        ++fill_;
    }
    /// Adds coef exp(i omega t_j) exp(i k x_i).
    void add_mode(cplx k, cplx w, cplx coef) {
        next_row(k);
        const int r = fill_ - 1;
        for (std::size_t j = 0; j < t_.size(); ++j) C_(r, j) = coef * std::exp(I * w * t_[j]);
    }
    void set(int row, std::size_t j, cplx v) { C_(row, j) = v; }
    int current_row() const { return fill_ - 1; }
    void flush() {
        if (fill_ == 0) return;
        U_.noalias() += Ex_.leftCols(fill_) * C_.topRows(fill_);
        fill_ = 0;
    }
    const Eigen::MatrixXcd& result() {
        flush();
        return U_;
    }
    long count() const { return count_; }

private:
    const std::vector<double>& x_;
    const std::vector<double>& t_;
    Eigen::MatrixXcd U_;
    Eigen::MatrixXcd Ex_;
    Eigen::MatrixXcd C_;
    int fill_ = 0;
    long count_ = 0;
};

// ---------------------------------------------------------------------------

struct PanelRecord {
    double dist_lo;
    double dist_hi;
    double density;
};

/// Window statistics over the trailing panels covering a distance of at least 1.
struct WindowMax {
    double value = 0.0;
    bool complete = false;
    std::size_t first = 0;
};

WindowMax trailing_window(const std::vector<PanelRecord>& panels, std::size_t end) {
    WindowMax w;
    if (end == 0) return w;
    const double top = panels[end - 1].dist_hi;
    for (std::size_t i = end; i-- > 0;) {
        w.value = std::max(w.value, panels[i].density);
        w.first = i;
        if (top - panels[i].dist_lo >= 1.0) {
            w.complete = true;
            break;
        }
    }
    return w;
}

const ProblemData& validated(const ProblemData& data, const QuadratureBudget& budget) {
    data.validate();
    budget.validate();
    return data;
}

class Solver {
public:
    Solver(const ProblemData& data, const OutputGrid& grid, const QuadratureBudget& budget)
        : data_(validated(data, budget)), p_(data.params), budget_(budget), corner_(data) {
        if (grid.nx < 2 || grid.nt < 2) throw ConfigInvalid("output grid needs at least 2 points per axis");
        ell_ = data.ell;
        T_ = data.horizon;
        out_ = make_field(ell_, T_, grid);
        const double h_out = T_ / (grid.nt - 1);
        n_ext_ = static_cast<int>(std::ceil(0.5 * T_ / h_out - 1e-9));
        n_ext_ = std::max(n_ext_, 1);
        Tf_ = T_ + n_ext_ * h_out;
        h_out_ = h_out;
        extension_ = TimeExtension{T_, Tf_};
        scale_ = data_scale(data);

        const double D = p_.discriminant();
        rho_ = std::max(1.2 * 2.0 / (3.0 * p_.beta) * std::sqrt(std::abs(D)), 1.0 / ell_);
        phi0_ = arc_half_angle(p_, rho_);

        build_initial_remainder();
        build_boundary_remainders();
        build_forcing();
    }

    Field run(SolveDiagnostics* diag) {
        FieldAccumulator acc(out_.x, out_.t);
        SolveDiagnostics d;
        d.arc_radius = rho_;
        d.phi0 = phi0_;
        d.extended_horizon = Tf_;
        d.corner_order = corner_.order;
        if (data_scale(data_) == 0.0) {
            if (diag != nullptr) *diag = d;
            return out_;
        }

        d.segments.push_back(real_half_line(acc, +1, 0));
        d.segments.push_back(real_half_line(acc, -1, 10));
        const double far = budget_.real_axis_window > 0.0 ? budget_.real_axis_window : 1e300;
        const std::vector<ContourSegment> segs = contour_geometry(p_, rho_, std::max(far, rho_));
        for (const ContourSegment& s : segs) {
            if (s.kind == SegmentKind::CircularArc) {
                d.segments.push_back(arc(acc, s, d.max_arc_growth));
            } else {
                d.segments.push_back(open_segment(acc, s));
            }
        }
        const Eigen::MatrixXcd& U = acc.result();
        d.total_nodes = acc.count();
        for (const SegmentReport& r : d.segments) d.tolerance_met = d.tolerance_met && r.tolerance_met;

        Field out = out_;
        for (std::size_t i = 0; i < out.nx(); ++i) {
            for (std::size_t j = 0; j < out.nt(); ++j) {
                const cplx v = U(i, j) + corner_.eval(out.x[i], out.t[j]);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                    throw QuadratureDiverged("solve_full produced a non-finite value");
                }
                out(i, j) = v;
            }
        }
        if (diag) *diag = d;
        return out;
    }

private:
    void build_initial_remainder() {
        nx_fine_ = std::max(512, 4 * static_cast<int>(data_.u0.samples.size()));
        r0_.resize(nx_fine_ + 1);
        for (int i = 0; i <= nx_fine_; ++i) {
            const double x = ell_ * i / nx_fine_;
            r0_[i] = data_.u0.at(x) - corner_.eval(x, 0.0);
        }
        rx_fine_ = std::make_unique<FilonRule>(uniform_rule(0.0, ell_, nx_fine_));
    }

    void build_boundary_remainders() {
        std::size_t most = std::max({data_.g0.samples.size(), data_.h0.samples.size(), data_.h1.samples.size()});
        nt_fine_ = std::max(512, 4 * static_cast<int>(most));
        rt_fine_ = std::make_unique<FilonRule>(uniform_rule(0.0, Tf_, nt_fine_));
        auto rg = [&](double t) { return data_.g0.at(t) - corner_.eval(0.0, t); };
        auto rh0 = [&](double t) { return data_.h0.at(t) - corner_.eval(ell_, t); };
        auto rh1 = [&](double t) { return data_.h1.at(t) - corner_.eval(ell_, t, 1); };
        rg_.resize(nt_fine_ + 1);
        rh0_.resize(nt_fine_ + 1);
        rh1_.resize(nt_fine_ + 1);
        for (int j = 0; j <= nt_fine_; ++j) {
            const double t = Tf_ * j / nt_fine_;
            rg_[j] = extension_(rg, t);
            rh0_[j] = extension_(rh0, t);
            rh1_[j] = extension_(rh1, t);
        }
    }

    void build_forcing() {
        has_forcing_ = !data_.forcing.empty();
        if (!has_forcing_) return;
        const Field& f = data_.forcing;
        if (!is_uniform(f.x) || !is_uniform(f.t) || f.x.front() != 0.0 || f.t.front() != 0.0) {
            throw ConfigInvalid("forcing must be sampled on uniform grids starting at x = 0 and t = 0");
        }
        nxf_ = static_cast<int>(f.nx());
        const int nt_out = static_cast<int>(out_.nt());
        const int nt_ext = nt_out - 1 + n_ext_;
        f_out_.resize(nxf_, nt_out);
        f_ext_.resize(nxf_, nt_ext + 1);
        const double hf = f.t[1] - f.t[0];
        for (int i = 0; i < nxf_; ++i) {
            const UniformInterpolator row(0.0, hf, f.row(i));
            auto fr = [&](double t) { return row(std::min(t, T_)); };
            for (int j = 0; j < nt_out; ++j) f_out_(i, j) = fr(out_.t[j]);
            for (int j = 0; j <= nt_ext; ++j) f_ext_(i, j) = extension_(fr, j * h_out_);
        }
        rx_f_ = std::make_unique<FilonRule>(uniform_rule(0.0, ell_, nxf_ - 1));
        rt_ext_ = std::make_unique<FilonRule>(FilonRule(0.0, h_out_, nt_ext, std::min(4, nt_ext)));
        rt_out_ = std::make_unique<FilonRule>(FilonRule(0.0, h_out_, nt_out - 1, std::min(4, nt_out - 1)));
        wx_f_.resize(nxf_);
        wt_ext_.resize(nt_ext + 1);
    }

    cplx r0_hat(cplx kappa) const { return rx_fine_->integrate(r0_.data(), kappa); }

    /// Time transform of the forcing rows at w, then x transforms at each kappa.
    void forcing_phi(cplx w, const cplx* kappa, int count, cplx* out) {
        rt_ext_->weights(w, wt_ext_.data());
        const Eigen::Map<const Eigen::VectorXcd> wt(wt_ext_.data(), static_cast<Eigen::Index>(wt_ext_.size()));
        const Eigen::VectorXcd g = f_ext_ * wt;
        for (int c = 0; c < count; ++c) {
            rx_f_->weights(kappa[c], wx_f_.data());
            cplx s = 0.0;
            for (int i = 0; i < nxf_; ++i) s += wx_f_[i] * g(i);
            out[c] = s;
        }
    }

    double exponent_reach(cplx k) const {
        const SymmetryTriple s = symmetries(p_, k);
        return ell_ * std::max({std::abs(s.nu0.imag()), std::abs(s.nu_plus.imag()), std::abs(s.nu_minus.imag())});
    }

    double phase_rate(cplx k, cplx tangent) const {
        return (std::abs(omega_prime(p_, k)) * Tf_ + 2.0 * ell_) * std::abs(tangent);
    }

    /// Contour node: pushes the mode and returns its coefficient density.
    double contour_node(FieldAccumulator& acc, const ContourSegment& seg, double s, double wparam) {
        const cplx k = seg.point(s);
        const cplx tangent = seg.tangent(s);
        const cplx dk = static_cast<double>(seg.orientation) * wparam * tangent;
        const SymmetryTriple sym = symmetries(p_, k);
        const cplx np = sym.nu_plus, nm = sym.nu_minus;
        for (cplx z : {k, np, nm}) {
            if (std::abs(z.imag()) * ell_ > overflow_guard) {
                throw ExponentialOverflow("contour node exponent exceeds the overflow guard");
            }
        }
        const cplx w = omega(p_, k);
        const cplx wp = omega_prime(p_, k);
        const cplx G0 = rt_fine_->integrate(rg_.data(), w);
        const cplx H0 = rt_fine_->integrate(rh0_.data(), w);
        const cplx H1 = rt_fine_->integrate(rh1_.data(), w);
        const cplx kap[3] = {k, np, nm};
        cplx F[3];
        for (int c = 0; c < 3; ++c) F[c] = r0_hat(kap[c]);
        if (has_forcing_) {
            cplx phi[3];
            forcing_phi(w, kap, 3, phi);
            for (int c = 0; c < 3; ++c) F[c] -= I * phi[c];
        }
        const cplx Ep = std::exp(-I * np * ell_);
        const cplx Em = std::exp(-I * nm * ell_);
        const cplx Ek = std::exp(-I * k * ell_);
        const cplx Delta = (np - nm) * Ek + (nm - k) * Ep + (k - np) * Em;
        cplx A = 0.0;
        cplx num = (nm - k) * F[1] - (np - k) * F[2] - (np - nm) * wp * G0 - (nm * Ep - np * Em) * wp * H0 -
                   I * (Ep - Em) * wp * H1;
        if (seg.region == RegionLabel::D0) {
            A = -((nm - k) * Ep - (np - k) * Em) * F[0] / Delta;
        } else {
            num += (np - nm) * F[0];
        }
        const cplx Bp = num / Delta * Ek;
        const cplx coef = (A + Bp) * dk / (2.0 * pi);
        acc.add_mode(k, w, coef);
        const double growth = std::max(1.0, std::exp(-k.imag() * ell_));
        return std::abs(A + Bp) * std::abs(tangent) * growth / (2.0 * pi);
    }

    /// Whole-line node at real k.
    double real_node(FieldAccumulator& acc, double k, double wk) {
        const double w = omega(p_, k).real();
        const cplx r0h = r0_hat(k);
        const double base = wk / (2.0 * pi);
        if (!has_forcing_) {
            acc.add_mode(k, w, base * r0h);
            return std::abs(r0h) / (2.0 * pi);
        }
        const int nt_out = static_cast<int>(out_.nt());
        rx_f_->weights(k, wx_f_.data());
        std::vector<cplx> fh(nt_out, 0.0), q(nt_out);
        double fmax = 0.0;
        for (int j = 0; j < nt_out; ++j) {
            cplx s = 0.0;
            for (int i = 0; i < nxf_; ++i) s += wx_f_[i] * f_out_(i, j);
            fh[j] = s;
            fmax = std::max(fmax, std::abs(s));
        }
        rt_out_->cumulative(fh.data(), w, q.data());
        acc.next_row(k);
        const int r = acc.current_row();
        for (int j = 0; j < nt_out; ++j) {
            acc.set(r, j, base * std::exp(I * w * out_.t[j]) * (r0h - I * q[j]));
        }
        return (std::abs(r0h) + T_ * fmax) / (2.0 * pi);
    }

    /// Shared outward march. `panel` integrates [a, b] and returns the panel
    /// density; `point` gives the node location for the caps.
    template <class PanelFn, class PointFn, class TangentFn, class DistFn, class ReachFn>
    SegmentReport march(int id, double s0, double s_fixed_end, double dist0, PanelFn panel, PointFn point,
                        TangentFn tangent, DistFn dist, ReachFn reach) {
        SegmentReport rep;
        rep.id = id;
        const bool adaptive = budget_.real_axis_window <= 0.0;
        const double threshold_floor = budget_.tolerance * scale_;
        std::vector<PanelRecord> panels;
        double peak = 0.0;
        double phase = 0.0;
        double s = s0;
        while (true) {
            if (!adaptive && s >= s_fixed_end) break;
            const cplx k = point(s);
            const double rate = phase_rate(k, tangent(s));
            double ds = std::min(0.5, kPanelPhase / std::max(rate, 1e-12));
            if (!adaptive) ds = std::min(ds, s_fixed_end - s);
            const double b = s + ds;
            const double dens = panel(s, b);
            peak = std::max(peak, dens);
            phase += rate * ds;
            panels.push_back(PanelRecord{dist(s), dist(b), dens});
            s = b;
            if (!adaptive) continue;
            const double threshold = std::max(threshold_floor, budget_.tolerance * peak);
            const WindowMax win = trailing_window(panels, panels.size());
            if (dist(s) >= dist0 + 1.0 && win.complete && win.value < threshold) {
                rep.tolerance_met = true;
                break;
            }
            if (phase > kPhaseBudget || reach(s) > kExponentCap) {
                const WindowMax prev = trailing_window(panels, win.first);
                rep.tail_ratio = prev.value > 0.0 ? win.value / prev.value : 0.0;
                rep.tolerance_met = false;
                if (rep.tail_ratio >= 1.0 && win.value >= kDivergenceFraction * std::max(peak, scale_) && prev.complete) {
                    throw QuadratureDiverged("contour segment " + std::to_string(id) +
                                             ": integrand tail does not decay before the truncation cap");
                }
                break;
            }
        }
        rep.reach = dist(s);
        return rep;
    }

    SegmentReport real_half_line(FieldAccumulator& acc, int sign, int id) {
        const GaussLegendre gl = gauss_legendre(budget_.real_axis_nodes);
        const double c = p_.center();
        // Parameter s = |k|; the fixed window is measured from the centre like the contours.
        const double fixed_end = budget_.real_axis_window > 0.0
                                     ? std::max(0.0, budget_.real_axis_window + sign * c)
                                     : 0.0;
        long before = acc.count();
        auto panel = [&](double a, double b) {
            std::vector<double> xs, ws;
            append_gl_panel(gl, a, b, xs, ws);
            double dens = 0.0;
            for (std::size_t j = 0; j < xs.size(); ++j) dens = std::max(dens, real_node(acc, sign * xs[j], ws[j]));
            return dens;
        };
        auto point = [&](double s) { return cplx(sign * s, 0.0); };
        auto tangent = [](double) { return cplx(1.0, 0.0); };
        SegmentReport r = march(id, 0.0, fixed_end, 0.0, panel, point, tangent, [](double s) { return s; },
                                [](double) { return 0.0; });
        r.nodes = static_cast<int>(acc.count() - before);
        return r;
    }

    SegmentReport open_segment(FieldAccumulator& acc, const ContourSegment& seg) {
        const GaussLegendre gl = gauss_legendre(budget_.contour_nodes);
        long before = acc.count();
        auto panel = [&](double a, double b) {
            std::vector<double> xs, ws;
            append_gl_panel(gl, a, b, xs, ws);
            double dens = 0.0;
            for (std::size_t j = 0; j < xs.size(); ++j) dens = std::max(dens, contour_node(acc, seg, xs[j], ws[j]));
            return dens;
        };
        auto point = [&](double s) { return seg.point(s); };
        auto tangent = [&](double s) { return seg.tangent(s); };
        auto dist = [&](double s) { return std::abs(seg.point(s) - p_.center()); };
        auto reach = [&](double s) { return exponent_reach(seg.point(s)); };
        SegmentReport r = march(seg.id, seg.param_lo, seg.param_hi, rho_, panel, point, tangent, dist, reach);
        r.nodes = static_cast<int>(acc.count() - before);
        return r;
    }

    SegmentReport arc(FieldAccumulator& acc, const ContourSegment& seg, double& max_growth) {
        const GaussLegendre gl = gauss_legendre(budget_.contour_nodes);
        const double reach = std::abs(p_.center()) + rho_;
        const double wp_max = 3.0 * p_.beta * reach * reach + 2.0 * std::abs(p_.alpha) * reach + std::abs(p_.delta);
        const double rate = rho_ * (wp_max * Tf_ + 2.0 * ell_);
        const double span = seg.param_hi - seg.param_lo;
        const int panels = std::max(2, static_cast<int>(std::ceil(span * rate / kArcPanelPhase)));
        long before = acc.count();
        for (int pnl = 0; pnl < panels; ++pnl) {
            std::vector<double> xs, ws;
            append_gl_panel(gl, seg.param_lo + span * pnl / panels, seg.param_lo + span * (pnl + 1) / panels, xs, ws);
            for (std::size_t j = 0; j < xs.size(); ++j) {
                contour_node(acc, seg, xs[j], ws[j]);
                const double im = omega(p_, seg.point(xs[j])).imag();
                max_growth = std::max(max_growth, std::exp(-im * Tf_));
            }
        }
        SegmentReport r;
        r.id = seg.id;
        r.reach = rho_;
        r.nodes = static_cast<int>(acc.count() - before);
        return r;
    }

    const ProblemData& data_;
    const DispersionParams p_;
    QuadratureBudget budget_;
    CornerSolution corner_;
    TimeExtension extension_{0.0, 1.0};
    Field out_;
    double ell_ = 1.0, T_ = 1.0, Tf_ = 1.0, h_out_ = 1.0, scale_ = 0.0, rho_ = 1.0, phi0_ = 0.0;
    int n_ext_ = 1;

    int nx_fine_ = 0;
    std::vector<cplx> r0_;
    std::unique_ptr<FilonRule> rx_fine_;

    int nt_fine_ = 0;
    std::vector<cplx> rg_, rh0_, rh1_;
    std::unique_ptr<FilonRule> rt_fine_;

    bool has_forcing_ = false;
    int nxf_ = 0;
    Eigen::MatrixXcd f_out_, f_ext_;
    std::unique_ptr<FilonRule> rx_f_, rt_ext_, rt_out_;
    std::vector<cplx> wx_f_, wt_ext_;
};

}  // namespace

double data_scale(const ProblemData& data) {
    double u = 0.0;
    for (const cplx& v : data.u0.samples) u = std::max(u, std::abs(v));
    double f = 0.0;
    for (const cplx& v : data.forcing.values) f = std::max(f, std::abs(v));
    return data.ell * u + data.horizon * (sup_series(data.g0) + sup_series(data.h0) + sup_series(data.h1)) +
           data.ell * data.horizon * f;
}

Field solve_full(const ProblemData& data, const OutputGrid& grid, const QuadratureBudget& budget,
                 SolveDiagnostics* diagnostics) {
    Solver solver(data, grid, budget);
    return solver.run(diagnostics);
}

Field solve_reduced(const DispersionParams& params, double ell, const TimeSeries& psi0, const TimeSeries& psi1,
                    const OutputGrid& grid, const QuadratureBudget& budget, SolveDiagnostics* diagnostics) {
    ProblemData d;
    d.params = params;
    d.ell = ell;
    d.horizon = psi0.horizon;
    d.u0.ell = ell;
    d.u0.samples.assign(std::max<std::size_t>(65, psi0.samples.size()), 0.0);
    d.g0.horizon = psi0.horizon;
    d.g0.samples.assign(psi0.samples.size(), 0.0);
    d.h0 = psi0;
    d.h1 = psi1;
    return solve_full(d, grid, budget, diagnostics);
}

Traces evaluate_traces(const Field& field) {
    if (field.nx() < 5) throw GridTooCoarse("evaluate_traces needs at least 5 x points");
    field.validate();
    const std::size_t nx = field.nx(), nt = field.nt();
    const double h = (field.x.back() - field.x.front()) / static_cast<double>(nx - 1);
    Traces tr;
    const double horizon = field.t.back() - field.t.front();
    tr.left_dirichlet.horizon = tr.right_dirichlet.horizon = tr.right_neumann.horizon = horizon;
    for (std::size_t j = 0; j < nt; ++j) {
        tr.left_dirichlet.samples.push_back(field(0, j));
        tr.right_dirichlet.samples.push_back(field(nx - 1, j));
        const std::vector<cplx> s = field.slice(j);
        tr.right_neumann.samples.push_back(uniform_derivative_at(s, h, static_cast<int>(nx - 1), 1, 5));
    }
    return tr;
}

double global_relation_residual(const Field& field, const ProblemData& data, const std::vector<cplx>& k_samples) {
    const double scale = data_scale(data);
    field.validate();
    const std::size_t nx = field.nx(), nt = field.nt();
    if (nx < 8) throw GridTooCoarse("global_relation_residual needs at least 8 x points");
    if (nt < 2) throw GridTooCoarse("global_relation_residual needs at least 2 t points");
    const double ell = field.x.back();
    const double hx = ell / static_cast<double>(nx - 1);
    const double Tfield = field.t.back();
    const int n_int = static_cast<int>(nt - 1);
    const FilonRule rx = uniform_rule(0.0, ell, static_cast<int>(nx - 1));
    const FilonRule rt(0.0, Tfield / n_int, n_int, std::min(4, n_int));
    const IntervalFourier u0_hat(data.u0);
    const DispersionParams& p = data.params;

    // Boundary values on the field time grid.
    std::vector<cplx> g0(nt), g1(nt), g2(nt), h0(nt), h1(nt), h2(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        const std::vector<cplx> s = field.slice(j);
        g0[j] = data.g0.at(field.t[j]);
        h0[j] = data.h0.at(field.t[j]);
        h1[j] = data.h1.at(field.t[j]);
        g1[j] = uniform_derivative_at(s, hx, 0, 1, 8);
        g2[j] = uniform_derivative_at(s, hx, 0, 2, 8);
        h2[j] = uniform_derivative_at(s, hx, static_cast<int>(nx - 1), 2, 8);
    }
    // Forcing on the field grid.
    Field f;
    if (!data.forcing.empty()) {
        const Field& src = data.forcing;
        f = Field(src.x, field.t);
        const double hf = src.t[1] - src.t[0];
        for (std::size_t i = 0; i < src.nx(); ++i) {
            const UniformInterpolator row(0.0, hf, src.row(i));
            for (std::size_t j = 0; j < nt; ++j) f(i, j) = row(field.t[j]);
        }
    }
    const FilonRule* rfx = nullptr;
    std::unique_ptr<FilonRule> rfx_store;
    if (!f.empty()) {
        rfx_store = std::make_unique<FilonRule>(uniform_rule(0.0, ell, static_cast<int>(f.nx() - 1)));
        rfx = rfx_store.get();
    }

    double worst = 0.0;
    std::vector<cplx> integrand(nt), cum(nt);
    for (const cplx k : k_samples) {
        const cplx w = omega(p, k);
        const cplx E = std::exp(-I * k * ell);
        const std::vector<cplx> wx = rx.weights(k);
        std::vector<cplx> wfx;
        if (rfx) wfx = rfx->weights(k);
        for (std::size_t j = 0; j < nt; ++j) {
            const cplx j0 = E * h0[j] - g0[j];
            const cplx j1 = E * h1[j] - g1[j];
            const cplx j2 = E * h2[j] - g2[j];
            cplx b = -p.beta * j2 - I * p.beta * k * j1 + p.beta * k * k * j0 + I * p.alpha * j1 - p.alpha * k * j0 -
                     p.delta * j0;
            if (rfx) {
                cplx fh = 0.0;
                for (std::size_t i = 0; i < f.nx(); ++i) fh += wfx[i] * f(i, j);
                b -= I * fh;
            }
            integrand[j] = b;
        }
        rt.cumulative(integrand.data(), w, cum.data());
        const cplx u0h = u0_hat(k);
        for (std::size_t j = 0; j < nt; ++j) {
            cplx uh = 0.0;
            for (std::size_t i = 0; i < nx; ++i) uh += wx[i] * field(i, j);
            const cplx lhs = std::exp(-I * w * field.t[j]) * uh;
            const cplx rhs = u0h + cum[j];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace hnls
