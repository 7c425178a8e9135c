#include "hnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "hnls/errors.hpp"
#include "hnls/linear_solver.hpp"
#include "hnls/nonlinear.hpp"
#include "hnls/presets.hpp"
#include "hnls/regions.hpp"
#include "hnls/transforms.hpp"
#include "json.hpp"

namespace hnls {

namespace {

using Rng = std::mt19937_64;

class Check {
public:
    Check(std::string name, double bound, bool upper) {
        r_.name = std::move(name);
        r_.bound = bound;
        r_.upper = upper;
        r_.worst = upper ? 0.0 : std::numeric_limits<double>::infinity();
    }
    void observe(double v) {
        ++r_.samples;
        if (r_.upper) {
            r_.worst = std::max(r_.worst, v);
            if (!(v <= r_.bound)) ++r_.violations;
        } else {
            r_.worst = std::min(r_.worst, v);
            if (!(v >= r_.bound)) ++r_.violations;
        }
    }
    PropertyResult result() const {
        PropertyResult r = r_;
        r.passed = r.violations == 0 && r.samples > 0;
        return r;
    }

private:
    PropertyResult r_;
};

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

cplx random_k(Rng& rng, double box) { return {uniform(rng, -box, box), uniform(rng, -box, box)}; }

// Symmetry triple at k, or nothing when k lies on a branch cut.
bool safe_symmetries(const DispersionParams& p, cplx k, SymmetryTriple& out) {
    try {
        out = symmetries(p, k);
        return true;
    } catch (const BranchCutPoint&) {
        return false;
    }
}

void suite_symmetries(Rng& rng, std::vector<PropertyResult>& out) {
    Check inv("symmetries.omega_invariance", 1e-10, true);
    Check vieta("symmetries.vieta_sum", 1e-12, true);
    Check imsum("symmetries.im_sum_zero", 1e-12, true);
    Check prime("symmetries.omega_prime_identity", 1e-10, true);
    Check root("symmetries.branch_sqrt_square", 1e-12, true);
    Check airy("symmetries.airy_scaling", 1e-12, true);
    constexpr int kSamples = 10000;
    for (const DispersionParams& p : verify_parameter_sets()) {
        for (int n = 0; n < kSamples; ++n) {
            const cplx k = random_k(rng, 10.0);
            SymmetryTriple s;
            if (!safe_symmetries(p, k, s)) {
                --n;
                continue;
            }
            const cplx w = omega(p, k);
            const double scale = 1.0 + std::abs(w);
            inv.observe(std::max(std::abs(omega(p, s.nu_plus) - w), std::abs(omega(p, s.nu_minus) - w)) / scale);
            vieta.observe(std::abs(s.nu0 + s.nu_plus + s.nu_minus - p.alpha / p.beta));
            imsum.observe(std::abs(s.nu0.imag() + s.nu_plus.imag() + s.nu_minus.imag()));
            const MuFactors m = mu_factors(s);
            const cplx wp = omega_prime(p, k);
            prime.observe(std::abs(wp + p.beta * m.mu_plus * m.mu_minus) / std::max(std::abs(wp), 1.0));
            const cplx c = k - p.center();
            const cplx radicand = c * c - 4.0 * p.discriminant() / (9.0 * p.beta * p.beta);
            const cplx r = branch_sqrt(p, k);
            root.observe(std::abs(r * r - radicand) / std::max(std::abs(radicand), 1.0));
        }
    }
    const DispersionParams a{1.0, 0.0, 0.0};
    const cplx e = std::exp(I * (2.0 * pi / 3.0));
    for (int n = 0; n < kSamples; ++n) {
        const double k = uniform(rng, 0.0, 10.0);
        const SymmetryTriple s = symmetries(a, k);
        airy.observe(std::max(std::abs(s.nu_plus - e * k), std::abs(s.nu_minus - std::conj(e) * k)) / (1.0 + k));
    }
    for (const Check* c : {&inv, &vieta, &imsum, &prime, &root, &airy}) out.push_back(c->result());
}

// Point of region `target` with |k - c| in [r_lo, r_hi], by rejection.
cplx sample_region(Rng& rng, const DispersionParams& p, RegionLabel target, double r_lo, double r_hi, double tol) {
    for (;;) {
        const double r = uniform(rng, r_lo, r_hi);
        const double th = uniform(rng, -pi, pi);
        const cplx k = p.center() + r * std::exp(I * th);
        if (classify_region(p, k, tol) == target) return k;
    }
}

const cplx& nu_of(const SymmetryTriple& s, RegionLabel r) {
    if (r == RegionLabel::D0) return s.nu0;
    return r == RegionLabel::DPlus ? s.nu_plus : s.nu_minus;
}

constexpr RegionLabel kRegions[] = {RegionLabel::D0, RegionLabel::DPlus, RegionLabel::DMinus};
constexpr int kRegionSamples = 1000;
constexpr double kEll = 1.0;

void suite_regions(Rng& rng, std::vector<PropertyResult>& out) {
    Check law("regions.dchar_sign_law", 0.0, true);
    Check excl("regions.dschar_exclusivity", 0.0, true);
    Check b0("regions.chardbar_d0_lower_bound", std::sqrt(23.0) / (4.0 * std::sqrt(2.0)), false);
    Check bpm("regions.chardbar_dpm_lower_bound", 0.25, false);
    for (const DispersionParams& p : verify_parameter_sets()) {
        const double tol = default_classification_tol(p, kEll);
        const double rd = r_delta(p, kEll);
        for (int n = 0; n < 10000; ++n) {
            const cplx k = random_k(rng, 10.0);
            const double iw = im_omega(p, k);
            SymmetryTriple s;
            if (std::abs(iw) <= tol || std::abs(k.imag()) < 1e-9 || !safe_symmetries(p, k, s)) {
                --n;
                continue;
            }
            const double prod = s.nu0.imag() * s.nu_plus.imag() * s.nu_minus.imag();
            law.observe((prod > 0.0) == (iw > 0.0) ? 1.0 : 0.0);
        }
        for (RegionLabel reg : kRegions) {
            for (int n = 0; n < kRegionSamples; ++n) {
                const cplx k = sample_region(rng, p, reg, 1e-3, 4.0 * rd, tol);
                SymmetryTriple s;
                if (!safe_symmetries(p, k, s)) continue;
                int positive = 0;
                for (const cplx* v : {&s.nu0, &s.nu_plus, &s.nu_minus}) positive += v->imag() > 0.0;
                const bool own = nu_of(s, reg).imag() > 0.0;
                excl.observe(own && positive == 1 ? 0.0 : 1.0);
            }
            for (int n = 0; n < kRegionSamples; ++n) {
                const cplx k = sample_region(rng, p, reg, rd, 4.0 * rd, tol);
                const SymmetryTriple s = symmetries(p, k);
                const double ratio = nu_of(s, reg).imag() / std::abs(k - p.center());
                (reg == RegionLabel::D0 ? b0 : bpm).observe(ratio);
            }
        }
    }
    for (const Check* c : {&law, &excl, &b0, &bpm}) out.push_back(c->result());
}

// |exp(i nu_n ell) Delta(k)| evaluated without overflow.
double scaled_delta(const DispersionParams& p, double ell, cplx k, RegionLabel reg) {
    const SymmetryTriple s = symmetries(p, k);
    const cplx nu = nu_of(s, reg);
    const cplx v = (s.nu_plus - s.nu_minus) * std::exp(I * (nu - k) * ell) +
                   (s.nu_minus - k) * std::exp(I * (nu - s.nu_plus) * ell) +
                   (k - s.nu_plus) * std::exp(I * (nu - s.nu_minus) * ell);
    return std::abs(v);
}

void suite_delta_bounds(Rng& rng, std::vector<PropertyResult>& out) {
    const double c0 = std::sqrt(5.0) / std::sqrt(2.0) -
                      (3.0 + std::sqrt(7.0) / std::sqrt(2.0)) * std::exp(-9.0 * std::sqrt(23.0) / (4.0 * std::sqrt(2.0)));
    const double cpm = (3.0 * std::sqrt(2.0) - std::sqrt(7.0)) / (2.0 * std::sqrt(2.0)) -
                       (3.0 * std::sqrt(2.0) + 3.0 * std::sqrt(7.0)) / (2.0 * std::sqrt(2.0)) * std::exp(-9.0 / 4.0);
    Check d0("delta_bounds.d0", c0, false);
    Check dp("delta_bounds.dplus", cpm, false);
    Check dm("delta_bounds.dminus", cpm, false);
    const std::vector<DispersionParams> sets{{1.0, 0.0, 0.0}, {1.0, 0.0, 3.0}, {1.0, 0.0, -3.0}};
    for (const DispersionParams& p : sets) {
        const double tol = default_classification_tol(p, kEll);
        const double rd = r_delta(p, kEll);
        for (RegionLabel reg : kRegions) {
            Check& c = reg == RegionLabel::D0 ? d0 : (reg == RegionLabel::DPlus ? dp : dm);
            for (int n = 0; n < kRegionSamples; ++n) {
                const cplx k = sample_region(rng, p, reg, rd, 3.0 * rd, tol);
                c.observe(scaled_delta(p, kEll, k, reg) / std::abs(k - p.center()));
            }
        }
    }
    for (const Check* c : {&d0, &dp, &dm}) out.push_back(c->result());
}

void suite_hardy(Rng& rng, std::vector<PropertyResult>& out) {
    Check hardy("hardy.laplace_l2_bound", std::sqrt(pi), true);
    constexpr double kRange = 10.0;
    constexpr int kSamples = 2001;
    for (int n = 0; n < 100; ++n) {
        const int bumps = 1 + static_cast<int>(uniform(rng, 0.0, 8.0));
        std::vector<double> centre(bumps), width(bumps);
        std::vector<cplx> amp(bumps);
        for (int b = 0; b < bumps; ++b) {
            centre[b] = uniform(rng, 0.0, kRange);
            width[b] = uniform(rng, 0.05, 2.0);
            amp[b] = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        }
        std::vector<cplx> phi(kSamples);
        for (int j = 0; j < kSamples; ++j) {
            const double r = kRange * j / (kSamples - 1);
            cplx v = 0.0;
            for (int b = 0; b < bumps; ++b) v += amp[b] * std::exp(-std::pow((r - centre[b]) / width[b], 2));
            phi[j] = v * smooth_step_down((r - 0.9 * kRange) / (0.1 * kRange));
        }
        const LaplaceTransform L(kRange, phi);
        const double in = L.input_l2_norm();
        hardy.observe(in > 0.0 ? L.l2_norm() / in : 0.0);
    }
    out.push_back(hardy.result());
}

void suite_rtotau(std::vector<PropertyResult>& out) {
    Check c("rtotau.sup_within_constant", 1.0, true);
    for (const DispersionParams& p : verify_parameter_sets()) {
        const RtotauScan s = rtotau_scan(p);
        c.observe(s.sup_ratio / s.constant);
    }
    out.push_back(c.result());
}

void suite_mvt(Rng& rng, std::vector<PropertyResult>& out) {
    for (double lambda : {2.0, 2.5, 3.0, 4.0}) {
        Check c("mvt.identity_lambda_" + std::to_string(lambda).substr(0, 3), 1e-9, true);
        for (int n = 0; n < 1000; ++n) {
            const cplx u1 = std::polar(uniform(rng, 0.0, 2.0), uniform(rng, -pi, pi));
            cplx u2 = std::polar(uniform(rng, 0.0, 2.0), uniform(rng, -pi, pi));
            if (n % 50 == 0) u2 = -uniform(rng, 0.1, 2.0) * u1;  // segment through the origin
            c.observe(std::abs(mvt_gap(u1, u2, lambda)));
        }
        out.push_back(c.result());
    }
}

void suite_global_relation(std::vector<PropertyResult>& out) {
    const ProblemData d = plane_wave_problem({1.0, 0.0, 0.0}, 2.0, 1.0, 0.5);
    QuadratureBudget budget;
    budget.contour_nodes = 24;
    Field u = solve_full(d, OutputGrid{65, 33}, budget);
    const std::vector<cplx> ks{-2.0, -1.0, 0.0, {0.5, 0.5}, 1.0, 2.0, {3.0, -0.5}};
    Check pos("global_relation.plane_wave_residual", 1e-6, true);
    pos.observe(global_relation_residual(u, d, ks));
    for (cplx& v : u.values) v *= 2.0;
    Check neg("global_relation.scaled_field_residual", 0.1, false);
    neg.observe(global_relation_residual(u, d, ks));
    out.push_back(pos.result());
    out.push_back(neg.result());
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed; });
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{"symmetries", "regions", "delta_bounds", "hardy",
                                                "rtotau",     "mvt",     "global_relation"};
    return names;
}

const std::vector<DispersionParams>& verify_parameter_sets() {
    static const std::vector<DispersionParams> sets{
        {1.0, 0.0, 0.0}, {1.0, 0.0, 3.0}, {1.0, 0.0, -3.0}, {2.0, 1.0, -1.0}, {0.5, -2.0, 1.0}};
    return sets;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
    const auto& names = verify_suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        throw ConfigInvalid("unknown verify suite '" + suite + "'");
    }
    VerifyReport report;
    report.suite = suite;
    report.seed = seed;
    for (std::size_t index = 0; index < names.size(); ++index) {
        const std::string& name = names[index];
        if (suite != "all" && suite != name) continue;
        // Each suite draws from its own stream so that "all" reproduces the single-suite runs.
        Rng rng(seed * 1000003u + index);
        if (name == "symmetries") suite_symmetries(rng, report.properties);
        if (name == "regions") suite_regions(rng, report.properties);
        if (name == "delta_bounds") suite_delta_bounds(rng, report.properties);
        if (name == "hardy") suite_hardy(rng, report.properties);
        if (name == "rtotau") suite_rtotau(report.properties);
        if (name == "mvt") suite_mvt(rng, report.properties);
        if (name == "global_relation") suite_global_relation(report.properties);
    }
    return report;
}

std::string verify_report_json(const VerifyReport& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["passed"] = report.passed();
    j["properties"] = nlohmann::ordered_json::array();
    for (const PropertyResult& p : report.properties) {
        nlohmann::ordered_json e;
        e["name"] = p.name;
        e["passed"] = p.passed;
        e["bound_kind"] = p.upper ? "upper" : "lower";
        e["worst"] = p.worst;
        e["bound"] = p.bound;
        e["margin"] = p.upper ? p.bound - p.worst : p.worst - p.bound;
        e["samples"] = p.samples;
        e["violations"] = p.violations;
        j["properties"].push_back(e);
    }
    return j.dump(2) + "\n";
}

}  // namespace hnls
