#include "hnls/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include "hnls/errors.hpp"
#include "hnls/fd_oracle.hpp"
#include "hnls/io.hpp"
#include "hnls/linear_solver.hpp"
#include "hnls/nonlinear.hpp"
#include "hnls/verify.hpp"
#include "json.hpp"

namespace hnls {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

const std::vector<cplx>& residual_k_samples() {
    static const std::vector<cplx> ks{-2.0, -1.0, 0.0, {0.5, 0.5}, 1.0, 2.0, {3.0, -0.5}};
    return ks;
}

double max_abs_diff_series(const TimeSeries& trace, const TimeSeries& data) {
    double m = 0.0;
    const std::vector<double> t = trace.grid();
    for (std::size_t j = 0; j < t.size(); ++j) m = std::max(m, std::abs(trace.samples[j] - data.at(t[j])));
    return m;
}

ojson trace_recovery(const Field& u, const ProblemData& d) {
    const Traces tr = evaluate_traces(u);
    double init = 0.0;
    for (std::size_t i = 0; i < u.nx(); ++i) init = std::max(init, std::abs(u(i, 0) - d.u0.at(u.x[i])));
    ojson j;
    j["g0"] = max_abs_diff_series(tr.left_dirichlet, d.g0);
    j["h0"] = max_abs_diff_series(tr.right_dirichlet, d.h0);
    j["h1"] = max_abs_diff_series(tr.right_neumann, d.h1);
    j["u0"] = init;
    return j;
}

ojson solve_json(const SolveDiagnostics& s) {
    ojson j;
    j["arc_radius"] = s.arc_radius;
    j["phi0"] = s.phi0;
    j["extended_horizon"] = s.extended_horizon;
    j["corner_order"] = s.corner_order;
    j["total_nodes"] = s.total_nodes;
    j["max_arc_growth"] = s.max_arc_growth;
    j["tolerance_met"] = s.tolerance_met;
    j["segments"] = ojson::array();
    for (const SegmentReport& r : s.segments) {
        j["segments"].push_back(
            {{"id", r.id}, {"reach", r.reach}, {"nodes", r.nodes}, {"tolerance_met", r.tolerance_met}, {"tail_ratio", r.tail_ratio}});
    }
    return j;
}

ojson picard_json(const PicardReport& r) {
    ojson j;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["distances"] = r.distances;
    j["contraction_ratios"] = r.contraction_ratios;
    j["final_residual"] = r.final_residual;
    return j;
}

ojson compatibility_json(const CompatibilityReport& r) {
    ojson j;
    j["all_passed"] = r.all_passed();
    j["conditions"] = ojson::array();
    for (const auto& c : r.conditions) {
        j["conditions"].push_back({{"name", c.name}, {"active", c.active}, {"mismatch", c.mismatch}, {"passed", c.passed}});
    }
    return j;
}

ojson lifespan_json(const ProblemData& d, const ScenarioConfig& c) {
    ojson j;
    try {
        const LifespanIndicator li = lifespan_indicator(d, c.solver.s, c.solver.proxies);
        j["regime"] = regime_name(li.regime);
        j["lhs_value"] = li.lhs_value;
        j["satisfied"] = li.satisfied;
        j["t_exponent"] = li.t_exponent;
        j["data_norm_sum"] = li.data_norm_sum;
        j["defaulted_proxies"] = c.solver.defaulted_proxies;
    } catch (const ConfigInvalid& e) {
        j["regime"] = nullptr;
        j["note"] = e.what();
    }
    return j;
}

void write_outputs(const std::string& dir, const ScenarioConfig& c, const Field* field,
                   const std::vector<NormRow>& norms, const ojson& diag) {
    std::filesystem::create_directories(dir);
    const auto has = [&](const char* f) {
        return std::find(c.outputs.formats.begin(), c.outputs.formats.end(), f) != c.outputs.formats.end();
    };
    if (has("csv")) {
        if (field != nullptr) {
            std::ofstream f(std::filesystem::path(dir) / "field.csv");
            write_field_csv(f, *field);
        }
        std::ofstream n(std::filesystem::path(dir) / "norms.csv");
        write_norms_csv(n, norms);
    }
    if (has("json")) {
        std::ofstream j(std::filesystem::path(dir) / "diagnostics.json");
        j << diag.dump(2) << '\n';
    }
}

}  // namespace

RunMode parse_mode(const std::string& name) {
    if (name == "linear") return RunMode::Linear;
    if (name == "nonlinear") return RunMode::Nonlinear;
    if (name == "reduced") return RunMode::Reduced;
    if (name == "oracle") return RunMode::Oracle;
    if (name == "compare") return RunMode::Compare;
    throw ConfigInvalid("unknown mode '" + name + "' (expected linear, nonlinear, reduced, oracle or compare)");
}

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Linear: return "linear";
        case RunMode::Nonlinear: return "nonlinear";
        case RunMode::Reduced: return "reduced";
        case RunMode::Oracle: return "oracle";
        case RunMode::Compare: return "compare";
    }
    return "linear";
}

std::vector<NormRow> norm_table(const ProblemData& d, double s, const Field* field) {
    std::vector<NormRow> rows;
    const double sb = (s + 1.0) / 3.0;
    rows.push_back({"u0_sobolev", s, 2.0, kNotApplicable, sobolev_norm(d.u0, s)});
    rows.push_back({"g0_sobolev", sb, 2.0, kNotApplicable, time_sobolev_norm(d.g0, sb)});
    rows.push_back({"h0_sobolev", sb, 2.0, kNotApplicable, time_sobolev_norm(d.h0, sb)});
    rows.push_back({"h1_sobolev", s / 3.0, 2.0, kNotApplicable, time_sobolev_norm(d.h1, s / 3.0)});
    if (field == nullptr) return rows;
    rows.push_back({"u_ct_l2", 0.0, 2.0, infinity, mixed_norm(*field, infinity, NormSpec{0.0, 2.0, infinity})});
    rows.push_back({"u_ct_hs", s, 2.0, infinity, mixed_norm(*field, infinity, NormSpec{s, 2.0, infinity})});
    rows.push_back({"u_l2t_hs1", s + 1.0, 2.0, 2.0, mixed_norm(*field, 2.0, NormSpec{s + 1.0, 2.0, 2.0})});
    if (s < 0.5) {
        const double lambda = d.lambda;
        const double q = 6.0 * lambda / ((1.0 - 2.0 * s) * (lambda - 1.0));
        const double p = 2.0 * lambda / (1.0 + 2.0 * (lambda - 1.0) * s);
        if (p >= 2.0 && q >= 2.0) {
            const NormSpec spec{s, p, q, NormKind::BesselInterval};
            rows.push_back({"u_strichartz", s, p, q, mixed_norm(*field, q, spec)});
        }
    }
    return rows;
}

int run_scenario(const std::string& config_path, RunMode mode, const std::string& out_dir, int refine_level,
                 std::ostream& log) {
    ScenarioConfig c;
    ProblemData d;
    try {
        c = refine(load_config(config_path), refine_level);
        d = load_problem(c);
    } catch (const ConfigInvalid& e) {
        log << "ConfigInvalid: " << e.what() << '\n';
        return kExitInvalid;
    }
    const std::string dir = out_dir.empty() ? c.outputs.directory : out_dir;
    for (const std::string& name : c.solver.defaulted_proxies) {
        log << "warning: lifespan proxy " << name << " not supplied; using 1\n";
    }
    const auto start = std::chrono::steady_clock::now();
    ojson diag;
    diag["header"] = {{"tool", "hnls"}, {"mode", mode_name(mode)}, {"refine", refine_level}};
    diag["params"] = {{"beta", c.params.beta}, {"alpha", c.params.alpha}, {"delta", c.params.delta}};
    diag["geometry"] = {{"ell", c.ell}, {"horizon", c.horizon}};
    diag["grid"] = {{"nx", c.solver.grid.nx}, {"nt", c.solver.grid.nt}};
    diag["budget"] = {{"contour_nodes", c.solver.budget.contour_nodes},
                      {"real_axis_window", c.solver.budget.real_axis_window},
                      {"real_axis_nodes", c.solver.budget.real_axis_nodes},
                      {"tolerance", c.solver.budget.tolerance}};
    diag["data_scale"] = data_scale(d);
    diag["compatibility"] = compatibility_json(check_compatibility(d, c.solver.s));
    diag["lifespan"] = lifespan_json(d, c);
    Field field;
    int status = kExitOk;
    try {
        SolveDiagnostics sd;
        switch (mode) {
            case RunMode::Linear:
            case RunMode::Nonlinear:
            case RunMode::Compare: {
                if (mode == RunMode::Nonlinear || (mode == RunMode::Compare && d.kappa != cplx(0.0))) {
                    try {
                        PicardResult pr = picard_solve(d, c.solver.grid, c.solver.budget, c.solver.picard_max_iter,
                                                       c.solver.picard_tol);
                        diag["picard"] = picard_json(pr.report);
                        field = std::move(pr.solution);
                    } catch (const PicardNoConvergence& e) {
                        diag["picard"] = picard_json(e.result().report);
                        field = e.result().solution;
                        log << "NoConvergence: " << e.what() << '\n';
                        status = kExitSolverError;
                    }
                } else {
                    ProblemData linear = d;
                    linear.kappa = 0.0;
                    field = solve_full(linear, c.solver.grid, c.solver.budget, &sd);
                    diag["solve"] = solve_json(sd);
                }
                diag["global_relation_residual"] =
                    d.kappa == cplx(0.0) ? ojson(global_relation_residual(field, d, residual_k_samples())) : ojson(nullptr);
                diag["trace_recovery"] = trace_recovery(field, d);
                if (mode == RunMode::Compare) {
                    const Field fine = oracle_solve(d, c.solver.oracle);
                    const Field coarse = restrict_to(fine, field.x, field.t);
                    diag["oracle"] = {{"nx", c.solver.oracle.nx}, {"nt", c.solver.oracle.nt}, {"theta", c.solver.oracle.theta}};
                    diag["ut_vs_oracle_relative_l2"] = relative_l2(field, coarse);
                }
                break;
            }
            case RunMode::Reduced: {
                field = solve_reduced(d.params, d.ell, d.h0, d.h1, c.solver.grid, c.solver.budget, &sd);
                diag["solve"] = solve_json(sd);
                const Traces tr = evaluate_traces(field);
                diag["trace_recovery"] = {{"psi0", max_abs_diff_series(tr.right_dirichlet, d.h0)},
                                          {"psi1", max_abs_diff_series(tr.right_neumann, d.h1)}};
                break;
            }
            case RunMode::Oracle: {
                ProblemData od = d;
                field = oracle_solve(od, c.solver.oracle);
                diag["oracle"] = {{"nx", c.solver.oracle.nx}, {"nt", c.solver.oracle.nt}, {"theta", c.solver.oracle.theta}};
                diag["trace_recovery"] = trace_recovery(field, d);
                break;
            }
        }
    } catch (const ConfigInvalid& e) {
        log << "ConfigInvalid: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        log << e.name() << ": " << e.what() << '\n';
        diag["error"] = {{"name", e.name()}, {"message", e.what()}};
        write_outputs(dir, c, nullptr, norm_table(d, c.solver.s, nullptr), diag);
        return kExitSolverError;
    }
    std::vector<NormRow> norms;
    try {
        norms = norm_table(d, c.solver.s, &field);
    } catch (const Error& e) {
        log << "warning: norm table incomplete: " << e.what() << '\n';
        norms = norm_table(d, c.solver.s, nullptr);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    diag["header"]["elapsed_seconds"] = elapsed;
    write_outputs(dir, c, &field, norms, diag);
    log << mode_name(mode) << " run finished in " << elapsed << " s; artifacts in " << dir << '\n';
    return status;
}

int run_norms(const std::string& config_path, const std::string& out_dir, std::ostream& log) {
    try {
        const ScenarioConfig c = load_config(config_path);
        const ProblemData d = load_problem(c);
        const std::string dir = out_dir.empty() ? c.outputs.directory : out_dir;
        std::filesystem::create_directories(dir);
        std::ofstream f(std::filesystem::path(dir) / "norms.csv");
        const std::vector<NormRow> rows = norm_table(d, c.solver.s, nullptr);
        write_norms_csv(f, rows);
        write_norms_csv(log, rows);
        return kExitOk;
    } catch (const ConfigInvalid& e) {
        log << "ConfigInvalid: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        log << e.name() << ": " << e.what() << '\n';
        return kExitSolverError;
    }
}

int run_verify_command(const std::string& suite, std::uint64_t seed, const std::string& out_dir, std::ostream& log) {
    VerifyReport report;
    try {
        report = run_verify(suite, seed);
    } catch (const ConfigInvalid& e) {
        log << "ConfigInvalid: " << e.what() << '\n';
        return kExitInvalid;
    }
    const std::string text = verify_report_json(report);
    if (out_dir.empty()) {
        log << text;
    } else {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(std::filesystem::path(out_dir) / ("verify_" + suite + ".json"));
        f << text;
        for (const PropertyResult& p : report.properties) {
            log << (p.passed ? "pass " : "FAIL ") << p.name << " worst " << format_double(p.worst) << " bound "
                << format_double(p.bound) << '\n';
        }
    }
    return report.passed() ? kExitOk : kExitFailure;
}

}  // namespace hnls
