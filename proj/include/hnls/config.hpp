#pragma once

#include <string>
#include <vector>

#include "hnls/data.hpp"
#include "hnls/fd_oracle.hpp"
#include "hnls/linear_solver.hpp"
#include "hnls/nonlinear.hpp"
#include "hnls/presets.hpp"

namespace hnls {

struct SolverSettings {
    OutputGrid grid;
    QuadratureBudget budget;
    double s = 1.0;                              ///< regularity index for norms and diagnostics
    ProxyMap proxies;                            ///< lifespan constant proxies
    std::vector<std::string> defaulted_proxies;  ///< proxies absent from the file and set to 1
    int picard_max_iter = 30;
    double picard_tol = 1e-10;
    OracleConfig oracle;
};

struct OutputSettings {
    std::string directory = "out";
    std::vector<std::string> formats{"csv", "json"};
};

/// Scenario document with sections dispersion, geometry, data,
/// nonlinearity, solver and outputs.
struct ScenarioConfig {
    DispersionParams params;
    double ell = 1.0;
    double horizon = 1.0;
    DataSpec data;
    cplx kappa = 0.0;
    double lambda = 3.0;
    SolverSettings solver;
    OutputSettings outputs;
    std::string base_dir = ".";  ///< directory against which data file paths resolve
};

/// Parses and validates a JSON scenario. Errors are ConfigInvalid with a
/// message naming the offending field, e.g. "dispersion.beta".
ScenarioConfig parse_config(const std::string& text, const std::string& base_dir = ".");
ScenarioConfig load_config(const std::string& path);

/// Problem data of a scenario with presets evaluated and data files loaded.
ProblemData load_problem(const ScenarioConfig& config);

/// Doubles the output and oracle grid resolution `level` times.
ScenarioConfig refine(const ScenarioConfig& config, int level);

}  // namespace hnls
