#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hnls/dispersion.hpp"

namespace hnls {

/// Outcome of one property check. For upper-bound properties the worst value
/// is the largest observed quantity and must not exceed `bound`; for
/// lower-bound properties it is the smallest and must not fall below it.
struct PropertyResult {
    std::string name;
    bool passed = true;
    bool upper = true;
    double worst = 0.0;
    double bound = 0.0;
    long samples = 0;
    long violations = 0;
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;

    bool passed() const;
};

/// symmetries, regions, delta_bounds, hardy, rtotau, mvt, global_relation.
const std::vector<std::string>& verify_suite_names();

/// Runs a suite (or "all"); throws ConfigInvalid for unknown names. The
/// report depends only on the suite name and the seed.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed);

/// Parameter sets spanning all three discriminant signs.
const std::vector<DispersionParams>& verify_parameter_sets();

/// Report as pretty-printed JSON.
std::string verify_report_json(const VerifyReport& report);

}  // namespace hnls
