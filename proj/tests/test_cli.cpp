#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBinary = HNLS_CLI_PATH;
const fs::path kConfigs = HNLS_CONFIG_DIR;

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hnls_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

/// Runs the tool with stdout and stderr captured into `log`; returns the exit status.
int run(const std::string& args, const fs::path& log) {
    const std::string cmd = kBinary + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json diagnostics_without_header(const fs::path& dir) {
    json j = json::parse(slurp(dir / "diagnostics.json"));
    j.erase("header");
    return j;
}

}  // namespace

TEST(Cli, SolveWritesAllArtifacts) {
    const fs::path out = scratch("solve");
    ASSERT_EQ(run("solve --config " + (kConfigs / "plane_wave_linear.json").string() + " --out " + out.string(),
                  out / "log.txt"), 0)
        << slurp(out / "log.txt");
    for (const char* f : {"field.csv", "norms.csv", "diagnostics.json"}) EXPECT_TRUE(fs::exists(out / f)) << f;
    const json d = json::parse(slurp(out / "diagnostics.json"));
    EXPECT_EQ(d["header"]["mode"], "linear");
    EXPECT_LE(d["global_relation_residual"].get<double>(), 1e-6);
}

TEST(Cli, RepeatedSolvesAreByteIdentical) {
    const fs::path a = scratch("repeat_a"), b = scratch("repeat_b");
    const std::string cfg = (kConfigs / "plane_wave_linear.json").string();
    ASSERT_EQ(run("solve --config " + cfg + " --out " + a.string(), a / "log.txt"), 0);
    ASSERT_EQ(run("solve --config " + cfg + " --out " + b.string(), b / "log.txt"), 0);
    EXPECT_EQ(slurp(a / "field.csv"), slurp(b / "field.csv"));
    EXPECT_EQ(slurp(a / "norms.csv"), slurp(b / "norms.csv"));
    EXPECT_EQ(diagnostics_without_header(a), diagnostics_without_header(b));
}

TEST(Cli, CompareOnPlaneWaveAgreesWithOracle) {
    const fs::path out = scratch("compare");
    ASSERT_EQ(run("compare --config " + (kConfigs / "plane_wave_linear.json").string() + " --out " + out.string(),
                  out / "log.txt"), 0)
        << slurp(out / "log.txt");
    const json d = json::parse(slurp(out / "diagnostics.json"));
    EXPECT_LE(d["ut_vs_oracle_relative_l2"].get<double>(), 1e-2);
}

TEST(Cli, MissingBetaIsRejectedByName) {
    const fs::path out = scratch("missing_beta");
    json cfg = json::parse(slurp(kConfigs / "plane_wave_linear.json"));
    cfg["dispersion"].erase("beta");
    std::ofstream(out / "bad.json") << cfg.dump();
    EXPECT_EQ(run("solve --config " + (out / "bad.json").string() + " --out " + out.string(), out / "log.txt"), 2);
    EXPECT_NE(slurp(out / "log.txt").find("dispersion.beta"), std::string::npos);
}

TEST(Cli, UsageErrorsExitWithTwo) {
    const fs::path out = scratch("usage");
    EXPECT_EQ(run("", out / "a.txt"), 2);
    EXPECT_EQ(run("solve --config /nonexistent.json", out / "b.txt"), 2);
    EXPECT_EQ(run("solve", out / "c.txt"), 2);
    EXPECT_EQ(run("verify --suite no_such_suite", out / "d.txt"), 2);
}

TEST(Cli, VerifySuitesPassAndAreDeterministic) {
    const fs::path a = scratch("verify_a"), b = scratch("verify_b");
    for (const char* suite : {"symmetries", "delta_bounds"}) {
        EXPECT_EQ(run(std::string("verify --suite ") + suite + " --seed 1 --out " + a.string(), a / "log.txt"), 0)
            << suite;
        EXPECT_EQ(run(std::string("verify --suite ") + suite + " --seed 1 --out " + b.string(), b / "log.txt"), 0)
            << suite;
        const std::string name = std::string("verify_") + suite + ".json";
        ASSERT_TRUE(fs::exists(a / name)) << name;
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
    }
}

TEST(Cli, NormsCommandWritesTable) {
    const fs::path out = scratch("norms");
    ASSERT_EQ(run("norms --config " + (kConfigs / "gaussian_compare.json").string() + " --out " + out.string(),
                  out / "log.txt"), 0)
        << slurp(out / "log.txt");
    const std::string table = slurp(out / "norms.csv");
    EXPECT_EQ(table.rfind("quantity,s,p,q,value", 0), 0u) << table;
    EXPECT_NE(table.find("u0_sobolev"), std::string::npos);
}
