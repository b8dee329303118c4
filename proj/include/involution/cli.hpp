#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace involution::cli {

// Stable exit codes.
enum ExitCode : int { kPass = 0, kFail = 1, kConfig = 2, kRuntime = 3 };

struct RunConfig {
    std::optional<std::size_t> n;
    std::vector<std::string> alphas;  // "p/q" or decimal
    std::string alpha = "0";
    std::uint64_t seed = 42;
    std::size_t trials = 100;
    double tol = 1e-10;
    bool serial = false;

    std::string family = "F";
    std::string bracket = "poisson";
    std::string relation = "son";

    std::string system = "neumann";
    double h = 1e-3;
    std::size_t steps = 10000;
    std::vector<std::string> x0, p0;
    std::string output = "trajectory.csv";
    double drift_tol = 1e-6;

    // quartic
    double P = 2.0;
    double mu = 1.0;
    double E = -0.5;
    double q0 = 1.0;
    int qdot_sign = -1;
};

struct Outcome {
    int exit_code = kPass;
    nlohmann::ordered_json report;
    std::vector<std::string> messages;  // human-readable, go to stderr
};

Outcome cmd_verify_brackets(const RunConfig& cfg);
Outcome cmd_verify_operators(const RunConfig& cfg);
Outcome cmd_simulate(const RunConfig& cfg);
Outcome cmd_identity_cyclic(const RunConfig& cfg);

// Full command line: parses, dispatches, writes the JSON report to `out`
// (or to --report) and messages to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace involution::cli
