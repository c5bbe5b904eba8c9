// cli.hpp — declarative experiment configuration and the subcommand
// implementations behind the fhsim binary.
//
// One JSON config document drives everything; unknown keys are rejected so
// typos fail loudly before any output is written. Every output file embeds
// the resolved config and isolates volatility in a single timestamp field,
// so runs can be byte-compared after stripping it.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fhsim/adapted_basis.hpp"
#include "fhsim/criteria.hpp"
#include "fhsim/randvec.hpp"
#include "fhsim/simulate.hpp"

namespace fhsim::cli {

using nlohmann::json;

struct Config {
    json raw;  // resolved config as parsed (embedded into outputs)
    SpaceConfig space{2.0};
    std::vector<WeightFamily> families;
    std::vector<PolynomialSpec> polynomials;

    // vector section
    Construction construction = Construction::single;
    DistributionSpec dist;
    std::uint64_t master_seed = 1;
    std::uint64_t j_max = 0;  // 0: default policy at run time
    std::uint64_t m = 0;      // 0: derived from the matching selector
    std::uint64_t gamma = 2;
    std::uint64_t basis_K = 1200;

    json criteria = json::array();

    // experiment section
    std::vector<SparseVec> targets;
    std::vector<double> epsilons;
    std::uint64_t horizon = 1000;
    std::vector<std::uint64_t> seeds;
    std::uint64_t burn_in = 0;
    int parallelism = 1;
    bool traces = false;
    std::uint64_t coverage_n_lo = 1, coverage_n_hi = 4;

    // basis section
    std::size_t basis_poly = 1, basis_family = 1;  // 1-based indices
    std::size_t basis_k = 60;
    double basis_tol = 1e-9;

    std::string outdir = "out";
};

// Throws std::invalid_argument with a location string on any violation.
Config parse_config(const json& j);
Config load_config_file(const std::string& path);

json family_to_json(const WeightFamily& f);
WeightFamily family_from_json(const json& j, const SpaceConfig& space);

// subcommands; return process exit codes (0 ok, 1 refusal, 2 config error)
int cmd_check(const Config& cfg, bool force);
int cmd_build(const Config& cfg, bool force);
int cmd_simulate(const Config& cfg, bool force);
int cmd_basis(const Config& cfg);
int cmd_report(const Config& cfg);

// full argv entry point shared by the binary and the tests
int run_cli(int argc, const char* const* argv);

// helpers shared with tests
std::string timestamp_now();
json strip_timestamps(json j);

}  // namespace fhsim::cli
