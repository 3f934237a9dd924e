// Flat key=value run configuration with strict validation.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgflow/control_opt.hpp"

namespace sgf {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;  // solve-state | linearize | adjoint | optimize |
                             // optimize-regularized | continuation | verify | constants
    int grid = 65;
    FluidParams params;
    SolverConfig solver;
    OptimizerConfig optimizer;

    // Field sources: "zero", a file path, "manufactured:<id>", or
    // "random:<amplitude>" (seeded).
    std::string u_source = "zero";      // control / forcing
    std::string w_source = "zero";      // linearization direction
    std::string f_source = "zero";      // adjoint load
    std::string yd_source;              // target velocity (optimize*)
    std::string ubar_source = "zero";   // proximal center (optimize-regularized)
    std::string u0_source = "zero";     // optimizer start

    double lambda = 0.0;
    AdmissibleSet box;
    std::string adjoint_mode = "discrete";  // or "pde"
    double epsilon = 0.0;                   // mollifier radius (optimize-regularized)
    std::vector<double> alpha_list;         // continuation
    std::vector<double> epsilon_list;       // regularization sweep (documentation)
    int trials = 100;                       // verify / constants
    uint64_t seed = 1;
    std::string out_dir = "out";

    std::string raw_text;  // config echo for the manifest
};

// Parses and validates `text`. Unknown keys, duplicates, type errors and
// violated ranges raise ConfigError naming the line. `subcommand` comes from
// the command line; a `subcommand` key in the file must agree.
RunConfig parse_config(const std::string& text, const std::string& subcommand);

}  // namespace sgf
