// Subcommand dispatch and artifact persistence.
#pragma once

#include "sgflow/run_config.hpp"

namespace sgf {

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 config, 3 solver non-convergence, 4 I/O
    std::vector<std::string> artifacts;
    std::string message;
};

// Executes the configured subcommand and writes field dumps, CSV traces and
// a manifest under cfg.out_dir. Identical config and seed reproduce
// identical CSV numbers.
RunResult run(const RunConfig& cfg);

// Resolves a field source ("zero", path, "manufactured:<id>",
// "random:<amp>") on the configured grid.
VectorField resolve_vector_source(const std::string& source, const Grid& g,
                                  const FluidParams& params, uint64_t seed, int role);

}  // namespace sgf
