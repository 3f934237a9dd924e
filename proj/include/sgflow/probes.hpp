// Executable audits of the estimates, identities and differentiability
// properties the solvers are supposed to inherit from the analysis.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sgflow/constants.hpp"
#include "sgflow/linearized.hpp"

namespace sgf {

struct AuditRow {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack() const { return rhs - lhs; }
    bool pass() const { return slack() >= -1e-8 * std::abs(rhs); }
};

struct ProbeReport {
    std::string kind;
    uint64_t seed = 0;
    std::vector<AuditRow> rows;
    std::vector<std::pair<std::string, double>> metrics;
    bool pass = true;

    void add_row(const std::string& label, double lhs, double rhs) {
        rows.push_back({label, lhs, rhs});
        pass = pass && rows.back().pass();
    }
    void add_metric(const std::string& name, double v) { metrics.emplace_back(name, v); }
    double metric(const std::string& name) const;
};

// Estimates (4.1)-(4.2) for a converged state; the H3 surrogate
// ||curl sigma(y)||_2 / alpha is logged as a metric.
ProbeReport verify_state_estimates(const StateSolution& solution, const VectorField& u,
                                   const FluidParams& params, const ConstantsReport& constants);

// Remainder decay of y(u + rho w) = y + rho z + rho r_rho: fits
// log |r_rho|_H1 against log rho and reports the slope.
ProbeReport gateaux_probe(const VectorField& u, const VectorField& w,
                          const std::vector<double>& rho_list, const FluidParams& params,
                          const SolverConfig& cfg);

// Lipschitz bound (5.1) for a pair of controls (u2 passes smallness), plus
// the V2 ratio of (5.2) as a metric.
ProbeReport lipschitz_probe(const VectorField& u1, const VectorField& u2,
                            const FluidParams& params, const SolverConfig& cfg,
                            const ConstantsReport& constants);

// Trilinear identities relating the curl terms to the convective form, the
// L-infinity interpolation bound and the curl bound, over seeded compactly
// supported fields; residual decay rates are fitted over {h, h/2, h/4}.
ProbeReport verify_identities(const Grid& g, uint64_t seed, int trials, double alpha = 0.05);

}  // namespace sgf
