// Reduced-cost machinery and the projected-gradient optimizer with
// variational-inequality stopping.
#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "sgflow/adjoint.hpp"
#include "sgflow/mollifier.hpp"

namespace sgf {

struct CostSpec {
    double lambda = 0.0;  // Tikhonov weight on the control
    VectorField y_d;      // target velocity

    void validate() const {
        if (!(lambda >= 0.0)) throw std::invalid_argument("CostSpec: lambda must be >= 0");
    }
};

// Pointwise box on the two control components, the same at every node.
struct AdmissibleSet {
    double lower[2] = {-1.0, -1.0};
    double upper[2] = {1.0, 1.0};

    void validate() const {
        for (int c = 0; c < 2; ++c) {
            if (!(lower[c] <= upper[c]))
                throw std::invalid_argument("AdmissibleSet: lower must not exceed upper");
            if (!std::isfinite(lower[c]) || !std::isfinite(upper[c]))
                throw std::invalid_argument("AdmissibleSet: box must be bounded");
        }
    }
    bool contains(const VectorField& u) const;
};

VectorField project_admissible(const VectorField& u, const AdmissibleSet& set);

// || u - P(u - s g) || / s; zero exactly at points satisfying the discrete
// variational inequality (g, v - u) >= 0 for all admissible v.
double vi_residual(const VectorField& u, const VectorField& g, const AdmissibleSet& set,
                   double step);

double reduced_cost(const VectorField& u, const CostSpec& spec, const FluidParams& params,
                    const SolverConfig& cfg);

// g = p + lambda*u with the adjoint loaded by y(u) - y_d.
VectorField reduced_gradient(const VectorField& u, const CostSpec& spec,
                             const FluidParams& params, const SolverConfig& cfg,
                             AdjointMode mode);

struct OptimizerConfig {
    double opt_tol = 1e-6;      // stop when vi_residual (unit step) drops below
    double j_target = std::numeric_limits<double>::infinity();  // extra stop gate on J
    int max_iters = 500;
    double c1 = 1e-4;           // Armijo sufficient-decrease constant
    double backtrack = 0.5;
    int max_backtracks = 45;
    double step_min = 1e-14;
    double step_max = 1e6;
    AdjointMode mode = AdjointMode::discrete_transpose;

    void validate() const {
        if (!(opt_tol > 0.0)) throw std::invalid_argument("OptimizerConfig: opt_tol must be > 0");
        if (max_iters < 1) throw std::invalid_argument("OptimizerConfig: max_iters must be >= 1");
    }
};

struct IterRecord {
    int iter = 0;
    double J = 0.0;
    double grad_norm = 0.0;
    double vi_residual = 0.0;
    double step = 0.0;
};

struct OptimizationTrace {
    std::vector<IterRecord> records;
    VectorField u_final;
    StateSolution state_final;
    AdjointSolution adjoint_final;
    double J_final = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string stop_reason;
};

OptimizationTrace optimize(const VectorField& u0, const CostSpec& spec, const AdmissibleSet& set,
                           const FluidParams& params, const SolverConfig& cfg,
                           const OptimizerConfig& opt);

// Mollifier-regularized proximal problem: the state is driven by the
// mollified control and the cost carries the L2 and curl proximity terms
// centered at ubar. The adjoint enters the gradient as mollify(p) by
// self-adjointness.
OptimizationTrace optimize_regularized(const VectorField& u0, const VectorField& ubar,
                                       const CostSpec& spec, const AdmissibleSet& set,
                                       const FluidParams& params, const SolverConfig& cfg,
                                       const OptimizerConfig& opt, double eps);

// Gradient of the proximal terms alone (exposed for finite-difference
// validation): (u - ubar) + curl^T curl(u - ubar) in the quadrature metric.
VectorField proximal_gradient_terms(const VectorField& u, const VectorField& ubar);

// Proximal cost terms alone.
double proximal_cost_terms(const VectorField& u, const VectorField& ubar);

}  // namespace sgf
