// Vanishing-viscoelasticity study: solve the control problem along a
// decreasing list of alpha values down to the Navier-Stokes limit and track
// the convergence of the minimizers, states and adjoints.
#pragma once

#include "sgflow/control_opt.hpp"

namespace sgf {

struct ContinuationProblem {
    CostSpec spec;
    AdmissibleSet set;
    VectorField u0;
    SolverConfig solver;
    OptimizerConfig optimizer;
};

struct ContinuationRow {
    double alpha = 0.0;
    double min_J = 0.0;
    int opt_iters = 0;
    bool converged = false;
    double dmin_J = 0.0;  // |min J(alpha) - min J(0)|
    double du_L2 = 0.0;   // ||u_alpha - u_0||_2
    double dy_H1 = 0.0;   // |y_alpha - y_0|_H1
    double dp_L2 = 0.0;   // ||p_alpha - p_0||_2
};

struct ContinuationReport {
    std::vector<ContinuationRow> rows;  // ordered as alpha_list
    bool all_converged = false;
    // Weak residual of the limit adjoint against the Navier-Stokes adjoint
    // equation, tested with compactly supported divergence-free fields.
    double ns_adjoint_residual = 0.0;
};

// alpha_list must be decreasing and end at 0. Each problem is solved with
// the optimizer of `problem`, warm-starting the control from the previous
// entry; the alpha = 0 reference is solved first.
ContinuationReport continuation_alpha(const ContinuationProblem& problem,
                                      const std::vector<double>& alpha_list, double nu);

}  // namespace sgf
