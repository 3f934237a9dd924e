#include "sgflow/continuation.hpp"

#include <cmath>
#include <stdexcept>

#include "sgflow/operators.hpp"
#include "sgflow/random_fields.hpp"

namespace sgf {

namespace {

double grad_pair(const VectorField& a, const VectorField& b) {
    const Grid& g = a.grid;
    ScalarField ax(g), ay(g), bx(g), by(g);
    ax.val = a.x;
    ay.val = a.y;
    bx.val = b.x;
    by.val = b.y;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double w = quad_weight(g, i, j);
            s += w * (d1_at(ax, i, j) * d1_at(bx, i, j) + d2_at(ax, i, j) * d2_at(bx, i, j) +
                      d1_at(ay, i, j) * d1_at(by, i, j) + d2_at(ay, i, j) * d2_at(by, i, j));
        }
    return s;
}

// Weak residual of -nu*Lap(p) - y.grad(p) + (grad y)^T p = y - y_d against a
// divergence-free test field.
double ns_adjoint_weak_residual(const StateSolution& st, const VectorField& p,
                                const VectorField& y_d, double nu, const VectorField& phi) {
    VectorField rhs = st.y - y_d;
    return nu * grad_pair(p, phi) + trilinear_b(phi, st.y, p) - trilinear_b(st.y, p, phi) -
           inner(rhs, phi);
}

}  // namespace

ContinuationReport continuation_alpha(const ContinuationProblem& problem,
                                      const std::vector<double>& alpha_list, double nu) {
    if (alpha_list.empty() || alpha_list.back() != 0.0)
        throw std::invalid_argument("continuation_alpha: alpha_list must end at 0");
    for (size_t k = 1; k < alpha_list.size(); ++k)
        if (!(alpha_list[k] < alpha_list[k - 1]))
            throw std::invalid_argument("continuation_alpha: alpha_list must be decreasing");

    ContinuationReport rep;
    rep.all_converged = true;

    // Navier-Stokes reference first.
    OptimizationTrace ref =
        optimize(problem.u0, problem.spec, problem.set, FluidParams{nu, 0.0}, problem.solver,
                 problem.optimizer);
    if (!ref.converged) {
        rep.all_converged = false;
    }

    VectorField warm_u = problem.u0;
    for (double alpha : alpha_list) {
        OptimizationTrace tr =
            (alpha == 0.0) ? ref
                           : optimize(warm_u, problem.spec, problem.set, FluidParams{nu, alpha},
                                      problem.solver, problem.optimizer);
        ContinuationRow row;
        row.alpha = alpha;
        row.min_J = tr.J_final;
        row.opt_iters = tr.iterations;
        row.converged = tr.converged;
        row.dmin_J = std::abs(tr.J_final - ref.J_final);
        row.du_L2 = norm_L2(tr.u_final - ref.u_final);
        row.dy_H1 = norms(tr.state_final.y - ref.state_final.y).H1_semi;
        row.dp_L2 = norm_L2(tr.adjoint_final.p - ref.adjoint_final.p);
        rep.rows.push_back(row);
        rep.all_converged = rep.all_converged && tr.converged;
        if (!tr.converged) break;  // abort with partial results
        warm_u = tr.u_final;
    }

    // Limit-equation check for the reference adjoint.
    double worst = 0.0;
    for (uint64_t s : {401, 402, 403}) {
        VectorField phi = random_compact_divfree(problem.u0.grid, s, 3);
        const double scale = norms(phi).H1_semi;
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(ns_adjoint_weak_residual(
                                    ref.state_final, ref.adjoint_final.p, problem.spec.y_d,
                                    nu, phi)) /
                                    scale);
    }
    rep.ns_adjoint_residual = worst;
    return rep;
}

}  // namespace sgf
