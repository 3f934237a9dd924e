#include "sgflow/adjoint.hpp"

#include <stdexcept>

namespace sgf {

AdjointSolution solve_adjoint_pde(const StateSolution& state, const VectorField& f,
                                  const FluidParams& params, const SolverConfig& cfg) {
    params.validate();
    if (!state.converged) throw std::invalid_argument("solve_adjoint_pde: state not converged");
    const Grid& g = state.psi.grid;
    check_same_grid(g, f.grid, "solve_adjoint_pde");
    const double nu = params.nu;
    const double alpha = params.alpha;

    const SpMat Lap = lap_clamped(g);
    const SpMat Lint = lap_interior_rows(g);
    const SpMat R = restrict_interior(g);
    const SpMat K = curl_perp_clamped(g);
    const SpMat C = curl_of_vector(g);
    const SpMat Emb = embed_interior(g);

    const SpMat F = gradient_coupling(g, state.omega, cfg.advection, state.y);
    const SpMat A = advection_matrix(g, state.y, cfg.advection);
    const SpMat Sg = sigma_ghost(g, alpha);

    // nu*Lap^2 q - p.grad(omega) + Lap[(I - alpha*Lap)(y.grad q)] = curl f
    const SpMat M = R * (nu * (Lint * Lap) - F + Lint * (Sg * (A * Emb)));
    Eigen::SparseLU<SpMat> lu(M);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error(
            "solve_adjoint_pde: singular system (smallness condition likely violated)");

    const Vec rhs = R * (C * to_vec(f));
    const Vec q = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw std::runtime_error("solve_adjoint_pde: solve failed");

    AdjointSolution out;
    out.mode = AdjointMode::pde;
    out.q = ScalarField(g);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) out.q(i, j) = q[g.interior_id(i, j)];
    out.p = vector_from_vec(g, K * q);
    out.p.zero_boundary();
    return out;
}

AdjointSolution solve_adjoint_discrete(const LinearizedOperator& lin, const VectorField& f) {
    AdjointSolution out;
    out.mode = AdjointMode::discrete_transpose;
    out.p = lin.solve_transpose(f);

    // Diagnostic stream function: Lap q = -curl p with homogeneous Dirichlet BC.
    const Grid& g = out.p.grid;
    const SpMat DL = dirichlet_laplacian(g);
    const SpMat C = curl_of_vector(g);
    const SpMat R = restrict_interior(g);
    Eigen::SparseLU<SpMat> lu(DL);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve_adjoint_discrete: Poisson reconstruction failed");
    const Vec q = lu.solve(Vec(-(R * (C * to_vec(out.p)))));
    out.q = ScalarField(g);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) out.q(i, j) = q[g.interior_id(i, j)];
    return out;
}

AdjointSolution solve_adjoint_discrete(const StateSolution& state, const VectorField& f,
                                       const FluidParams& params, const SolverConfig& cfg) {
    LinearizedOperator lin(state, params, cfg);
    return solve_adjoint_discrete(lin, f);
}

}  // namespace sgf
