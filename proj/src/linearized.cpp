#include "sgflow/linearized.hpp"

#include <stdexcept>

namespace sgf {

namespace {

// Diagonal selector of boundary rows.
SpMat boundary_selector(const Grid& g) {
    std::vector<Triplet> t;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.boundary(i, j)) t.emplace_back(g.id(i, j), g.id(i, j), 1.0);
    SpMat b(g.size(), g.size());
    b.setFromTriplets(t.begin(), t.end());
    return b;
}

}  // namespace

LinearizedOperator::LinearizedOperator(const StateSolution& state, const FluidParams& params,
                                       const SolverConfig& cfg)
    : grid_(state.psi.grid), params_(params) {
    params.validate();
    if (!state.converged)
        throw std::invalid_argument("LinearizedOperator: state is not converged");

    const Grid& g = grid_;
    const int N = g.size();
    const double nu = params.nu;
    const double alpha = params.alpha;

    const SpMat Lap = lap_clamped(g);
    const SpMat Lint = lap_interior_rows(g);
    const SpMat R = restrict_interior(g);
    K_ = curl_perp_clamped(g);
    C_ = curl_of_vector(g);
    wq_ = quad_weights(g);

    SpMat IaL(N, N);
    IaL.setIdentity();
    IaL = IaL - alpha * Lint;
    E_ = SpMat(-(IaL * Lap));  // zeta = E chi (+ boundary curl-w term)

    const SpMat A = advection_matrix(g, state.y, cfg.advection);
    const SpMat F = gradient_coupling(g, state.omega, cfg.advection, state.y);

    M_ = R * (nu * (Lint * Lap) + A * E_ + F);
    L_ = R * (C_ - (alpha / nu) * (A * (boundary_selector(g) * C_)));

    lu_ = std::make_unique<Eigen::SparseLU<SpMat>>();
    lu_->compute(M_);
    if (lu_->info() != Eigen::Success)
        throw std::runtime_error(
            "LinearizedOperator: singular system (smallness condition likely violated)");
}

LinearizedSolution LinearizedOperator::solve(const VectorField& w) const {
    check_same_grid(grid_, w.grid, "LinearizedOperator::solve");
    const Grid& g = grid_;
    const Vec wv = to_vec(w);
    const Vec chi = lu_->solve(L_ * wv);
    if (lu_->info() != Eigen::Success)
        throw std::runtime_error("LinearizedOperator: solve failed");

    LinearizedSolution out;
    out.chi = ScalarField(g);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) out.chi(i, j) = chi[g.interior_id(i, j)];

    Vec zeta = E_ * chi;
    const Vec cw = C_ * wv;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.boundary(i, j)) zeta[g.id(i, j)] += (params_.alpha / params_.nu) * cw[g.id(i, j)];
    out.zeta = scalar_from_vec(g, zeta);

    out.z = vector_from_vec(g, K_ * chi);
    out.z.zero_boundary();
    return out;
}

VectorField LinearizedOperator::solve_transpose(const VectorField& f) const {
    check_same_grid(grid_, f.grid, "LinearizedOperator::solve_transpose");
    const Grid& g = grid_;
    const int N = g.size();

    // Load of the observable (f, z)_W: boundary velocity rows are zeroed to
    // match the zero-boundary convention of the forward map.
    Vec fw = to_vec(f);
    for (int n = 0; n < N; ++n) {
        const int i = n % g.nx, j = n / g.nx;
        const double w = g.boundary(i, j) ? 0.0 : wq_[n];
        fw[n] *= w;
        fw[N + n] *= w;
    }
    const Vec gload = K_.transpose() * fw;
    const Vec s = lu_->transpose().solve(gload);
    if (lu_->info() != Eigen::Success)
        throw std::runtime_error("LinearizedOperator: transpose solve failed");
    Vec pv = L_.transpose() * s;
    for (int n = 0; n < N; ++n) {
        pv[n] /= wq_[n];
        pv[N + n] /= wq_[n];
    }
    return vector_from_vec(g, pv);
}

}  // namespace sgf
