// Linearized state equation, assembled as a single sparse system in the
// stream unknowns chi of the perturbation velocity z = curl_perp(chi):
//
//   nu*Lap^2(chi) + y.grad(zeta) + (curl_perp chi).grad(omega) = curl(w),
//   zeta = curl sigma(z) = -(I - alpha*Lap) Lap chi,   clamped BC on chi.
//
// The assembled matrix is the exact Jacobian of the discrete nonlinear state
// residual at the converged state, so its transpose yields machine-precision
// duality for the optimizer.
#pragma once

#include <memory>

#include "sgflow/state_solver.hpp"

namespace sgf {

struct LinearizedSolution {
    VectorField z;     // perturbation velocity, zero on the boundary
    ScalarField chi;   // its stream function
    ScalarField zeta;  // curl sigma(z)
};

class LinearizedOperator {
  public:
    LinearizedOperator(const StateSolution& state, const FluidParams& params,
                       const SolverConfig& cfg);

    LinearizedSolution solve(const VectorField& w) const;

    // Exact discrete adjoint of the reduced map w -> z under the trapezoidal
    // L2 pairing: returns p with (f, z(w)) = (w, p(f)) for all w.
    VectorField solve_transpose(const VectorField& f) const;

    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
    FluidParams params_;
    SpMat M_;     // m x m system matrix
    SpMat L_;     // m x 2N load map
    SpMat E_;     // N x m zeta map (chi part)
    SpMat K_;     // 2N x m velocity extraction
    SpMat C_;     // N x 2N scalar curl
    Vec wq_;      // scalar quadrature weights
    std::unique_ptr<Eigen::SparseLU<SpMat>> lu_;
};

}  // namespace sgf
