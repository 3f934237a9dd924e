// Adjoint solvers.
//
// pde mode assembles the scalar curl of the adjoint equation in the stream
// unknown q of p = curl_perp(q):
//
//   nu*Lap^2(q) - p.grad(omega) - Lap[(I - alpha*Lap) m] = curl(f),
//   m = (y x p)_z = -y.grad(q),   clamped BC on q,
//
// which at alpha = 0 reduces to the curled Navier-Stokes adjoint.
//
// discrete-transpose mode applies the exact transpose of the assembled
// linearized operator, giving duality (f, z(w)) = (w, p(f)) to solver
// precision; its q is a diagnostic Poisson reconstruction.
#pragma once

#include "sgflow/linearized.hpp"

namespace sgf {

enum class AdjointMode { pde, discrete_transpose };

struct AdjointSolution {
    VectorField p;
    ScalarField q;  // stream function of p (diagnostic in discrete mode)
    AdjointMode mode = AdjointMode::pde;
};

AdjointSolution solve_adjoint_pde(const StateSolution& state, const VectorField& f,
                                  const FluidParams& params, const SolverConfig& cfg);

AdjointSolution solve_adjoint_discrete(const StateSolution& state, const VectorField& f,
                                       const FluidParams& params, const SolverConfig& cfg);

AdjointSolution solve_adjoint_discrete(const LinearizedOperator& lin, const VectorField& f);

}  // namespace sgf
