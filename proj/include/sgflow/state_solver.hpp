// Nonlinear state solver in stream-function form.
//
// For alpha > 0 each Picard sweep alternates a transport solve for
// omega = curl sigma(y),
//     omega + (alpha/nu) y.grad(omega) = (alpha/nu) curl(u) + curl(y),
// with a clamped recovery solve
//     (I - alpha*Lap) Lap psi = -omega
// (the stream convention y = curl_perp(psi) gives curl(y) = -Lap(psi)).
// For alpha = 0 the same loop solves the rotational Navier-Stokes system
//     nu*Lap^2(psi) + y.grad(curl y) = curl(u)
// monolithically with frozen advecting velocity.
#pragma once

#include <vector>

#include "sgflow/assembly.hpp"
#include "sgflow/field.hpp"

namespace sgf {

struct SolverConfig {
    double picard_tol = 1e-11;
    int picard_max_iters = 400;
    double relaxation = 1.0;  // theta in (0, 1], halved on residual increase
    double pivot_tol = 1e-13;
    AdvectionScheme advection = AdvectionScheme::centered;

    void validate() const {
        if (!(picard_tol > 0.0)) throw std::invalid_argument("SolverConfig: picard_tol must be > 0");
        if (!(relaxation > 0.0 && relaxation <= 1.0))
            throw std::invalid_argument("SolverConfig: relaxation must be in (0, 1]");
        if (picard_max_iters < 1)
            throw std::invalid_argument("SolverConfig: picard_max_iters must be >= 1");
    }
};

struct PicardRecord {
    int iter = 0;
    double residual = 0.0;   // max of transport and recovery relative residuals
    double increment = 0.0;  // relative H1 increment of the velocity
};

struct StateSolution {
    VectorField y;      // velocity, zero on the boundary
    ScalarField psi;    // clamped stream function
    ScalarField omega;  // transported quantity curl sigma(y)
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<PicardRecord> history;
    std::vector<double> increments_H1;  // |y^{k+1} - y^k|_H1 per sweep
};

StateSolution solve_state(const VectorField& u, const FluidParams& params,
                          const SolverConfig& cfg, const StateSolution* warm_start = nullptr);

// Interior stream values of a converged state (solver-facing helper).
Vec interior_stream(const StateSolution& state);

}  // namespace sgf
