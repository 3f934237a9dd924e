// Closed-form verification cases: a clamped stream function together with
// the body force that makes it an exact steady solution (pressure absorbed).
#pragma once

#include <functional>
#include <string>

#include "sgflow/field.hpp"

namespace sgf {

// Hand-derived derivatives of the exact stream function. All are functions
// of (x1, x2) on the unit square.
struct ManufacturedForm {
    std::function<double(double, double)> psi;
    std::function<double(double, double)> d1_psi;
    std::function<double(double, double)> d2_psi;
    std::function<double(double, double)> lap_psi;
    std::function<double(double, double)> d1_lap_psi;
    std::function<double(double, double)> d2_lap_psi;
    std::function<double(double, double)> bilap_psi;
};

// Catalog ids: "poly-quartic" (psi = [x1(1-x1)x2(1-x2)]^2) and
// "trig" (psi = sin^2(pi x1) sin^2(pi x2)).
ManufacturedForm manufactured_form(const std::string& id);

struct ManufacturedCase {
    ScalarField psi_exact;
    VectorField u_forcing;
};

// Samples the exact stream function and the forcing
//   u = -nu*Lap(y) + curl(sigma(y)) x y
// on the grid. The solution then satisfies the state system with zero
// pressure gradient.
ManufacturedCase manufactured_case(const std::string& id, const Grid& g,
                                   const FluidParams& params);

}  // namespace sgf
