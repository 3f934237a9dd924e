// Uniform node-centered grid on the unit square.
#pragma once

#include <stdexcept>
#include <string>

namespace sgf {

// Lattice of nx*ny nodes on [0,1]^2 with square cells, h = 1/(nx-1).
// Node (i,j) sits at (i*h, j*h); storage is row-major with j outer.
struct Grid {
    int nx = 0;
    int ny = 0;
    double h = 0.0;

    int size() const { return nx * ny; }
    int id(int i, int j) const { return j * nx + i; }
    double x1(int i) const { return i * h; }
    double x2(int j) const { return j * h; }

    bool boundary(int i, int j) const {
        return i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
    }
    bool interior(int i, int j) const { return !boundary(i, j); }

    // Interior nodes form an (nx-2)*(ny-2) block with its own indexing,
    // used by the assembled solvers.
    int interior_count() const { return (nx - 2) * (ny - 2); }
    int interior_id(int i, int j) const { return (j - 1) * (nx - 2) + (i - 1); }
};

inline Grid make_grid(int nx, int ny) {
    if (nx < 9 || ny < 9)
        throw std::invalid_argument("make_grid: need nx, ny >= 9, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    if (nx != ny)
        throw std::invalid_argument("make_grid: non-square cells (nx=" +
                                    std::to_string(nx) + ", ny=" + std::to_string(ny) +
                                    "); spacing must match on both axes");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.h = 1.0 / (nx - 1);
    return g;
}

// Viscosity and viscoelastic modulus of the fluid.
struct FluidParams {
    double nu = 1.0;     // viscosity, > 0
    double alpha = 0.0;  // normal stress modulus, >= 0

    void validate() const {
        if (!(nu > 0.0)) throw std::invalid_argument("FluidParams: nu must be > 0");
        if (!(alpha >= 0.0)) throw std::invalid_argument("FluidParams: alpha must be >= 0");
    }
};

}  // namespace sgf
