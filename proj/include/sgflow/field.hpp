// Nodal scalar and two-component vector fields.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sgflow/grid.hpp"

namespace sgf {

struct ScalarField {
    Grid grid;
    std::vector<double> val;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), val(g.size(), 0.0) {}

    double& operator()(int i, int j) { return val[grid.id(i, j)]; }
    double operator()(int i, int j) const { return val[grid.id(i, j)]; }

    void fill(const std::function<double(double, double)>& f) {
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                val[grid.id(i, j)] = f(grid.x1(i), grid.x2(j));
    }

    void zero_boundary() {
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                if (grid.boundary(i, j)) val[grid.id(i, j)] = 0.0;
    }
};

struct VectorField {
    Grid grid;
    std::vector<double> x;  // first component per node
    std::vector<double> y;  // second component per node

    VectorField() = default;
    explicit VectorField(const Grid& g) : grid(g), x(g.size(), 0.0), y(g.size(), 0.0) {}

    void fill(const std::function<double(double, double)>& fx,
              const std::function<double(double, double)>& fy) {
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const int n = grid.id(i, j);
                x[n] = fx(grid.x1(i), grid.x2(j));
                y[n] = fy(grid.x1(i), grid.x2(j));
            }
    }

    void zero_boundary() {
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                if (grid.boundary(i, j)) {
                    x[grid.id(i, j)] = 0.0;
                    y[grid.id(i, j)] = 0.0;
                }
    }
};

inline void check_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a.nx != b.nx || a.ny != b.ny)
        throw std::invalid_argument(std::string(where) + ": fields live on different grids");
}

// Elementwise helpers used all over the solvers and probes.

inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid, b.grid, "ScalarField-");
    ScalarField r(a.grid);
    for (size_t n = 0; n < r.val.size(); ++n) r.val[n] = a.val[n] - b.val[n];
    return r;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    check_same_grid(a.grid, b.grid, "VectorField-");
    VectorField r(a.grid);
    for (size_t n = 0; n < r.x.size(); ++n) {
        r.x[n] = a.x[n] - b.x[n];
        r.y[n] = a.y[n] - b.y[n];
    }
    return r;
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    check_same_grid(a.grid, b.grid, "VectorField+");
    VectorField r(a.grid);
    for (size_t n = 0; n < r.x.size(); ++n) {
        r.x[n] = a.x[n] + b.x[n];
        r.y[n] = a.y[n] + b.y[n];
    }
    return r;
}

inline VectorField operator*(double c, const VectorField& a) {
    VectorField r(a.grid);
    for (size_t n = 0; n < r.x.size(); ++n) {
        r.x[n] = c * a.x[n];
        r.y[n] = c * a.y[n];
    }
    return r;
}

}  // namespace sgf
