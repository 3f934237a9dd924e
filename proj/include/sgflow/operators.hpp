// Discrete differential operators and trapezoidal quadrature.
//
// All stencils are second-order centered in the interior with second-order
// one-sided closures on the boundary, except advect() which is first-order
// upwind. Stream-function fields use the convention
//     y = (d(psi)/dx2, -d(psi)/dx1),
// so the scalar curl of such a velocity equals -laplacian(psi).
#pragma once

#include <algorithm>
#include <cmath>

#include "sgflow/field.hpp"

namespace sgf {

// d/dx1 of a scalar sample: centered inside, one-sided second order at i=0, nx-1.
inline double d1_at(const ScalarField& s, int i, int j) {
    const int nx = s.grid.nx;
    const double h2 = 2.0 * s.grid.h;
    if (i == 0) return (-3.0 * s(0, j) + 4.0 * s(1, j) - s(2, j)) / h2;
    if (i == nx - 1) return (3.0 * s(nx - 1, j) - 4.0 * s(nx - 2, j) + s(nx - 3, j)) / h2;
    return (s(i + 1, j) - s(i - 1, j)) / h2;
}

inline double d2_at(const ScalarField& s, int i, int j) {
    const int ny = s.grid.ny;
    const double h2 = 2.0 * s.grid.h;
    if (j == 0) return (-3.0 * s(i, 0) + 4.0 * s(i, 1) - s(i, 2)) / h2;
    if (j == ny - 1) return (3.0 * s(i, ny - 1) - 4.0 * s(i, ny - 2) + s(i, ny - 3)) / h2;
    return (s(i, j + 1) - s(i, j - 1)) / h2;
}

// 5-point Laplacian at interior nodes; boundary rows carry the caller's
// closure and are left at zero here.
inline ScalarField laplacian(const ScalarField& s) {
    ScalarField r(s.grid);
    const double ih2 = 1.0 / (s.grid.h * s.grid.h);
    for (int j = 1; j < s.grid.ny - 1; ++j)
        for (int i = 1; i < s.grid.nx - 1; ++i)
            r(i, j) = (s(i + 1, j) + s(i - 1, j) + s(i, j + 1) + s(i, j - 1) - 4.0 * s(i, j)) * ih2;
    return r;
}

// sigma(v) = v - alpha * laplacian(v).
inline ScalarField sigma_apply(const ScalarField& s, double alpha) {
    ScalarField r = laplacian(s);
    for (size_t n = 0; n < r.val.size(); ++n) r.val[n] = s.val[n] - alpha * r.val[n];
    return r;
}

inline VectorField sigma_apply(const VectorField& v, double alpha) {
    VectorField r(v.grid);
    ScalarField c(v.grid);
    c.val = v.x;
    ScalarField lx = laplacian(c);
    c.val = v.y;
    ScalarField ly = laplacian(c);
    for (size_t n = 0; n < r.x.size(); ++n) {
        r.x[n] = v.x[n] - alpha * lx.val[n];
        r.y[n] = v.y[n] - alpha * ly.val[n];
    }
    return r;
}

// Scalar-to-vector curl: (d2 s, -d1 s).
inline VectorField curl_scalar(const ScalarField& s) {
    VectorField r(s.grid);
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < s.grid.nx; ++i) {
            const int n = s.grid.id(i, j);
            r.x[n] = d2_at(s, i, j);
            r.y[n] = -d1_at(s, i, j);
        }
    return r;
}

// y = (d2 psi, -d1 psi); centered stencils commute with the centered
// divergence, so the result is discretely divergence-free at interior nodes.
inline VectorField velocity_from_stream(const ScalarField& psi) { return curl_scalar(psi); }

// Vector-to-scalar curl: d1 v_y - d2 v_x.
inline ScalarField curl_vector(const VectorField& v) {
    ScalarField r(v.grid);
    ScalarField cx(v.grid), cy(v.grid);
    cx.val = v.x;
    cy.val = v.y;
    for (int j = 0; j < v.grid.ny; ++j)
        for (int i = 0; i < v.grid.nx; ++i)
            r(i, j) = d1_at(cy, i, j) - d2_at(cx, i, j);
    return r;
}

inline ScalarField divergence(const VectorField& v) {
    ScalarField r(v.grid);
    ScalarField cx(v.grid), cy(v.grid);
    cx.val = v.x;
    cy.val = v.y;
    for (int j = 0; j < v.grid.ny; ++j)
        for (int i = 0; i < v.grid.nx; ++i)
            r(i, j) = d1_at(cx, i, j) + d2_at(cy, i, j);
    return r;
}

// Trapezoidal quadrature weight of node (i,j) on the unit square.
inline double quad_weight(const Grid& g, int i, int j) {
    const double wi = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
    const double wj = (j == 0 || j == g.ny - 1) ? 0.5 : 1.0;
    return wi * wj * g.h * g.h;
}

// L2 inner products under trapezoidal quadrature.
inline double inner(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid, b.grid, "inner");
    double s = 0.0;
    for (int j = 0; j < a.grid.ny; ++j)
        for (int i = 0; i < a.grid.nx; ++i)
            s += quad_weight(a.grid, i, j) * a(i, j) * b(i, j);
    return s;
}

inline double inner(const VectorField& a, const VectorField& b) {
    check_same_grid(a.grid, b.grid, "inner");
    double s = 0.0;
    for (int j = 0; j < a.grid.ny; ++j)
        for (int i = 0; i < a.grid.nx; ++i) {
            const int n = a.grid.id(i, j);
            s += quad_weight(a.grid, i, j) * (a.x[n] * b.x[n] + a.y[n] * b.y[n]);
        }
    return s;
}

// Trilinear convective form b(phi, z, y) = (phi . grad z, y).
inline double trilinear_b(const VectorField& phi, const VectorField& z, const VectorField& y) {
    check_same_grid(phi.grid, z.grid, "trilinear_b");
    check_same_grid(phi.grid, y.grid, "trilinear_b");
    const Grid& g = phi.grid;
    ScalarField zx(g), zy(g);
    zx.val = z.x;
    zy.val = z.y;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.id(i, j);
            const double gx = phi.x[n] * d1_at(zx, i, j) + phi.y[n] * d2_at(zx, i, j);
            const double gy = phi.x[n] * d1_at(zy, i, j) + phi.y[n] * d2_at(zy, i, j);
            s += quad_weight(g, i, j) * (gx * y.x[n] + gy * y.y[n]);
        }
    return s;
}

// First-order upwind evaluation of y . grad s. Zero on the boundary: the
// advecting velocity vanishes there, so there is no inflow.
inline ScalarField advect(const VectorField& y, const ScalarField& s) {
    check_same_grid(y.grid, s.grid, "advect");
    const Grid& g = y.grid;
    const double ih = 1.0 / g.h;
    ScalarField r(g);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const int n = g.id(i, j);
            const double a = y.x[n];
            const double b = y.y[n];
            const double sx = (a >= 0.0) ? (s(i, j) - s(i - 1, j)) * ih : (s(i + 1, j) - s(i, j)) * ih;
            const double sy = (b >= 0.0) ? (s(i, j) - s(i, j - 1)) * ih : (s(i, j + 1) - s(i, j)) * ih;
            r(i, j) = a * sx + b * sy;
        }
    return r;
}

struct NormReport {
    double L2 = 0.0;
    double H1_semi = 0.0;
    double L4 = 0.0;
    double Linf = 0.0;
};

inline NormReport norms(const ScalarField& s) {
    NormReport r;
    double q2 = 0.0, q4 = 0.0, qh = 0.0;
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < s.grid.nx; ++i) {
            const double w = quad_weight(s.grid, i, j);
            const double v = s(i, j);
            q2 += w * v * v;
            q4 += w * v * v * v * v;
            const double gx = d1_at(s, i, j);
            const double gy = d2_at(s, i, j);
            qh += w * (gx * gx + gy * gy);
            r.Linf = std::max(r.Linf, std::abs(v));
        }
    r.L2 = std::sqrt(q2);
    r.L4 = std::pow(q4, 0.25);
    r.H1_semi = std::sqrt(qh);
    return r;
}

inline NormReport norms(const VectorField& v) {
    NormReport r;
    ScalarField cx(v.grid), cy(v.grid);
    cx.val = v.x;
    cy.val = v.y;
    double q2 = 0.0, q4 = 0.0, qh = 0.0;
    for (int j = 0; j < v.grid.ny; ++j)
        for (int i = 0; i < v.grid.nx; ++i) {
            const double w = quad_weight(v.grid, i, j);
            const int n = v.grid.id(i, j);
            const double m2 = v.x[n] * v.x[n] + v.y[n] * v.y[n];
            q2 += w * m2;
            q4 += w * m2 * m2;
            const double g1x = d1_at(cx, i, j), g2x = d2_at(cx, i, j);
            const double g1y = d1_at(cy, i, j), g2y = d2_at(cy, i, j);
            qh += w * (g1x * g1x + g2x * g2x + g1y * g1y + g2y * g2y);
            r.Linf = std::max(r.Linf, std::sqrt(m2));
        }
    r.L2 = std::sqrt(q2);
    r.L4 = std::pow(q4, 0.25);
    r.H1_semi = std::sqrt(qh);
    return r;
}

inline double norm_L2(const ScalarField& s) { return std::sqrt(std::max(0.0, inner(s, s))); }
inline double norm_L2(const VectorField& v) { return std::sqrt(std::max(0.0, inner(v, v))); }

}  // namespace sgf
