// Sparse-matrix realizations of the grid operators, used to assemble the
// state, linearized and adjoint systems in stream-function unknowns.
//
// Conventions:
//   N            = nx*ny nodes, node index id(i,j) = j*nx + i.
//   m            = (nx-2)*(ny-2) interior nodes (the solver unknowns).
//   vector field = stacked [x-components; y-components], length 2N.
//   clamped closure: psi = 0 on the boundary, d(psi)/dn = 0 imposed through
//   second-order ghost elimination (even reflection across the wall).
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <vector>

#include "sgflow/field.hpp"
#include "sgflow/operators.hpp"

namespace sgf {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Vec = Eigen::VectorXd;

enum class AdvectionScheme { centered, upwind };

inline Vec to_vec(const ScalarField& s) {
    return Eigen::Map<const Vec>(s.val.data(), static_cast<Eigen::Index>(s.val.size()));
}

inline Vec to_vec(const VectorField& v) {
    const int N = v.grid.size();
    Vec r(2 * N);
    for (int n = 0; n < N; ++n) {
        r[n] = v.x[n];
        r[N + n] = v.y[n];
    }
    return r;
}

inline ScalarField scalar_from_vec(const Grid& g, const Vec& v) {
    ScalarField s(g);
    for (int n = 0; n < g.size(); ++n) s.val[n] = v[n];
    return s;
}

inline VectorField vector_from_vec(const Grid& g, const Vec& v) {
    VectorField r(g);
    const int N = g.size();
    for (int n = 0; n < N; ++n) {
        r.x[n] = v[n];
        r.y[n] = v[N + n];
    }
    return r;
}

// First-derivative matrices matching d1_at / d2_at (centered inside,
// second-order one-sided on the boundary). Size N x N.
SpMat d1_matrix(const Grid& g);
SpMat d2_matrix(const Grid& g);

// 5-point Laplacian rows at interior nodes, zero rows on the boundary. N x N.
SpMat lap_interior_rows(const Grid& g);

// Laplacian of a clamped stream function: input is the interior values,
// output lives on all nodes. Boundary rows use the ghost reflection, so the
// composition with lap_interior_rows is the classical clamped biharmonic.
// Size N x m.
SpMat lap_clamped(const Grid& g);

// (I - alpha*Lap) with even-reflection ghost closure on boundary rows. N x N.
SpMat sigma_ghost(const Grid& g, double alpha);

// Stream function (interior unknowns) -> velocity, stacked 2N x m.
SpMat curl_perp_clamped(const Grid& g);

// Scalar curl of a vector field, N x 2N.
SpMat curl_of_vector(const Grid& g);


// Advection rows y.grad(.) at interior nodes (zero boundary rows). N x N.
SpMat advection_matrix(const Grid& g, const VectorField& y, AdvectionScheme scheme);

// Selector matrices between all-node and interior-node numbering.
SpMat restrict_interior(const Grid& g);  // m x N
SpMat embed_interior(const Grid& g);     // N x m

// Dirichlet 5-point Laplacian on interior unknowns, m x m (for Poisson
// solves and the Poincare eigenvalue).
SpMat dirichlet_laplacian(const Grid& g);

// Trapezoidal quadrature weights as a flat vector (scalar nodes).
Vec quad_weights(const Grid& g);

// Coupling term (curl_perp chi) . grad(s) with frozen scalar s: rows at
// interior nodes, acting on interior stream unknowns. The difference scheme
// for grad(s) follows `scheme`; the upwind variant picks sides from the sign
// of the frozen wind. N x m.
SpMat gradient_coupling(const Grid& g, const ScalarField& s, AdvectionScheme scheme,
                        const VectorField& wind);

}  // namespace sgf
