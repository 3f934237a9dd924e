#include "sgflow/constants.hpp"

#include <cmath>

#include "sgflow/assembly.hpp"
#include "sgflow/operators.hpp"
#include "sgflow/random_fields.hpp"

namespace sgf {

namespace {

double l4_over_h1(const VectorField& v) {
    NormReport r = norms(v);
    return r.H1_semi > 0.0 ? r.L4 / r.H1_semi : 0.0;
}

// Smallest eigenvalue of the (positive) Dirichlet Laplacian via inverse
// power iteration.
double dirichlet_lambda1(const Grid& g) {
    const SpMat DL = dirichlet_laplacian(g);  // negative definite
    Eigen::SparseLU<SpMat> lu(DL);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("estimate_constants: Laplacian factorization failed");
    Vec v = Vec::Ones(g.interior_count());
    v.normalize();
    double lambda = 0.0;
    for (int k = 0; k < 200; ++k) {
        Vec w = lu.solve(v);
        w.normalize();
        const double next = -w.dot(DL * w);
        if (k > 3 && std::abs(next - lambda) <= 1e-13 * next) {
            lambda = next;
            break;
        }
        lambda = next;
        v = w;
    }
    return lambda;
}

// Iteratively reweighted eigen-ascent for sup ||v||_4 / |v|_H1 over
// divergence-free fields v = curl_perp(psi). Every iterate is feasible, so
// the best ratio seen is a certified lower bound.
double s4_ascent(const Grid& g, const Vec& psi0) {
    const SpMat K = curl_perp_clamped(g);
    const SpMat D1 = d1_matrix(g);
    const SpMat D2 = d2_matrix(g);
    const Vec wq = quad_weights(g);
    const int N = g.size();

    // H1 stiffness of the velocity in stream unknowns.
    SpMat W(N, N);
    {
        std::vector<Triplet> t;
        for (int n = 0; n < N; ++n) t.emplace_back(n, n, wq[n]);
        W.setFromTriplets(t.begin(), t.end());
    }
    const SpMat Kx = K.topRows(N), Ky = K.bottomRows(N);
    SpMat G = SpMat((D1 * Kx).transpose() * W * (D1 * Kx)) +
              SpMat((D2 * Kx).transpose() * W * (D2 * Kx)) +
              SpMat((D1 * Ky).transpose() * W * (D1 * Ky)) +
              SpMat((D2 * Ky).transpose() * W * (D2 * Ky));
    Eigen::SparseLU<SpMat> glu(G);
    if (glu.info() != Eigen::Success) return 0.0;

    Vec psi = psi0;
    double best = 0.0;
    for (int outer = 0; outer < 8; ++outer) {
        // Weight rho = |v|^2 of the current iterate.
        Vec vx = Kx * psi, vy = Ky * psi;
        Vec rho(N);
        for (int n = 0; n < N; ++n) rho[n] = vx[n] * vx[n] + vy[n] * vy[n];
        // Power iteration on G^{-1} N(rho).
        for (int inner = 0; inner < 12; ++inner) {
            Vec nx = Kx * psi, ny = Ky * psi;
            for (int n = 0; n < N; ++n) {
                const double c = wq[n] * rho[n];
                nx[n] *= c;
                ny[n] *= c;
            }
            Vec rhs = Kx.transpose() * nx + Ky.transpose() * ny;
            psi = glu.solve(rhs);
            psi.normalize();
        }
        VectorField v = vector_from_vec(g, K * psi);
        best = std::max(best, l4_over_h1(v));
    }
    return best;
}

}  // namespace

ConstantsReport estimate_constants(const Grid& g, int trials, uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("estimate_constants: need trials >= 100");
    ConstantsReport r;
    r.S2 = 1.0 / std::sqrt(dirichlet_lambda1(g));

    double best_ratio = 0.0;
    Vec best_psi;
    for (int t = 0; t < trials; ++t) {
        const TrigSeries s = random_series(seed + 1000 + t, 4);
        VectorField v = sample_compact_divfree(s, g);
        const double ratio = l4_over_h1(v);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            ScalarField psi = sample_compact_stream(s, g);
            best_psi = Vec(g.interior_count());
            for (int j = 1; j < g.ny - 1; ++j)
                for (int i = 1; i < g.nx - 1; ++i)
                    best_psi[g.interior_id(i, j)] = psi(i, j);
        }
    }
    r.S4 = std::max(best_ratio, s4_ascent(g, best_psi));
    r.kappa_bar = 2.0 * r.S4 * r.S4 * r.S2;
    r.notes = "S2: inverse power iteration on the Dirichlet Laplacian; S4: certified lower "
              "bound (sampling + reweighted eigen-ascent); kappa_bar = 2*S4^2*S2 (override "
              "allowed, floor S4^2*S2)";
    return r;
}

SmallnessVerdict check_smallness(const VectorField& u, const FluidParams& params,
                                 const ConstantsReport& constants) {
    params.validate();
    constants.validate();
    SmallnessVerdict v;
    v.kappa_bar_used = constants.kappa_bar;
    const double nu2 = params.nu * params.nu;
    v.lhs = constants.kappa_bar *
            (norms(u).L2 + params.alpha * norms(curl_vector(u)).L2);
    v.margin = nu2 - v.lhs;
    v.holds = v.margin > 0.0;
    return v;
}

}  // namespace sgf
