#include "sgflow/assembly.hpp"

namespace sgf {

namespace {

void d1_row_triplets(const Grid& g, int i, int j, int row, int col0, double scale,
                     std::vector<Triplet>& t) {
    const double c = scale / (2.0 * g.h);
    if (i == 0) {
        t.emplace_back(row, col0 + g.id(0, j), -3.0 * c);
        t.emplace_back(row, col0 + g.id(1, j), 4.0 * c);
        t.emplace_back(row, col0 + g.id(2, j), -c);
    } else if (i == g.nx - 1) {
        t.emplace_back(row, col0 + g.id(g.nx - 1, j), 3.0 * c);
        t.emplace_back(row, col0 + g.id(g.nx - 2, j), -4.0 * c);
        t.emplace_back(row, col0 + g.id(g.nx - 3, j), c);
    } else {
        t.emplace_back(row, col0 + g.id(i + 1, j), c);
        t.emplace_back(row, col0 + g.id(i - 1, j), -c);
    }
}

void d2_row_triplets(const Grid& g, int i, int j, int row, int col0, double scale,
                     std::vector<Triplet>& t) {
    const double c = scale / (2.0 * g.h);
    if (j == 0) {
        t.emplace_back(row, col0 + g.id(i, 0), -3.0 * c);
        t.emplace_back(row, col0 + g.id(i, 1), 4.0 * c);
        t.emplace_back(row, col0 + g.id(i, 2), -c);
    } else if (j == g.ny - 1) {
        t.emplace_back(row, col0 + g.id(i, g.ny - 1), 3.0 * c);
        t.emplace_back(row, col0 + g.id(i, g.ny - 2), -4.0 * c);
        t.emplace_back(row, col0 + g.id(i, g.ny - 3), c);
    } else {
        t.emplace_back(row, col0 + g.id(i, j + 1), c);
        t.emplace_back(row, col0 + g.id(i, j - 1), -c);
    }
}

SpMat from_triplets(int rows, int cols, std::vector<Triplet>& t) {
    SpMat m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

}  // namespace

SpMat d1_matrix(const Grid& g) {
    std::vector<Triplet> t;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) d1_row_triplets(g, i, j, g.id(i, j), 0, 1.0, t);
    return from_triplets(g.size(), g.size(), t);
}

SpMat d2_matrix(const Grid& g) {
    std::vector<Triplet> t;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) d2_row_triplets(g, i, j, g.id(i, j), 0, 1.0, t);
    return from_triplets(g.size(), g.size(), t);
}

SpMat lap_interior_rows(const Grid& g) {
    std::vector<Triplet> t;
    const double c = 1.0 / (g.h * g.h);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const int n = g.id(i, j);
            t.emplace_back(n, n, -4.0 * c);
            t.emplace_back(n, g.id(i + 1, j), c);
            t.emplace_back(n, g.id(i - 1, j), c);
            t.emplace_back(n, g.id(i, j + 1), c);
            t.emplace_back(n, g.id(i, j - 1), c);
        }
    return from_triplets(g.size(), g.size(), t);
}

SpMat lap_clamped(const Grid& g) {
    std::vector<Triplet> t;
    const double c = 1.0 / (g.h * g.h);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int row = g.id(i, j);
            if (g.interior(i, j)) {
                t.emplace_back(row, g.interior_id(i, j), -4.0 * c);
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int ii = i + di[k], jj = j + dj[k];
                    if (g.interior(ii, jj)) t.emplace_back(row, g.interior_id(ii, jj), c);
                }
            } else {
                // Edge rows: psi and the in-edge neighbors vanish; the ghost
                // node reflects onto the first interior node (d psi/dn = 0).
                const bool corner = (i == 0 || i == g.nx - 1) && (j == 0 || j == g.ny - 1);
                if (corner) continue;
                int ii = i, jj = j;
                if (i == 0) ii = 1;
                else if (i == g.nx - 1) ii = g.nx - 2;
                else if (j == 0) jj = 1;
                else jj = g.ny - 2;
                if (g.interior(ii, jj)) t.emplace_back(row, g.interior_id(ii, jj), 2.0 * c);
            }
        }
    return from_triplets(g.size(), g.interior_count(), t);
}

SpMat sigma_ghost(const Grid& g, double alpha) {
    std::vector<Triplet> t;
    const double c = alpha / (g.h * g.h);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.id(i, j);
            t.emplace_back(n, n, 1.0 + 4.0 * c);
            // Neighbors, folding ghosts back by even reflection.
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                int ii = i + di[k], jj = j + dj[k];
                if (ii < 0) ii = 1;
                if (ii > g.nx - 1) ii = g.nx - 2;
                if (jj < 0) jj = 1;
                if (jj > g.ny - 1) jj = g.ny - 2;
                t.emplace_back(n, g.id(ii, jj), -c);
            }
        }
    return from_triplets(g.size(), g.size(), t);
}

SpMat curl_perp_clamped(const Grid& g) {
    const int N = g.size();
    std::vector<Triplet> raw;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.id(i, j);
            d2_row_triplets(g, i, j, n, 0, 1.0, raw);       // x-component =  d2 psi
            d1_row_triplets(g, i, j, N + n, 0, -1.0, raw);  // y-component = -d1 psi
        }
    // Re-map columns from all nodes to interior unknowns (boundary psi = 0).
    std::vector<Triplet> t;
    t.reserve(raw.size());
    for (const auto& e : raw) {
        const int col = static_cast<int>(e.col());
        const int i = col % g.nx, j = col / g.nx;
        if (g.interior(i, j)) t.emplace_back(static_cast<int>(e.row()), g.interior_id(i, j), e.value());
    }
    return from_triplets(2 * N, g.interior_count(), t);
}

SpMat curl_of_vector(const Grid& g) {
    const int N = g.size();
    std::vector<Triplet> t;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.id(i, j);
            d1_row_triplets(g, i, j, n, N, 1.0, t);   // +d1 of y-component
            d2_row_triplets(g, i, j, n, 0, -1.0, t);  // -d2 of x-component
        }
    return from_triplets(N, 2 * N, t);
}


SpMat advection_matrix(const Grid& g, const VectorField& y, AdvectionScheme scheme) {
    check_same_grid(g, y.grid, "advection_matrix");
    std::vector<Triplet> t;
    const double ih = 1.0 / g.h;
    const double ih2 = 1.0 / (2.0 * g.h);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const int n = g.id(i, j);
            const double a = y.x[n];
            const double b = y.y[n];
            if (scheme == AdvectionScheme::centered) {
                t.emplace_back(n, g.id(i + 1, j), a * ih2);
                t.emplace_back(n, g.id(i - 1, j), -a * ih2);
                t.emplace_back(n, g.id(i, j + 1), b * ih2);
                t.emplace_back(n, g.id(i, j - 1), -b * ih2);
            } else {
                if (a >= 0.0) {
                    t.emplace_back(n, n, a * ih);
                    t.emplace_back(n, g.id(i - 1, j), -a * ih);
                } else {
                    t.emplace_back(n, g.id(i + 1, j), -a * ih);
                    t.emplace_back(n, n, a * ih);
                }
                if (b >= 0.0) {
                    t.emplace_back(n, n, b * ih);
                    t.emplace_back(n, g.id(i, j - 1), -b * ih);
                } else {
                    t.emplace_back(n, g.id(i, j + 1), -b * ih);
                    t.emplace_back(n, n, b * ih);
                }
            }
        }
    return from_triplets(g.size(), g.size(), t);
}

SpMat restrict_interior(const Grid& g) {
    std::vector<Triplet> t;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i)
            t.emplace_back(g.interior_id(i, j), g.id(i, j), 1.0);
    return from_triplets(g.interior_count(), g.size(), t);
}

SpMat embed_interior(const Grid& g) {
    std::vector<Triplet> t;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i)
            t.emplace_back(g.id(i, j), g.interior_id(i, j), 1.0);
    return from_triplets(g.size(), g.interior_count(), t);
}

SpMat dirichlet_laplacian(const Grid& g) {
    std::vector<Triplet> t;
    const double c = 1.0 / (g.h * g.h);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const int row = g.interior_id(i, j);
            t.emplace_back(row, row, -4.0 * c);
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int ii = i + di[k], jj = j + dj[k];
                if (g.interior(ii, jj)) t.emplace_back(row, g.interior_id(ii, jj), c);
            }
        }
    return from_triplets(g.interior_count(), g.interior_count(), t);
}

Vec quad_weights(const Grid& g) {
    Vec w(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) w[g.id(i, j)] = quad_weight(g, i, j);
    return w;
}

SpMat gradient_coupling(const Grid& g, const ScalarField& s, AdvectionScheme scheme,
                        const VectorField& wind) {
    check_same_grid(g, s.grid, "gradient_coupling");
    std::vector<Triplet> t;
    const double ih = 1.0 / g.h;
    const double ih2 = 1.0 / (2.0 * g.h);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const int n = g.id(i, j);
            double gx, gy;
            if (scheme == AdvectionScheme::centered) {
                gx = (s(i + 1, j) - s(i - 1, j)) * ih2;
                gy = (s(i, j + 1) - s(i, j - 1)) * ih2;
            } else {
                gx = (wind.x[n] >= 0.0) ? (s(i, j) - s(i - 1, j)) * ih
                                        : (s(i + 1, j) - s(i, j)) * ih;
                gy = (wind.y[n] >= 0.0) ? (s(i, j) - s(i, j - 1)) * ih
                                        : (s(i, j + 1) - s(i, j)) * ih;
            }
            // delta_y = (d2 chi, -d1 chi), centered at interior rows.
            if (g.interior(i, j + 1)) t.emplace_back(n, g.interior_id(i, j + 1), gx * ih2);
            if (g.interior(i, j - 1)) t.emplace_back(n, g.interior_id(i, j - 1), -gx * ih2);
            if (g.interior(i + 1, j)) t.emplace_back(n, g.interior_id(i + 1, j), -gy * ih2);
            if (g.interior(i - 1, j)) t.emplace_back(n, g.interior_id(i - 1, j), gy * ih2);
        }
    return from_triplets(g.size(), g.interior_count(), t);
}

}  // namespace sgf
