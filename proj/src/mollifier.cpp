#include "sgflow/mollifier.hpp"

#include <cmath>
#include <vector>

#include "sgflow/operators.hpp"

namespace sgf {

namespace {

struct Kernel {
    int radius = 0;
    std::vector<double> w;  // (2r+1)^2 weights, unit sum, radially symmetric

    double at(int di, int dj) const { return w[(dj + radius) * (2 * radius + 1) + (di + radius)]; }
};

Kernel build_kernel(const Grid& g, double eps) {
    Kernel k;
    k.radius = static_cast<int>(std::floor(eps / g.h));
    const int n = 2 * k.radius + 1;
    k.w.assign(static_cast<size_t>(n) * n, 0.0);
    double sum = 0.0;
    for (int dj = -k.radius; dj <= k.radius; ++dj)
        for (int di = -k.radius; di <= k.radius; ++di) {
            const double r = g.h * std::sqrt(double(di * di + dj * dj));
            if (r <= eps) {
                const double t = 1.0 - (r / eps) * (r / eps);
                k.w[(dj + k.radius) * n + (di + k.radius)] = t * t;
                sum += t * t;
            }
        }
    for (double& v : k.w) v /= sum;
    return k;
}

void convolve_weighted(const Grid& g, const Kernel& k, const std::vector<double>& in,
                       std::vector<double>& out) {
    std::vector<double> scaled(in.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.id(i, j);
            scaled[n] = in[n] * std::sqrt(quad_weight(g, i, j));
        }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double acc = 0.0;
            for (int dj = -k.radius; dj <= k.radius; ++dj) {
                const int jj = j + dj;
                if (jj < 0 || jj >= g.ny) continue;  // zero extension
                for (int di = -k.radius; di <= k.radius; ++di) {
                    const int ii = i + di;
                    if (ii < 0 || ii >= g.nx) continue;
                    const double kv = k.at(di, dj);
                    if (kv != 0.0) acc += kv * scaled[g.id(ii, jj)];
                }
            }
            out[g.id(i, j)] = acc / std::sqrt(quad_weight(g, i, j));
        }
}

}  // namespace

ScalarField mollify(const ScalarField& u, const MollifierSpec& spec) {
    spec.validate(u.grid);
    const Kernel k = build_kernel(u.grid, spec.epsilon);
    ScalarField r(u.grid);
    convolve_weighted(u.grid, k, u.val, r.val);
    return r;
}

VectorField mollify(const VectorField& u, const MollifierSpec& spec) {
    spec.validate(u.grid);
    const Kernel k = build_kernel(u.grid, spec.epsilon);
    VectorField r(u.grid);
    convolve_weighted(u.grid, k, u.x, r.x);
    convolve_weighted(u.grid, k, u.y, r.y);
    return r;
}

}  // namespace sgf
