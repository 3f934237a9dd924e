#include "sgflow/probes.hpp"

#include <cmath>
#include <stdexcept>

#include "sgflow/operators.hpp"
#include "sgflow/random_fields.hpp"

namespace sgf {

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    // Least-squares slope of log(y) against log(x).
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < n; ++k) {
        const double lx = std::log(x[k]);
        const double ly = std::log(std::max(y[k], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double cross_z(const VectorField& a, const VectorField& b, int n) {
    return a.x[n] * b.y[n] - a.y[n] * b.x[n];
}

// (curl sigma(y) x z, phi) by quadrature.
double curl_sigma_cross(const VectorField& y, const VectorField& z, const VectorField& phi,
                        double alpha) {
    ScalarField omega = curl_vector(sigma_apply(y, alpha));
    const Grid& g = y.grid;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.id(i, j);
            s += quad_weight(g, i, j) * omega(i, j) * cross_z(z, phi, n);
        }
    return s;
}

// (curl sigma(y x z), phi) by quadrature.
double curl_sigma_of_cross(const VectorField& y, const VectorField& z, const VectorField& phi,
                           double alpha) {
    const Grid& g = y.grid;
    ScalarField m(g);
    for (int n = 0; n < g.size(); ++n) m.val[n] = y.x[n] * z.y[n] - y.y[n] * z.x[n];
    VectorField cs = curl_scalar(sigma_apply(m, alpha));
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int n = g.id(i, j);
            s += quad_weight(g, i, j) * (cs.x[n] * phi.x[n] + cs.y[n] * phi.y[n]);
        }
    return s;
}

double identity_I_residual(const VectorField& y, const VectorField& z, const VectorField& phi,
                           double alpha) {
    VectorField sy = sigma_apply(y, alpha);
    return std::abs(curl_sigma_cross(y, z, phi, alpha) -
                    (trilinear_b(phi, z, sy) - trilinear_b(z, phi, sy)));
}

double identity_II_residual(const VectorField& y, const VectorField& z, const VectorField& phi,
                            double alpha) {
    VectorField sphi = sigma_apply(phi, alpha);
    return std::abs(curl_sigma_of_cross(y, z, phi, alpha) -
                    (trilinear_b(z, y, sphi) - trilinear_b(y, z, sphi)));
}

double h3_surrogate(const StateSolution& st) {
    const NormReport w = norms(st.omega);
    const NormReport y = norms(st.y);
    return std::sqrt(y.L2 * y.L2 + y.H1_semi * y.H1_semi + w.L2 * w.L2 +
                     w.H1_semi * w.H1_semi);
}

}  // namespace

double ProbeReport::metric(const std::string& name) const {
    for (const auto& [k, v] : metrics)
        if (k == name) return v;
    throw std::out_of_range("ProbeReport: no metric '" + name + "'");
}

ProbeReport verify_state_estimates(const StateSolution& solution, const VectorField& u,
                                   const FluidParams& params, const ConstantsReport& constants) {
    constants.validate();
    ProbeReport rep;
    rep.kind = "state_estimates";
    const double nu = params.nu;
    const double alpha = params.alpha;
    const double u2 = norms(u).L2;
    const double cu2 = norms(curl_vector(u)).L2;

    rep.add_row("|y|_H1 <= (S2/nu)||u||_2", norms(solution.y).H1_semi, constants.S2 / nu * u2);
    rep.add_row("||curl sigma(y)||_2 <= (S2||u||_2 + alpha||curl u||_2)/nu",
                norms(solution.omega).L2, (constants.S2 * u2 + alpha * cu2) / nu);
    if (alpha > 0.0)
        rep.add_metric("h3_surrogate_omega_over_alpha", norms(solution.omega).L2 / alpha);
    return rep;
}

ProbeReport gateaux_probe(const VectorField& u, const VectorField& w,
                          const std::vector<double>& rho_list, const FluidParams& params,
                          const SolverConfig& cfg) {
    ProbeReport rep;
    rep.kind = "gateaux";
    StateSolution base = solve_state(u, params, cfg);
    if (!base.converged) throw std::runtime_error("gateaux_probe: base state did not converge");
    LinearizedOperator lin(base, params, cfg);
    LinearizedSolution zs = lin.solve(w);
    const double zscale = norms(zs.z).H1_semi;
    rep.add_metric("z_H1", zscale);

    std::vector<double> rhos, rems;
    for (double rho : rho_list) {
        StateSolution pert = solve_state(u + rho * w, params, cfg, &base);
        if (!pert.converged)
            throw std::runtime_error("gateaux_probe: perturbed state did not converge");
        const double r = norms((1.0 / rho) * (pert.y - base.y) - zs.z).H1_semi;
        rep.add_metric("remainder_rho_" + std::to_string(rho), r);
        if (r > 0.0) {
            rhos.push_back(rho);
            rems.push_back(r);
        }
    }
    const double slope = (rhos.size() >= 2) ? fit_slope(rhos, rems) : 1.0;
    rep.add_metric("slope", slope);
    rep.pass = rep.pass && slope >= 0.9;
    return rep;
}

ProbeReport lipschitz_probe(const VectorField& u1, const VectorField& u2,
                            const FluidParams& params, const SolverConfig& cfg,
                            const ConstantsReport& constants) {
    ProbeReport rep;
    rep.kind = "lipschitz";
    const double nu = params.nu;
    const double alpha = params.alpha;
    StateSolution s1 = solve_state(u1, params, cfg);
    StateSolution s2 = solve_state(u2, params, cfg);
    if (!s1.converged || !s2.converged)
        throw std::runtime_error("lipschitz_probe: state solve did not converge");

    const double du = norms(u1 - u2).L2;
    const double dy = norms(s1.y - s2.y).H1_semi;
    const double factor =
        1.0 - constants.kappa_bar *
                  (norms(u2).L2 + alpha * norms(curl_vector(u2)).L2) / (nu * nu);
    rep.add_metric("dy_over_du", du > 0.0 ? dy / du : 0.0);
    rep.add_metric("smallness_factor_u2", factor);
    rep.add_row("(1 - kbar(...)/nu^2) |y1-y2|_H1 <= (S2/nu)||u1-u2||_2", factor * dy,
                constants.S2 / nu * du);

    // V2 variant of the bound; kappa is non-constructive, so only the ratio
    // of the left side to the computable terms is reported.
    const double dv2 = norms(s1.omega - s2.omega).L2;
    const double t1 = 2.0 * alpha / nu * norms(curl_vector(u1 - u2)).L2;
    const double t2 = (alpha / std::pow(nu, 1.5)) * std::pow(norms(s2.omega).H1_semi, 1.5) + 1.0;
    rep.add_metric("v2_ratio", (t1 + t2 * dy) > 0.0 ? dv2 / (t1 + t2 * dy) : 0.0);
    return rep;
}

ProbeReport verify_identities(const Grid& g, uint64_t seed, int trials, double alpha) {
    if (trials < 20) throw std::invalid_argument("verify_identities: need trials >= 20");
    ProbeReport rep;
    rep.kind = "identities";
    rep.seed = seed;

    std::vector<Grid> grids = {g, make_grid(2 * g.nx - 1, 2 * g.ny - 1),
                               make_grid(4 * g.nx - 3, 4 * g.ny - 3)};
    std::vector<double> hs{grids[0].h, grids[1].h, grids[2].h};

    double kappa_fit = 0.0, c_fit = 0.0, energy_max = 0.0;
    std::vector<double> res_I(3, 0.0), res_II(3, 0.0);
    for (int t = 0; t < trials; ++t) {
        const TrigSeries sy = random_series(seed + 3 * t, 4);
        const TrigSeries sz = random_series(seed + 3 * t + 1, 4);
        const TrigSeries sp = random_series(seed + 3 * t + 2, 4);
        for (size_t k = 0; k < grids.size(); ++k) {
            const Grid& gk = grids[k];
            VectorField y = sample_compact_divfree(sy, gk);
            VectorField z = sample_compact_divfree(sz, gk);
            VectorField phi = sample_compact_divfree(sp, gk);
            res_I[k] = std::max(res_I[k], identity_I_residual(y, z, phi, alpha));
            res_II[k] = std::max(res_II[k], identity_II_residual(y, z, phi, alpha));
        }
        // Energy neutrality and the fitted constants on the base grid.
        const Grid& g0 = grids[0];
        VectorField y = sample_compact_divfree(sy, g0);
        VectorField z = sample_compact_divfree(sz, g0);
        energy_max = std::max(energy_max, std::abs(curl_sigma_cross(y, y, y, alpha)));

        const double lhs34 = std::abs(curl_sigma_cross(z, y, z, alpha));
        const NormReport ny = norms(y), nz = norms(z);
        StateSolution fake;  // surrogate container for the H3 proxy of y
        fake.y = y;
        fake.omega = curl_vector(sigma_apply(y, alpha));
        const double h3y = h3_surrogate(fake);
        if (nz.H1_semi > 0.0 && h3y > 0.0 && alpha > 0.0) {
            const double excess = lhs34 / (nz.H1_semi * nz.H1_semi);
            kappa_fit = std::max(kappa_fit, excess / (alpha * h3y));
        }
        const double v2y = norms(fake.omega).L2;
        if (ny.H1_semi > 0.0 && v2y > 0.0 && alpha > 0.0)
            c_fit = std::max(c_fit, ny.Linf * std::cbrt(alpha) /
                                        (std::pow(ny.H1_semi, 2.0 / 3.0) * std::cbrt(v2y)));
    }

    const double slope_I = fit_slope(hs, res_I);
    const double slope_II = fit_slope(hs, res_II);
    rep.add_metric("slope_identity_I", slope_I);
    rep.add_metric("slope_identity_II", slope_II);
    rep.add_metric("energy_neutrality_max", energy_max);
    rep.add_metric("lemma34_kappa_fit", kappa_fit);
    rep.add_metric("lemma32_c_fit", c_fit);
    rep.pass = rep.pass && slope_I >= 1.8 && slope_II >= 1.8;
    return rep;
}

}  // namespace sgf
