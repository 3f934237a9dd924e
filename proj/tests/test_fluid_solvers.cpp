#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgflow/adjoint.hpp"
#include "sgflow/manufactured.hpp"
#include "sgflow/operators.hpp"
#include "sgflow/random_fields.hpp"

using namespace sgf;

namespace {

SolverConfig tight_cfg() {
    SolverConfig cfg;
    cfg.picard_tol = 1e-12;
    return cfg;
}

}  // namespace

TEST_CASE("zero forcing gives the zero state in <= 2 sweeps") {
    Grid g = make_grid(33, 33);
    VectorField u(g);
    for (double alpha : {0.0, 0.05}) {
        StateSolution st = solve_state(u, FluidParams{1.0, alpha}, tight_cfg());
        CHECK(st.converged);
        CHECK(st.iterations <= 2);
        CHECK(norms(st.y).L2 == 0.0);
        CHECK(norms(st.psi).L2 == 0.0);
        CHECK(norms(st.omega).L2 == 0.0);
    }
}

TEST_CASE("manufactured poly-quartic recovery, alpha = 0.05") {
    FluidParams prm{1.0, 0.05};
    SolverConfig cfg = tight_cfg();
    std::vector<double> errs, hs;
    for (int n : {33, 65}) {
        Grid g = make_grid(n, n);
        ManufacturedCase mc = manufactured_case("poly-quartic", g, prm);
        StateSolution st = solve_state(mc.u_forcing, prm, cfg);
        REQUIRE(st.converged);
        errs.push_back(norm_L2(st.psi - mc.psi_exact));
        hs.push_back(g.h);
    }
    CHECK(errs[0] < 1.5e-5);  // frozen: 1.2685e-5 at 33^2
    CHECK(errs[1] < 3.8e-6);  // frozen: 3.1788e-6 at 65^2
    const double order = std::log(errs[0] / errs[1]) / std::log(hs[0] / hs[1]);
    INFO("observed order ", order);
    CHECK(order >= 1.0);
}

TEST_CASE("state solution is internally consistent") {
    FluidParams prm{1.0, 0.05};
    Grid g = make_grid(65, 65);
    VectorField u = random_control(g, 5, 0.5, 3);
    StateSolution st = solve_state(u, prm, tight_cfg());
    REQUIRE(st.converged);
    CHECK(st.residual <= 1e-10);

    // y = velocity_from_stream(psi) away from the wall, zero on it.
    VectorField yv = velocity_from_stream(st.psi);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const int n = g.id(i, j);
            CHECK(st.y.x[n] == doctest::Approx(yv.x[n]).epsilon(1e-12));
            CHECK(st.y.y[n] == doctest::Approx(yv.y[n]).epsilon(1e-12));
        }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.boundary(i, j)) {
                CHECK(st.y.x[g.id(i, j)] == 0.0);
                CHECK(st.y.y[g.id(i, j)] == 0.0);
            }

    // omega = sigma(curl y) + O(h^2) at interior nodes away from the wall.
    ScalarField sc = sigma_apply(curl_vector(st.y), prm.alpha);
    double num = 0.0, den = 0.0;
    for (int j = 3; j < g.ny - 3; ++j)
        for (int i = 3; i < g.nx - 3; ++i) {
            num = std::max(num, std::abs(st.omega(i, j) - sc(i, j)));
            den = std::max(den, std::abs(st.omega(i, j)));
        }
    CHECK(num <= 0.04 * den);
}

TEST_CASE("alpha -> 0 continuity of the state") {
    Grid g = make_grid(33, 33);
    VectorField u = random_control(g, 11, 0.5, 3);
    SolverConfig cfg = tight_cfg();
    StateSolution s0 = solve_state(u, FluidParams{1.0, 0.0}, cfg);
    StateSolution s3 = solve_state(u, FluidParams{1.0, 1e-3}, cfg);
    StateSolution s4 = solve_state(u, FluidParams{1.0, 1e-4}, cfg);
    REQUIRE(s0.converged);
    REQUIRE(s3.converged);
    REQUIRE(s4.converged);
    const double d3 = norms(s3.y - s0.y).H1_semi;
    const double d4 = norms(s4.y - s0.y).H1_semi;
    const double scale = norms(s0.y).H1_semi;
    CHECK(d3 < 0.05 * scale);
    CHECK(d4 < d3);
}

TEST_CASE("non-convergence is reported, not thrown") {
    Grid g = make_grid(33, 33);
    ManufacturedCase mc = manufactured_case("poly-quartic", g, FluidParams{1.0, 0.05});
    SolverConfig cfg;
    cfg.picard_tol = 1e-14;
    cfg.picard_max_iters = 2;
    StateSolution st = solve_state(mc.u_forcing, FluidParams{1.0, 0.05}, cfg);
    CHECK_FALSE(st.converged);
    CHECK(st.iterations == 2);
    CHECK(st.history.size() == 2);
    CHECK_THROWS_AS(LinearizedOperator(st, FluidParams{1.0, 0.05}, cfg), std::invalid_argument);
}

TEST_CASE("linearized solve: zero load, Stokes oracle, FD consistency") {
    FluidParams prm{1.0, 0.05};
    SolverConfig cfg = tight_cfg();

    // w = 0 -> z = 0.
    {
        Grid g = make_grid(33, 33);
        VectorField u0(g);
        StateSolution st = solve_state(u0, prm, cfg);
        LinearizedOperator lin(st, prm, cfg);
        LinearizedSolution zs = lin.solve(VectorField(g));
        CHECK(norms(zs.z).L2 <= 1e-14);
    }

    // At the zero state the system reduces to nu*Lap^2 chi = curl w.
    const ManufacturedForm mf = manufactured_form("poly-quartic");
    std::vector<double> errs, hs;
    for (int n : {33, 65}) {
        Grid g = make_grid(n, n);
        VectorField u0(g);
        StateSolution st = solve_state(u0, prm, cfg);
        LinearizedOperator lin(st, prm, cfg);
        VectorField w(g);
        w.fill([&](double x, double y) { return -prm.nu * mf.d2_lap_psi(x, y); },
               [&](double x, double y) { return prm.nu * mf.d1_lap_psi(x, y); });
        LinearizedSolution zs = lin.solve(w);
        ScalarField chi_exact(g);
        chi_exact.fill(mf.psi);
        errs.push_back(norm_L2(zs.chi - chi_exact));
        hs.push_back(g.h);
    }
    const double order = std::log(errs[0] / errs[1]) / std::log(hs[0] / hs[1]);
    INFO("Stokes oracle order ", order);
    CHECK(order >= 1.8);

    // (y(u + rho w) - y(u))/rho - z vanishes linearly in rho.
    Grid g = make_grid(65, 65);
    VectorField u = random_control(g, 9, 0.5, 3);
    VectorField w = random_control(g, 33, 1.0, 3);
    StateSolution st = solve_state(u, prm, cfg);
    LinearizedOperator lin(st, prm, cfg);
    LinearizedSolution zs = lin.solve(w);
    const double zscale = norms(zs.z).H1_semi;
    double prev = -1.0;
    for (double rho : {1e-2, 1e-3, 1e-4}) {
        StateSolution sp = solve_state(u + rho * w, prm, cfg);
        REQUIRE(sp.converged);
        const double r = norms((1.0 / rho) * (sp.y - st.y) - zs.z).H1_semi;
        CHECK(r < 2e-4 * zscale);  // frozen: |r|/|z| ~ 1.2e-6 at rho = 1e-2
        if (prev > 0.0) CHECK(r < 0.2 * prev);  // linear decay in rho
        prev = r;
    }
}

TEST_CASE("adjoint solvers: zero load, Stokes oracle, duality") {
    FluidParams prm{1.0, 0.05};
    SolverConfig cfg = tight_cfg();

    {
        Grid g = make_grid(33, 33);
        VectorField u0(g);
        StateSolution st = solve_state(u0, prm, cfg);
        AdjointSolution a = solve_adjoint_pde(st, VectorField(g), prm, cfg);
        CHECK(norms(a.p).L2 <= 1e-14);
        AdjointSolution d = solve_adjoint_discrete(st, VectorField(g), prm, cfg);
        CHECK(norms(d.p).L2 <= 1e-14);
    }

    // Stokes oracle for the pde-mode adjoint: at y = 0 the curled equation is
    // nu*Lap^2 q = curl f.
    const ManufacturedForm mf = manufactured_form("poly-quartic");
    std::vector<double> errs, hs;
    for (int n : {33, 65}) {
        Grid g = make_grid(n, n);
        VectorField u0(g);
        StateSolution st = solve_state(u0, prm, cfg);
        VectorField f(g);
        f.fill([&](double x, double y) { return -prm.nu * mf.d2_lap_psi(x, y); },
               [&](double x, double y) { return prm.nu * mf.d1_lap_psi(x, y); });
        AdjointSolution a = solve_adjoint_pde(st, f, prm, cfg);
        ScalarField q_exact(g);
        q_exact.fill(mf.psi);
        errs.push_back(norm_L2(a.q - q_exact));
        hs.push_back(g.h);
    }
    const double order = std::log(errs[0] / errs[1]) / std::log(hs[0] / hs[1]);
    INFO("adjoint Stokes oracle order ", order);
    CHECK(order >= 1.8);

    // Duality at a generic state.
    Grid g = make_grid(65, 65);
    VectorField u = random_control(g, 9, 0.5, 3);
    StateSolution st = solve_state(u, prm, cfg);
    LinearizedOperator lin(st, prm, cfg);
    VectorField w = random_control(g, 21, 1.0, 3);
    VectorField f = random_control(g, 22, 1.0, 3);
    LinearizedSolution zw = lin.solve(w);
    const double fz = inner(f, zw.z);

    // discrete transpose: machine precision
    AdjointSolution ad = solve_adjoint_discrete(lin, f);
    CHECK(std::abs(fz - inner(w, ad.p)) <= 1e-10 * std::abs(fz));

    // pde mode: the Green identity holds at the discretization level
    AdjointSolution ap = solve_adjoint_pde(st, f, prm, cfg);
    CHECK(std::abs(fz - inner(w, ap.p)) <=
          5.0 * g.h * g.h * norm_L2(f) * norm_L2(w));

    // pde-mode p vanishes on the wall and is the curl of its stream function.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.boundary(i, j)) {
                CHECK(ap.p.x[g.id(i, j)] == 0.0);
                CHECK(ap.p.y[g.id(i, j)] == 0.0);
            }
    VectorField pk = velocity_from_stream(ap.q);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const int n = g.id(i, j);
            CHECK(ap.p.x[n] == doctest::Approx(pk.x[n]).epsilon(1e-12));
        }
}

TEST_CASE("adjoint modes agree at second order away from the wall") {
    FluidParams prm{1.0, 0.05};
    SolverConfig cfg = tight_cfg();
    std::vector<double> diffs, hs;
    for (int n : {33, 65, 129}) {
        Grid g = make_grid(n, n);
        VectorField u = random_control(g, 9, 0.5, 3);
        StateSolution st = solve_state(u, prm, cfg);
        VectorField f = random_control(g, 22, 1.0, 3);
        AdjointSolution ap = solve_adjoint_pde(st, f, prm, cfg);
        AdjointSolution ad = solve_adjoint_discrete(st, f, prm, cfg);
        VectorField d = ad.p - ap.p;
        d.zero_boundary();  // wall entries of the transpose are inert-control duals
        diffs.push_back(norm_L2(d));
        hs.push_back(g.h);
    }
    const double order = std::log(diffs[0] / diffs[2]) / std::log(hs[0] / hs[2]);
    INFO("mode agreement order ", order, " diffs ", diffs[0], " ", diffs[1], " ", diffs[2]);
    CHECK(order >= 1.8);
}
