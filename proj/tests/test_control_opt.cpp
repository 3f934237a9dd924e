#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgflow/control_opt.hpp"
#include "sgflow/operators.hpp"
#include "sgflow/random_fields.hpp"

using namespace sgf;

namespace {

SolverConfig tight_cfg() {
    SolverConfig cfg;
    cfg.picard_tol = 1e-12;
    return cfg;
}

const FluidParams kParams{1.0, 0.05};

}  // namespace

TEST_CASE("projection: identity inside, clamp outside, non-expansive") {
    Grid g = make_grid(17, 17);
    AdmissibleSet box;
    box.lower[0] = box.lower[1] = -0.5;
    box.upper[0] = box.upper[1] = 0.5;

    VectorField u = random_control(g, 1, 0.1, 3);  // safely inside
    VectorField pu = project_admissible(u, box);
    CHECK(pu.x == u.x);
    CHECK(pu.y == u.y);

    VectorField big(g);
    big.fill([](double, double) { return 1.0; }, [](double, double) { return -2.0; });
    VectorField pb = project_admissible(big, box);
    for (int n = 0; n < g.size(); ++n) {
        CHECK(pb.x[n] == 0.5);
        CHECK(pb.y[n] == -0.5);
    }
    // idempotent
    VectorField pb2 = project_admissible(pb, box);
    CHECK(pb2.x == pb.x);

    for (uint64_t s = 0; s < 10; ++s) {
        VectorField a = random_control(g, 100 + s, 1.3, 3);
        VectorField b = random_control(g, 200 + s, 1.3, 3);
        CHECK(norm_L2(project_admissible(a, box) - project_admissible(b, box)) <=
              norm_L2(a - b) + 1e-14);
    }
}

TEST_CASE("vi_residual cases") {
    Grid g = make_grid(17, 17);
    AdmissibleSet box;
    box.lower[0] = box.lower[1] = -1.0;
    box.upper[0] = box.upper[1] = 1.0;

    VectorField u = random_control(g, 3, 0.2, 2);
    VectorField zero(g);
    CHECK(vi_residual(u, zero, box, 1.0) == 0.0);

    // strictly interior point with a small step: projection inactive
    VectorField grad = random_control(g, 4, 0.3, 2);
    CHECK(vi_residual(u, grad, box, 1e-3) == doctest::Approx(norm_L2(grad)).epsilon(1e-10));

    // control pinned at the upper bound with the gradient pushing outward
    VectorField top(g), gneg(g);
    top.fill([](double, double) { return 1.0; }, [](double, double) { return 1.0; });
    gneg.fill([](double, double) { return -1.0; }, [](double, double) { return -1.0; });
    CHECK(vi_residual(top, gneg, box, 0.5) == 0.0);

    CHECK_THROWS_AS(vi_residual(u, grad, box, 0.0), std::invalid_argument);
}

TEST_CASE("reduced cost examples") {
    Grid g = make_grid(33, 33);
    SolverConfig cfg = tight_cfg();
    VectorField zero(g);

    CostSpec spec;
    spec.lambda = 0.0;
    spec.y_d = VectorField(g);
    CHECK(reduced_cost(zero, spec, kParams, cfg) == 0.0);

    // u = 0 so only the tracking term contributes: J = ||y_d||^2 / 2.
    spec.y_d = random_control(g, 8, 0.5, 2);
    const double yd2 = inner(spec.y_d, spec.y_d);
    CHECK(reduced_cost(zero, spec, kParams, cfg) == doctest::Approx(0.5 * yd2).epsilon(1e-12));

    // perfect tracking at the optimum
    VectorField ustar = random_control(g, 9, 0.5, 2);
    StateSolution sd = solve_state(ustar, kParams, cfg);
    spec.y_d = sd.y;
    CHECK(reduced_cost(ustar, spec, kParams, cfg) <= 1e-18);
}

TEST_CASE("reduced gradient: trivial cases and finite differences") {
    Grid g = make_grid(33, 33);
    SolverConfig cfg = tight_cfg();
    VectorField u = random_control(g, 5, 0.3, 3);
    StateSolution st = solve_state(u, kParams, cfg);

    CostSpec spec;
    spec.y_d = st.y;  // y_d = y(u)
    spec.lambda = 0.0;
    VectorField gr = reduced_gradient(u, spec, kParams, cfg, AdjointMode::discrete_transpose);
    CHECK(norm_L2(gr) <= 1e-12);

    spec.lambda = 0.7;
    gr = reduced_gradient(u, spec, kParams, cfg, AdjointMode::discrete_transpose);
    CHECK(norm_L2(gr - 0.7 * u) <= 1e-12 * norm_L2(u));

    // central differences in 5 random directions, both adjoint modes
    spec.lambda = 0.01;
    spec.y_d = solve_state(random_control(g, 77, 0.4, 3), kParams, cfg).y;
    VectorField gd = reduced_gradient(u, spec, kParams, cfg, AdjointMode::discrete_transpose);
    VectorField gp = reduced_gradient(u, spec, kParams, cfg, AdjointMode::pde);
    const double rho = 1e-5;
    for (uint64_t s = 31; s < 36; ++s) {
        VectorField w = random_control(g, s, 1.0, 3);
        const double fd = (reduced_cost(u + rho * w, spec, kParams, cfg) -
                           reduced_cost(u + (-rho) * w, spec, kParams, cfg)) /
                          (2.0 * rho);
        CHECK(std::abs(inner(gd, w) - fd) <= 1e-5 * std::abs(inner(gd, w)));
        CHECK(std::abs(inner(gp, w) - fd) <= 1e-3 * std::abs(fd));  // pde mode is O(h^2) close
    }
}

TEST_CASE("optimize: zero target with Tikhonov term drives u to zero") {
    Grid g = make_grid(33, 33);
    AdmissibleSet box;
    box.lower[0] = box.lower[1] = -1.0;
    box.upper[0] = box.upper[1] = 1.0;
    CostSpec spec;
    spec.lambda = 0.1;
    spec.y_d = VectorField(g);
    OptimizerConfig opt;
    opt.opt_tol = 1e-6;
    opt.max_iters = 200;
    OptimizationTrace tr =
        optimize(random_control(g, 3, 0.5, 3), spec, box, kParams, tight_cfg(), opt);
    CHECK(tr.converged);
    CHECK(tr.stop_reason == "vi_tol");
    CHECK(tr.J_final <= 1e-12);
    CHECK(norm_L2(tr.u_final) <= 2e-5);
    CHECK(tr.records.back().vi_residual <= 1e-6);
    // accepted-step monotonicity
    for (size_t k = 1; k < tr.records.size(); ++k)
        CHECK(tr.records[k].J <= tr.records[k - 1].J + 1e-18);
}

TEST_CASE("optimize: perfect tracking along the dominant curvature direction") {
    Grid g = make_grid(33, 33);
    SolverConfig cfg = tight_cfg();
    AdmissibleSet box;
    box.lower[0] = box.lower[1] = -5.0;
    box.upper[0] = box.upper[1] = 5.0;

    VectorField ustar = random_control(g, 17, 2.0, 2);
    StateSolution sd = solve_state(ustar, kParams, cfg);
    CostSpec spec;
    spec.lambda = 0.0;
    spec.y_d = sd.y;

    LinearizedOperator lin(sd, kParams, cfg);
    VectorField v = random_control(g, 100, 1.0, 2);
    for (int k = 0; k < 12; ++k) {
        v = lin.solve_transpose(lin.solve(v).z);
        v = (1.0 / norm_L2(v)) * v;
    }
    VectorField u0 = ustar + 0.5 * v;
    const double J0 = reduced_cost(u0, spec, kParams, cfg);

    OptimizerConfig opt;
    opt.opt_tol = 1e-6;
    opt.j_target = 1e-8 * J0;
    opt.max_iters = 400;
    OptimizationTrace tr = optimize(u0, spec, box, kParams, cfg, opt);
    CHECK(tr.converged);
    CHECK(tr.J_final <= 1e-8 * J0);
    CHECK(tr.records.back().vi_residual <= 1e-6);

    // restarting from the optimum terminates immediately
    OptimizerConfig opt2;
    opt2.opt_tol = 1e-6;
    OptimizationTrace tr2 = optimize(tr.u_final, spec, box, kParams, cfg, opt2);
    CHECK(tr2.iterations <= 1);
}

TEST_CASE("mollifier: identity cases, self-adjointness, contraction, locality") {
    Grid g = make_grid(33, 33);
    MollifierSpec mol{4 * g.h};

    VectorField zero(g);
    VectorField mz = mollify(zero, mol);
    CHECK(norm_L2(mz) == 0.0);

    VectorField a = random_control(g, 51, 1.0, 4);
    VectorField b = random_control(g, 52, 1.0, 4);
    const double d1 = inner(mollify(a, mol), b);
    const double d2 = inner(a, mollify(b, mol));
    CHECK(std::abs(d1 - d2) <= 1e-13 * std::abs(d1));
    CHECK(norm_L2(mollify(a, mol)) <= norm_L2(a));

    // epsilon -> h: the smoothing bias vanishes
    double prev = 1e30;
    for (double eps : {8 * g.h, 4 * g.h, 2 * g.h, g.h}) {
        const double bias = norm_L2(mollify(a, MollifierSpec{eps}) - a);
        CHECK(bias < prev);
        prev = bias;
    }

    CHECK_THROWS_AS(mollify(a, MollifierSpec{0.5 * g.h}), std::invalid_argument);
}

TEST_CASE("proximal terms match finite differences") {
    Grid g = make_grid(33, 33);
    VectorField u = random_control(g, 5, 0.3, 3);
    VectorField ubar = random_control(g, 91, 0.3, 3);
    VectorField gp = proximal_gradient_terms(u, ubar);
    const double rho = 1e-5;
    for (uint64_t s = 41; s < 44; ++s) {
        VectorField w = random_control(g, s, 1.0, 3);
        const double fd = (proximal_cost_terms(u + rho * w, ubar) -
                           proximal_cost_terms(u + (-rho) * w, ubar)) /
                          (2.0 * rho);
        CHECK(std::abs(inner(gp, w) - fd) <= 1e-5 * std::abs(inner(gp, w)));
    }
}

TEST_CASE("optimize_regularized: trivial minimizer and epsilon sweep") {
    Grid g = make_grid(33, 33);
    SolverConfig cfg = tight_cfg();
    AdmissibleSet box;
    box.lower[0] = box.lower[1] = -2.0;
    box.upper[0] = box.upper[1] = 2.0;

    // ubar = u0 = 0, y_d = 0, lambda > 0: the regularized cost is minimal at 0.
    {
        CostSpec spec;
        spec.lambda = 0.1;
        spec.y_d = VectorField(g);
        OptimizerConfig opt;
        opt.opt_tol = 1e-7;
        opt.max_iters = 100;
        OptimizationTrace tr = optimize_regularized(VectorField(g), VectorField(g), spec, box,
                                                    kParams, cfg, opt, 4 * g.h);
        CHECK(tr.converged);
        CHECK(norm_L2(tr.u_final) <= 1e-7);
    }

    // Minimizers approach the unregularized one as epsilon decreases.
    {
        VectorField ustar = random_control(g, 17, 1.0, 2);
        CostSpec spec;
        spec.lambda = 0.05;
        spec.y_d = solve_state(ustar, kParams, cfg).y;
        OptimizerConfig opt;
        opt.opt_tol = 1e-8;
        opt.max_iters = 300;
        OptimizationTrace base = optimize(VectorField(g), spec, box, kParams, cfg, opt);
        REQUIRE(base.converged);

        double prev = 1e30;
        for (double eps : {8 * g.h, 4 * g.h, 2 * g.h}) {
            OptimizationTrace tr = optimize_regularized(base.u_final, base.u_final, spec, box,
                                                        kParams, cfg, opt, eps);
            REQUIRE(tr.converged);
            const double gap = norm_L2(tr.u_final - base.u_final);
            CHECK(gap < prev);
            prev = gap;
        }
    }
}
