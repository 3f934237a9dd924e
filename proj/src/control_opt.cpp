#include "sgflow/control_opt.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "sgflow/operators.hpp"

namespace sgf {

namespace {

double clampd(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

struct Evaluation {
    double J = 0.0;
    VectorField grad;
    StateSolution state;
    AdjointSolution adjoint;
};

using CostFn = std::function<std::optional<double>(const VectorField&)>;
using FullFn = std::function<Evaluation(const VectorField&)>;

OptimizationTrace projected_gradient_loop(const VectorField& u0, const AdmissibleSet& set,
                                          const OptimizerConfig& opt, const CostFn& cost_fn,
                                          const FullFn& full_fn) {
    set.validate();
    opt.validate();

    VectorField u = project_admissible(u0, set);
    Evaluation ev = full_fn(u);

    OptimizationTrace trace;
    double step = 1.0;       // accepted step of the previous iteration
    double bb_step = -1.0;   // Barzilai-Borwein proposal, < 0 when unavailable
    double bb1 = -1.0, bb2 = -1.0;

    for (int k = 1; k <= opt.max_iters; ++k) {
        const double gnorm = norm_L2(ev.grad);
        const double vi = vi_residual(u, ev.grad, set, 1.0);
        trace.records.push_back({k, ev.J, gnorm, vi, step});
        trace.iterations = k;

        if (vi <= opt.opt_tol && ev.J <= opt.j_target) {
            trace.converged = true;
            trace.stop_reason = "vi_tol";
            break;
        }

        double s = clampd(bb_step > 0.0 ? bb_step : 1.0, opt.step_min, opt.step_max);
        bool accepted = false;
        VectorField u_new;
        double J_new = 0.0;
        for (int t = 0; t <= opt.max_backtracks; ++t) {
            VectorField u_try = project_admissible(u - s * ev.grad, set);
            VectorField du = u_try - u;
            const double nd2 = inner(du, du);
            if (nd2 == 0.0) break;  // projection pinned every component
            const std::optional<double> Jt = cost_fn(u_try);
            if (Jt && *Jt <= ev.J - (opt.c1 / s) * nd2) {
                accepted = true;
                u_new = u_try;
                J_new = *Jt;
                break;
            }
            s *= opt.backtrack;
            if (s < opt.step_min) break;
        }
        if (!accepted) {
            trace.stop_reason = "line_search_failure";
            break;
        }

        Evaluation ev_new = full_fn(u_new);
        ev_new.J = J_new;

        VectorField du = u_new - u;
        VectorField dg = ev_new.grad - ev.grad;
        const double sy = inner(du, dg);
        bb1 = sy > 0.0 ? inner(du, du) / sy : -1.0;
        bb2 = sy > 0.0 ? sy / std::max(inner(dg, dg), 1e-300) : -1.0;
        // Alternate the two Barzilai-Borwein step lengths.
        bb_step = (k % 2 == 0) ? (bb1 > 0.0 ? bb1 : bb2) : (bb2 > 0.0 ? bb2 : bb1);

        u = u_new;
        ev = std::move(ev_new);
        step = s;
        if (trace.stop_reason.empty() && k == opt.max_iters) trace.stop_reason = "max_iters";
    }
    if (trace.stop_reason.empty()) trace.stop_reason = "max_iters";

    trace.u_final = u;
    trace.J_final = ev.J;
    trace.state_final = std::move(ev.state);
    trace.adjoint_final = std::move(ev.adjoint);
    return trace;
}

}  // namespace

bool AdmissibleSet::contains(const VectorField& u) const {
    for (size_t n = 0; n < u.x.size(); ++n)
        if (u.x[n] < lower[0] || u.x[n] > upper[0] || u.y[n] < lower[1] || u.y[n] > upper[1])
            return false;
    return true;
}

VectorField project_admissible(const VectorField& u, const AdmissibleSet& set) {
    VectorField r(u.grid);
    for (size_t n = 0; n < u.x.size(); ++n) {
        r.x[n] = clampd(u.x[n], set.lower[0], set.upper[0]);
        r.y[n] = clampd(u.y[n], set.lower[1], set.upper[1]);
    }
    return r;
}

double vi_residual(const VectorField& u, const VectorField& g, const AdmissibleSet& set,
                   double step) {
    if (!(step > 0.0)) throw std::invalid_argument("vi_residual: step must be > 0");
    VectorField moved = project_admissible(u - step * g, set);
    return norm_L2(u - moved) / step;
}

double reduced_cost(const VectorField& u, const CostSpec& spec, const FluidParams& params,
                    const SolverConfig& cfg) {
    spec.validate();
    check_same_grid(u.grid, spec.y_d.grid, "reduced_cost");
    StateSolution st = solve_state(u, params, cfg);
    if (!st.converged) throw std::runtime_error("reduced_cost: state solve did not converge");
    VectorField d = st.y - spec.y_d;
    return 0.5 * inner(d, d) + 0.5 * spec.lambda * inner(u, u);
}

VectorField reduced_gradient(const VectorField& u, const CostSpec& spec,
                             const FluidParams& params, const SolverConfig& cfg,
                             AdjointMode mode) {
    spec.validate();
    StateSolution st = solve_state(u, params, cfg);
    if (!st.converged) throw std::runtime_error("reduced_gradient: state solve did not converge");
    VectorField f = st.y - spec.y_d;
    AdjointSolution adj = (mode == AdjointMode::discrete_transpose)
                              ? solve_adjoint_discrete(st, f, params, cfg)
                              : solve_adjoint_pde(st, f, params, cfg);
    return adj.p + spec.lambda * u;
}

OptimizationTrace optimize(const VectorField& u0, const CostSpec& spec, const AdmissibleSet& set,
                           const FluidParams& params, const SolverConfig& cfg,
                           const OptimizerConfig& opt) {
    spec.validate();
    check_same_grid(u0.grid, spec.y_d.grid, "optimize");

    auto warm = std::make_shared<StateSolution>();
    auto cost_fn = [&, warm](const VectorField& u) -> std::optional<double> {
        StateSolution st = solve_state(u, params, cfg, warm.get());
        if (!st.converged) return std::nullopt;
        *warm = st;
        VectorField d = st.y - spec.y_d;
        return 0.5 * inner(d, d) + 0.5 * spec.lambda * inner(u, u);
    };
    auto full_fn = [&, warm](const VectorField& u) -> Evaluation {
        Evaluation ev;
        ev.state = solve_state(u, params, cfg, warm.get());
        if (!ev.state.converged) throw std::runtime_error("optimize: state solve did not converge");
        *warm = ev.state;
        VectorField f = ev.state.y - spec.y_d;
        ev.adjoint = (opt.mode == AdjointMode::discrete_transpose)
                         ? solve_adjoint_discrete(ev.state, f, params, cfg)
                         : solve_adjoint_pde(ev.state, f, params, cfg);
        ev.grad = ev.adjoint.p + spec.lambda * u;
        ev.J = 0.5 * inner(f, f) + 0.5 * spec.lambda * inner(u, u);
        return ev;
    };
    return projected_gradient_loop(u0, set, opt, cost_fn, full_fn);
}

double proximal_cost_terms(const VectorField& u, const VectorField& ubar) {
    VectorField d = u - ubar;
    ScalarField cd = curl_vector(d);
    return 0.5 * inner(d, d) + 0.5 * inner(cd, cd);
}

VectorField proximal_gradient_terms(const VectorField& u, const VectorField& ubar) {
    const Grid& g = u.grid;
    const SpMat C = curl_of_vector(g);
    const Vec wq = quad_weights(g);
    VectorField d = u - ubar;
    Vec cd = C * to_vec(d);
    for (int n = 0; n < g.size(); ++n) cd[n] *= wq[n];
    Vec back = C.transpose() * cd;
    const int N = g.size();
    VectorField r(g);
    for (int n = 0; n < N; ++n) {
        r.x[n] = d.x[n] + back[n] / wq[n];
        r.y[n] = d.y[n] + back[N + n] / wq[n];
    }
    return r;
}

OptimizationTrace optimize_regularized(const VectorField& u0, const VectorField& ubar,
                                       const CostSpec& spec, const AdmissibleSet& set,
                                       const FluidParams& params, const SolverConfig& cfg,
                                       const OptimizerConfig& opt, double eps) {
    spec.validate();
    MollifierSpec mol{eps};
    mol.validate(u0.grid);

    auto warm = std::make_shared<StateSolution>();
    auto cost_fn = [&, warm](const VectorField& u) -> std::optional<double> {
        StateSolution st = solve_state(mollify(u, mol), params, cfg, warm.get());
        if (!st.converged) return std::nullopt;
        *warm = st;
        VectorField d = st.y - spec.y_d;
        return 0.5 * inner(d, d) + 0.5 * spec.lambda * inner(u, u) + proximal_cost_terms(u, ubar);
    };
    auto full_fn = [&, warm](const VectorField& u) -> Evaluation {
        Evaluation ev;
        VectorField mu = mollify(u, mol);
        ev.state = solve_state(mu, params, cfg, warm.get());
        if (!ev.state.converged)
            throw std::runtime_error("optimize_regularized: state solve did not converge");
        *warm = ev.state;
        VectorField f = ev.state.y - spec.y_d;
        ev.adjoint = (opt.mode == AdjointMode::discrete_transpose)
                         ? solve_adjoint_discrete(ev.state, f, params, cfg)
                         : solve_adjoint_pde(ev.state, f, params, cfg);
        ev.grad = mollify(ev.adjoint.p, mol) + spec.lambda * u + proximal_gradient_terms(u, ubar);
        ev.J = 0.5 * inner(f, f) + 0.5 * spec.lambda * inner(u, u) + proximal_cost_terms(u, ubar);
        return ev;
    };
    return projected_gradient_loop(u0, set, opt, cost_fn, full_fn);
}

}  // namespace sgf
