#include "sgflow/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "sgflow/continuation.hpp"
#include "sgflow/field_io.hpp"
#include "sgflow/manufactured.hpp"
#include "sgflow/operators.hpp"
#include "sgflow/probes.hpp"
#include "sgflow/random_fields.hpp"

namespace fs = std::filesystem;

namespace sgf {

namespace {

constexpr const char* kVersion = "sgflow 0.1.0";

std::string num(double v) { return detail::fmt_full(v); }

struct OutDir {
    fs::path root;
    std::vector<std::string>* artifacts;

    std::string file(const std::string& name) const {
        fs::path p = root / name;
        artifacts->push_back(p.string());
        return p.string();
    }
};

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const OutDir& dir, const RunConfig& cfg, double wall_seconds) {
    std::ostringstream m;
    m << "tool = " << kVersion << "\n";
    m << "subcommand = " << cfg.subcommand << "\n";
    m << "seed = " << cfg.seed << "\n";
    m << "wall_seconds = " << num(wall_seconds) << "\n";
    m << "# --- config echo ---\n" << cfg.raw_text;
    if (!cfg.raw_text.empty() && cfg.raw_text.back() != '\n') m << "\n";
    write_text(dir.file("manifest.txt"), m.str());
}

void write_diagnostics(const OutDir& dir, const StateSolution& st) {
    std::ostringstream csv;
    csv << "iter,residual,increment\n";
    for (const auto& r : st.history)
        csv << r.iter << "," << num(r.residual) << "," << num(r.increment) << "\n";
    write_text(dir.file("diagnostics.csv"), csv.str());
}

void write_trace(const OutDir& dir, const OptimizationTrace& tr) {
    std::ostringstream csv;
    csv << "iter,J,grad_norm,vi_residual,step\n";
    for (const auto& r : tr.records)
        csv << r.iter << "," << num(r.J) << "," << num(r.grad_norm) << ","
            << num(r.vi_residual) << "," << num(r.step) << "\n";
    write_text(dir.file("trace.csv"), csv.str());
}

void write_probe(const std::string& path, const ProbeReport& rep) {
    std::ostringstream csv;
    csv << "kind,label,lhs,rhs,slack,pass\n";
    for (const auto& row : rep.rows)
        csv << rep.kind << "," << row.label << "," << num(row.lhs) << "," << num(row.rhs) << ","
            << num(row.slack()) << "," << (row.pass() ? 1 : 0) << "\n";
    for (const auto& [k, v] : rep.metrics)
        csv << rep.kind << ",metric:" << k << "," << num(v) << ",,,\n";
    write_text(path, csv.str());
}

AdjointMode mode_of(const RunConfig& cfg) {
    return cfg.adjoint_mode == "pde" ? AdjointMode::pde : AdjointMode::discrete_transpose;
}

}  // namespace

VectorField resolve_vector_source(const std::string& source, const Grid& g,
                                  const FluidParams& params, uint64_t seed, int role) {
    if (source == "zero") return VectorField(g);
    if (source.rfind("manufactured:", 0) == 0) {
        const std::string id = source.substr(13);
        if (role == 1) {  // target velocity: the exact manufactured field
            ManufacturedForm m = manufactured_form(id);
            VectorField y(g);
            y.fill(m.d2_psi, [&](double x, double yy) { return -m.d1_psi(x, yy); });
            return y;
        }
        return manufactured_case(id, g, params).u_forcing;
    }
    if (source.rfind("random:", 0) == 0) {
        const double amp = std::stod(source.substr(7));
        return random_control(g, seed + 101 * static_cast<uint64_t>(role + 1), amp, 3);
    }
    VectorField v = read_vector_field(source);
    if (v.grid.nx != g.nx || v.grid.ny != g.ny)
        throw std::runtime_error("field file " + source + " is on a " +
                                 std::to_string(v.grid.nx) + "^2 grid, config wants " +
                                 std::to_string(g.nx) + "^2");
    return v;
}

RunResult run(const RunConfig& cfg) {
    RunResult res;
    const auto t0 = std::chrono::steady_clock::now();
    OutDir dir{fs::path(cfg.out_dir), &res.artifacts};
    try {
        fs::create_directories(dir.root);
    } catch (const std::exception& e) {
        res.exit_code = 4;
        res.message = std::string("cannot create output directory: ") + e.what();
        return res;
    }

    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    try {
        const Grid g = make_grid(cfg.grid, cfg.grid);

        if (cfg.subcommand == "solve-state") {
            VectorField u = resolve_vector_source(cfg.u_source, g, cfg.params, cfg.seed, 0);
            StateSolution st = solve_state(u, cfg.params, cfg.solver);
            write_field(st.psi, dir.file("psi.dat"));
            write_field(st.y, dir.file("y.dat"));
            write_field(st.omega, dir.file("omega.dat"));
            write_diagnostics(dir, st);
            write_manifest(dir, cfg, wall());
            if (!st.converged) {
                res.exit_code = 3;
                res.message = "state solve did not converge";
            }
            return res;
        }

        if (cfg.subcommand == "linearize") {
            VectorField u = resolve_vector_source(cfg.u_source, g, cfg.params, cfg.seed, 0);
            VectorField w = resolve_vector_source(cfg.w_source, g, cfg.params, cfg.seed, 2);
            StateSolution st = solve_state(u, cfg.params, cfg.solver);
            if (!st.converged) {
                write_diagnostics(dir, st);
                write_manifest(dir, cfg, wall());
                res.exit_code = 3;
                res.message = "state solve did not converge";
                return res;
            }
            LinearizedOperator lin(st, cfg.params, cfg.solver);
            LinearizedSolution zs = lin.solve(w);
            write_field(zs.chi, dir.file("chi.dat"));
            write_field(zs.z, dir.file("z.dat"));
            write_field(zs.zeta, dir.file("zeta.dat"));
            write_manifest(dir, cfg, wall());
            return res;
        }

        if (cfg.subcommand == "adjoint") {
            VectorField u = resolve_vector_source(cfg.u_source, g, cfg.params, cfg.seed, 0);
            VectorField f = resolve_vector_source(cfg.f_source, g, cfg.params, cfg.seed, 3);
            StateSolution st = solve_state(u, cfg.params, cfg.solver);
            if (!st.converged) {
                write_diagnostics(dir, st);
                write_manifest(dir, cfg, wall());
                res.exit_code = 3;
                res.message = "state solve did not converge";
                return res;
            }
            AdjointSolution adj = (mode_of(cfg) == AdjointMode::pde)
                                      ? solve_adjoint_pde(st, f, cfg.params, cfg.solver)
                                      : solve_adjoint_discrete(st, f, cfg.params, cfg.solver);
            write_field(adj.p, dir.file("p.dat"));
            write_field(adj.q, dir.file("q.dat"));
            write_manifest(dir, cfg, wall());
            return res;
        }

        if (cfg.subcommand == "optimize" || cfg.subcommand == "optimize-regularized") {
            CostSpec spec;
            spec.lambda = cfg.lambda;
            spec.y_d = resolve_vector_source(cfg.yd_source, g, cfg.params, cfg.seed, 1);
            VectorField u0 = resolve_vector_source(cfg.u0_source, g, cfg.params, cfg.seed, 4);
            OptimizerConfig opt = cfg.optimizer;
            opt.mode = mode_of(cfg);

            OptimizationTrace tr;
            if (cfg.subcommand == "optimize") {
                tr = optimize(u0, spec, cfg.box, cfg.params, cfg.solver, opt);
            } else {
                VectorField ubar =
                    resolve_vector_source(cfg.ubar_source, g, cfg.params, cfg.seed, 5);
                tr = optimize_regularized(u0, ubar, spec, cfg.box, cfg.params, cfg.solver, opt,
                                          cfg.epsilon);
            }

            write_trace(dir, tr);
            write_field(tr.u_final, dir.file("u_final.dat"));
            write_field(tr.state_final.y, dir.file("y_final.dat"));
            write_field(tr.adjoint_final.p, dir.file("p_final.dat"));

            ConstantsReport constants = estimate_constants(g, 100, cfg.seed);
            SmallnessVerdict sv = check_smallness(tr.u_final, cfg.params, constants);
            std::ostringstream sum;
            sum << "J_final = " << num(tr.J_final) << "\n"
                << "iterations = " << tr.iterations << "\n"
                << "converged = " << (tr.converged ? 1 : 0) << "\n"
                << "stop_reason = " << tr.stop_reason << "\n"
                << "vi_residual = "
                << num(tr.records.empty() ? 0.0 : tr.records.back().vi_residual) << "\n"
                << "smallness = " << (sv.holds ? "holds" : "fails") << "\n"
                << "smallness_margin = " << num(sv.margin) << "\n"
                << "kappa_bar = " << num(sv.kappa_bar_used) << "\n";
            write_text(dir.file("summary.txt"), sum.str());
            write_manifest(dir, cfg, wall());
            if (!tr.converged) {
                res.exit_code = 3;
                res.message = "optimizer stopped: " + tr.stop_reason;
            }
            return res;
        }

        if (cfg.subcommand == "continuation") {
            ContinuationProblem prob;
            prob.spec.lambda = cfg.lambda;
            prob.spec.y_d = resolve_vector_source(cfg.yd_source, g, cfg.params, cfg.seed, 1);
            prob.set = cfg.box;
            prob.u0 = resolve_vector_source(cfg.u0_source, g, cfg.params, cfg.seed, 4);
            prob.solver = cfg.solver;
            prob.optimizer = cfg.optimizer;
            prob.optimizer.mode = mode_of(cfg);

            ContinuationReport rep = continuation_alpha(prob, cfg.alpha_list, cfg.params.nu);
            std::ostringstream csv;
            csv << "alpha,min_J,dmin_J,du_L2,dy_H1,dp_L2,opt_iters,converged\n";
            for (const auto& r : rep.rows) {
                csv << num(r.alpha) << "," << num(r.min_J) << "," << num(r.dmin_J) << ","
                    << num(r.du_L2) << "," << num(r.dy_H1) << "," << num(r.dp_L2) << ","
                    << r.opt_iters << "," << (r.converged ? 1 : 0) << "\n";
            }
            write_text(dir.file("continuation.csv"), csv.str());
            std::ostringstream sum;
            sum << "all_converged = " << (rep.all_converged ? 1 : 0) << "\n"
                << "ns_adjoint_residual = " << num(rep.ns_adjoint_residual) << "\n";
            write_text(dir.file("summary.txt"), sum.str());
            write_manifest(dir, cfg, wall());
            if (!rep.all_converged) {
                res.exit_code = 3;
                res.message = "continuation aborted on an unconverged optimization";
            }
            return res;
        }

        if (cfg.subcommand == "verify") {
            ConstantsReport constants = estimate_constants(g, std::max(100, cfg.trials), cfg.seed);
            std::ostringstream ct;
            ct << "S2 = " << num(constants.S2) << "\n"
               << "S4 = " << num(constants.S4) << "\n"
               << "kappa_bar = " << num(constants.kappa_bar) << "\n"
               << "notes = " << constants.notes << "\n";
            write_text(dir.file("constants.txt"), ct.str());

            ProbeReport ids = verify_identities(g, cfg.seed, std::max(20, cfg.trials / 5),
                                                cfg.params.alpha > 0 ? cfg.params.alpha : 0.05);
            write_probe(dir.file("identities.csv"), ids);

            std::ostringstream est;
            est << "control,label,lhs,rhs,slack,pass\n";
            bool all_pass = ids.pass;
            const int n_controls = std::max(10, cfg.trials / 2);
            for (int t = 0; t < n_controls; ++t) {
                VectorField u = random_control(g, cfg.seed + 7000 + t, 0.5, 3);
                StateSolution st = solve_state(u, cfg.params, cfg.solver);
                if (!st.converged) {
                    all_pass = false;
                    est << t << ",state-not-converged,,,,0\n";
                    continue;
                }
                ProbeReport pr = verify_state_estimates(st, u, cfg.params, constants);
                for (const auto& row : pr.rows) {
                    est << t << "," << row.label << "," << num(row.lhs) << "," << num(row.rhs)
                        << "," << num(row.slack()) << "," << (row.pass() ? 1 : 0) << "\n";
                    all_pass = all_pass && row.pass();
                }
            }
            write_text(dir.file("estimates.csv"), est.str());
            std::ostringstream sum;
            sum << "identities_pass = " << (ids.pass ? 1 : 0) << "\n"
                << "all_pass = " << (all_pass ? 1 : 0) << "\n";
            write_text(dir.file("summary.txt"), sum.str());
            write_manifest(dir, cfg, wall());
            return res;
        }

        if (cfg.subcommand == "constants") {
            ConstantsReport constants = estimate_constants(g, std::max(100, cfg.trials), cfg.seed);
            std::ostringstream ct;
            ct << "S2 = " << num(constants.S2) << "\n"
               << "S4 = " << num(constants.S4) << "\n"
               << "kappa_bar = " << num(constants.kappa_bar) << "\n"
               << "notes = " << constants.notes << "\n";
            write_text(dir.file("constants.txt"), ct.str());
            write_manifest(dir, cfg, wall());
            return res;
        }

        res.exit_code = 2;
        res.message = "unknown subcommand " + cfg.subcommand;
        return res;
    } catch (const ConfigError& e) {
        res.exit_code = 2;
        res.message = e.what();
        return res;
    } catch (const std::ios_base::failure& e) {
        res.exit_code = 4;
        res.message = e.what();
        return res;
    } catch (const std::exception& e) {
        const std::string what = e.what();
        const bool io = what.find("cannot open") != std::string::npos ||
                        what.find("write failed") != std::string::npos ||
                        what.find("field read") != std::string::npos;
        res.exit_code = io ? 4 : 3;
        res.message = what;
        return res;
    }
}

}  // namespace sgf
