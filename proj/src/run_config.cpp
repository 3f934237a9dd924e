#include "sgflow/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>
#include <sstream>

namespace sgf {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_num(const std::string& v, int line, const std::string& key) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        fail(line, "key '" + key + "' expects a number, got '" + v + "'");
    }
}

long parse_int(const std::string& v, int line, const std::string& key) {
    try {
        size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        fail(line, "key '" + key + "' expects an integer, got '" + v + "'");
    }
}

std::vector<double> parse_list(const std::string& v, int line, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_num(trim(item), line, key));
    if (out.empty()) fail(line, "key '" + key + "' expects a comma-separated list");
    return out;
}

bool is_field_source(const std::string& v) {
    if (v == "zero") return true;
    if (v.rfind("manufactured:", 0) == 0) return true;
    if (v.rfind("random:", 0) == 0) return true;
    return std::filesystem::exists(v);
}

void check_source(const std::string& v, int line, const std::string& key) {
    if (!is_field_source(v))
        fail(line, "key '" + key + "': '" + v +
                       "' is neither zero, manufactured:<id>, random:<amp> nor an existing file");
}

const std::set<std::string> kSubcommands = {
    "solve-state", "linearize",  "adjoint",      "optimize",
    "optimize-regularized", "continuation", "verify", "constants"};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& subcommand) {
    if (!kSubcommands.count(subcommand))
        throw ConfigError("unknown subcommand '" + subcommand + "'");

    RunConfig cfg;
    cfg.subcommand = subcommand;
    cfg.raw_text = text;

    std::map<std::string, int> seen;  // key -> first line
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (seen.count(key))
            fail(lineno, "duplicate key '" + key + "' (first set on line " +
                             std::to_string(seen[key]) + ")");
        seen[key] = lineno;

        if (key == "subcommand") {
            if (val != subcommand)
                fail(lineno, "config says subcommand '" + val + "' but '" + subcommand +
                                 "' was requested");
        } else if (key == "grid") {
            cfg.grid = static_cast<int>(parse_int(val, lineno, key));
            if (cfg.grid < 9) fail(lineno, "grid must be >= 9 nodes per side");
        } else if (key == "nu") {
            cfg.params.nu = parse_num(val, lineno, key);
            if (!(cfg.params.nu > 0.0)) fail(lineno, "nu must be > 0");
        } else if (key == "alpha") {
            cfg.params.alpha = parse_num(val, lineno, key);
            if (!(cfg.params.alpha >= 0.0)) fail(lineno, "alpha must be >= 0");
        } else if (key == "lambda") {
            cfg.lambda = parse_num(val, lineno, key);
            if (!(cfg.lambda >= 0.0)) fail(lineno, "lambda must be >= 0");
        } else if (key == "picard_tol") {
            cfg.solver.picard_tol = parse_num(val, lineno, key);
            if (!(cfg.solver.picard_tol > 0.0)) fail(lineno, "picard_tol must be > 0");
        } else if (key == "picard_max_iters") {
            cfg.solver.picard_max_iters = static_cast<int>(parse_int(val, lineno, key));
            if (cfg.solver.picard_max_iters < 1) fail(lineno, "picard_max_iters must be >= 1");
        } else if (key == "relaxation") {
            cfg.solver.relaxation = parse_num(val, lineno, key);
            if (!(cfg.solver.relaxation > 0.0 && cfg.solver.relaxation <= 1.0))
                fail(lineno, "relaxation must be in (0, 1]");
        } else if (key == "advection") {
            if (val == "centered") cfg.solver.advection = AdvectionScheme::centered;
            else if (val == "upwind") cfg.solver.advection = AdvectionScheme::upwind;
            else fail(lineno, "advection must be 'centered' or 'upwind'");
        } else if (key == "opt_tol") {
            cfg.optimizer.opt_tol = parse_num(val, lineno, key);
            if (!(cfg.optimizer.opt_tol > 0.0)) fail(lineno, "opt_tol must be > 0");
        } else if (key == "max_opt_iters") {
            cfg.optimizer.max_iters = static_cast<int>(parse_int(val, lineno, key));
            if (cfg.optimizer.max_iters < 1) fail(lineno, "max_opt_iters must be >= 1");
        } else if (key == "adjoint_mode") {
            if (val != "pde" && val != "discrete") fail(lineno, "adjoint_mode: 'pde' or 'discrete'");
            cfg.adjoint_mode = val;
        } else if (key == "u") {
            check_source(val, lineno, key);
            cfg.u_source = val;
        } else if (key == "w") {
            check_source(val, lineno, key);
            cfg.w_source = val;
        } else if (key == "f") {
            check_source(val, lineno, key);
            cfg.f_source = val;
        } else if (key == "y_d") {
            check_source(val, lineno, key);
            cfg.yd_source = val;
        } else if (key == "ubar") {
            check_source(val, lineno, key);
            cfg.ubar_source = val;
        } else if (key == "u0") {
            check_source(val, lineno, key);
            cfg.u0_source = val;
        } else if (key == "u1_min") {
            cfg.box.lower[0] = parse_num(val, lineno, key);
        } else if (key == "u1_max") {
            cfg.box.upper[0] = parse_num(val, lineno, key);
        } else if (key == "u2_min") {
            cfg.box.lower[1] = parse_num(val, lineno, key);
        } else if (key == "u2_max") {
            cfg.box.upper[1] = parse_num(val, lineno, key);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_num(val, lineno, key);
            if (!(cfg.epsilon > 0.0)) fail(lineno, "epsilon must be > 0");
        } else if (key == "alpha_list") {
            cfg.alpha_list = parse_list(val, lineno, key);
        } else if (key == "epsilon_list") {
            cfg.epsilon_list = parse_list(val, lineno, key);
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(parse_int(val, lineno, key));
            if (cfg.trials < 1) fail(lineno, "trials must be >= 1");
        } else if (key == "seed") {
            cfg.seed = static_cast<uint64_t>(parse_int(val, lineno, key));
        } else if (key == "out") {
            cfg.out_dir = val;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }

    // Required keys per subcommand.
    auto require = [&](const char* key) {
        if (!seen.count(key))
            throw ConfigError("config: subcommand '" + subcommand + "' requires key '" +
                              std::string(key) + "'");
    };
    if (subcommand == "solve-state" || subcommand == "linearize" || subcommand == "adjoint")
        require("u");
    if (subcommand == "linearize") require("w");
    if (subcommand == "adjoint") require("f");
    if (subcommand == "optimize" || subcommand == "optimize-regularized" ||
        subcommand == "continuation")
        require("y_d");
    if (subcommand == "optimize-regularized") require("epsilon");
    if (subcommand == "continuation") require("alpha_list");

    try {
        cfg.box.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!cfg.alpha_list.empty()) {
        if (cfg.alpha_list.back() != 0.0)
            throw ConfigError("config: alpha_list must end at 0");
        for (size_t k = 1; k < cfg.alpha_list.size(); ++k)
            if (!(cfg.alpha_list[k] < cfg.alpha_list[k - 1]))
                throw ConfigError("config: alpha_list must be strictly decreasing");
    }
    return cfg;
}

}  // namespace sgf
