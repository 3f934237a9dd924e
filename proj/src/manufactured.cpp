#include "sgflow/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace sgf {

namespace {

struct Profile {
    std::function<double(double)> f, d1, d2, d3, d4;
};

Profile quartic_profile() {
    Profile p;
    p.f = [](double t) { return t * t * (1.0 - t) * (1.0 - t); };
    p.d1 = [](double t) { return 2.0 * t - 6.0 * t * t + 4.0 * t * t * t; };
    p.d2 = [](double t) { return 2.0 - 12.0 * t + 12.0 * t * t; };
    p.d3 = [](double t) { return -12.0 + 24.0 * t; };
    p.d4 = [](double) { return 24.0; };
    return p;
}

Profile trig_profile() {
    const double pi = M_PI;
    Profile p;
    p.f = [pi](double t) { return std::sin(pi * t) * std::sin(pi * t); };
    p.d1 = [pi](double t) { return pi * std::sin(2.0 * pi * t); };
    p.d2 = [pi](double t) { return 2.0 * pi * pi * std::cos(2.0 * pi * t); };
    p.d3 = [pi](double t) { return -4.0 * pi * pi * pi * std::sin(2.0 * pi * t); };
    p.d4 = [pi](double t) { return -8.0 * pi * pi * pi * pi * std::cos(2.0 * pi * t); };
    return p;
}

ManufacturedForm separable_form(const Profile& p) {
    ManufacturedForm m;
    m.psi = [p](double x, double y) { return p.f(x) * p.f(y); };
    m.d1_psi = [p](double x, double y) { return p.d1(x) * p.f(y); };
    m.d2_psi = [p](double x, double y) { return p.f(x) * p.d1(y); };
    m.lap_psi = [p](double x, double y) { return p.d2(x) * p.f(y) + p.f(x) * p.d2(y); };
    m.d1_lap_psi = [p](double x, double y) { return p.d3(x) * p.f(y) + p.d1(x) * p.d2(y); };
    m.d2_lap_psi = [p](double x, double y) { return p.d2(x) * p.d1(y) + p.f(x) * p.d3(y); };
    m.bilap_psi = [p](double x, double y) {
        return p.d4(x) * p.f(y) + 2.0 * p.d2(x) * p.d2(y) + p.f(x) * p.d4(y);
    };
    return m;
}

}  // namespace

ManufacturedForm manufactured_form(const std::string& id) {
    if (id == "poly-quartic") return separable_form(quartic_profile());
    if (id == "trig") return separable_form(trig_profile());
    throw std::invalid_argument("manufactured_form: unknown id '" + id +
                                "' (catalog: poly-quartic, trig)");
}

ManufacturedCase manufactured_case(const std::string& id, const Grid& g,
                                   const FluidParams& params) {
    params.validate();
    const ManufacturedForm m = manufactured_form(id);
    const double nu = params.nu;
    const double alpha = params.alpha;

    ManufacturedCase out;
    out.psi_exact = ScalarField(g);
    out.psi_exact.fill(m.psi);
    out.u_forcing = VectorField(g);
    out.u_forcing.fill(
        [&](double x, double y) {
            const double omega = -m.lap_psi(x, y) + alpha * m.bilap_psi(x, y);
            return -nu * m.d2_lap_psi(x, y) + omega * m.d1_psi(x, y);
        },
        [&](double x, double y) {
            const double omega = -m.lap_psi(x, y) + alpha * m.bilap_psi(x, y);
            return nu * m.d1_lap_psi(x, y) + omega * m.d2_psi(x, y);
        });
    return out;
}

}  // namespace sgf
