#include "sgflow/random_fields.hpp"

#include <cmath>
#include <random>

namespace sgf {

namespace {

constexpr double kMargin = 0.10;
constexpr double kRamp = 0.20;

double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

// Ninth-order smoothstep: C^4 at both ends, S'(t) = 630 t^4 (1-t)^4.
double smooth9(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * t * t * (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + t * 70.0))));
}

double smooth9_d(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = t * (1.0 - t);
    return 630.0 * a * a * a * a;
}

double axis_bump(double t) {
    if (t <= kMargin || t >= 1.0 - kMargin) return 0.0;
    if (t < kMargin + kRamp) return smooth9((t - kMargin) / kRamp);
    if (t > 1.0 - kMargin - kRamp) return smooth9((1.0 - kMargin - t) / kRamp);
    return 1.0;
}

double axis_bump_d(double t) {
    if (t <= kMargin || t >= 1.0 - kMargin) return 0.0;
    if (t < kMargin + kRamp) return smooth9_d((t - kMargin) / kRamp) / kRamp;
    if (t > 1.0 - kMargin - kRamp) return -smooth9_d((1.0 - kMargin - t) / kRamp) / kRamp;
    return 0.0;
}

double series_d1(const TrigSeries& s, double x, double y) {
    const double pi = M_PI;
    double v = 0.0;
    int idx = 0;
    for (int k = 1; k <= s.modes; ++k)
        for (int l = 1; l <= s.modes; ++l)
            v += s.coef[idx++] * (k * pi) * std::cos(k * pi * x) * std::sin(l * pi * y);
    return v;
}

double series_d2(const TrigSeries& s, double x, double y) {
    const double pi = M_PI;
    double v = 0.0;
    int idx = 0;
    for (int k = 1; k <= s.modes; ++k)
        for (int l = 1; l <= s.modes; ++l)
            v += s.coef[idx++] * std::sin(k * pi * x) * (l * pi) * std::cos(l * pi * y);
    return v;
}

}  // namespace

double TrigSeries::value(double x, double y) const {
    const double pi = M_PI;
    double v = 0.0;
    int idx = 0;
    for (int k = 1; k <= modes; ++k)
        for (int l = 1; l <= modes; ++l)
            v += coef[idx++] * std::sin(k * pi * x) * std::sin(l * pi * y);
    return v;
}

TrigSeries random_series(uint64_t seed, int modes, double decay) {
    TrigSeries s;
    s.modes = modes;
    s.decay = decay;
    s.coef.resize(static_cast<size_t>(modes) * modes);
    std::mt19937_64 rng(seed);
    int idx = 0;
    for (int k = 1; k <= modes; ++k)
        for (int l = 1; l <= modes; ++l)
            s.coef[idx++] = uniform_pm1(rng) / std::pow(double(k * k + l * l), decay / 2.0);
    return s;
}

double bump_cutoff(double t, double margin, double ramp) {
    if (t <= margin || t >= 1.0 - margin) return 0.0;
    if (t < margin + ramp) return smooth9((t - margin) / ramp);
    if (t > 1.0 - margin - ramp) return smooth9((1.0 - margin - t) / ramp);
    return 1.0;
}

double compact_bump(double x, double y) { return axis_bump(x) * axis_bump(y); }

ScalarField sample_series(const TrigSeries& s, const Grid& g) {
    ScalarField f(g);
    f.fill([&](double x, double y) { return s.value(x, y); });
    return f;
}

ScalarField sample_compact_stream(const TrigSeries& s, const Grid& g) {
    ScalarField f(g);
    f.fill([&](double x, double y) { return compact_bump(x, y) * s.value(x, y); });
    return f;
}

VectorField sample_compact_divfree(const TrigSeries& s, const Grid& g) {
    VectorField v(g);
    v.fill(
        [&](double x, double y) {
            return axis_bump(x) * (axis_bump_d(y) * s.value(x, y) + axis_bump(y) * series_d2(s, x, y));
        },
        [&](double x, double y) {
            return -axis_bump(y) * (axis_bump_d(x) * s.value(x, y) + axis_bump(x) * series_d1(s, x, y));
        });
    return v;
}

ScalarField random_compact_stream(const Grid& g, uint64_t seed, int modes) {
    return sample_compact_stream(random_series(seed, modes), g);
}

VectorField random_compact_divfree(const Grid& g, uint64_t seed, int modes) {
    return sample_compact_divfree(random_series(seed, modes), g);
}

VectorField random_control(const Grid& g, uint64_t seed, double amplitude, int modes) {
    const TrigSeries sx = random_series(seed * 2654435761u + 1, modes);
    const TrigSeries sy = random_series(seed * 2654435761u + 2, modes);
    VectorField u(g);
    u.fill([&](double x, double y) { return amplitude * sx.value(x, y); },
           [&](double x, double y) { return amplitude * sy.value(x, y); });
    return u;
}

}  // namespace sgf
