// Seeded smooth random fields for probes and identity checks.
//
// Fields are low-order sine series with decaying coefficients, optionally
// multiplied by a C^4 polynomial bump that vanishes within a fixed margin of
// the boundary. The closed forms are grid-independent, so the same seed
// yields the same function across a refinement sequence.
#pragma once

#include <cstdint>
#include <vector>

#include "sgflow/field.hpp"

namespace sgf {

struct TrigSeries {
    int modes = 0;
    double decay = 2.0;
    std::vector<double> coef;  // modes x modes, row-major in (k, l)

    double value(double x, double y) const;
};

// Uniform(-1,1) coefficients scaled by (k^2 + l^2)^{-decay/2}.
TrigSeries random_series(uint64_t seed, int modes = 4, double decay = 2.0);

// C^4 bump: 0 outside [margin, 1-margin] on each axis, 1 on the core.
double bump_cutoff(double t, double margin, double ramp);
double compact_bump(double x, double y);

// Series sampled as-is (controls, targets).
ScalarField sample_series(const TrigSeries& s, const Grid& g);

// Series times the compact bump: vanishes identically within ~0.08 of the
// boundary, which keeps one-sided stencils out of identity checks.
ScalarField sample_compact_stream(const TrigSeries& s, const Grid& g);

// Velocity sampled from the analytic curl_perp of the compact stream
// function (divergence-free in the continuum, smooth, zero near the wall).
VectorField sample_compact_divfree(const TrigSeries& s, const Grid& g);

// Convenience wrappers used by the probe suite.
ScalarField random_compact_stream(const Grid& g, uint64_t seed, int modes = 4);
VectorField random_compact_divfree(const Grid& g, uint64_t seed, int modes = 4);
VectorField random_control(const Grid& g, uint64_t seed, double amplitude, int modes = 3);

}  // namespace sgf
