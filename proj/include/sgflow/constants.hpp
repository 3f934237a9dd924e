// Measured embedding constants and the smallness condition built on them.
#pragma once

#include <cstdint>
#include <string>

#include "sgflow/field.hpp"

namespace sgf {

struct ConstantsReport {
    double S2 = 0.0;         // Poincare constant, from the first Dirichlet eigenvalue
    double S4 = 0.0;         // L4 embedding constant, certified lower bound
    double kappa_bar = 0.0;  // condition constant, default 2 * S4^2 * S2
    std::string notes;

    void validate() const {
        if (!(S2 > 0.0 && S4 > 0.0)) throw std::invalid_argument("ConstantsReport: S2, S4 > 0");
        if (!(kappa_bar >= S4 * S4 * S2))
            throw std::invalid_argument("ConstantsReport: kappa_bar must be >= S4^2 * S2");
    }
};

// S2 by inverse power iteration on the discrete Dirichlet Laplacian
// (S2 = lambda_1^{-1/2}); S4 as the best ratio ||v||_4 / |v|_H1 over `trials`
// random divergence-free fields plus an iteratively reweighted eigen-ascent
// maximizer. Both are certified lower bounds of the discrete suprema.
ConstantsReport estimate_constants(const Grid& g, int trials, uint64_t seed);

struct SmallnessVerdict {
    bool holds = false;
    double margin = 0.0;  // nu^2 - kappa_bar (||u|| + alpha ||curl u||)
    double lhs = 0.0;
    double kappa_bar_used = 0.0;
};

SmallnessVerdict check_smallness(const VectorField& u, const FluidParams& params,
                                 const ConstantsReport& constants);

}  // namespace sgf
