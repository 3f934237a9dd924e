// Discrete Friedrichs mollifier: convolution with a radially symmetric
// polynomial bump (1 - (r/eps)^2)^2 of unit mass, zero extension outside the
// square. The stencil is conjugated by the square root of the trapezoidal
// weights so that self-adjointness holds exactly in the quadrature inner
// product, and the L2 norm bound is preserved.
#pragma once

#include "sgflow/field.hpp"

namespace sgf {

struct MollifierSpec {
    double epsilon = 0.0;  // kernel radius, in length units

    void validate(const Grid& g) const {
        if (!(epsilon >= g.h))
            throw std::invalid_argument("MollifierSpec: kernel under-resolved (epsilon < h)");
    }
};

ScalarField mollify(const ScalarField& u, const MollifierSpec& spec);
VectorField mollify(const VectorField& u, const MollifierSpec& spec);

}  // namespace sgf
