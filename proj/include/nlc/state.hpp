#pragma once

#include <cstdint>

#include "nlc/grid.hpp"

namespace nlc {

/// Full instantaneous state of a run.
struct SimState {
    ScalarField2D rho;
    VectorField2D u;
    ScalarField2D p;
    DirectorField2D d;
    double t = 0.0;
    std::int64_t step = 0;

    const Grid2D& grid() const { return rho.grid(); }
};

} // namespace nlc
