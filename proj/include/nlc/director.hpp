#pragma once

// Director evolution d_t + u . grad d = Lap d + |grad d|^2 d on the unit sphere,
// and the elastic stress it exerts on the fluid.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nlc/calculus.hpp"
#include "nlc/error.hpp"
#include "nlc/grid.hpp"

namespace nlc {

/// M(d) = grad d (x) grad d - 1/2 |grad d|^2 I.
struct StressTensor2D {
    ScalarField2D m11, m12, m21, m22;
};

struct ElasticForcing {
    StressTensor2D stress;
    /// f_i = sum_k d_i d^k Lap d^k, equal to div M(d).
    VectorField2D force;
};

/// First derivatives and Laplacians of all three components.
struct DirectorDerivatives {
    std::array<VectorField2D, 3> grad;
    std::array<ScalarField2D, 3> lap;
    /// Pointwise |grad d|^2 summed over components and directions.
    ScalarField2D grad_sq;

    explicit DirectorDerivatives(const DirectorField2D& d) {
        grad_sq = ScalarField2D(d.grid());
        for (int k = 0; k < 3; ++k) {
            grad[k] = gradient(d[k]);
            lap[k] = laplacian(d[k]);
            for (std::size_t n = 0; n < grad_sq.size(); ++n)
                grad_sq[n] += grad[k].x[n] * grad[k].x[n] + grad[k].y[n] * grad[k].y[n];
        }
    }
};

/// max over nodes of ||d|^2 - 1|.
inline double unit_drift(const DirectorField2D& d) {
    double m = 0.0;
    for (std::size_t n = 0; n < d.c1.size(); ++n) m = std::max(m, std::abs(d.length_sq(n) - 1.0));
    return m;
}

inline constexpr double kDegenerateLength = 0.5;

/// Projects every node back onto the sphere.
inline DirectorField2D renormalize(const DirectorField2D& d) {
    DirectorField2D out = d;
    for (std::size_t n = 0; n < d.c1.size(); ++n) {
        const double len = std::sqrt(d.length_sq(n));
        if (!(len >= kDegenerateLength))
            throw SolverError(Failure::DegenerateDirector,
                              "renormalize: |d| = " + std::to_string(len) + " at node " + std::to_string(n));
        for (int k = 0; k < 3; ++k) out[k][n] = d[k][n] / len;
    }
    return out;
}

/// Tension field Lap d + |grad d|^2 d.
inline std::array<ScalarField2D, 3> director_tension(const DirectorField2D& d, const DirectorDerivatives& dd) {
    std::array<ScalarField2D, 3> t;
    for (int k = 0; k < 3; ++k) t[k] = dd.lap[k] + dd.grad_sq * d[k];
    return t;
}

inline std::array<ScalarField2D, 3> director_tension(const DirectorField2D& d) {
    return director_tension(d, DirectorDerivatives(d));
}

/// Semi-implicit step: (I - dt Lap) d* = d + dt (-u . grad d + |grad d|^2 d), then
/// renormalization. Throws SolverError if d* comes within kDegenerateLength of zero.
inline DirectorField2D step_director(const DirectorField2D& d, const VectorField2D& u, double dt,
                                     double tol_unit = 1e-8) {
    require_same_grid(d.grid(), u.grid(), "step_director");
    if (!(dt > 0.0)) throw std::invalid_argument("step_director: dt must be positive");
    if (unit_drift(d) > tol_unit)
        throw std::invalid_argument("step_director: director is off the unit sphere by " +
                                    std::to_string(unit_drift(d)));
    const DirectorDerivatives dd(d);
    DirectorField2D star(d.grid());
    for (int k = 0; k < 3; ++k) {
        ScalarField2D rhs = d[k];
        for (std::size_t n = 0; n < rhs.size(); ++n) {
            const double transport = u.x[n] * dd.grad[k].x[n] + u.y[n] * dd.grad[k].y[n];
            rhs[n] = (rhs[n] + dt * (dd.grad_sq[n] * d[k][n] - transport)) / dt;
        }
        star[k] = solve_helmholtz(rhs, 1.0 / dt);
    }
    return renormalize(star);
}

inline ElasticForcing ericksen_stress(const DirectorField2D& d, const DirectorDerivatives& dd) {
    const Grid2D& g = d.grid();
    ElasticForcing out{{ScalarField2D(g), ScalarField2D(g), ScalarField2D(g), ScalarField2D(g)}, VectorField2D(g)};
    StressTensor2D& m = out.stress;
    for (std::size_t n = 0; n < g.size(); ++n) {
        double gxx = 0.0, gxy = 0.0, gyy = 0.0, fx = 0.0, fy = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double ax = dd.grad[k].x[n], ay = dd.grad[k].y[n];
            gxx += ax * ax;
            gxy += ax * ay;
            gyy += ay * ay;
            fx += ax * dd.lap[k][n];
            fy += ay * dd.lap[k][n];
        }
        const double half = 0.5 * (gxx + gyy);
        m.m11[n] = gxx - half;
        m.m22[n] = gyy - half;
        m.m12[n] = gxy;
        m.m21[n] = gxy;
        out.force.x[n] = fx;
        out.force.y[n] = fy;
    }
    return out;
}

inline ElasticForcing ericksen_stress(const DirectorField2D& d) { return ericksen_stress(d, DirectorDerivatives(d)); }

/// Row-wise divergence (d_j M_ij) of a stress tensor.
inline VectorField2D divergence(const StressTensor2D& m) {
    return {partial_x(m.m11) + partial_y(m.m12), partial_x(m.m21) + partial_y(m.m22)};
}

} // namespace nlc
