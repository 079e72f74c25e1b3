#pragma once

// Semi-Lagrangian transport of the density by a divergence-free velocity.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nlc/calculus.hpp"
#include "nlc/error.hpp"
#include "nlc/grid.hpp"

namespace nlc {

namespace detail {

inline double wrap(double x, double period) {
    double r = std::fmod(x, period);
    return r < 0.0 ? r + period : r;
}

/// Four-point Lagrange weights for offset t in [0, 1) between nodes 0 and 1 of
/// the stencil {-1, 0, 1, 2}.
inline std::array<double, 4> cubic_weights(double t) {
    return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
            -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

/// Tensor-product cubic interpolation at a periodic point. With `limited`, the
/// result is clamped to the range of the four nodes of the enclosing cell, which
/// gives a discrete maximum principle.
inline double interpolate(const ScalarField2D& f, double x, double y, bool limited) {
    const Grid2D& g = f.grid();
    const int nx = g.nx(), ny = g.ny();
    const double sx = wrap(x, g.lx()) / g.hx();
    const double sy = wrap(y, g.ly()) / g.hy();
    int i0 = static_cast<int>(std::floor(sx));
    int j0 = static_cast<int>(std::floor(sy));
    const double tx = sx - i0, ty = sy - j0;
    i0 %= nx;
    j0 %= ny;
    const auto wx = cubic_weights(tx);
    const auto wy = cubic_weights(ty);
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) {
        const int j = (j0 - 1 + b + ny) % ny;
        double row = 0.0;
        for (int a = 0; a < 4; ++a) row += wx[a] * f.at((i0 - 1 + a + nx) % nx, j);
        acc += wy[b] * row;
    }
    if (!limited) return acc;
    const int i1 = (i0 + 1) % nx, j1 = (j0 + 1) % ny;
    const double c00 = f.at(i0, j0), c10 = f.at(i1, j0), c01 = f.at(i0, j1), c11 = f.at(i1, j1);
    const double lo = std::min(std::min(c00, c10), std::min(c01, c11));
    const double hi = std::max(std::max(c00, c10), std::max(c01, c11));
    return std::clamp(acc, lo, hi);
}

} // namespace detail

/// max |u| dt / min(hx, hy).
inline double cfl_number(const VectorField2D& u, double dt) {
    const double umax = lp_norm(magnitude(u), kInfinity);
    return umax * dt / std::min(u.grid().hx(), u.grid().hy());
}

inline constexpr double kDefaultCflLimit = 0.9;

/// One semi-Lagrangian step of rho_t + u . grad rho = 0. Characteristic feet are
/// located with the midpoint rule; rho is sampled there with the limited cubic.
inline ScalarField2D advect_density(const ScalarField2D& rho, const VectorField2D& u, double dt,
                                    double cfl_limit = kDefaultCflLimit) {
    require_same_grid(rho.grid(), u.grid(), "advect_density");
    if (!(dt > 0.0)) throw std::invalid_argument("advect_density: dt must be positive");
    const double cfl = cfl_number(u, dt);
    if (cfl > cfl_limit)
        throw SolverError(Failure::CflExceeded, "advect_density: CFL " + std::to_string(cfl) + " exceeds limit " +
                                                    std::to_string(cfl_limit));
    const Grid2D& g = rho.grid();
    ScalarField2D out(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const std::size_t n = g.index(i, j);
            const double x = g.x(i), y = g.y(j);
            const double xm = x - 0.5 * dt * u.x[n];
            const double ym = y - 0.5 * dt * u.y[n];
            const double um = detail::interpolate(u.x, xm, ym, false);
            const double vm = detail::interpolate(u.y, xm, ym, false);
            out[n] = detail::interpolate(rho, x - dt * um, y - dt * vm, true);
        }
    return out;
}

struct DensityInvariants {
    std::vector<double> qs;
    /// Relative drift of ||rho - rho_bar||_q against the reference, one per q.
    std::vector<double> drift;
    double min = 0.0;
    double max = 0.0;
};

inline ScalarField2D deviation(const ScalarField2D& rho, double rho_bar) {
    ScalarField2D d = rho;
    for (double& v : d.values()) v -= rho_bar;
    return d;
}

/// Compares the transported density against its initial state: L^q conservation of
/// rho - rho_bar and the bounds 0 <= rho <= max rho0.
inline DensityInvariants density_invariants(const ScalarField2D& rho, const ScalarField2D& rho0, double rho_bar,
                                            const std::vector<double>& qs, double floor = 1e-14) {
    require_same_grid(rho.grid(), rho0.grid(), "density_invariants");
    DensityInvariants r;
    r.qs = qs;
    const ScalarField2D a = deviation(rho, rho_bar);
    const ScalarField2D b = deviation(rho0, rho_bar);
    for (double q : qs) {
        if (q < 2.0) throw std::invalid_argument("density_invariants: q must be >= 2");
        const double nq = lp_norm(a, q), n0 = lp_norm(b, q);
        r.drift.push_back(std::abs(nq - n0) / std::max(n0, floor));
    }
    r.min = rho.min();
    r.max = rho.max();
    return r;
}

} // namespace nlc
