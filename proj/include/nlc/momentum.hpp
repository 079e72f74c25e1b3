#pragma once

// Variable-density momentum step rho (u_t + u . grad u) + grad P = Lap u - grad d . Lap d,
// div u = 0, admitting vacuum (rho = 0) without regularization.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nlc/calculus.hpp"
#include "nlc/density_transport.hpp"
#include "nlc/error.hpp"
#include "nlc/grid.hpp"

namespace nlc {

struct MomentumOptions {
    double cg_tol = 1e-10;
    int cg_max_iter = 500;
    double cfl_limit = kDefaultCflLimit;
};

struct MomentumResult {
    VectorField2D u;
    ScalarField2D pressure;
    /// Total preconditioned CG iterations over both implicit stages.
    int cg_iterations = 0;
};

/// int rho |u|^2 dx.
inline double kinetic_energy(const ScalarField2D& rho, const VectorField2D& u) {
    require_same_grid(rho.grid(), u.grid(), "kinetic_energy");
    double s = 0.0;
    for (std::size_t n = 0; n < rho.size(); ++n) s += rho[n] * (u.x[n] * u.x[n] + u.y[n] * u.y[n]);
    return s * rho.grid().cell_area();
}

/// (u . grad) v.
inline VectorField2D convective(const VectorField2D& u, const VectorField2D& v) {
    const VectorField2D gx = gradient(v.x);
    const VectorField2D gy = gradient(v.y);
    VectorField2D out(u.grid());
    for (std::size_t n = 0; n < out.x.size(); ++n) {
        out.x[n] = u.x[n] * gx.x[n] + u.y[n] * gx.y[n];
        out.y[n] = u.x[n] * gy.x[n] + u.y[n] * gy.y[n];
    }
    return out;
}

/// (u_new - u_old) / dt + u_new . grad u_new.
inline VectorField2D material_derivative(const VectorField2D& u_new, const VectorField2D& u_old, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("material_derivative: dt must be positive");
    VectorField2D out = (u_new - u_old) * (1.0 / dt);
    out += convective(u_new, u_new);
    return out;
}

namespace detail {

inline VectorField2D scale_by(const ScalarField2D& s, double a, const VectorField2D& v) {
    VectorField2D out(v.grid());
    for (std::size_t n = 0; n < out.x.size(); ++n) {
        out.x[n] = a * s[n] * v.x[n];
        out.y[n] = a * s[n] * v.y[n];
    }
    return out;
}

struct ProjectedSolve {
    VectorField2D u;
    int iterations = 0;
};

/// Finds divergence-free u with P[(a rho - Lap) u] = P[b] by preconditioned CG on the
/// solenoidal subspace. The operator is symmetric positive definite there whenever
/// rho >= 0 is not identically zero; the preconditioner (a mean(rho) - Lap)^-1
/// commutes with P.
inline ProjectedSolve solve_projected(const ScalarField2D& rho, double a, const VectorField2D& b,
                                      const VectorField2D& guess, const MomentumOptions& opt) {
    const double rho_mean = rho.mean();
    auto apply_op = [&](const VectorField2D& p) {
        VectorField2D out = project_solenoidal(scale_by(rho, a, p));
        out -= laplacian(p);
        return out;
    };
    auto precondition = [&](const VectorField2D& r) {
        return VectorField2D(solve_helmholtz(r.x, a * rho_mean), solve_helmholtz(r.y, a * rho_mean));
    };

    const VectorField2D pb = project_solenoidal(b);
    const double bnorm = std::sqrt(l2_sq(pb));
    ProjectedSolve out{project_solenoidal(guess), 0};
    if (bnorm == 0.0) {
        out.u = VectorField2D(b.grid());
        return out;
    }
    VectorField2D r = pb - apply_op(out.u);
    VectorField2D z = precondition(r);
    VectorField2D p = z;
    double rz = inner(r, z);
    for (int it = 0; it <= opt.cg_max_iter; ++it) {
        if (std::sqrt(l2_sq(r)) <= opt.cg_tol * bnorm) {
            out.iterations = it;
            return out;
        }
        if (it == opt.cg_max_iter) break;
        const VectorField2D ap = apply_op(p);
        const double alpha = rz / inner(p, ap);
        out.u += alpha * p;
        r -= alpha * ap;
        z = precondition(r);
        const double rz_new = inner(r, z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    throw SolverError(Failure::CgNotConverged, "projected CG: residual " + std::to_string(std::sqrt(l2_sq(r)) / bnorm) +
                                                   " after " + std::to_string(opt.cg_max_iter) + " iterations");
}

} // namespace detail

/// One step of the momentum equation. Viscosity is implicit through a TR-BDF2 pair
/// (trapezoid over gamma*dt, then BDF2 to dt, gamma = 2 - sqrt 2); convection and
/// the elastic force `force` = grad d . Lap d are explicit and frozen over the step.
/// Each stage is solved directly in the divergence-free subspace, so incompressibility
/// holds exactly and no density floor is needed at vacuum nodes. The returned pressure
/// is the mean-zero potential of the gradient part of the final-stage residual.
inline MomentumResult step_momentum(const ScalarField2D& rho, const VectorField2D& u, const VectorField2D& force,
                                    double dt, const MomentumOptions& opt = {}) {
    require_same_grid(rho.grid(), u.grid(), "step_momentum");
    require_same_grid(rho.grid(), force.grid(), "step_momentum");
    if (!(dt > 0.0)) throw std::invalid_argument("step_momentum: dt must be positive");
    if (rho.min() < 0.0) throw std::invalid_argument("step_momentum: density must be nonnegative");
    if (!(rho.max() > 0.0)) throw std::invalid_argument("step_momentum: density vanishes identically");
    const double cfl = cfl_number(u, dt);
    if (cfl > opt.cfl_limit)
        throw SolverError(Failure::CflExceeded, "step_momentum: CFL " + std::to_string(cfl) + " exceeds limit " +
                                                    std::to_string(opt.cfl_limit));

    const double gamma = 2.0 - std::numbers::sqrt2;
    // Explicit forcing g = -rho (u . grad u) - grad d . Lap d.
    VectorField2D g = detail::scale_by(rho, -1.0, convective(u, u));
    g -= force;

    const double a1 = 2.0 / (gamma * dt);
    VectorField2D b1 = detail::scale_by(rho, a1, u);
    b1 += laplacian(u);
    b1 += 2.0 * g;
    const detail::ProjectedSolve s1 = detail::solve_projected(rho, a1, b1, u, opt);

    const double c = (1.0 - gamma) / (2.0 - gamma);
    const double wa = 1.0 / (gamma * (2.0 - gamma));
    const double wb = (1.0 - gamma) * (1.0 - gamma) / (gamma * (2.0 - gamma));
    const double a2 = 1.0 / (c * dt);
    VectorField2D b2 = detail::scale_by(rho, a2, wa * s1.u - wb * u);
    b2 += g;
    const detail::ProjectedSolve s2 = detail::solve_projected(rho, a2, b2, s1.u, opt);

    VectorField2D residual = b2 - detail::scale_by(rho, a2, s2.u);
    ScalarField2D pressure = leray_project(residual).potential;
    return {s2.u, std::move(pressure), s1.iterations + s2.iterations};
}

} // namespace nlc
