#pragma once

// Built-in initial data.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "nlc/calculus.hpp"
#include "nlc/diagnostics.hpp"
#include "nlc/harness/config.hpp"
#include "nlc/harness/snapshot.hpp"
#include "nlc/inequality_lab.hpp"
#include "nlc/state.hpp"

namespace nlc {

inline const std::set<std::string>& scenario_names() {
    static const std::set<std::string> names = {"rest",           "vacuum-bubble", "small-director", "angle-condition",
                                                "supercritical", "taylor-green",  "snapshot"};
    return names;
}

/// C-infinity step: 0 for z <= 0, 1 for z >= 1.
inline double smooth_step(double z) {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / z), b = std::exp(-1.0 / (1.0 - z));
    return a / (a + b);
}

/// Solenoidal Gaussian vortex u = (d_y psi, -d_x psi) with peak speed `amp` at radius sigma.
inline VectorField2D gaussian_vortex(const Grid2D& g, double cx, double cy, double sigma, double amp) {
    const double scale = amp * sigma * std::exp(0.5);
    const auto psi = ScalarField2D::sample(g, [&](double x, double y) {
        const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        return scale * std::exp(-r2 / (2.0 * sigma * sigma));
    });
    const VectorField2D gp = gradient(psi);
    return {gp.y, -1.0 * gp.x};
}

/// Rotation of the sphere taking e3 to e.
inline std::array<std::array<double, 3>, 3> rotation_from_e3(double e1, double e2, double e3) {
    if (e3 <= -1.0 + 1e-15) return {{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
    // Rodrigues with axis e3 x e = (-e2, e1, 0) and cosine e3.
    const double vx = -e2, vy = e1, k = 1.0 / (1.0 + e3);
    return {{{1 - k * vy * vy, k * vx * vy, vy}, {k * vx * vy, 1 - k * vx * vx, -vx}, {-vy, vx, e3}}};
}

inline DirectorField2D rotate(const DirectorField2D& d, const std::array<std::array<double, 3>, 3>& r) {
    DirectorField2D out(d.grid());
    for (std::size_t n = 0; n < d.c1.size(); ++n)
        for (int a = 0; a < 3; ++a) out[a][n] = r[a][0] * d.c1[n] + r[a][1] * d.c2[n] + r[a][2] * d.c3[n];
    return out;
}

namespace detail {

inline void require_params(const SimConfig& c, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : c.scenario_params)
        if (!allowed.count(key)) throw ConfigError("scenario '" + c.scenario + "' has no parameter '" + key + "'");
}

inline double scale_to_kinetic(const ScalarField2D& rho, VectorField2D& u, double target) {
    const double ke = kinetic_energy(rho, u);
    if (target > 0.0 && !(ke > 0.0)) throw ConfigError("cannot reach the kinetic-energy target: vortex sits in vacuum");
    if (ke > 0.0) u *= std::sqrt(target / ke);
    return kinetic_energy(rho, u);
}

/// Patch amplitude whose Dirichlet energy equals target, by bisection.
inline double amplitude_for_dirichlet(const Grid2D& g, double cx, double cy, double sigma, double k, double target) {
    auto energy = [&](double a) { return grad_l2_sq(stereographic_patch(g, cx, cy, sigma, a, k)); };
    double lo = 0.0, hi = 0.1;
    while (energy(hi) < target) {
        hi *= 2.0;
        if (hi > 1.0) throw ConfigError("Dirichlet target unreachable with an amplitude <= 1");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (energy(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Builds the initial state of a named scenario. The "snapshot" scenario loads
/// scenario.path and, when present, its sidecar step counter.
inline SimState make_scenario(const SimConfig& c) {
    if (!scenario_names().count(c.scenario)) throw ConfigError("unknown scenario '" + c.scenario + "'");
    const Grid2D g = c.grid();
    const double box = std::min(c.lx, c.ly), cx = 0.5 * c.lx, cy = 0.5 * c.ly;
    const auto rot = rotation_from_e3(c.e1, c.e2, c.e3);
    SimState s{ScalarField2D(g, c.rho_bar), VectorField2D(g), ScalarField2D(g),
               DirectorField2D::uniform(g, c.e1, c.e2, c.e3), 0.0, 0};

    if (c.scenario == "rest") {
        detail::require_params(c, {});
    } else if (c.scenario == "vacuum-bubble") {
        detail::require_params(c, {"radius", "width", "vortex_amp", "vortex_sigma"});
        const double radius = c.param("radius", 0.15 * box), width = c.param("width", 0.1 * box);
        if (!(radius > 0.0) || !(width > 0.0)) throw ConfigError("vacuum-bubble: radius and width must be positive");
        s.rho = ScalarField2D::sample(g, [&](double x, double y) {
            return c.rho_bar * smooth_step((std::hypot(x - cx, y - cy) - radius) / width);
        });
        s.u = gaussian_vortex(g, cx, cy, c.param("vortex_sigma", 0.1 * box), c.param("vortex_amp", 0.2));
    } else if (c.scenario == "small-director") {
        detail::require_params(c, {"target_grad", "target_kinetic", "patch_sigma", "patch_k", "vortex_sigma",
                                   "rho_amp", "rho_sigma"});
        const double rho_amp = c.param("rho_amp", 0.5), rho_sigma = c.param("rho_sigma", 0.1 * box);
        s.rho = ScalarField2D::sample(g, [&](double x, double y) {
            const double r2 = (x - cx - 0.1 * box) * (x - cx - 0.1 * box) + (y - cy) * (y - cy);
            return c.rho_bar * (1.0 + rho_amp * std::exp(-r2 / (2.0 * rho_sigma * rho_sigma)));
        });
        s.u = gaussian_vortex(g, cx, cy, c.param("vortex_sigma", 0.1 * box), 1.0);
        detail::scale_to_kinetic(s.rho, s.u, c.param("target_kinetic", 1.0));
        const double sigma = c.param("patch_sigma", 0.08 * box), k = c.param("patch_k", 0.0);
        const double amp = detail::amplitude_for_dirichlet(g, cx, cy, sigma, k, c.param("target_grad", 0.005));
        s.d = rotate(stereographic_patch(g, cx, cy, sigma, amp, k), rot);
    } else if (c.scenario == "angle-condition") {
        detail::require_params(c, {"eps", "fill", "patch_sigma", "patch_k", "vortex_amp", "vortex_sigma", "rho_amp"});
        if (std::abs(c.e3 - 1.0) > 1e-12) throw ConfigError("angle-condition requires e = (0, 0, 1)");
        const double eps = c.param("eps", 0.5), fill = c.param("fill", 1.0);
        if (!(fill > 0.0 && fill <= 1.0)) throw ConfigError("angle-condition: fill must be in (0, 1]");
        const double amp = fill * patch_amplitude_for_floor(eps);
        const double sigma = c.param("patch_sigma", 0.08 * box), k = c.param("patch_k", 2.0 * std::numbers::pi / (4.0 * sigma));
        s.d = stereographic_patch(g, cx, cy, sigma, amp, k);
        const double rho_amp = c.param("rho_amp", 0.5);
        s.rho = ScalarField2D::sample(g, [&](double x, double y) {
            const double r2 = (x - cx) * (x - cx) + (y - cy - 0.1 * box) * (y - cy - 0.1 * box);
            return c.rho_bar * (1.0 + rho_amp * std::exp(-r2 / (2.0 * 0.01 * box * box)));
        });
        s.u = gaussian_vortex(g, cx, cy, c.param("vortex_sigma", 0.1 * box), c.param("vortex_amp", 0.5));
    } else if (c.scenario == "supercritical") {
        detail::require_params(c, {"amp", "patch_sigma", "patch_k", "vortex_amp", "vortex_sigma"});
        const double sigma = c.param("patch_sigma", 0.08 * box);
        s.d = rotate(stereographic_patch(g, cx, cy, sigma, c.param("amp", 4.0), c.param("patch_k", 0.0)), rot);
        const double va = c.param("vortex_amp", 0.0);
        if (va != 0.0) s.u = gaussian_vortex(g, cx, cy, c.param("vortex_sigma", 0.1 * box), va);
    } else if (c.scenario == "taylor-green") {
        detail::require_params(c, {"amp", "mode"});
        if (c.lx != c.ly) throw ConfigError("taylor-green requires lx = ly");
        const double amp = c.param("amp", 1.0), k = 2.0 * std::numbers::pi * c.param("mode", 1.0) / c.lx;
        s.u = VectorField2D(
            ScalarField2D::sample(g, [&](double x, double y) { return amp * std::sin(k * x) * std::cos(k * y); }),
            ScalarField2D::sample(g, [&](double x, double y) { return -amp * std::cos(k * x) * std::sin(k * y); }));
    } else {  // snapshot
        detail::require_params(c, {"path"});
        const std::string path = c.param_string("path", "");
        if (path.empty()) throw ConfigError("snapshot scenario needs scenario.path");
        s = read_snapshot(path);
        if (!(s.grid() == g)) throw ConfigError("snapshot grid does not match nx, ny, lx, ly");
        std::ifstream probe(sidecar_path(path));
        if (probe) s.step = read_sidecar(sidecar_path(path)).step;
        return s;
    }

    if (!s.rho.all_finite() || s.rho.min() < 0.0) throw ConfigError(c.scenario + ": density must be finite and >= 0");
    if (!(unit_drift(s.d) <= c.tol_unit)) throw ConfigError(c.scenario + ": director is not unit length");
    return s;
}

} // namespace nlc
