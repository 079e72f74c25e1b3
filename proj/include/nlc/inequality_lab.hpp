#pragma once

// Numerical checks of the functional inequalities behind the a priori estimates, on
// generated families of rapidly decaying functions (standing in for whole-plane data).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlc/calculus.hpp"
#include "nlc/diagnostics.hpp"
#include "nlc/exponents.hpp"

namespace nlc {

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    /// lhs / rhs when rhs > 0.
    std::optional<double> ratio;
    /// Set only for inequalities with an explicit constant.
    std::optional<bool> holds;
    std::string family_tag;
    bool degenerate = false;
};

namespace detail {

inline InequalityReport make_report(std::string name, double lhs, double rhs, std::string tag) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    if (rhs > 0.0) r.ratio = lhs / rhs;
    r.family_tag = std::move(tag);
    return r;
}

inline double grad_norm(const ScalarField2D& f, double p) { return lp_norm(magnitude(gradient(f)), p); }

} // namespace detail

/// ||f||_{L4}^2 <= sqrt 2 ||f||_{L2} ||grad f||_{L2}.
inline InequalityReport check_ladyzhenskaya(const ScalarField2D& f, const std::string& tag = {}, double tol = 1e-12) {
    const double l4 = lp_norm(f, 4.0);
    const double lhs = l4 * l4;
    const double rhs = std::numbers::sqrt2 * lp_norm(f, 2.0) * detail::grad_norm(f, 2.0);
    InequalityReport r = detail::make_report("ladyzhenskaya", lhs, rhs, tag);
    r.holds = lhs <= rhs * (1.0 + tol);
    return r;
}

/// ||f||_{Lp} against ||f||_{L2}^{2/p} ||grad f||_{L2}^{1-2/p}; the ratio is an empirical C(p).
inline InequalityReport check_gagliardo_nirenberg(const ScalarField2D& f, double p, const std::string& tag = {}) {
    if (std::isnan(p) || p < 2.0) throw std::invalid_argument("check_gagliardo_nirenberg: p must be >= 2");
    const double theta = 2.0 / p;
    const double rhs = std::pow(lp_norm(f, 2.0), theta) * std::pow(detail::grad_norm(f, 2.0), 1.0 - theta);
    return detail::make_report("gagliardo_nirenberg_p" + std::to_string(static_cast<int>(p)), lp_norm(f, p), rhs, tag);
}

/// ||v||_{L2} against ||rho^1/2 v||_{L2} + ||grad v||_{L2}: control of v through the
/// density-weighted norm even where rho vanishes.
inline InequalityReport check_poincare_density(const ScalarField2D& rho, double rho_bar, const VectorField2D& v,
                                               const std::string& tag = {}) {
    require_same_grid(rho.grid(), v.grid(), "check_poincare_density");
    if (!(rho_bar > 0.0)) throw std::invalid_argument("check_poincare_density: rho_bar must be positive");
    if (rho.min() < 0.0) throw std::invalid_argument("check_poincare_density: density must be nonnegative");
    const double lhs = std::sqrt(l2_sq(v));
    const double rhs = std::sqrt(kinetic_energy(rho, v)) + std::sqrt(grad_l2_sq(v));
    InequalityReport r = detail::make_report("poincare_density", lhs, rhs, tag);
    if (rhs == 0.0) {
        if (lhs > 0.0) throw std::domain_error("check_poincare_density: zero denominator with nonzero v");
        r.degenerate = true;
    }
    return r;
}

/// ||f||_{L2(L_inf)} against 1 + ||f||_{L2(H1)} (ln+ ||f||_{L2(W1q)})^{1/2} over a sampled
/// time series, with trapezoid time integrals.
inline InequalityReport check_log_sobolev(const std::vector<ScalarField2D>& series, const std::vector<double>& times,
                                          double q, const std::string& tag = {}) {
    if (std::isnan(q) || !(q > 2.0)) throw std::invalid_argument("check_log_sobolev: q must be > 2");
    if (series.size() < 2 || series.size() != times.size())
        throw std::invalid_argument("check_log_sobolev: need at least two samples with matching times");
    double linf = 0.0, h1 = 0.0, w1q = 0.0;
    double prev[3] = {0.0, 0.0, 0.0};
    for (std::size_t n = 0; n < series.size(); ++n) {
        const ScalarField2D& f = series[n];
        const double sup = lp_norm(f, kInfinity);
        const double wq = lp_norm(f, q) + detail::grad_norm(f, q);
        const double cur[3] = {sup * sup, l2_sq(f) + l2_sq(gradient(f)), wq * wq};
        if (n > 0) {
            const double dt = times[n] - times[n - 1];
            if (!(dt > 0.0)) throw std::invalid_argument("check_log_sobolev: times must increase");
            linf += 0.5 * dt * (prev[0] + cur[0]);
            h1 += 0.5 * dt * (prev[1] + cur[1]);
            w1q += 0.5 * dt * (prev[2] + cur[2]);
        }
        std::copy(cur, cur + 3, prev);
    }
    const double log_plus = std::max(0.0, std::log(std::sqrt(w1q)));
    const double rhs = 1.0 + std::sqrt(h1) * std::sqrt(log_plus);
    return detail::make_report("log_sobolev", std::sqrt(linf), rhs, tag);
}

// Function families. Members are closed-form functions of (x, y) so the same member can
// be sampled at several resolutions.

/// e-foldings of decay required between a member's peak and the box edge.
inline constexpr double kRequiredDecayFoldings = 8.0;

struct FamilyMember {
    std::string tag;
    std::function<double(double, double)> fn;
};

/// Samples a member and checks that it has decayed by kRequiredDecayFoldings on the box frame.
inline ScalarField2D sample_member(const FamilyMember& m, const Grid2D& g) {
    ScalarField2D f = ScalarField2D::sample(g, m.fn);
    const double peak = lp_norm(f, kInfinity);
    double edge = 0.0;
    for (int i = 0; i < g.nx(); ++i) edge = std::max({edge, std::abs(f.at(i, 0)), std::abs(f.at(i, g.ny() - 1))});
    for (int j = 0; j < g.ny(); ++j) edge = std::max({edge, std::abs(f.at(0, j)), std::abs(f.at(g.nx() - 1, j))});
    if (peak > 0.0 && edge > peak * std::exp(-kRequiredDecayFoldings))
        throw std::invalid_argument("sample_member: '" + m.tag + "' is not decayed at the box edge");
    return f;
}

inline FamilyMember gaussian_member(double cx, double cy, double sigma) {
    return {"gaussian:s=" + std::to_string(sigma), [=](double x, double y) {
                const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                return std::exp(-r2 / (2.0 * sigma * sigma));
            }};
}

/// Scalar families: "gaussian", "bandlimited" (random low modes under a Gaussian envelope)
/// and "bumps" (logarithmic spikes sharpening with the member index).
inline std::vector<FamilyMember> scalar_family(const std::string& name, double lx, double ly, int count,
                                               std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("scalar_family: count must be positive");
    const double box = std::min(lx, ly), cx = 0.5 * lx, cy = 0.5 * ly;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<FamilyMember> out;
    if (name == "gaussian") {
        for (int n = 0; n < count; ++n) {
            const double sigma = box * (1.0 / 40.0 + unit(rng) * (1.0 / 16.0 - 1.0 / 40.0));
            const double ox = (unit(rng) - 0.5) * 0.1 * box, oy = (unit(rng) - 0.5) * 0.1 * box;
            out.push_back(gaussian_member(cx + ox, cy + oy, sigma));
        }
    } else if (name == "bandlimited") {
        constexpr int kmax = 4;
        for (int n = 0; n < count; ++n) {
            const double sigma = box * (1.0 / 24.0 + unit(rng) * (1.0 / 16.0 - 1.0 / 24.0));
            struct Mode {
                double a, m, k, phase;
            };
            std::vector<Mode> modes;
            for (int m = -kmax; m <= kmax; ++m)
                for (int k = 0; k <= kmax; ++k) {
                    if (k == 0 && m < 0) continue;
                    modes.push_back({normal(rng) / (1.0 + m * m + k * k), static_cast<double>(m),
                                     static_cast<double>(k), 2.0 * std::numbers::pi * unit(rng)});
                }
            const double wx = 2.0 * std::numbers::pi / (8.0 * sigma);
            out.push_back({"bandlimited:" + std::to_string(n), [=](double x, double y) {
                               const double dx = x - cx, dy = y - cy;
                               double s = 0.0;
                               for (const Mode& md : modes) s += md.a * std::cos(wx * (md.m * dx + md.k * dy) + md.phase);
                               return s * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
                           }});
        }
    } else if (name == "bumps") {
        // ln(1 + R^2 / (r^2 + w^2)) under an envelope; H1 grows like ln(1/w)^{1/2}, L_inf like ln(1/w).
        const double envelope = box / 16.0, radius = envelope;
        for (int n = 0; n < count; ++n) {
            const double w = radius * std::pow(0.5, 1.0 + n);
            out.push_back({"bumps:w=" + std::to_string(w), [=](double x, double y) {
                               const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                               return std::log(1.0 + radius * radius / (r2 + w * w)) *
                                      std::exp(-r2 / (2.0 * envelope * envelope));
                           }});
        }
    } else {
        throw std::invalid_argument("scalar_family: unknown family '" + name + "'");
    }
    return out;
}

/// Director texture n(w) = (2 Re w, 2 Im w, 1 - |w|^2) / (1 + |w|^2) of a complex patch
/// w = amp exp(-r^2 / 2 sigma^2) exp(i k (x - cx)). Equals e3 far away; its third
/// component is bounded below by (1 - amp^2) / (1 + amp^2).
inline DirectorField2D stereographic_patch(const Grid2D& g, double cx, double cy, double sigma, double amp,
                                           double k) {
    DirectorField2D d(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const double dx = g.x(i) - cx, dy = g.y(j) - cy;
            const double mod = amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            const double re = mod * std::cos(k * dx), im = mod * std::sin(k * dx), w2 = mod * mod;
            const std::size_t n = g.index(i, j);
            d.c1[n] = 2.0 * re / (1.0 + w2);
            d.c2[n] = 2.0 * im / (1.0 + w2);
            d.c3[n] = (1.0 - w2) / (1.0 + w2);
        }
    return d;
}

/// Patch amplitude at which min d3 equals eps.
inline double patch_amplitude_for_floor(double eps) {
    if (!(eps > -1.0 && eps < 1.0)) throw std::invalid_argument("patch_amplitude_for_floor: eps must be in (-1, 1)");
    return std::sqrt((1.0 - eps) / (1.0 + eps));
}

struct PatchParams {
    double cx, cy, sigma, amp, k;
};

/// Random patches with d3 >= eps, widths between box/20 and box/10 so the texture has
/// decayed to e3 well before the box edge.
inline std::vector<PatchParams> director_family(double lx, double ly, int count, double eps, std::uint64_t seed) {
    const double box = std::min(lx, ly), top = patch_amplitude_for_floor(eps);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PatchParams> out;
    for (int n = 0; n < count; ++n) {
        const double sigma = box * (0.05 + 0.05 * unit(rng));
        const double amp = top * (0.3 + 0.7 * unit(rng));
        const double k = (2.0 * std::numbers::pi / sigma) * 0.25 * unit(rng);
        out.push_back({0.5 * lx + 0.05 * box * (unit(rng) - 0.5), 0.5 * ly + 0.05 * box * (unit(rng) - 0.5), sigma,
                       amp, k});
    }
    return out;
}

/// The rigidity inequality ||grad d||_{L4}^4 <= (1 - delta) ||grad^2 d||_{L2}^2 as a report;
/// holds records strict inequality.
inline InequalityReport check_rigidity(const DirectorField2D& d, const std::string& tag = {}) {
    const RigidityReport rr = rigidity_report(d);
    InequalityReport r = detail::make_report("rigidity", rr.lhs, rr.rhs, tag);
    r.holds = rr.lhs < rr.rhs;
    return r;
}

} // namespace nlc
