#pragma once

// Quadrature, norms and spectral differential operators on the periodic grid.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlc/grid.hpp"
#include "nlc/spectral.hpp"

namespace nlc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Rectangle-rule integral over the box.
inline double integrate(const ScalarField2D& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * f.grid().cell_area();
}

inline double inner(const ScalarField2D& f, const ScalarField2D& g) {
    require_same_grid(f.grid(), g.grid(), "inner");
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * g[k];
    return s * f.grid().cell_area();
}

inline double inner(const VectorField2D& a, const VectorField2D& b) { return inner(a.x, b.x) + inner(a.y, b.y); }

inline double l2_sq(const ScalarField2D& f) { return inner(f, f); }
inline double l2_sq(const VectorField2D& v) { return l2_sq(v.x) + l2_sq(v.y); }

/// (int |f|^p dx)^(1/p) by the rectangle rule; p = kInfinity gives max |f|.
inline double lp_norm(const ScalarField2D& f, double p) {
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 2.0) return std::sqrt(l2_sq(f));
    // Scale by the max to keep large p from overflowing.
    const double m = lp_norm(f, kInfinity);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : f.values()) s += std::pow(std::abs(v) / m, p);
    return m * std::pow(s * f.grid().cell_area(), 1.0 / p);
}

/// Pointwise Euclidean magnitude of a vector field.
inline ScalarField2D magnitude(const VectorField2D& v) {
    ScalarField2D m(v.grid());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::hypot(v.x[k], v.y[k]);
    return m;
}

inline ScalarField2D partial_x(const ScalarField2D& f) {
    const spectral::Wavenumbers k(f.grid());
    return spectral::apply(f, [&](int i, int) { return spectral::Complex(0.0, k.dx[i]); });
}

inline ScalarField2D partial_y(const ScalarField2D& f) {
    const spectral::Wavenumbers k(f.grid());
    return spectral::apply(f, [&](int, int j) { return spectral::Complex(0.0, k.dy[j]); });
}

inline VectorField2D gradient(const ScalarField2D& f) {
    const Grid2D& g = f.grid();
    const spectral::Wavenumbers k(g);
    const spectral::Spectrum s = spectral::forward(f);
    const std::size_t w = spectral::half_width(g);
    spectral::Spectrum sx(s.size()), sy(s.size());
    for (int j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < w; ++i) {
            const std::size_t n = j * w + i;
            sx[n] = spectral::Complex(0.0, k.dx[i]) * s[n];
            sy[n] = spectral::Complex(0.0, k.dy[j]) * s[n];
        }
    return {spectral::inverse(g, std::move(sx)), spectral::inverse(g, std::move(sy))};
}

inline ScalarField2D laplacian(const ScalarField2D& f) {
    const spectral::Wavenumbers k(f.grid());
    return spectral::apply(f, [&](int i, int j) { return spectral::Complex(-(k.kx[i] * k.kx[i] + k.ky[j] * k.ky[j])); });
}

inline VectorField2D laplacian(const VectorField2D& v) { return {laplacian(v.x), laplacian(v.y)}; }

inline ScalarField2D divergence(const VectorField2D& v) {
    const Grid2D& g = v.grid();
    const spectral::Wavenumbers k(g);
    spectral::Spectrum sx = spectral::forward(v.x);
    const spectral::Spectrum sy = spectral::forward(v.y);
    const std::size_t w = spectral::half_width(g);
    for (int j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < w; ++i) {
            const std::size_t n = j * w + i;
            sx[n] = spectral::Complex(0.0, k.dx[i]) * sx[n] + spectral::Complex(0.0, k.dy[j]) * sy[n];
        }
    return spectral::inverse(g, std::move(sx));
}

struct Hessian2D {
    ScalarField2D xx, xy, yy;
};

inline Hessian2D hessian(const ScalarField2D& f) {
    const Grid2D& g = f.grid();
    const spectral::Wavenumbers k(g);
    const spectral::Spectrum s = spectral::forward(f);
    const std::size_t w = spectral::half_width(g);
    spectral::Spectrum sxx(s.size()), sxy(s.size()), syy(s.size());
    for (int j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < w; ++i) {
            const std::size_t n = j * w + i;
            sxx[n] = -k.kx[i] * k.kx[i] * s[n];
            sxy[n] = -k.dx[i] * k.dy[j] * s[n];
            syy[n] = -k.ky[j] * k.ky[j] * s[n];
        }
    return {spectral::inverse(g, std::move(sxx)), spectral::inverse(g, std::move(sxy)),
            spectral::inverse(g, std::move(syy))};
}

/// Solves (a - Laplacian) u = f modewise. With a = 0 the zero mode of f is dropped.
inline ScalarField2D solve_helmholtz(const ScalarField2D& f, double a) {
    if (a < 0.0) throw std::invalid_argument("solve_helmholtz: a must be >= 0");
    const spectral::Wavenumbers k(f.grid());
    return spectral::apply(f, [&](int i, int j) {
        const double sym = a + k.kx[i] * k.kx[i] + k.ky[j] * k.ky[j];
        return spectral::Complex(sym > 0.0 ? 1.0 / sym : 0.0);
    });
}

/// v = solenoidal + gradient(potential), with div(solenoidal) = 0 and mean(potential) = 0.
struct HelmholtzSplit {
    VectorField2D solenoidal;
    ScalarField2D potential;
};

/// Leray projection, computed modewise as w = v - k (k . v) / |k|^2. Modes with a
/// vanishing derivative symbol (the mean and the unpaired Nyquist modes) pass through.
inline HelmholtzSplit leray_project(const VectorField2D& v) {
    const Grid2D& g = v.grid();
    const spectral::Wavenumbers k(g);
    spectral::Spectrum sx = spectral::forward(v.x);
    spectral::Spectrum sy = spectral::forward(v.y);
    spectral::Spectrum sp(sx.size());
    const std::size_t w = spectral::half_width(g);
    for (int j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < w; ++i) {
            const std::size_t n = j * w + i;
            const double kx = k.dx[i], ky = k.dy[j];
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            const spectral::Complex kv = kx * sx[n] + ky * sy[n];
            sx[n] -= kx * kv / k2;
            sy[n] -= ky * kv / k2;
            sp[n] = spectral::Complex(0.0, -1.0) * kv / k2;
        }
    return {VectorField2D(spectral::inverse(g, std::move(sx)), spectral::inverse(g, std::move(sy))),
            spectral::inverse(g, std::move(sp))};
}

/// Solenoidal part only.
inline VectorField2D project_solenoidal(const VectorField2D& v) { return leray_project(v).solenoidal; }

} // namespace nlc
