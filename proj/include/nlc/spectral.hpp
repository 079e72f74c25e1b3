#pragma once

// Thin FFTW wrapper: real-to-complex transforms of grid fields plus the
// wavenumber tables used by every spectral operator.

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "nlc/grid.hpp"

namespace nlc::spectral {

using Complex = std::complex<double>;

/// Half-spectrum of a real field: ny rows of (nx/2 + 1) modes, row-major.
using Spectrum = std::vector<Complex>;

class FftPlan {
public:
    FftPlan(int nx, int ny) : nx_(nx), ny_(ny) {
        const std::size_t nreal = static_cast<std::size_t>(nx) * ny;
        const std::size_t ncplx = static_cast<std::size_t>(ny) * (nx / 2 + 1);
        double* r = fftw_alloc_real(nreal);
        fftw_complex* c = fftw_alloc_complex(ncplx);
        // FFTW_UNALIGNED lets the plans run on std::vector storage via the new-array API.
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        forward_ = fftw_plan_dft_r2c_2d(ny, nx, r, c, flags);
        inverse_ = fftw_plan_dft_c2r_2d(ny, nx, c, r, flags);
        fftw_free(r);
        fftw_free(c);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    ~FftPlan() {
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(inverse_);
    }

    void forward(const double* in, Complex* out) const {
        // r2c keeps its input intact for out-of-place transforms.
        fftw_execute_dft_r2c(forward_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
    }
    /// Destroys `in`.
    void inverse(Complex* in, double* out) const {
        fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(in), out);
    }

private:
    int nx_;
    int ny_;
    fftw_plan forward_;
    fftw_plan inverse_;
};

inline const FftPlan& plan_for(const Grid2D& g) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<FftPlan>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{g.nx(), g.ny()}];
    if (!slot) slot = std::make_unique<FftPlan>(g.nx(), g.ny());
    return *slot;
}

inline std::size_t half_width(const Grid2D& g) { return static_cast<std::size_t>(g.nx() / 2 + 1); }

inline Spectrum forward(const ScalarField2D& f) {
    const Grid2D& g = f.grid();
    Spectrum out(static_cast<std::size_t>(g.ny()) * half_width(g));
    plan_for(g).forward(f.values().data(), out.data());
    return out;
}

/// Normalized inverse transform.
inline ScalarField2D inverse(const Grid2D& g, Spectrum s) {
    ScalarField2D f(g);
    plan_for(g).inverse(s.data(), f.values().data());
    f *= 1.0 / static_cast<double>(g.size());
    return f;
}

/// Wavenumber tables. `kx`, `ky` are the full angular wavenumbers (used by
/// even-order operators); `dx`, `dy` are the first-derivative symbols with the
/// unpaired Nyquist modes zeroed so that odd derivatives of real fields stay real.
struct Wavenumbers {
    std::vector<double> kx, ky, dx, dy;

    explicit Wavenumbers(const Grid2D& g) {
        const int nx = g.nx(), ny = g.ny();
        const double ax = 2.0 * std::numbers::pi / g.lx();
        const double ay = 2.0 * std::numbers::pi / g.ly();
        kx.resize(nx / 2 + 1);
        dx.resize(nx / 2 + 1);
        for (int i = 0; i <= nx / 2; ++i) {
            kx[i] = ax * i;
            dx[i] = (i == nx / 2) ? 0.0 : kx[i];
        }
        ky.resize(ny);
        dy.resize(ny);
        for (int j = 0; j < ny; ++j) {
            const int m = (j <= ny / 2) ? j : j - ny;
            ky[j] = ay * m;
            dy[j] = (j == ny / 2) ? 0.0 : ky[j];
        }
    }
};

/// Applies `symbol(i, j) -> Complex` modewise: out(k) = symbol * f_hat(k).
template <class Symbol>
ScalarField2D apply(const ScalarField2D& f, Symbol&& symbol) {
    const Grid2D& g = f.grid();
    Spectrum s = forward(f);
    const std::size_t w = half_width(g);
    for (int j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < w; ++i) s[j * w + i] *= symbol(static_cast<int>(i), j);
    return inverse(g, std::move(s));
}

} // namespace nlc::spectral
