#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlc {

/// Uniform periodic grid on [0, lx) x [0, ly). Node (i, j) sits at (i*hx, j*hy)
/// and is stored at index j*nx + i.
class Grid2D {
public:
    Grid2D() = default;

    Grid2D(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
        if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
            throw std::invalid_argument("Grid2D: nx, ny must be even and >= 8");
        if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
            throw std::invalid_argument("Grid2D: box lengths must be positive");
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double hx() const { return lx_ / nx_; }
    double hy() const { return ly_ / ny_; }
    double cell_area() const { return hx() * hy(); }
    double area() const { return lx_ * ly_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

    double x(int i) const { return i * hx(); }
    double y(int j) const { return j * hy(); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

    bool operator==(const Grid2D&) const = default;

private:
    int nx_ = 0;
    int ny_ = 0;
    double lx_ = 0.0;
    double ly_ = 0.0;
};

inline void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where) {
    if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

class ScalarField2D {
public:
    ScalarField2D() = default;
    explicit ScalarField2D(const Grid2D& g, double value = 0.0) : grid_(g), values_(g.size(), value) {}
    ScalarField2D(const Grid2D& g, std::vector<double> values) : grid_(g), values_(std::move(values)) {
        if (values_.size() != g.size()) throw std::invalid_argument("ScalarField2D: size mismatch");
    }

    /// Samples fn(x, y) at every node.
    template <class Fn>
    static ScalarField2D sample(const Grid2D& g, Fn&& fn) {
        ScalarField2D f(g);
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) f.values_[g.index(i, j)] = fn(g.x(i), g.y(j));
        return f;
    }

    const Grid2D& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double at(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& at(int i, int j) { return values_[grid_.index(i, j)]; }

    double min() const { return *std::min_element(values_.begin(), values_.end()); }
    double max() const { return *std::max_element(values_.begin(), values_.end()); }
    double mean() const {
        double s = 0.0;
        for (double v : values_) s += v;
        return s / static_cast<double>(values_.size());
    }
    bool all_finite() const {
        return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
    }

    /// Copy with the node values shifted by (di, dj) cells: out(i, j) = in(i - di, j - dj).
    ScalarField2D shifted(int di, int dj) const {
        ScalarField2D out(grid_);
        const int nx = grid_.nx(), ny = grid_.ny();
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                out.at(i, j) = at(((i - di) % nx + nx) % nx, ((j - dj) % ny + ny) % ny);
        return out;
    }

    ScalarField2D& operator+=(const ScalarField2D& o) {
        for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
        return *this;
    }
    ScalarField2D& operator-=(const ScalarField2D& o) {
        for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
        return *this;
    }
    ScalarField2D& operator*=(double a) {
        for (double& v : values_) v *= a;
        return *this;
    }
    /// Pointwise product.
    ScalarField2D& operator*=(const ScalarField2D& o) {
        for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= o.values_[k];
        return *this;
    }

    friend ScalarField2D operator+(ScalarField2D a, const ScalarField2D& b) { return a += b; }
    friend ScalarField2D operator-(ScalarField2D a, const ScalarField2D& b) { return a -= b; }
    friend ScalarField2D operator*(ScalarField2D a, double s) { return a *= s; }
    friend ScalarField2D operator*(double s, ScalarField2D a) { return a *= s; }
    friend ScalarField2D operator*(ScalarField2D a, const ScalarField2D& b) { return a *= b; }

private:
    Grid2D grid_;
    std::vector<double> values_;
};

struct VectorField2D {
    ScalarField2D x;
    ScalarField2D y;

    VectorField2D() = default;
    explicit VectorField2D(const Grid2D& g) : x(g), y(g) {}
    VectorField2D(ScalarField2D a, ScalarField2D b) : x(std::move(a)), y(std::move(b)) {
        require_same_grid(x.grid(), y.grid(), "VectorField2D");
    }

    const Grid2D& grid() const { return x.grid(); }
    const ScalarField2D& operator[](int c) const { return c == 0 ? x : y; }
    ScalarField2D& operator[](int c) { return c == 0 ? x : y; }

    VectorField2D& operator+=(const VectorField2D& o) { x += o.x; y += o.y; return *this; }
    VectorField2D& operator-=(const VectorField2D& o) { x -= o.x; y -= o.y; return *this; }
    VectorField2D& operator*=(double a) { x *= a; y *= a; return *this; }

    friend VectorField2D operator+(VectorField2D a, const VectorField2D& b) { return a += b; }
    friend VectorField2D operator-(VectorField2D a, const VectorField2D& b) { return a -= b; }
    friend VectorField2D operator*(VectorField2D a, double s) { return a *= s; }
    friend VectorField2D operator*(double s, VectorField2D a) { return a *= s; }
};

/// Sphere-valued director samples, three components per node.
struct DirectorField2D {
    ScalarField2D c1;
    ScalarField2D c2;
    ScalarField2D c3;

    DirectorField2D() = default;
    explicit DirectorField2D(const Grid2D& g) : c1(g), c2(g), c3(g) {}
    DirectorField2D(ScalarField2D a, ScalarField2D b, ScalarField2D c)
        : c1(std::move(a)), c2(std::move(b)), c3(std::move(c)) {
        require_same_grid(c1.grid(), c2.grid(), "DirectorField2D");
        require_same_grid(c1.grid(), c3.grid(), "DirectorField2D");
    }

    /// Constant field equal to e everywhere.
    static DirectorField2D uniform(const Grid2D& g, double e1, double e2, double e3) {
        return {ScalarField2D(g, e1), ScalarField2D(g, e2), ScalarField2D(g, e3)};
    }

    const Grid2D& grid() const { return c1.grid(); }
    const ScalarField2D& operator[](int k) const { return k == 0 ? c1 : (k == 1 ? c2 : c3); }
    ScalarField2D& operator[](int k) { return k == 0 ? c1 : (k == 1 ? c2 : c3); }

    double length_sq(std::size_t n) const { return c1[n] * c1[n] + c2[n] * c2[n] + c3[n] * c3[n]; }
};

} // namespace nlc
