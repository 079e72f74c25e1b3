#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nlc/error.hpp"
#include "nlc/grid.hpp"
#include "nlc/harness/snapshot.hpp"

namespace nlc {

/// 8-bit gray levels with linear min-max scaling; a constant field maps to 128.
inline std::vector<std::uint8_t> gray_levels(const ScalarField2D& f) {
    if (!f.all_finite()) throw std::invalid_argument("gray_levels: field has non-finite values");
    const double lo = f.min(), hi = f.max();
    std::vector<std::uint8_t> px(f.size(), 128);
    if (hi > lo)
        for (std::size_t n = 0; n < f.size(); ++n)
            px[n] = static_cast<std::uint8_t>(std::lround(255.0 * (f[n] - lo) / (hi - lo)));
    return px;
}

/// Binary PGM (P5), one image row per grid row in storage order.
inline void export_heatmap(const ScalarField2D& f, const std::string& path) {
    const std::vector<std::uint8_t> px = gray_levels(f);
    std::string out = "P5\n" + std::to_string(f.grid().nx()) + " " + std::to_string(f.grid().ny()) + "\n255\n";
    out.append(px.begin(), px.end());
    detail::write_file(path, out);
}

/// Named field of a state: rho, u1, u2, d1, d2, d3 or speed.
inline ScalarField2D state_field(const SimState& s, const std::string& name) {
    if (name == "rho") return s.rho;
    if (name == "u1") return s.u.x;
    if (name == "u2") return s.u.y;
    if (name == "d1") return s.d.c1;
    if (name == "d2") return s.d.c2;
    if (name == "d3") return s.d.c3;
    if (name == "speed") return magnitude(s.u);
    throw std::invalid_argument("unknown field '" + name + "' (expected rho, u1, u2, d1, d2, d3 or speed)");
}

} // namespace nlc
