#pragma once

#include <cmath>
#include <limits>

namespace nlc {

struct ExponentCheck {
    bool admissible = false;
    /// Smallest admissible s for this r: 2r/(r - 2), or 2 when r is infinite. NaN for r <= 2.
    double threshold = std::numeric_limits<double>::quiet_NaN();
};

/// Serrin-type admissibility 1/r + 1/s <= 1/2 with 2 < r <= inf and s > 0, evaluated
/// in the cleared form s (r - 2) >= 2r so that boundary pairs such as (3, 6) are exact.
inline ExponentCheck admissible_exponents(double r, double s) {
    ExponentCheck out;
    if (std::isnan(r) || std::isnan(s) || !(r > 2.0)) return out;
    if (std::isinf(r)) {
        out.threshold = 2.0;
        out.admissible = s >= 2.0 && !std::isinf(s);
        return out;
    }
    out.threshold = 2.0 * r / (r - 2.0);
    if (!(s > 0.0) || std::isinf(s)) return out;
    const double lhs = s * (r - 2.0), rhs = 2.0 * r;
    out.admissible = lhs >= rhs * (1.0 - 1e-12);
    return out;
}

} // namespace nlc
