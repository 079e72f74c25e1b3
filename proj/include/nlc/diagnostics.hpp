#pragma once

// Functionals of the state tied to the well-posedness theory, and the run monitor
// that accumulates them in time.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "nlc/calculus.hpp"
#include "nlc/density_transport.hpp"
#include "nlc/director.hpp"
#include "nlc/exponents.hpp"
#include "nlc/momentum.hpp"
#include "nlc/state.hpp"

namespace nlc {

/// Threshold of the small-data condition.
inline constexpr double kSmallnessThreshold = 1.0 / 16.0;

struct DiagnosticsRecord {
    double t = 0.0;
    double energy_total = 0.0;
    double dissipation = 0.0;
    double grad_d_l2_sq = 0.0;
    double hess_d_l2_sq = 0.0;
    double grad_d_l4_4 = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    double rho_drift_q2 = 0.0;
    double d3_min = 0.0;
    double unit_drift = 0.0;
    double serrin_increment = 0.0;
    double serrin_acc = 0.0;
    double phi = 0.0;
    double ke = 0.0;
    double divu_res = 0.0;
    // Not part of the CSV schema.
    double grad_u_l2_sq = 0.0;
    double tension_sq = 0.0;
    double lap_d_l2_sq = 0.0;
    double identity_residual = 0.0;
    double dirichlet_bound = 0.0;
};

class SerrinExponents {
public:
    SerrinExponents(double r, double s) : r_(r), s_(s) {
        if (!admissible_exponents(r, s).admissible)
            throw std::invalid_argument("SerrinExponents: (" + std::to_string(r) + ", " + std::to_string(s) +
                                        ") violates 1/r + 1/s <= 1/2 with r > 2");
    }
    double r() const { return r_; }
    double s() const { return s_; }

private:
    double r_;
    double s_;
};

/// Squared L2 norm of the full Hessian, summed over the entries xx, xy, yx, yy.
inline double hessian_l2_sq(const ScalarField2D& f) {
    const Hessian2D h = hessian(f);
    return l2_sq(h.xx) + 2.0 * l2_sq(h.xy) + l2_sq(h.yy);
}

/// Squared L2 norm of all third derivatives.
inline double third_derivative_l2_sq(const ScalarField2D& f) {
    const VectorField2D g = gradient(f);
    return hessian_l2_sq(g.x) + hessian_l2_sq(g.y);
}

inline double hessian_l2_sq(const DirectorField2D& d) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += hessian_l2_sq(d[k]);
    return s;
}

inline double grad_l2_sq(const VectorField2D& u) { return l2_sq(gradient(u.x)) + l2_sq(gradient(u.y)); }

inline double grad_l2_sq(const DirectorField2D& d) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += l2_sq(gradient(d[k]));
    return s;
}

struct EnergyPair {
    /// int (rho |u|^2 + |grad d|^2).
    double energy_total = 0.0;
    /// int (|grad u|^2 + |Lap d + |grad d|^2 d|^2).
    double dissipation = 0.0;
};

inline double tension_l2_sq(const DirectorField2D& d, const DirectorDerivatives& dd) {
    const auto t = director_tension(d, dd);
    return l2_sq(t[0]) + l2_sq(t[1]) + l2_sq(t[2]);
}

inline EnergyPair basic_energy(const ScalarField2D& rho, const VectorField2D& u, const DirectorField2D& d) {
    const DirectorDerivatives dd(d);
    return {kinetic_energy(rho, u) + integrate(dd.grad_sq), grad_l2_sq(u) + tension_l2_sq(d, dd)};
}

/// | int |Lap d + |grad d|^2 d|^2 - int (|Lap d|^2 - |grad d|^4) |. Vanishes for exactly unit d.
inline double tension_identity_residual(const DirectorField2D& d) {
    const DirectorDerivatives dd(d);
    double lap_sq = 0.0;
    for (int k = 0; k < 3; ++k) lap_sq += l2_sq(dd.lap[k]);
    return std::abs(tension_l2_sq(d, dd) - (lap_sq - l2_sq(dd.grad_sq)));
}

struct SmallnessReport {
    double kinetic = 0.0;
    double dirichlet = 0.0;
    double value = 0.0;
    bool satisfied = true;
};

/// exp(2 (kinetic + dirichlet)) dirichlet.
inline double smallness_value(double kinetic, double dirichlet) {
    return std::exp(2.0 * (kinetic + dirichlet)) * dirichlet;
}

inline SmallnessReport smallness_condition(const ScalarField2D& rho0, const VectorField2D& u0,
                                           const DirectorField2D& d0) {
    SmallnessReport r;
    r.kinetic = kinetic_energy(rho0, u0);
    r.dirichlet = grad_l2_sq(d0);
    r.value = smallness_value(r.kinetic, r.dirichlet);
    r.satisfied = r.value <= kSmallnessThreshold;
    return r;
}

/// || |grad d| ||_{L^r}^s with |grad d| the pointwise Frobenius norm.
inline double serrin_integrand(const DirectorField2D& d, const SerrinExponents& e) {
    ScalarField2D mag = DirectorDerivatives(d).grad_sq;
    for (double& v : mag.values()) v = std::sqrt(v);
    return std::pow(lp_norm(mag, e.r()), e.s());
}

struct SerrinAccumulator {
    double accumulated = 0.0;
    double last_increment = 0.0;
};

/// Rectangle rule in time: adds the integrand at d (the step's right endpoint) times dt.
inline SerrinAccumulator serrin_update(SerrinAccumulator acc, const DirectorField2D& d, double dt,
                                       const SerrinExponents& e) {
    if (!(dt > 0.0)) throw std::invalid_argument("serrin_update: dt must be positive");
    acc.last_increment = serrin_integrand(d, e) * dt;
    acc.accumulated += acc.last_increment;
    return acc;
}

struct RigidityReport {
    /// ||grad d||_{L^4}^4.
    double lhs = 0.0;
    /// ||grad^2 d||_{L^2}^2.
    double rhs = 0.0;
    /// 1 - lhs / rhs, absent when rhs = 0.
    std::optional<double> gap_ratio;
    double tension_sq = 0.0;
    /// tension_sq / (0.5 (||Lap d||^2 + lhs)), absent when the denominator is 0.
    std::optional<double> prop_bound_ratio;
};

inline RigidityReport rigidity_report(const DirectorField2D& d) {
    const DirectorDerivatives dd(d);
    RigidityReport r;
    r.lhs = l2_sq(dd.grad_sq);
    r.rhs = hessian_l2_sq(d);
    if (r.rhs > 0.0) r.gap_ratio = 1.0 - r.lhs / r.rhs;
    r.tension_sq = tension_l2_sq(d, dd);
    double lap_sq = 0.0;
    for (int k = 0; k < 3; ++k) lap_sq += l2_sq(dd.lap[k]);
    const double denom = 0.5 * (lap_sq + r.lhs);
    if (denom > 0.0) r.prop_bound_ratio = r.tension_sq / denom;
    return r;
}

inline double d3_min(const DirectorField2D& d) { return d.c3.min(); }

/// Running sup of ||grad d||^2 plus the trapezoid integral of ||grad^2 d||^2 over the
/// samples fed to it. The small-data theory bounds this by 1/16.
struct DirichletBoundMonitor {
    double sup_grad_sq = 0.0;
    double integral = 0.0;
    double last_hess_sq = 0.0;
    double last_t = 0.0;
    bool started = false;

    void add(double t, double grad_sq, double hess_sq) {
        if (started) integral += 0.5 * (t - last_t) * (last_hess_sq + hess_sq);
        sup_grad_sq = started ? std::max(sup_grad_sq, grad_sq) : grad_sq;
        last_hess_sq = hess_sq;
        last_t = t;
        started = true;
    }
    double value() const { return sup_grad_sq + integral; }
    bool holds(double slack = 0.0) const { return value() <= kSmallnessThreshold + slack; }
};

/// Terms of the higher-order functional
/// e + sup (||grad u||^2 + ||grad d||_{H1}^2) + int (||rho^1/2 u'||^2 + ||d_t||_{H1}^2 + ||grad^2 d||_{H1}^2),
/// with u' the material derivative.
struct PhiTerms {
    double sup_term = 0.0;
    double integrand = 0.0;
};

/// Sup term at a single state, which is all a first sample has.
inline double phi_sup_term(const VectorField2D& u, const DirectorField2D& d) {
    return grad_l2_sq(u) + grad_l2_sq(d) + hessian_l2_sq(d);
}

/// Both terms at the newer of two samples a time dt apart, with u' and d_t from backward differences.
inline PhiTerms phi_terms(const ScalarField2D& rho, const VectorField2D& u_new, const VectorField2D& u_old,
                          const DirectorField2D& d_new, const DirectorField2D& d_old, double dt) {
    PhiTerms out;
    out.sup_term = phi_sup_term(u_new, d_new);
    const VectorField2D ud = material_derivative(u_new, u_old, dt);
    double s = kinetic_energy(rho, ud);
    for (int k = 0; k < 3; ++k) {
        const ScalarField2D dt_k = (d_new[k] - d_old[k]) * (1.0 / dt);
        s += l2_sq(dt_k) + l2_sq(gradient(dt_k));
        s += hessian_l2_sq(d_new[k]) + third_derivative_l2_sq(d_new[k]);
    }
    out.integrand = s;
    return out;
}

/// Discrete Phi: sup over samples plus a trapezoid integral. The first interval has no
/// left-end integrand (no backward difference at t = 0) and uses the right-end value.
struct PhiAccumulator {
    double sup = 0.0;
    double integral = 0.0;
    double last_integrand = 0.0;
    bool have_integrand = false;

    void start(double sup_term) {
        sup = sup_term;
        integral = 0.0;
        have_integrand = false;
    }
    void add(const PhiTerms& p, double dt) {
        sup = std::max(sup, p.sup_term);
        const double left = have_integrand ? last_integrand : p.integrand;
        integral += 0.5 * dt * (left + p.integrand);
        last_integrand = p.integrand;
        have_integrand = true;
    }
    double value() const { return std::numbers::e + sup + integral; }
};

/// Scalar monitor state; together with the current SimState it is enough to resume a run exactly.
struct MonitorState {
    double e0 = 0.0;
    double rho_bar = 1.0;
    double rho_dev_ref = 0.0;
    double d3_min_initial = 0.0;
    double d3_min_run = 0.0;
    double last_sample_t = 0.0;
    std::int64_t samples = 0;
    SerrinAccumulator serrin;
    PhiAccumulator phi;
    DirichletBoundMonitor bound;
};

/// Owns every time-accumulated diagnostic of a run. Call on_step after each completed
/// step and sample at cadence points; the caller's state at the last sample is kept for
/// the backward differences.
class RunMonitor {
public:
    RunMonitor(const SimState& initial, double rho_bar, SerrinExponents exps) : exps_(exps) {
        if (!(rho_bar > 0.0)) throw std::invalid_argument("RunMonitor: rho_bar must be positive");
        m_.rho_bar = rho_bar;
        m_.e0 = basic_energy(initial.rho, initial.u, initial.d).energy_total;
        m_.rho_dev_ref = lp_norm(deviation(initial.rho, rho_bar), 2.0);
        m_.d3_min_initial = d3_min(initial.d);
        m_.d3_min_run = m_.d3_min_initial;
    }

    /// Resumes from a saved monitor state; `current` must be the state of the last sample.
    RunMonitor(const MonitorState& saved, const SimState& current, SerrinExponents exps)
        : exps_(exps), m_(saved), prev_u_(current.u), prev_d_(current.d), have_prev_(saved.samples > 0) {}

    void on_step(const SimState& s, double dt) { m_.serrin = serrin_update(m_.serrin, s.d, dt, exps_); }

    DiagnosticsRecord sample(const SimState& s) {
        DiagnosticsRecord r;
        r.t = s.t;
        const DirectorDerivatives dd(s.d);
        r.ke = kinetic_energy(s.rho, s.u);
        r.grad_d_l2_sq = integrate(dd.grad_sq);
        r.energy_total = r.ke + r.grad_d_l2_sq;
        r.grad_u_l2_sq = grad_l2_sq(s.u);
        r.tension_sq = tension_l2_sq(s.d, dd);
        r.dissipation = r.grad_u_l2_sq + r.tension_sq;
        r.hess_d_l2_sq = hessian_l2_sq(s.d);
        r.grad_d_l4_4 = l2_sq(dd.grad_sq);
        for (int k = 0; k < 3; ++k) r.lap_d_l2_sq += l2_sq(dd.lap[k]);
        r.identity_residual = std::abs(r.tension_sq - (r.lap_d_l2_sq - r.grad_d_l4_4));
        r.rho_min = s.rho.min();
        r.rho_max = s.rho.max();
        const double dev = lp_norm(deviation(s.rho, m_.rho_bar), 2.0);
        r.rho_drift_q2 = std::abs(dev - m_.rho_dev_ref) / std::max(m_.rho_dev_ref, 1e-14);
        r.d3_min = d3_min(s.d);
        m_.d3_min_run = std::min(m_.d3_min_run, r.d3_min);
        r.unit_drift = unit_drift(s.d);
        r.serrin_increment = m_.serrin.last_increment;
        r.serrin_acc = m_.serrin.accumulated;
        r.divu_res = std::sqrt(l2_sq(divergence(s.u)));

        if (have_prev_ && s.t > m_.last_sample_t) {
            const double dt = s.t - m_.last_sample_t;
            m_.phi.add(phi_terms(s.rho, s.u, prev_u_, s.d, prev_d_, dt), dt);
        } else if (!have_prev_) {
            m_.phi.start(phi_sup_term(s.u, s.d));
        }
        r.phi = m_.phi.value();
        m_.bound.add(s.t, r.grad_d_l2_sq, r.hess_d_l2_sq);
        r.dirichlet_bound = m_.bound.value();

        m_.last_sample_t = s.t;
        ++m_.samples;
        prev_u_ = s.u;
        prev_d_ = s.d;
        have_prev_ = true;
        return r;
    }

    const MonitorState& state() const { return m_; }
    const SerrinExponents& exponents() const { return exps_; }

private:
    SerrinExponents exps_;
    MonitorState m_;
    VectorField2D prev_u_;
    DirectorField2D prev_d_;
    bool have_prev_ = false;
};

} // namespace nlc
