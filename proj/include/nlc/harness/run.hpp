#pragma once

// The coupled stepping loop: density transport, director step, elastic stress, momentum,
// diagnostics. Failures end the run and are reported, never thrown past run().

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nlc/density_transport.hpp"
#include "nlc/diagnostics.hpp"
#include "nlc/director.hpp"
#include "nlc/harness/config.hpp"
#include "nlc/harness/csv.hpp"
#include "nlc/harness/scenario.hpp"
#include "nlc/harness/snapshot.hpp"
#include "nlc/momentum.hpp"

namespace nlc {

struct RunOptions {
    bool write_files = true;
    bool keep_records = true;
    /// Progress and failure log; null silences it.
    std::ostream* log = &std::cerr;
};

struct RunResult {
    bool completed = false;
    std::optional<Failure> failure;
    std::string failure_message;
    std::int64_t steps = 0;
    double t = 0.0;
    std::string csv_path;
    std::string snapshot_path;
    SmallnessReport smallness;
    MonitorState monitor;
    SimState final_state;
    std::vector<DiagnosticsRecord> records;
    std::int64_t cg_iterations_max = 0;

    std::string summary() const;
};

/// Per-sample slack allowed on energy growth: 1e-6 E0 + 10 dt^2 for each step in the interval.
inline double energy_slack(double e0, double dt, int steps) { return steps * (1e-6 * e0 + 10.0 * dt * dt); }

inline std::string RunResult::summary() const {
    std::ostringstream s;
    s.precision(6);
    s << "status: " << (completed ? "completed" : "failed") << "\n";
    if (failure) s << "failure: " << to_string(*failure) << ": " << failure_message << "\n";
    s << "steps: " << steps << "\nt: " << t << "\n";
    s << "smallness value: " << smallness.value << " (" << (smallness.satisfied ? "satisfied" : "not satisfied")
      << ", threshold 1/16)\n";
    s << "dirichlet bound sup|grad d|^2 + int|grad^2 d|^2: " << monitor.bound.value() << " ("
      << (monitor.bound.holds(1e-3) ? "within" : "above") << " 1/16 + 1e-3)\n";
    s << "d3 min: initial " << monitor.d3_min_initial << ", over run " << monitor.d3_min_run << "\n";
    s << "serrin accumulator: " << monitor.serrin.accumulated << "\n";
    s << "phi: " << monitor.phi.value() << "\n";
    s << "max cg iterations per step: " << cg_iterations_max << "\n";
    if (!csv_path.empty()) s << "csv: " << csv_path << "\n";
    if (!snapshot_path.empty()) s << "snapshot: " << snapshot_path << "\n";
    return s.str();
}

/// Step size for the CFL-adaptive mode: half the transport limit, a director reaction
/// limit 0.25 / max|grad d|^2, never more than a tenth of the horizon.
inline double adaptive_dt(const SimState& s, double cfl, double t_end) {
    const Grid2D& g = s.grid();
    double umax = 0.0;
    for (std::size_t n = 0; n < s.u.x.size(); ++n) umax = std::max(umax, std::hypot(s.u.x[n], s.u.y[n]));
    const double h = std::min(g.hx(), g.hy());
    double dt = 0.1 * t_end;
    if (umax > 0.0) dt = std::min(dt, 0.5 * cfl * h / umax);
    const double gmax = DirectorDerivatives(s.d).grad_sq.max();
    if (gmax > 0.0) dt = std::min(dt, 0.25 / gmax);
    return dt;
}

/// Advances the state by one coupled step and returns the CG iteration count.
inline int coupled_step(SimState& s, double dt, const SimConfig& c) {
    const ScalarField2D rho = advect_density(s.rho, s.u, dt, c.cfl);
    const DirectorField2D d = step_director(s.d, s.u, dt, c.tol_unit);
    const ElasticForcing elastic = ericksen_stress(d);
    MomentumOptions opt;
    opt.cg_tol = c.cg_tol;
    opt.cg_max_iter = c.cg_max_iter;
    opt.cfl_limit = c.cfl;
    MomentumResult m = step_momentum(rho, s.u, elastic.force, dt, opt);
    for (const ScalarField2D* f : std::initializer_list<const ScalarField2D*>{&rho, &m.u.x, &m.u.y, &d.c1, &d.c2, &d.c3})
        if (!f->all_finite()) throw SolverError(Failure::NonFinite, "state became non-finite");
    s.rho = rho;
    s.d = d;
    s.u = std::move(m.u);
    s.p = std::move(m.pressure);
    s.t += dt;
    ++s.step;
    return m.cg_iterations;
}

inline RunResult run(const SimConfig& c, const RunOptions& opt = {}) {
    validate(c);
    RunResult res;
    SimState s = make_scenario(c);
    const SerrinExponents exps(c.serrin_r, c.serrin_s);
    const bool resumed = c.scenario == "snapshot";

    std::optional<RunMonitor> monitor;
    if (resumed) {
        const std::string side = sidecar_path(c.param_string("path", ""));
        const Sidecar sc = read_sidecar(side);
        monitor.emplace(sc.monitor, s, exps);
    } else {
        monitor.emplace(s, c.rho_bar, exps);
    }
    res.smallness = smallness_condition(s.rho, s.u, s.d);

    namespace fs = std::filesystem;
    std::optional<DiagnosticsCsvWriter> csv;
    if (opt.write_files) {
        std::error_code ec;
        fs::create_directories(c.out_dir, ec);
        if (ec) throw SolverError(Failure::Io, "cannot create out_dir '" + c.out_dir + "': " + ec.message());
        res.csv_path = (fs::path(c.out_dir) / "diagnostics.csv").string();
        csv.emplace(res.csv_path);
    }
    auto emit = [&](const DiagnosticsRecord& r) {
        if (csv) csv->write(r);
        if (opt.keep_records) res.records.push_back(r);
    };
    if (!resumed) emit(monitor->sample(s));

    const double t_tol = 1e-9 * (c.dt ? *c.dt : c.t_end);
    try {
        while (c.t_end - s.t > t_tol) {
            const double remaining = c.t_end - s.t;
            double dt = c.dt ? *c.dt : adaptive_dt(s, c.cfl, c.t_end);
            if (dt >= remaining - t_tol) dt = remaining;
            const int iters = coupled_step(s, dt, c);
            res.cg_iterations_max = std::max<std::int64_t>(res.cg_iterations_max, iters);
            monitor->on_step(s, dt);
            const bool last = c.t_end - s.t <= t_tol;
            if (s.step % c.cadence == 0 || last) emit(monitor->sample(s));
        }
        res.completed = true;
    } catch (const SolverError& e) {
        res.failure = e.kind();
        res.failure_message = "step " + std::to_string(s.step + 1) + " at t = " + std::to_string(s.t) + ": " + e.what();
        if (opt.log) *opt.log << "run failed: " << res.failure_message << "\n";
    } catch (const std::invalid_argument& e) {
        const bool director = std::string_view(e.what()).starts_with("step_director");
        res.failure = director ? Failure::DegenerateDirector : Failure::NonFinite;
        res.failure_message = "step " + std::to_string(s.step + 1) + ": " + e.what();
        if (opt.log) *opt.log << "run failed: " << res.failure_message << "\n";
    }

    res.steps = s.step;
    res.t = s.t;
    res.monitor = monitor->state();
    if (opt.write_files) {
        res.snapshot_path = (fs::path(c.out_dir) / "final.nlc2").string();
        write_snapshot(res.snapshot_path, s);
        write_sidecar(sidecar_path(res.snapshot_path), s.step, res.monitor);
        detail::write_file((fs::path(c.out_dir) / "summary.txt").string(), res.summary());
    }
    res.final_state = std::move(s);
    return res;
}

struct ReplayReport {
    std::size_t rows = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Re-checks a diagnostics CSV against the run invariants: finite entries, nonnegative
/// energy and density, increasing time, nondecreasing Serrin accumulator and Phi, and
/// energy growth within energy_slack per sample (dt inferred from the sample spacing).
inline ReplayReport replay_rows(const std::vector<DiagnosticsRow>& rows) {
    enum Col { T, E, DISS, G2, H2, G4, RMIN, RMAX, DRIFT, D3, UNIT, SERRIN, PHI, KE, DIVU };
    ReplayReport rep;
    rep.rows = rows.size();
    auto flag = [&](std::size_t i, const std::string& what) {
        rep.violations.push_back("row " + std::to_string(i + 1) + ": " + what);
    };
    if (rows.empty()) return rep;
    const double e0 = rows.front()[E];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const DiagnosticsRow& r = rows[i];
        for (std::size_t k = 0; k < r.size(); ++k)
            if (!std::isfinite(r[k])) flag(i, std::string(kDiagnosticsColumns[k]) + " is not finite");
        if (r[E] < 0.0) flag(i, "energy_total < 0");
        if (r[RMIN] < -1e-12) flag(i, "rho_min < -1e-12");
        if (i == 0) continue;
        const DiagnosticsRow& p = rows[i - 1];
        const double dts = r[T] - p[T];
        if (!(dts > 0.0)) flag(i, "time does not increase");
        if (r[SERRIN] < p[SERRIN]) flag(i, "serrin_acc decreased");
        if (r[PHI] < p[PHI]) flag(i, "phi decreased");
        if (r[E] > p[E] + energy_slack(e0, dts, 1)) flag(i, "energy_total grew beyond slack");
    }
    return rep;
}

inline ReplayReport replay(const std::string& csv_path) { return replay_rows(read_diagnostics_csv(csv_path)); }

} // namespace nlc
