#pragma once

// Binary state snapshots ("NLC2", little-endian) and the text sidecar holding the
// run monitor's scalar state.

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "nlc/diagnostics.hpp"
#include "nlc/error.hpp"
#include "nlc/state.hpp"

namespace nlc {

inline constexpr std::array<char, 4> kSnapshotMagic = {'N', 'L', 'C', '2'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFFu));
}

inline void put_f64(std::string& out, double x) {
    const auto v = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFFu));
}

class ByteReader {
public:
    ByteReader(const std::string& bytes, std::string path) : bytes_(bytes), path_(std::move(path)) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
        pos_ += 4;
        return v;
    }
    double f64() {
        need(8);
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }
    std::string raw(std::size_t n) {
        need(n);
        std::string s = bytes_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool at_end() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) const {
        if (pos_ + n > bytes_.size()) throw SolverError(Failure::Io, "snapshot '" + path_ + "' is truncated");
    }
    const std::string& bytes_;
    std::string path_;
    std::size_t pos_ = 0;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SolverError(Failure::Io, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SolverError(Failure::Io, "cannot write '" + path + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SolverError(Failure::Io, "write failed for '" + path + "'");
}

} // namespace detail

inline void write_snapshot(const std::string& path, const SimState& s) {
    const Grid2D& g = s.grid();
    std::string out(kSnapshotMagic.begin(), kSnapshotMagic.end());
    detail::put_u32(out, kSnapshotVersion);
    detail::put_u32(out, static_cast<std::uint32_t>(g.nx()));
    detail::put_u32(out, static_cast<std::uint32_t>(g.ny()));
    detail::put_f64(out, g.lx());
    detail::put_f64(out, g.ly());
    detail::put_f64(out, s.t);
    for (const ScalarField2D* f : {&s.rho, &s.u.x, &s.u.y, &s.d.c1, &s.d.c2, &s.d.c3})
        for (double v : f->values()) detail::put_f64(out, v);
    detail::write_file(path, out);
}

/// Reads a snapshot. The pressure is not stored and comes back as zero; the step counter
/// lives in the sidecar and comes back as zero here.
inline SimState read_snapshot(const std::string& path) {
    const std::string bytes = detail::read_file(path);
    detail::ByteReader r(bytes, path);
    if (r.raw(4) != std::string(kSnapshotMagic.begin(), kSnapshotMagic.end()))
        throw SolverError(Failure::Io, "'" + path + "' is not an NLC2 snapshot");
    const std::uint32_t version = r.u32();
    if (version != kSnapshotVersion)
        throw SolverError(Failure::Io, "'" + path + "': unsupported snapshot version " + std::to_string(version));
    const std::uint32_t nx = r.u32(), ny = r.u32();
    const double lx = r.f64(), ly = r.f64(), t = r.f64();
    Grid2D g;
    try {
        g = Grid2D(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
    } catch (const std::invalid_argument& e) {
        throw SolverError(Failure::Io, "'" + path + "': bad grid header (" + e.what() + ")");
    }
    SimState s{ScalarField2D(g), VectorField2D(g), ScalarField2D(g), DirectorField2D(g), t, 0};
    for (ScalarField2D* f : {&s.rho, &s.u.x, &s.u.y, &s.d.c1, &s.d.c2, &s.d.c3})
        for (double& v : f->values()) v = r.f64();
    if (!r.at_end()) throw SolverError(Failure::Io, "'" + path + "' has trailing bytes");
    return s;
}

inline std::string sidecar_path(const std::string& snapshot_path) { return snapshot_path + ".monitor"; }

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Writes the step counter and monitor state as `key = value` lines with 17 significant digits.
inline void write_sidecar(const std::string& path, std::int64_t step, const MonitorState& m) {
    std::map<std::string, double> kv = {
        {"e0", m.e0},
        {"rho_bar", m.rho_bar},
        {"rho_dev_ref", m.rho_dev_ref},
        {"d3_min_initial", m.d3_min_initial},
        {"d3_min_run", m.d3_min_run},
        {"last_sample_t", m.last_sample_t},
        {"serrin_accumulated", m.serrin.accumulated},
        {"serrin_last_increment", m.serrin.last_increment},
        {"phi_sup", m.phi.sup},
        {"phi_integral", m.phi.integral},
        {"phi_last_integrand", m.phi.last_integrand},
        {"phi_have_integrand", m.phi.have_integrand ? 1.0 : 0.0},
        {"bound_sup_grad_sq", m.bound.sup_grad_sq},
        {"bound_integral", m.bound.integral},
        {"bound_last_hess_sq", m.bound.last_hess_sq},
        {"bound_last_t", m.bound.last_t},
        {"bound_started", m.bound.started ? 1.0 : 0.0},
    };
    std::string out = "step = " + std::to_string(step) + "\nsamples = " + std::to_string(m.samples) + "\n";
    for (const auto& [k, v] : kv) out += k + " = " + detail::fmt17(v) + "\n";
    detail::write_file(path, out);
}

struct Sidecar {
    std::int64_t step = 0;
    MonitorState monitor;
};

inline Sidecar read_sidecar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError(Failure::Io, "cannot open sidecar '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto num = [&](const std::string& k) {
        const auto it = kv.find(k);
        if (it == kv.end()) throw SolverError(Failure::Io, "sidecar '" + path + "' lacks '" + k + "'");
        return std::stod(it->second);
    };
    Sidecar s;
    s.step = static_cast<std::int64_t>(std::stoll(kv.count("step") ? kv["step"] : "0"));
    MonitorState& m = s.monitor;
    m.samples = static_cast<std::int64_t>(num("samples"));
    m.e0 = num("e0");
    m.rho_bar = num("rho_bar");
    m.rho_dev_ref = num("rho_dev_ref");
    m.d3_min_initial = num("d3_min_initial");
    m.d3_min_run = num("d3_min_run");
    m.last_sample_t = num("last_sample_t");
    m.serrin.accumulated = num("serrin_accumulated");
    m.serrin.last_increment = num("serrin_last_increment");
    m.phi.sup = num("phi_sup");
    m.phi.integral = num("phi_integral");
    m.phi.last_integrand = num("phi_last_integrand");
    m.phi.have_integrand = num("phi_have_integrand") != 0.0;
    m.bound.sup_grad_sq = num("bound_sup_grad_sq");
    m.bound.integral = num("bound_integral");
    m.bound.last_hess_sq = num("bound_last_hess_sq");
    m.bound.last_t = num("bound_last_t");
    m.bound.started = num("bound_started") != 0.0;
    return s;
}

} // namespace nlc
