#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "nlc/nlc.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    nlc::SimConfig c = nlc::load_config(config_path);
    if (!out_dir.empty()) c.out_dir = out_dir;
    const nlc::RunResult r = nlc::run(c);
    std::cout << r.summary();
    return r.completed ? 0 : 2;
}

int cmd_check(const std::string& family, int count, const std::string& out, int nx, double box, std::uint64_t seed) {
    const nlc::Grid2D g(nx, nx, box, box);
    std::vector<nlc::InequalityReport> reports;
    if (family == "director") {
        for (const nlc::PatchParams& p : nlc::director_family(box, box, count, 0.5, seed)) {
            const auto d = nlc::stereographic_patch(g, p.cx, p.cy, p.sigma, p.amp, p.k);
            reports.push_back(nlc::check_rigidity(d, "director:s=" + std::to_string(p.sigma)));
        }
    } else {
        for (const nlc::FamilyMember& m : nlc::scalar_family(family, box, box, count, seed)) {
            const nlc::ScalarField2D f = nlc::sample_member(m, g);
            reports.push_back(nlc::check_ladyzhenskaya(f, m.tag));
            reports.push_back(nlc::check_gagliardo_nirenberg(f, 4.0, m.tag));
            reports.push_back(nlc::check_gagliardo_nirenberg(f, 6.0, m.tag));
        }
    }

    std::ofstream file;
    std::ostream* csv = &std::cout;
    if (!out.empty()) {
        file.open(out, std::ios::trunc);
        if (!file) throw nlc::SolverError(nlc::Failure::Io, "cannot write '" + out + "'");
        csv = &file;
    }
    *csv << nlc::inequality_csv_header() << "\n";
    struct Stats {
        int n = 0, violated = 0;
        double max_ratio = 0.0;
    };
    std::map<std::string, Stats> stats;
    for (const auto& r : reports) {
        *csv << nlc::format_inequality_row(r) << "\n";
        Stats& s = stats[r.name];
        ++s.n;
        if (r.holds && !*r.holds) ++s.violated;
        if (r.ratio) s.max_ratio = std::max(s.max_ratio, *r.ratio);
    }
    std::ostream& log = out.empty() ? std::cerr : std::cout;
    for (const auto& [name, s] : stats)
        log << name << ": " << s.n << " fields, max ratio " << s.max_ratio << ", violations " << s.violated << "\n";
    return 0;
}

int cmd_replay(const std::string& csv) {
    const nlc::ReplayReport rep = nlc::replay(csv);
    for (const auto& v : rep.violations) std::cout << v << "\n";
    std::cout << rep.rows << " rows, " << rep.violations.size() << " violations\n";
    return rep.ok() ? 0 : 1;
}

int cmd_render(const std::string& snapshot, const std::string& field, const std::string& out) {
    nlc::export_heatmap(nlc::state_field(nlc::read_snapshot(snapshot), field), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nematic liquid crystal flow simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "Run a simulation from a config file");
    run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    run->add_option("--out-dir", out_dir, "Override out_dir from the config");

    std::string family = "bandlimited", ineq_out;
    int count = 20, nx = 128;
    double box = 1.0;
    std::uint64_t seed = 0;
    auto* check = app.add_subcommand("check-inequalities", "Evaluate functional inequalities on a field family");
    check->add_option("--family", family, "gaussian, bandlimited, bumps or director")
        ->check(CLI::IsMember({"gaussian", "bandlimited", "bumps", "director"}));
    check->add_option("--count", count, "Number of family members")->check(CLI::PositiveNumber);
    check->add_option("--out", ineq_out, "CSV output path (default stdout)");
    check->add_option("--nx", nx, "Grid points per side");
    check->add_option("--box", box, "Box side length")->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "Family seed");

    std::string replay_csv;
    auto* replay = app.add_subcommand("replay", "Re-verify run invariants on a diagnostics CSV");
    replay->add_option("csv", replay_csv, "Diagnostics CSV")->required();

    std::string snapshot, field, pgm;
    auto* render = app.add_subcommand("render", "Write a snapshot field as a PGM heatmap");
    render->add_option("snapshot", snapshot, "Snapshot file")->required();
    render->add_option("field", field, "rho, u1, u2, d1, d2, d3 or speed")->required();
    render->add_option("out", pgm, "Output .pgm")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return cmd_run(config_path, out_dir);
        if (*check) return cmd_check(family, count, ineq_out, nx, box, seed);
        if (*replay) return cmd_replay(replay_csv);
        if (*render) return cmd_render(snapshot, field, pgm);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
