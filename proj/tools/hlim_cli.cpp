#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hlim/harness.hpp"
#include "hlim/profiles.hpp"
#include "hlim/riemann.hpp"

namespace fs = std::filesystem;
using namespace hlim;

namespace {

std::string tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(Errc::io_error, "cannot create directory '" + dir + "': " + ec.message());
}

int cmd_riemann(const std::string& left, const std::string& right) {
    const WavePattern w =
        solve_riemann(KeyValueConfig::parse_state(left, "left"), KeyValueConfig::parse_state(right, "right"));
    std::cout << nlohmann::json(w).dump(2) << "\n";
    return 0;
}

struct ProfileArgs {
    std::string pattern, out;
    double eps = 0.01, time = 0.3, h = 0.1, T = 0.0, x_min = -2.0, x_max = 2.0;
    bool decompose = false;
};

int cmd_profile(const ProfileArgs& a) {
    const WavePattern w = pattern_from_json(read_json(a.pattern));
    CompositeOptions o;
    o.h = a.h;
    o.T = a.T > 0.0 ? a.T : std::max(a.time, a.h + 0.4);
    if (a.time < o.h || a.time > o.T) fail(Errc::domain_error, "--time must lie in [h, T]");
    const double dx = std::min(default_sigma(a.eps), std::sqrt(a.eps)) / 10.0;
    const UniformGrid g = UniformGrid::span(a.x_min, a.x_max, static_cast<std::size_t>((a.x_max - a.x_min) / dx) + 2);
    const CompositeProfile cp(w, a.eps, g, o);
    const Decomposition d = cp.decompose(a.time);
    CsvTable t;
    t.add("x", g.points());
    t.add("V", d.total.V);
    t.add("U1", d.total.U1);
    t.add("U2", d.total.U2);
    t.add("U3", d.total.U3);
    t.add("Theta", d.total.Theta);
    t.add("E", d.total.E);
    if (a.decompose) {
        t.add("V_R1", d.V_R1);
        t.add("d1", d.d1);
        t.add("V_CD", d.V_CD);
        t.add("V_S3", d.V_S3);
        t.add("b1", d.b1);
    }
    t.write(a.out);
    return 0;
}

int cmd_kinetic(const std::string& config, const std::string& out) {
    const KineticConfig k = KineticConfig::from(KeyValueConfig::load(config));
    ensure_dir(out);
    const KineticRun r = run_kinetic(k);
    for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
        const std::string path = (fs::path(out) / ("snapshot_" + std::to_string(i) + "_t" + tag(r.snapshots[i].time) + ".csv")).string();
        kinetic_snapshot_table(r.snapshots[i], r.star).write(path);
        std::cout << path << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& out) {
    const SweepConfig c = SweepConfig::from(KeyValueConfig::load(config));
    ensure_dir(out);
    const SnapshotObserver observer = [&](const SnapshotView& v) {
        CsvTable t;
        t.add("x", v.state.x_grid.points());
        t.add("rho", v.macro.rho);
        t.add("u1", v.macro.u1);
        t.add("theta", v.macro.theta);
        t.add("E", v.macro.E);
        t.add("micro_norm", v.micro_norm);
        t.add("rho_euler", v.inviscid.rho);
        t.add("u1_euler", v.inviscid.u1);
        t.add("theta_euler", v.inviscid.theta);
        t.add("rho_composite", v.composite.rho);
        t.add("u1_composite", v.composite.u1);
        t.add("theta_composite", v.composite.theta);
        t.add("distance", v.distance);
        t.add("in_sigma", std::vector<double>(v.in_sigma.begin(), v.in_sigma.end()));
        t.write((fs::path(out) / ("snapshot_eps" + tag(v.eps) + "_t" + tag(v.state.time) + ".csv")).string());
    };
    const SweepResult r = run_convergence_sweep(c, observer);
    emit_report(r, (fs::path(out) / "sweep.csv").string(), ReportFormat::csv);
    emit_report(r, (fs::path(out) / "sweep.json").string(), ReportFormat::json);
    std::cout << sweep_csv(r);
    if (!r.accepted) std::cerr << "warning: refinement self-check failed; sweep result not accepted\n";
    return r.accepted ? 0 : 3;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Hydrodynamic-limit laboratory: Riemann patterns, composite profiles, kinetic runs and sweeps"};
    app.require_subcommand(1);

    std::string left, right;
    auto* riemann = app.add_subcommand("riemann", "Solve a rarefaction-contact-shock Riemann problem");
    riemann->add_option("--left", left, "left state v,u1,theta")->required();
    riemann->add_option("--right", right, "right state v,u1,theta")->required();

    ProfileArgs pa;
    auto* profile = app.add_subcommand("profile", "Write the composite profile at one time");
    profile->add_option("--pattern", pa.pattern, "JSON file with left and right states")->required()->check(CLI::ExistingFile);
    profile->add_option("--eps", pa.eps, "Knudsen number")->required();
    profile->add_option("--time", pa.time, "time in [h, T]")->required();
    profile->add_option("--out", pa.out, "output CSV")->required();
    profile->add_flag("--decompose", pa.decompose, "append per-wave volume components");
    profile->add_option("--t-start", pa.h, "initial time of the correction waves")->capture_default_str();
    profile->add_option("--t-end", pa.T, "final time of the correction waves (default max(time, h + 0.4))");
    profile->add_option("--x-min", pa.x_min, "left end of the Lagrangian window")->capture_default_str();
    profile->add_option("--x-max", pa.x_max, "right end of the Lagrangian window")->capture_default_str();

    std::string kconfig, kout = ".";
    auto* kinetic = app.add_subcommand("kinetic", "Run the kinetic solver and write snapshot CSVs");
    kinetic->add_option("--config", kconfig, "key-value config file")->required()->check(CLI::ExistingFile);
    kinetic->add_option("--out", kout, "output directory")->capture_default_str();

    std::string sconfig, sout;
    auto* sweep = app.add_subcommand("sweep", "Knudsen-number convergence sweep");
    sweep->add_option("--config", sconfig, "key-value config file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", sout, "output directory")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*riemann) return cmd_riemann(left, right);
        if (*profile) return cmd_profile(pa);
        if (*kinetic) return cmd_kinetic(kconfig, kout);
        if (*sweep) return cmd_sweep(sconfig, sout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
