// wallcp: batch computation of image-dipole field densities and far-zone
// interaction energies near a conducting wall, plus the built-in
// verification suite.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 verification failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wallcp/sweep.hpp"
#include "wallcp/verify.hpp"

namespace {

wallcp::Vec3d parse_vec3(const std::string& s, const std::string& what) {
    wallcp::Vec3d v;
    double a, b, c;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
        throw CLI::ValidationError(what, "expected three comma-separated numbers, got '" + s + "'");
    v = {{a, b, c}};
    return v;
}

wallcp::SweepAxis parse_sweep(const std::string& s) {
    wallcp::SweepAxis ax;
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : s) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4 && parts.size() != 5)
        throw CLI::ValidationError("--sweep", "expected <coord>:<lo>:<hi>:<n>[:log]");
    ax.coord = parts[0];
    try {
        ax.lo = std::stod(parts[1]);
        ax.hi = std::stod(parts[2]);
        ax.steps = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sweep", "could not parse bounds/steps in '" + s + "'");
    }
    if (parts.size() == 5) {
        if (parts[4] != "log")
            throw CLI::ValidationError("--sweep", "trailing qualifier must be 'log'");
        ax.log = true;
    }
    return ax;
}

int run_verify() {
    const auto results = wallcp::run_verification();
    int failures = 0;
    std::printf("%-4s  %-52s  %s\n", "", "check", "detail");
    for (const auto& r : results) {
        std::printf("%s  %2d. %-48s  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu checks passed\n", int(results.size()) - failures, results.size());
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wallcp -- field energy densities and far-zone Casimir-Polder energies\n"
        "for a dipole source near a perfectly conducting wall (reduced units:\n"
        "hbar = c = 1, transition wavenumber k0 = 1)"};
    app.set_config("--config", "", "key=value configuration file (flags override it)");

    std::string mode;
    app.add_option("--mode", mode, "density|density-dynamic|cp|cp-dynamic|kernel|verify")
        ->required()
        ->check(CLI::IsMember(
            {"density", "density-dynamic", "cp", "cp-dynamic", "kernel", "verify"}));

    wallcp::SweepConfig cfg;
    std::string mu_str, point_str, sweep_str, format = "csv", route = "closed";
    double time_val = 0.0;
    bool have_time = false;

    app.add_option("--d", cfg.d, "source-wall distance (units of 1/k0)");
    app.add_option("--mu", mu_str, "dipole components mx,my,mz (default 1,1,1)");
    app.add_option("--alpha-b", cfg.alpha_b, "static electric polarizability of body B");
    double amb = 0.0;
    auto* amb_opt = app.add_option("--alpha-m-b", amb, "static magnetic polarizability of body B");
    app.add_option("--sweep", sweep_str, "<coord>:<lo>:<hi>:<n>[:log], coord in r0|z|x|d|t");
    app.add_option("--point", point_str, "observation point x,y,z");
    auto* time_opt = app.add_option("--time", time_val, "evaluation time (c k0 t)");
    app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
    app.add_option("--out", cfg.out_path, "output path (default stdout)");
    app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--route", route, "cp evaluation route: closed|quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}));
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (mode == "verify") return run_verify();

    try {
        if (mode == "density") cfg.mode = wallcp::SweepMode::density;
        else if (mode == "density-dynamic") cfg.mode = wallcp::SweepMode::density_dynamic;
        else if (mode == "cp") cfg.mode = wallcp::SweepMode::cp;
        else if (mode == "cp-dynamic") cfg.mode = wallcp::SweepMode::cp_dynamic;
        else cfg.mode = wallcp::SweepMode::kernel;

        if (!mu_str.empty()) cfg.mu = parse_vec3(mu_str, "--mu");
        if (!point_str.empty()) cfg.point = parse_vec3(point_str, "--point");
        if (!sweep_str.empty()) cfg.sweep = parse_sweep(sweep_str);
        if (amb_opt->count() > 0) cfg.alpha_m_b = amb;
        have_time = time_opt->count() > 0;
        if (have_time) cfg.time = time_val;
        cfg.format = format == "csv" ? wallcp::OutputFormat::csv : wallcp::OutputFormat::json;
        cfg.cp_route = route == "closed" ? wallcp::CPRoute::closed_form : wallcp::CPRoute::quadrature;

        wallcp::SweepResult res;
        if (cfg.out_path.empty())
            res = wallcp::run_sweep(cfg, std::cout);
        else
            res = wallcp::run_sweep_to_path(cfg);
        if (!res.ok()) {
            std::fprintf(stderr, "wallcp: %d of %d rows failed numerically (first: %s)\n",
                         res.failed_rows, res.total_rows, res.first_failure.c_str());
            return 2;
        }
        return 0;
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "wallcp: config error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "wallcp: config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wallcp: numerical failure: %s\n", e.what());
        return 2;
    }
}
