// Batch front end: evaluates densities, kernels, or interaction energies
// over a parameter grid and writes plot-ready CSV or JSON tables.
//
// Output conventions: every file carries a schema version and a reduced-units
// note; CSV uses '#' comment lines and 17-significant-digit floats so a
// reimport is lossless; rows appear in grid order no matter how the grid was
// evaluated. A row whose evaluation fails numerically keeps its slot, with
// the failure recorded in the trailing status column.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "wallcp/casimir.hpp"
#include "wallcp/fields.hpp"
#include "wallcp/geometry.hpp"

namespace wallcp {

enum class SweepMode { density, density_dynamic, cp, cp_dynamic, kernel };
enum class OutputFormat { csv, json };

struct SweepAxis {
    std::string coord;  // r0 | z | x | d | t
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;
    bool log = false;
};

struct SweepConfig {
    SweepMode mode = SweepMode::cp;
    double d = 1.0;
    Vec3d mu{{1.0, 1.0, 1.0}};
    double alpha_b = 1.0;
    std::optional<double> alpha_m_b{};
    std::optional<SweepAxis> sweep{};
    std::optional<Vec3d> point{};
    std::optional<double> time{};
    double rel_tol = 1e-10;
    CPRoute cp_route = CPRoute::closed_form;
    OutputFormat format = OutputFormat::csv;
    std::string out_path{};  // empty writes to the stream passed in
    int threads = 0;         // 0 = hardware concurrency
};

struct SweepResult {
    int failed_rows = 0;
    int total_rows = 0;
    std::string first_failure{};
    bool ok() const { return failed_rows == 0; }
};

namespace sweep_detail {

struct Row {
    std::vector<double> values;
    std::string status = "ok";
};

inline std::string mode_name(SweepMode m) {
    switch (m) {
        case SweepMode::density: return "density";
        case SweepMode::density_dynamic: return "density-dynamic";
        case SweepMode::cp: return "cp";
        case SweepMode::cp_dynamic: return "cp-dynamic";
        case SweepMode::kernel: return "kernel";
    }
    return "?";
}

inline std::vector<double> grid_values(const SweepAxis& ax) {
    if (ax.steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
    if (ax.log && !(ax.lo > 0.0 && ax.hi > 0.0))
        throw std::invalid_argument("sweep: log spacing needs positive bounds");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(ax.steps));
    if (ax.steps == 1) {
        v.push_back(ax.lo);
        return v;
    }
    for (int i = 0; i < ax.steps; ++i) {
        const double f = double(i) / double(ax.steps - 1);
        v.push_back(ax.log ? ax.lo * std::pow(ax.hi / ax.lo, f) : ax.lo + f * (ax.hi - ax.lo));
    }
    return v;
}

// One grid point: the evaluation geometry/time for a row.
struct GridPoint {
    Vec3d point{};
    double d = 0.0;
    double t = 0.0;
};

inline std::vector<GridPoint> build_grid(const SweepConfig& cfg) {
    std::vector<GridPoint> pts;
    const Vec3d base = cfg.point.value_or(Vec3d{{0.0, 0.0, 0.0}});
    const bool needs_time =
        cfg.mode == SweepMode::density_dynamic || cfg.mode == SweepMode::cp_dynamic ||
        cfg.mode == SweepMode::kernel;
    if (!cfg.sweep) {
        if (!cfg.point) throw std::invalid_argument("config: --point required without --sweep");
        if (needs_time && !cfg.time)
            throw std::invalid_argument("config: --time required for this mode without a t sweep");
        pts.push_back({*cfg.point, cfg.d, cfg.time.value_or(0.0)});
        return pts;
    }
    const SweepAxis& ax = *cfg.sweep;
    const auto vals = grid_values(ax);
    for (const double v : vals) {
        GridPoint g;
        g.d = cfg.d;
        g.t = cfg.time.value_or(0.0);
        if (ax.coord == "r0") {
            g.point = {{0.0, 0.0, cfg.d + v}};
        } else if (ax.coord == "z") {
            g.point = {{base[0], base[1], v}};
        } else if (ax.coord == "x") {
            if (!cfg.point) throw std::invalid_argument("config: x sweep requires --point for y,z");
            g.point = {{v, base[1], base[2]}};
        } else if (ax.coord == "d") {
            if (!cfg.point) throw std::invalid_argument("config: d sweep requires --point");
            g.point = base;
            g.d = v;
        } else if (ax.coord == "t") {
            if (!cfg.point) throw std::invalid_argument("config: t sweep requires --point");
            g.point = base;
            g.t = v;
        } else {
            throw std::invalid_argument("config: unknown sweep coordinate '" + ax.coord + "'");
        }
        if (needs_time && ax.coord != "t" && !cfg.time)
            throw std::invalid_argument("config: --time required when sweeping " + ax.coord);
        pts.push_back(g);
    }
    return pts;
}

inline std::vector<std::string> columns_for(const SweepConfig& cfg) {
    switch (cfg.mode) {
        case SweepMode::density:
            return {"x", "y", "z", "r0", "r1", "rho", "E_total", "E_direct", "E_image", "E_cross",
                    "M_total", "M_direct", "M_image", "M_cross", "status"};
        case SweepMode::density_dynamic:
            return {"t", "total", "direct", "image", "cross", "static_reference", "status"};
        case SweepMode::cp: {
            std::vector<std::string> c = {"r0",      "r1",      "rho",     "E_direct", "E_image",
                                          "E_cross", "E_total", "route"};
            if (cfg.alpha_m_b)
                c.insert(c.end(), {"M_direct", "M_image", "M_cross", "M_total"});
            c.push_back("status");
            return c;
        }
        case SweepMode::cp_dynamic:
            return {"t", "E_total", "E_static_reference", "status"};
        case SweepMode::kernel: {
            std::vector<std::string> c = {"t", "r0", "r1", "direct_active", "reflected_active"};
            const char* ax = "xyz";
            for (const char* part : {"E_re", "E_im", "H_re", "H_im"})
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                        c.push_back(std::string(part) + "_" + ax[p] + ax[q]);
            c.push_back("status");
            return c;
        }
    }
    return {};
}

inline double route_code(CPRoute r) { return r == CPRoute::closed_form ? 0.0 : 1.0; }

inline Row evaluate_row(const SweepConfig& cfg, const GridPoint& g) {
    Row row;
    QuadratureSpec tol;
    tol.rel_tol = cfg.rel_tol;
    const AtomSource atom{g.d, cfg.mu};
    try {
        const GeometryFrame f = derive_frame(g.point, g.d);
        switch (cfg.mode) {
            case SweepMode::density: {
                const DensityResult e = static_electric_density(f, atom, AlphaMode::dynamic, tol);
                const DensityResult m = static_magnetic_density(f, atom, AlphaMode::dynamic, tol);
                row.values = {g.point[0], g.point[1], g.point[2], f.r0,     f.r1,    f.rho,
                              e.total,    e.direct,   e.image,    e.cross, m.total, m.direct,
                              m.image,    m.cross};
                break;
            }
            case SweepMode::density_dynamic: {
                const DensityResult dyn =
                    dynamic_electric_density(f, atom, g.t, AlphaMode::dynamic, tol);
                const DensityResult st = static_electric_density(f, atom, AlphaMode::dynamic, tol);
                row.values = {g.t, dyn.total, dyn.direct, dyn.image, dyn.cross, st.total};
                break;
            }
            case SweepMode::cp: {
                CPEnergy e;
                if (cfg.cp_route == CPRoute::closed_form)
                    e = electric_cp_closed(f, static_polarizability_scalar(atom), cfg.alpha_b);
                else
                    e = electric_cp_quadrature(f, atom, cfg.alpha_b, AlphaMode::static_limit, tol);
                row.values = {f.r0,    f.r1,    f.rho,   e.direct,
                              e.image, e.cross, e.total, route_code(cfg.cp_route)};
                if (cfg.alpha_m_b) {
                    CPEnergy m;
                    if (cfg.cp_route == CPRoute::closed_form)
                        m = magnetic_cp_closed(f, static_polarizability_scalar(atom), *cfg.alpha_m_b);
                    else
                        m = magnetic_cp_quadrature(f, atom, *cfg.alpha_m_b, AlphaMode::static_limit,
                                                   tol);
                    row.values.insert(row.values.end(), {m.direct, m.image, m.cross, m.total});
                }
                break;
            }
            case SweepMode::cp_dynamic: {
                const double dyn =
                    dynamic_cp_energy(f, atom, cfg.alpha_b, g.t, AlphaMode::dynamic, tol);
                const double st =
                    electric_cp_quadrature(f, atom, cfg.alpha_b, AlphaMode::dynamic, tol).total;
                row.values = {g.t, dyn, st};
                break;
            }
            case SweepMode::kernel: {
                const FieldKernel k = first_order_kernel(f, atom, g.t);
                row.values = {g.t, f.r0, f.r1, k.direct_active ? 1.0 : 0.0,
                              k.reflected_active ? 1.0 : 0.0};
                const Mat3c e = k.electric(), h = k.magnetic();
                for (int i = 0; i < 9; ++i) row.values.push_back(e.m[static_cast<std::size_t>(i)].real());
                for (int i = 0; i < 9; ++i) row.values.push_back(e.m[static_cast<std::size_t>(i)].imag());
                for (int i = 0; i < 9; ++i) row.values.push_back(h.m[static_cast<std::size_t>(i)].real());
                for (int i = 0; i < 9; ++i) row.values.push_back(h.m[static_cast<std::size_t>(i)].imag());
                break;
            }
        }
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
        for (char& c : row.status)
            if (c == ',' || c == '\n') c = ';';
        const std::size_t ncols = columns_for(cfg).size() - 1;
        row.values.assign(ncols, std::numeric_limits<double>::quiet_NaN());
    }
    return row;
}

inline std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string config_echo(const SweepConfig& cfg) {
    std::ostringstream os;
    os << "mode=" << mode_name(cfg.mode) << " d=" << full_precision(cfg.d) << " mu="
       << full_precision(cfg.mu[0]) << ";" << full_precision(cfg.mu[1]) << ";"
       << full_precision(cfg.mu[2]) << " alpha_b=" << full_precision(cfg.alpha_b);
    if (cfg.alpha_m_b) os << " alpha_m_b=" << full_precision(*cfg.alpha_m_b);
    if (cfg.sweep)
        os << " sweep=" << cfg.sweep->coord << ":" << full_precision(cfg.sweep->lo) << ":"
           << full_precision(cfg.sweep->hi) << ":" << cfg.sweep->steps
           << (cfg.sweep->log ? ":log" : "");
    if (cfg.point)
        os << " point=" << full_precision((*cfg.point)[0]) << ";"
           << full_precision((*cfg.point)[1]) << ";" << full_precision((*cfg.point)[2]);
    if (cfg.time) os << " time=" << full_precision(*cfg.time);
    os << " rel_tol=" << full_precision(cfg.rel_tol)
       << " route=" << (cfg.cp_route == CPRoute::closed_form ? "closed" : "quadrature");
    return os.str();
}

inline constexpr const char* units_note =
    "reduced units: hbar=c=1, k0=1; lengths 1/k0, times 1/(c k0), "
    "energies hbar c k0, densities hbar c k0^4";

template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    unsigned nt = threads > 0 ? static_cast<unsigned>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
    nt = std::min<unsigned>(nt, static_cast<unsigned>(n ? n : 1));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace wallcp::sweep_detail

// Evaluate the configured sweep and write the table to `out`. Throws
// std::invalid_argument for configuration problems; numerical failures are
// confined to their rows and counted in the result.
inline SweepResult run_sweep(const SweepConfig& cfg, std::ostream& out) {
    using namespace sweep_detail;
    require_valid_source(AtomSource{cfg.sweep && cfg.sweep->coord == "d" ? 1.0 : cfg.d, cfg.mu});
    if (cfg.mode == SweepMode::cp && cfg.cp_route == CPRoute::closed_form) {
        const AtomSource a{1.0, cfg.mu};
        if (!a.isotropic())
            throw std::invalid_argument(
                "config: closed-form cp route requires an isotropic source (equal mu components); "
                "use route=quadrature for anisotropic sources");
    }
    if (!(cfg.rel_tol > 0.0)) throw std::invalid_argument("config: rel-tol must be positive");

    const auto grid = build_grid(cfg);
    const auto cols = columns_for(cfg);
    std::vector<Row> rows(grid.size());
    parallel_for(grid.size(), cfg.threads,
                 [&](std::size_t i) { rows[i] = evaluate_row(cfg, grid[i]); });

    SweepResult result;
    result.total_rows = static_cast<int>(rows.size());
    for (const auto& r : rows)
        if (r.status != "ok") {
            ++result.failed_rows;
            if (result.first_failure.empty()) result.first_failure = r.status;
        }

    if (cfg.format == OutputFormat::csv) {
        out << "# wallcp sweep schema=1\n";
        out << "# units: " << units_note << "\n";
        out << "# config: " << config_echo(cfg) << "\n";
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << cols[i] << (i + 1 < cols.size() ? "," : "\n");
        for (const auto& r : rows) {
            for (const double v : r.values) out << full_precision(v) << ",";
            out << r.status << "\n";
        }
    } else {
        nlohmann::json j;
        j["schema"] = 1;
        j["units"] = units_note;
        j["config"] = config_echo(cfg);
        j["columns"] = cols;
        nlohmann::json jrows = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json jr = nlohmann::json::array();
            for (const double v : r.values) jr.push_back(v);
            jr.push_back(r.status);
            jrows.push_back(std::move(jr));
        }
        j["rows"] = std::move(jrows);
        out << j.dump(1) << "\n";
    }
    return result;
}

inline SweepResult run_sweep_to_path(const SweepConfig& cfg) {
    if (cfg.out_path.empty() || cfg.out_path == "-") {
        throw std::invalid_argument("run_sweep_to_path: empty output path");
    }
    std::ofstream f(cfg.out_path);
    if (!f) throw std::invalid_argument("config: cannot open output path '" + cfg.out_path + "'");
    return run_sweep(cfg, f);
}

}  // namespace wallcp
