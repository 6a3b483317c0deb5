// The verification suite: every check the `verify` CLI mode and the
// acceptance runner execute, with pinned tolerances. Each check returns a
// pass/fail plus a human-readable detail line with the worst observed error.
#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "wallcp/casimir.hpp"
#include "wallcp/fields.hpp"
#include "wallcp/geometry.hpp"
#include "wallcp/modesum.hpp"
#include "wallcp/numdiff.hpp"
#include "wallcp/quadrature.hpp"

namespace wallcp {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline std::string fmt(const char* f, double x, double y = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, x, y);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// Random far-zone configuration: B somewhere in the upper half-space with
// 5 <= r0 <= 50 from A.
inline GeometryFrame random_far_zone_frame(std::mt19937& rng, double& d_out) {
    std::uniform_real_distribution<double> ud(0.5, 20.0);
    std::uniform_real_distribution<double> ulogr(std::log(5.0), std::log(50.0));
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> ucos(-1.0, 1.0);
    for (;;) {
        const double d = ud(rng);
        const double r0 = std::exp(ulogr(rng));
        const double c = ucos(rng), s = std::sqrt(1.0 - c * c), phi = uphi(rng);
        const Vec3d point{{r0 * s * std::cos(phi), r0 * s * std::sin(phi), d + r0 * c}};
        if (point[2] <= 0.05) continue;
        d_out = d;
        return derive_frame(point, d);
    }
}

}  // namespace wallcp::verify_detail

// 1. Free-space electric law: with the wall pushed to d = 1e3 * r0 the
// quadrature route reproduces -23 aA aB / (4 pi r0^7) to 1e-8, within 1 s.
inline CheckResult check_free_space_electric() {
    using namespace verify_detail;
    Timer timer;
    double worst = 0.0;
    for (const double r0 : {5.0, 10.0, 20.0}) {
        const double d = 1e3 * r0;
        const AtomSource atom = make_isotropic_atom(d);
        const GeometryFrame f = derive_frame({{0.0, 0.0, d + r0}}, atom);
        const double law = -23.0 / (4.0 * M_PI) * 2.0 * 1.0 / std::pow(r0, 7);
        const CPEnergy e = electric_cp_quadrature(f, atom, 1.0);
        worst = std::max(worst, rel(e.total, law));
    }
    const double t = timer.seconds();
    CheckResult r{1, "free-space electric Casimir-Polder law", worst <= 1e-8 && t <= 1.0, ""};
    r.detail = fmt("max rel err %.2e (tol 1e-8), %.2f s (limit 1 s)", worst, t);
    return r;
}

// 2. Free-space magnetic law: +7 aE aM / (4 pi r0^7), strictly repulsive.
inline CheckResult check_free_space_magnetic() {
    using namespace verify_detail;
    double worst = 0.0;
    bool positive = true;
    for (const double r0 : {5.0, 10.0, 20.0}) {
        const double d = 1e3 * r0;
        const AtomSource atom = make_isotropic_atom(d);
        const GeometryFrame f = derive_frame({{0.0, 0.0, d + r0}}, atom);
        const double law = 7.0 / (4.0 * M_PI) * 2.0 * 1.0 / std::pow(r0, 7);
        const CPEnergy e = magnetic_cp_quadrature(f, atom, 1.0);
        worst = std::max(worst, rel(e.total, law));
        positive = positive && e.total > 0.0;
    }
    CheckResult r{2, "free-space magnetic Casimir-Polder law", worst <= 1e-8 && positive, ""};
    r.detail = fmt("max rel err %.2e (tol 1e-8)", worst) + (positive ? ", repulsive" : ", SIGN WRONG");
    return r;
}

// 3. Wall closed-form equivalence over the (r0, d, orientation) grid,
// electric and magnetic, each decomposition part to 1e-6, within 30 s.
inline CheckResult check_closed_form_equivalence() {
    using namespace verify_detail;
    Timer timer;
    double worst = 0.0;
    for (const double r0 : {5.0, 10.0, 20.0})
        for (const double d : {2.0, 5.0})
            for (const double theta : {0.0, M_PI / 4.0, M_PI / 2.0}) {
                const AtomSource atom = make_isotropic_atom(d);
                const Vec3d point{{r0 * std::sin(theta), 0.0, d + r0 * std::cos(theta)}};
                const GeometryFrame f = derive_frame(point, atom);
                const CPEnergy ec = electric_cp_closed(f, 2.0, 1.0);
                const CPEnergy eq = electric_cp_quadrature(f, atom, 1.0);
                const CPEnergy mc = magnetic_cp_closed(f, 2.0, 1.0);
                const CPEnergy mq = magnetic_cp_quadrature(f, atom, 1.0);
                for (const auto& [c, q] : {std::pair{ec, eq}, std::pair{mc, mq}}) {
                    const double floor = 1e-3 * std::abs(c.total);
                    worst = std::max(worst, rel(q.total, c.total));
                    worst = std::max(worst,
                                     std::abs(q.direct - c.direct) / std::max(std::abs(c.direct), floor));
                    worst = std::max(worst,
                                     std::abs(q.image - c.image) / std::max(std::abs(c.image), floor));
                    worst = std::max(worst,
                                     std::abs(q.cross - c.cross) / std::max(std::abs(c.cross), floor));
                }
            }
    const double t = timer.seconds();
    CheckResult r{3, "wall closed-form vs quadrature equivalence", worst <= 1e-6 && t <= 30.0, ""};
    r.detail = fmt("max rel err %.2e (tol 1e-6), %.2f s (limit 30 s)", worst, t);
    return r;
}

// 4. Attractiveness of the total electric interaction on 100 randomized
// far-zone geometries.
inline CheckResult check_attractiveness() {
    using namespace verify_detail;
    std::mt19937 rng(20240817u);
    int bad = 0;
    double worst = -1e300;
    for (int i = 0; i < 100; ++i) {
        double d = 0.0;
        const GeometryFrame f = random_far_zone_frame(rng, d);
        const double total = electric_cp_closed(f, 2.0, 1.0).total;
        worst = std::max(worst, total);
        if (!(total < 0.0)) ++bad;
    }
    CheckResult r{4, "electric interaction attractive on random geometries", bad == 0, ""};
    r.detail = fmt("100 geometries, largest total %.3e (must be < 0)", worst);
    return r;
}

// 5. Exact causality of the first-order kernel and of <E1.E1>.
inline CheckResult check_causality() {
    using namespace verify_detail;
    std::mt19937 rng(7031u);
    std::uniform_real_distribution<double> ud(0.5, 5.0);
    std::uniform_real_distribution<double> ux(-4.0, 4.0);
    std::uniform_real_distribution<double> uz(0.1, 6.0);
    std::uniform_real_distribution<double> ufrac(0.05, 0.95);
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
        const double d = ud(rng);
        const AtomSource atom{d, {{ux(rng), ux(rng), ux(rng) + 4.5}}};
        Vec3d point{{ux(rng), ux(rng), uz(rng)}};
        GeometryFrame f;
        try {
            f = derive_frame(point, atom);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const double t_before = ufrac(rng) * (f.r0 - 2.0 * epsilon_lightcone);
        const FieldKernel k = first_order_kernel(f, atom, t_before);
        for (int j = 0; j < 9; ++j)
            ok = ok && k.electric_direct.m[static_cast<std::size_t>(j)] == cplx(0.0) &&
                 k.electric_reflected.m[static_cast<std::size_t>(j)] == cplx(0.0) &&
                 k.magnetic_direct.m[static_cast<std::size_t>(j)] == cplx(0.0) &&
                 k.magnetic_reflected.m[static_cast<std::size_t>(j)] == cplx(0.0);
        ok = ok && !k.direct_active && !k.reflected_active;
        ok = ok && e1e1_expectation(f, atom, t_before) == cplx(0.0);

        if (f.r1 - f.r0 > 4.0 * epsilon_lightcone) {
            const double t_mid = f.r0 + ufrac(rng) * (f.r1 - f.r0 - 3.0 * epsilon_lightcone) +
                                 1.5 * epsilon_lightcone;
            const FieldKernel km = first_order_kernel(f, atom, t_mid);
            for (int j = 0; j < 9; ++j)
                ok = ok && km.electric_reflected.m[static_cast<std::size_t>(j)] == cplx(0.0) &&
                     km.magnetic_reflected.m[static_cast<std::size_t>(j)] == cplx(0.0);
            ok = ok && !km.reflected_active;
        }
    }
    CheckResult r{5, "exact causality (pre-arrival kernels bit-zero)", ok, ""};
    r.detail = ok ? "200 randomized frames, all gated terms exactly zero"
                  : "nonzero field before signal arrival";
    return r;
}

// 6. Dynamical settling: the time-dependent electric density approaches the
// stationary one, and the sampled deviation extrema decay monotonically.
inline CheckResult check_dynamical_settling() {
    using namespace verify_detail;
    const AtomSource atom = make_isotropic_atom(1.0);
    const GeometryFrame f = derive_frame({{0.0, 0.0, 3.0}}, atom);  // r0 = 2, r1 = 4
    const double stat = static_electric_density(f, atom).total;

    const double settle_rel =
        std::abs(dynamic_electric_density(f, atom, 1e4 * f.r1).total - stat) / std::abs(stat);

    std::vector<double> dev;
    const double dt = M_PI / 10.0;
    for (double t = 1.1 * f.r1; t <= 100.0 * f.r1; t += dt) {
        double ts = t;
        if (std::abs(ts - f.r1) < 2.0 * epsilon_lightcone) ts += 1e-4;
        dev.push_back(std::abs(dynamic_electric_density(f, atom, ts).total - stat));
    }
    std::vector<double> extrema;
    for (std::size_t i = 1; i + 1 < dev.size(); ++i)
        if (dev[i] >= dev[i - 1] && dev[i] >= dev[i + 1]) extrema.push_back(dev[i]);
    int violations = 0;
    for (std::size_t i = 1; i + 1 < extrema.size(); ++i)
        if (extrema[i + 1] > extrema[i] * (1.0 + 1e-6)) ++violations;

    const bool pass = settle_rel <= 1e-3 && violations == 0 && extrema.size() >= 5;
    CheckResult r{6, "dynamical settling and decaying oscillation envelope", pass, ""};
    r.detail = fmt("rel deviation %.2e at t=1e4*r1 (tol 1e-3), ", settle_rel) +
               fmt("%.0f extrema, %.0f envelope violations", double(extrema.size()),
                   double(violations));
    return r;
}

// 7. Finite-difference operator oracle, plus observed convergence order.
inline CheckResult check_fd_oracle() {
    using namespace verify_detail;
    const Vec3d rv{{0.36, -0.48, 0.80}};  // unit vector
    double worst = 0.0;
    for (const double k : {1.0, 5.0, 20.0}) {
        for (const OperatorKind kind : {OperatorKind::F, OperatorKind::G}) {
            const Mat3c num = fd_operator_check(kind, k, rv);
            const Mat3c ana = fd_reference(kind, k, rv);
            double scale = 0.0;
            for (int i = 0; i < 9; ++i)
                scale = std::max(scale, std::abs(ana.m[static_cast<std::size_t>(i)]));
            for (int i = 0; i < 9; ++i)
                worst = std::max(worst, std::abs(num.m[static_cast<std::size_t>(i)] -
                                                 ana.m[static_cast<std::size_t>(i)]) /
                                            scale);
        }
    }

    // Observed order: error ratio under step halving, truncation-dominated
    // steps.
    auto err_at = [&](double k, double h, int order) {
        StencilSpec spec{h, order};
        const Mat3c num = fd_operator_check(OperatorKind::F, k, rv, spec);
        const Mat3c ana = fd_reference(OperatorKind::F, k, rv);
        double e = 0.0;
        for (int i = 0; i < 9; ++i)
            e = std::max(e, std::abs(num.m[static_cast<std::size_t>(i)] -
                                     ana.m[static_cast<std::size_t>(i)]));
        return e;
    };
    const double k_ord = 5.0;
    const double h2 = 0.02 / k_ord, h4 = 0.05 / k_ord;
    const double order2 = std::log2(err_at(k_ord, h2, 2) / err_at(k_ord, h2 / 2.0, 2));
    const double order4 = std::log2(err_at(k_ord, h4, 4) / err_at(k_ord, h4 / 2.0, 4));

    const bool pass = worst <= 1e-6 && std::abs(order2 - 2.0) <= 0.4 && std::abs(order4 - 4.0) <= 0.8;
    CheckResult r{7, "finite-difference operator oracle", pass, ""};
    r.detail = fmt("max rel err %.2e (tol 1e-6), ", worst) +
               fmt("observed orders %.2f / %.2f (expect 2 / 4 within 20%%)", order2, order4);
    return r;
}

// 8. Mode-sum identity: the period-averaged angular integral equals the
// signed two-branch closed form for all nine components at three geometries.
inline CheckResult check_mode_sum_identity() {
    using namespace verify_detail;
    struct Geo {
        Vec3d r, rA;
        double k;
    };
    const Geo geos[3] = {
        {{{1.3, -0.7, 2.1}}, {{0.0, 0.0, 0.9}}, 2.0},
        {{{0.5, 0.2, 0.8}}, {{0.0, 0.0, 1.5}}, 1.0},
        {{{0.4, 1.1, 1.7}}, {{-0.3, 0.5, 0.8}}, 3.0},
    };
    double worst = 0.0;
    for (const auto& g : geos)
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                const double num = angular_polarization_sum(g.k, g.r, g.rA, p, q);
                const double ana = polarization_sum_closed_form(g.k, g.r, g.rA, p, q);
                worst = std::max(worst, std::abs(num - ana) / std::max(1.0, std::abs(ana)));
            }
    CheckResult r{8, "mode-sum polarization identity (all nine components)", worst <= 1e-6, ""};
    r.detail = fmt("max err %.2e (tol 1e-6), includes the tangential sign flip", worst);
    return r;
}

// 9. Decomposition bookkeeping and the sign structure of the static
// densities on random geometries.
inline CheckResult check_decomposition_and_signs() {
    using namespace verify_detail;
    std::mt19937 rng(40724u);
    double worst_sum = 0.0;
    bool signs_ok = true;
    for (int i = 0; i < 20; ++i) {
        double d = 0.0;
        const GeometryFrame f = random_far_zone_frame(rng, d);
        const AtomSource atom = make_isotropic_atom(d);
        const DensityResult de = static_electric_density(f, atom);
        const DensityResult dm = static_magnetic_density(f, atom);
        const CPEnergy ce = electric_cp_closed(f, 2.0, 1.0);
        const CPEnergy cq = electric_cp_quadrature(f, atom, 1.0);
        for (const auto& [tot, sum] :
             {std::pair{de.total, de.direct + de.image + de.cross},
              std::pair{dm.total, dm.direct + dm.image + dm.cross},
              std::pair{ce.total, ce.direct + ce.image + ce.cross},
              std::pair{cq.total, cq.direct + cq.image + cq.cross}})
            worst_sum = std::max(worst_sum, std::abs(tot - sum) / std::abs(tot));
        signs_ok = signs_ok && de.direct > 0.0 && de.image > 0.0;
        signs_ok = signs_ok && dm.direct < 0.0 && dm.image < 0.0;
    }
    const bool pass = worst_sum <= 1e-12 && signs_ok;
    CheckResult r{9, "decomposition bookkeeping and density signs", pass, ""};
    r.detail = fmt("max |sum-total|/|total| %.2e (tol 1e-12), ", worst_sum) +
               (signs_ok ? "electric parts > 0, magnetic direct/image < 0"
                         : "SIGN STRUCTURE WRONG");
    return r;
}

// 10. Scheme redundancy: adaptive vs fixed-order Gauss-Laguerre on the
// stationary-density integrand family.
inline CheckResult check_quadrature_redundancy() {
    using namespace verify_detail;
    const double rel_tol = 1e-10;
    double worst = 0.0;
    for (const double r : {1.0, 2.0, 5.0, 10.0, 20.0}) {
        auto electric = [r](double k) -> cplx {
            const double kr = k * r;
            const double poly = 1.0 / (kr * kr) + 2.0 / std::pow(kr, 3) + 5.0 / std::pow(kr, 4) +
                                6.0 / std::pow(kr, 5) + 3.0 / std::pow(kr, 6);
            return std::pow(k, 6) * (2.0 / (1.0 + k * k)) * poly * std::exp(-2.0 * kr);
        };
        auto magnetic = [r](double k) -> cplx {
            const double kr = k * r;
            const double prof = 1.0 / kr + 1.0 / (kr * kr);
            return std::pow(k, 6) * (2.0 / (1.0 + k * k)) * prof * prof * std::exp(-2.0 * kr);
        };
        QuadratureSpec spec;
        spec.rel_tol = rel_tol;
        spec.decay_scale = 2.0 * r;
        for (const auto& f : {std::function<cplx(double)>(electric), std::function<cplx(double)>(magnetic)}) {
            const cplx a = integrate_decaying(f, spec).value;
            const cplx b = integrate_decaying_laguerre(f, spec);
            worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
    }
    CheckResult r{10, "adaptive vs Gauss-Laguerre scheme agreement", worst <= 10.0 * rel_tol, ""};
    r.detail = fmt("max rel disagreement %.2e (tol %.0e)", worst, 10.0 * rel_tol);
    return r;
}

inline std::vector<CheckResult> run_verification() {
    return {check_free_space_electric(), check_free_space_magnetic(),
            check_closed_form_equivalence(), check_attractiveness(),
            check_causality(), check_dynamical_settling(),
            check_fd_oracle(), check_mode_sum_identity(),
            check_decomposition_and_signs(), check_quadrature_redundancy()};
}

}  // namespace wallcp
