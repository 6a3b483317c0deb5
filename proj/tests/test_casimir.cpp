#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wallcp/casimir.hpp"

using namespace wallcp;

TEST_CASE("electric closed form, on-axis r0=1 r1=3") {
    const AtomSource atom = make_isotropic_atom(1.0, 1.0 / std::sqrt(2.0));  // alpha(0) = 1
    const GeometryFrame f = derive_frame({{0.0, 0.0, 2.0}}, atom);
    REQUIRE(f.r0 == Catch::Approx(1.0));
    REQUIRE(f.r1 == Catch::Approx(3.0));
    const CPEnergy e = electric_cp_closed(f, 1.0, 1.0);
    CHECK(e.direct + e.image ==
          Catch::Approx(-23.0 / (4.0 * M_PI) * (1.0 + std::pow(3.0, -7.0))).epsilon(1e-14));
    CHECK(e.cross == Catch::Approx(1.0 / (64.0 * M_PI)).epsilon(1e-14));
    CHECK(e.total == Catch::Approx(e.direct + e.image + e.cross).epsilon(1e-15));
}

TEST_CASE("magnetic closed form, on-axis r0=1 r1=3") {
    const GeometryFrame f = derive_frame({{0.0, 0.0, 2.0}}, 1.0);
    const CPEnergy m = magnetic_cp_closed(f, 1.0, 1.0);
    // -(16/pi) * (1*1)(3*1) * (1 + 15 + 9) / (1 * 27 * 4^5)
    CHECK(m.cross == Catch::Approx(-16.0 * 3.0 * 25.0 / (M_PI * 27.0 * 1024.0)).epsilon(1e-14));
    CHECK(m.cross == Catch::Approx(-25.0 / (576.0 * M_PI)).epsilon(1e-13));
    CHECK(m.direct == Catch::Approx(7.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(m.total > 0.0);
}

TEST_CASE("wall removed: free-space laws from the closed forms") {
    const double r0 = 2.0;
    const double d = 1e7;
    const GeometryFrame f = derive_frame({{0.0, 0.0, d + r0}}, d);
    const CPEnergy e = electric_cp_closed(f, 1.0, 1.0);
    CHECK(std::abs(e.image) <= 1e-20 * std::abs(e.direct));
    CHECK(std::abs(e.cross) <= 1e-20 * std::abs(e.direct));
    CHECK(e.total == Catch::Approx(-23.0 / (4.0 * M_PI * std::pow(r0, 7))).epsilon(1e-8));
    const CPEnergy m = magnetic_cp_closed(f, 1.0, 1.0);
    CHECK(m.total == Catch::Approx(7.0 / (4.0 * M_PI * std::pow(r0, 7))).epsilon(1e-8));
    CHECK(m.total > 0.0);
}

TEST_CASE("symmetric straddling configuration: cross-term formula") {
    // algebraic substitution r0 = r1 = r into the cross expression
    const double r = 3.0, rho = 1.2;
    GeometryFrame f{};
    f.r0 = f.r1 = r;
    f.rho = rho;
    const CPEnergy e = electric_cp_closed(f, 1.0, 1.0);
    const double expect =
        16.0 / M_PI * (3.0 * std::pow(r, 4) + 7.0 * rho * rho * r * r) /
        (std::pow(r, 6) * 32.0 * std::pow(r, 5));
    CHECK(e.cross == Catch::Approx(expect).epsilon(1e-14));
}

TEST_CASE("perpendicular geometry kills the magnetic cross term") {
    const double d = 2.0;
    const GeometryFrame f = derive_frame({{5.0, 0.0, d}}, d);  // z = d: cos(theta0) = 0
    CHECK(f.cos_theta0 == 0.0);
    const CPEnergy m = magnetic_cp_closed(f, 1.0, 1.0);
    CHECK(m.cross == 0.0);
    CHECK(m.total > 0.0);  // direct + image only, both repulsive
}

TEST_CASE("closed form vs quadrature route on a small grid") {
    for (const double r0 : {5.0, 10.0})
        for (const double d : {2.0, 5.0}) {
            const AtomSource atom = make_isotropic_atom(d);
            const GeometryFrame f = derive_frame({{r0 / std::sqrt(2.0), 0.0, d + r0 / std::sqrt(2.0)}}, atom);
            const CPEnergy ec = electric_cp_closed(f, 2.0, 1.0);
            const CPEnergy eq = electric_cp_quadrature(f, atom, 1.0);
            CHECK(eq.total == Catch::Approx(ec.total).epsilon(1e-6));
            const CPEnergy mc = magnetic_cp_closed(f, 2.0, 0.7);
            const CPEnergy mq = magnetic_cp_quadrature(f, atom, 0.7);
            CHECK(mq.total == Catch::Approx(mc.total).epsilon(1e-6));
            CHECK(eq.route == CPRoute::quadrature);
            CHECK(ec.route == CPRoute::closed_form);
        }
}

TEST_CASE("dispersive polarizability deviates at short range, converges in the far zone") {
    const double d = 3.0;
    const AtomSource atom = make_isotropic_atom(d);
    double prev_rel = 1e300;
    for (const double r0 : {2.0, 5.0, 12.0, 30.0}) {
        const GeometryFrame f = derive_frame({{0.0, 0.0, d + r0}}, atom);
        const double closed = electric_cp_closed(f, 2.0, 1.0).total;
        const double dispersive =
            electric_cp_quadrature(f, atom, 1.0, AlphaMode::dynamic).total;
        const double rel = std::abs(dispersive - closed) / std::abs(closed);
        CHECK(rel < prev_rel);
        prev_rel = rel;
    }
    CHECK(prev_rel < 1e-1);  // far zone: static substitution becomes accurate
}

TEST_CASE("electric interaction attractive on random geometries") {
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> ud(0.5, 10.0);
    std::uniform_real_distribution<double> ur(5.0, 40.0);
    std::uniform_real_distribution<double> uc(-0.95, 0.95);
    for (int i = 0; i < 30; ++i) {
        const double d = ud(rng), r0 = ur(rng), c = uc(rng);
        const double s = std::sqrt(1.0 - c * c);
        const Vec3d p{{r0 * s, 0.0, d + r0 * c}};
        if (p[2] <= 0.05) continue;
        const GeometryFrame f = derive_frame(p, d);
        CHECK(electric_cp_closed(f, 2.0, 1.0).total < 0.0);
    }
}

TEST_CASE("electric magnitude dominates magnetic for unit polarizabilities") {
    for (const double r0 : {5.0, 10.0, 20.0}) {
        const double d = 2.0;
        const GeometryFrame f = derive_frame({{0.0, 0.0, d + r0}}, d);
        CHECK(std::abs(electric_cp_closed(f, 1.0, 1.0).total) >
              std::abs(magnetic_cp_closed(f, 1.0, 1.0).total));
    }
}

TEST_CASE("dynamic interaction energy settles to the stationary one") {
    const double d = 1.0;
    const AtomSource atom = make_isotropic_atom(d);
    const GeometryFrame f = derive_frame({{0.0, 0.0, d + 2.0}}, atom);  // r0=2, r1=4
    const double stat = electric_cp_quadrature(f, atom, 1.0, AlphaMode::dynamic).total;
    const double late = dynamic_cp_energy(f, atom, 1.0, 1e4 * f.r1);
    CHECK(std::abs(late - stat) <= 1e-3 * std::abs(stat));
    const double just_after = dynamic_cp_energy(f, atom, 1.0, 1.2 * f.r1);
    CHECK(std::isfinite(just_after));
    CHECK(just_after != 0.0);
    CHECK_THROWS_AS(dynamic_cp_energy(f, atom, 1.0, f.r1), WavefrontError);
}

TEST_CASE("sampled deviation extrema decay") {
    const double d = 1.0;
    const AtomSource atom = make_isotropic_atom(d);
    const GeometryFrame f = derive_frame({{0.0, 0.0, d + 2.0}}, atom);
    const double stat = electric_cp_quadrature(f, atom, 1.0, AlphaMode::dynamic).total;
    std::vector<double> dev;
    for (double t = 1.1 * f.r1; t <= 12.0 * f.r1; t += M_PI / 8.0)
        dev.push_back(std::abs(dynamic_cp_energy(f, atom, 1.0, t) - stat));
    std::vector<double> ex;
    for (std::size_t i = 1; i + 1 < dev.size(); ++i)
        if (dev[i] >= dev[i - 1] && dev[i] >= dev[i + 1]) ex.push_back(dev[i]);
    REQUIRE(ex.size() >= 3);
    for (std::size_t i = 1; i + 1 < ex.size(); ++i) CHECK(ex[i + 1] <= ex[i] * (1.0 + 1e-6));
}

TEST_CASE("quasi-static force against the analytic on-axis derivative") {
    const double d = 2.0, r0 = 6.0, aa = 2.0, ab = 1.0;
    auto r1_of = [&](double r) { return r + 2.0 * d; };
    // analytic d/dr0 of the on-axis closed form (rho = 0)
    auto dE = [&](double r) {
        const double r1 = r1_of(r), R = r + r1;
        const double d_direct = -23.0 / (4.0 * M_PI) * aa * ab * (-7.0) / std::pow(r, 8);
        const double d_image = -23.0 / (4.0 * M_PI) * aa * ab * (-7.0) / std::pow(r1, 8);
        const double c = 48.0 * aa * ab / M_PI;
        const double d_cross = -c * (R / (std::pow(r * r1, 2) * std::pow(R, 5)) +
                                     10.0 / (r * r1 * std::pow(R, 6)));
        return d_direct + d_image + d_cross;
    };
    const double force = cp_force_on_axis(d, r0, aa, ab);
    CHECK(force == Catch::Approx(-dE(r0)).epsilon(5e-7));  // central-difference truncation at h = 1e-4 r0
}
