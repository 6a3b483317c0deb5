// Far-zone interatomic Casimir-Polder energies near a conducting wall.
//
// Atom B sits at the frame's observation point as a point polarizable body
// with static polarizability alpha_B; its interaction energy with the field
// fluctuations generated by source atom A is -1/2 alpha_B <field^2>. Two
// independent routes are provided: the closed r^-7 laws obtained with the
// static polarizability substitution, and direct quadrature of the density
// integrals. They must agree; the tests hold them to that.
//
// Energies are in hbar*c*k0. The electric interaction is attractive
// (direct/image parts negative, cross positive, total negative); the
// magnetic one is repulsive in its leading terms.
#pragma once

#include <cmath>
#include <stdexcept>

#include "wallcp/fields.hpp"
#include "wallcp/geometry.hpp"

namespace wallcp {

enum class CPRoute { closed_form, quadrature };

struct CPEnergy {
    double total = 0.0;
    double direct = 0.0;  // r0^-7 family
    double image = 0.0;   // r1^-7 family
    double cross = 0.0;   // mixed r0,r1 term
    DensityKind kind = DensityKind::electric;
    CPRoute route = CPRoute::closed_form;
};

// Electric-electric interaction, closed form:
//   -23/(4 pi) aA aB (r0^-7 + r1^-7)
//   + 16 aA aB [3 r0^2 r1^2 + rho^2 (r0^2 + 5 r0 r1 + r1^2)]
//     / (pi r0^3 r1^3 (r0+r1)^5).
inline CPEnergy electric_cp_closed(const GeometryFrame& frame_b, double alpha_a, double alpha_b) {
    const double r0 = frame_b.r0, r1 = frame_b.r1, rho = frame_b.rho;
    const double R = r0 + r1;
    CPEnergy e;
    e.kind = DensityKind::electric;
    e.route = CPRoute::closed_form;
    e.direct = -23.0 / (4.0 * M_PI) * alpha_a * alpha_b / std::pow(r0, 7);
    e.image = -23.0 / (4.0 * M_PI) * alpha_a * alpha_b / std::pow(r1, 7);
    e.cross = 16.0 * alpha_a * alpha_b *
              (3.0 * r0 * r0 * r1 * r1 + rho * rho * (r0 * r0 + 5.0 * r0 * r1 + r1 * r1)) /
              (M_PI * std::pow(r0, 3) * std::pow(r1, 3) * std::pow(R, 5));
    e.total = e.direct + e.image + e.cross;
    return e;
}

// Electric-magnetic interaction, closed form:
//   +7/(4 pi) aE aM (r0^-7 + r1^-7)
//   - 16 aE aM (r0 cos t0)(r1 cos t1) (r0^2 + 5 r0 r1 + r1^2)
//     / (pi r0^3 r1^3 (r0+r1)^5).
inline CPEnergy magnetic_cp_closed(const GeometryFrame& frame_b, double alpha_e_a,
                                   double alpha_m_b) {
    const double r0 = frame_b.r0, r1 = frame_b.r1;
    const double R = r0 + r1;
    CPEnergy e;
    e.kind = DensityKind::magnetic;
    e.route = CPRoute::closed_form;
    e.direct = 7.0 / (4.0 * M_PI) * alpha_e_a * alpha_m_b / std::pow(r0, 7);
    e.image = 7.0 / (4.0 * M_PI) * alpha_e_a * alpha_m_b / std::pow(r1, 7);
    e.cross = -16.0 * alpha_e_a * alpha_m_b * (r0 * frame_b.cos_theta0) *
              (r1 * frame_b.cos_theta1) * (r0 * r0 + 5.0 * r0 * r1 + r1 * r1) /
              (M_PI * std::pow(r0, 3) * std::pow(r1, 3) * std::pow(R, 5));
    e.total = e.direct + e.image + e.cross;
    return e;
}

namespace detail {

inline CPEnergy scale_density(const DensityResult& d, double alpha_b) {
    CPEnergy e;
    e.kind = d.kind;
    e.route = CPRoute::quadrature;
    e.direct = -0.5 * alpha_b * d.direct;
    e.image = -0.5 * alpha_b * d.image;
    e.cross = -0.5 * alpha_b * d.cross;
    e.total = e.direct + e.image + e.cross;
    return e;
}

}  // namespace wallcp::detail

// Quadrature route: -1/2 alpha_B times the stationary electric density of
// atom A, with A's polarizability frozen at its static value by default so
// the result is directly comparable to the closed form.
inline CPEnergy electric_cp_quadrature(const GeometryFrame& frame_b, const AtomSource& atom_a,
                                       double alpha_b, AlphaMode mode = AlphaMode::static_limit,
                                       const QuadratureSpec& tol = {}) {
    return detail::scale_density(static_electric_density(frame_b, atom_a, mode, tol), alpha_b);
}

inline CPEnergy magnetic_cp_quadrature(const GeometryFrame& frame_b, const AtomSource& atom_a,
                                       double alpha_m_b, AlphaMode mode = AlphaMode::static_limit,
                                       const QuadratureSpec& tol = {}) {
    return detail::scale_density(static_magnetic_density(frame_b, atom_a, mode, tol), alpha_m_b);
}

// Time-dependent interaction energy after both signals have reached atom B;
// tends to the quadrature route value as t grows.
inline double dynamic_cp_energy(const GeometryFrame& frame_b, const AtomSource& atom_a,
                                double alpha_b, double t, AlphaMode mode = AlphaMode::dynamic,
                                const QuadratureSpec& tol = {}) {
    return -0.5 * alpha_b * dynamic_electric_density(frame_b, atom_a, t, mode, tol).total;
}

// Quasi-static force between the atoms in the on-axis configuration
// (B directly above A at separation r0): minus the numerical derivative of
// the interaction energy with respect to the separation, central differences
// at step 1e-4 * r0.
inline double cp_force_on_axis(double atom_d, double r0, double alpha_a, double alpha_b,
                               DensityKind kind = DensityKind::electric) {
    if (!(r0 > 0.0)) throw std::invalid_argument("cp_force_on_axis: r0 must be positive");
    const double h = 1e-4 * r0;
    auto energy_at = [&](double sep) {
        const GeometryFrame f = derive_frame({{0.0, 0.0, atom_d + sep}}, atom_d);
        return kind == DensityKind::electric ? electric_cp_closed(f, alpha_a, alpha_b).total
                                             : magnetic_cp_closed(f, alpha_a, alpha_b).total;
    };
    return -(energy_at(r0 + h) - energy_at(r0 - h)) / (2.0 * h);
}

}  // namespace wallcp
