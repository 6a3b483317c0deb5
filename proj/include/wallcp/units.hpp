// Conversions between the library's reduced units and laboratory units.
// Not part of the math core: every computation runs with hbar = c = 1 and
// the transition wavenumber k0 = 1, and only input/output crosses this
// boundary.
//
//   length          r_red        -> r_red / k0            [m]
//   time            t_red        -> t_red / (c k0)        [s]
//   energy          E_red        -> E_red * hbar c k0     [J]
//   energy density  u_red        -> u_red * hbar c k0^4   [J/m^3]
//   polarizability  a_red        -> a_red / k0^3          [m^3, Gaussian]
#pragma once

namespace wallcp {

struct UnitScale {
    double k0_per_meter;  // transition wavenumber in 1/m

    static constexpr double hbar = 1.054571817e-34;  // J s
    static constexpr double c = 2.99792458e8;        // m/s

    double length_m(double r_red) const { return r_red / k0_per_meter; }
    double time_s(double t_red) const { return t_red / (c * k0_per_meter); }
    double energy_J(double e_red) const { return e_red * hbar * c * k0_per_meter; }
    double energy_density_J_per_m3(double u_red) const {
        const double k0 = k0_per_meter;
        return u_red * hbar * c * k0 * k0 * k0 * k0;
    }
    double polarizability_m3(double a_red) const {
        const double k0 = k0_per_meter;
        return a_red / (k0 * k0 * k0);
    }

    double length_red(double r_m) const { return r_m * k0_per_meter; }
    double time_red(double t_s) const { return t_s * c * k0_per_meter; }
};

}  // namespace wallcp
