// Image-point kinematics for a dipole source at height d above a perfectly
// conducting wall (the plane z = 0). Everything is in reduced units:
// hbar = c = 1 and the transition wavenumber k0 = 1, so lengths are k0*r,
// times are c*k0*t, energy densities come out in hbar*c*k0^4 and energies
// in hbar*c*k0.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "wallcp/linalg.hpp"

namespace wallcp {

// Observation closer than this to the source (or its image) is rejected
// rather than returning a silent NaN.
inline constexpr double coincidence_guard = 1e-9;

// Half-width of the excluded window around the light-cone wavefronts
// |t - r_nu|; the delta-like impulse exactly on the front is outside the
// scope of these kernels.
inline constexpr double epsilon_lightcone = 1e-6;

// Source dipole above the wall. The three components of mu are the reduced
// strengths of independent transitions along the coordinate axes; the static
// polarizability tensor is diagonal with entries 2*mu_q^2. A single
// transition polarized along an axis is mu = (0,0,m) etc.; mu with all
// components equal models an isotropic emitter.
struct AtomSource {
    double d = 1.0;    // wall distance, units of 1/k0
    Vec3d mu{{0.0, 0.0, 0.0}};

    bool isotropic() const { return mu[0] == mu[1] && mu[1] == mu[2]; }
};

inline AtomSource make_isotropic_atom(double d, double m = 1.0) {
    return AtomSource{d, {{m, m, m}}};
}

// Observation point plus derived distances to the source and to its mirror
// image at (0,0,-d).
struct GeometryFrame {
    Vec3d point{};
    double wall_distance = 0.0;  // the d this frame was derived with
    double r0 = 0.0;             // distance to the source
    double r1 = 0.0;             // distance to the image
    double rho = 0.0;            // transverse distance
    Vec3d rhat0{};
    Vec3d rhat1{};
    double cos_theta0 = 0.0;     // direction cosines to the wall normal
    double cos_theta1 = 0.0;
};

// (-1)^{nu(1-delta_qz)}: the image (nu=1) flips tangential dipole
// components and keeps the normal one.
inline constexpr int reflection_sign(int nu, int q) noexcept {
    return (nu == 1 && q != 2) ? -1 : 1;
}

// Dipole as seen in the mirror: tangential components flipped.
inline Vec3d image_dipole(const Vec3d& mu) {
    return {{-mu[0], -mu[1], mu[2]}};
}

// A usable source has a positive wall distance and a nonzero dipole.
inline void require_valid_source(const AtomSource& atom) {
    if (!(atom.d > 0.0))
        throw std::invalid_argument("source: wall distance d must be positive");
    if (atom.mu[0] == 0.0 && atom.mu[1] == 0.0 && atom.mu[2] == 0.0)
        throw std::invalid_argument("source: dipole must have a nonzero component");
}

inline GeometryFrame derive_frame(const Vec3d& point, double d) {
    if (!(d > 0.0))
        throw std::invalid_argument("derive_frame: wall distance d must be positive");
    if (!(point[2] > 0.0))
        throw std::invalid_argument("derive_frame: observation point must lie in z > 0");

    GeometryFrame f;
    f.point = point;
    f.wall_distance = d;

    const Vec3d v0{{point[0], point[1], point[2] - d}};
    const Vec3d v1{{point[0], point[1], point[2] + d}};
    f.r0 = norm(v0);
    f.r1 = norm(v1);
    if (f.r0 < coincidence_guard)
        throw std::invalid_argument("derive_frame: observation point coincides with the source");

    f.rhat0 = (1.0 / f.r0) * v0;
    f.rhat1 = (1.0 / f.r1) * v1;
    f.rho = std::hypot(point[0], point[1]);
    f.cos_theta0 = v0[2] / f.r0;
    f.cos_theta1 = v1[2] / f.r1;
    return f;
}

inline GeometryFrame derive_frame(const Vec3d& point, const AtomSource& atom) {
    return derive_frame(point, atom.d);
}

// Frame quantities indexed by nu = 0 (direct) / 1 (image).
inline double frame_r(const GeometryFrame& f, int nu) { return nu == 0 ? f.r0 : f.r1; }
inline const Vec3d& frame_rhat(const GeometryFrame& f, int nu) { return nu == 0 ? f.rhat0 : f.rhat1; }

inline void require_matching_frame(const GeometryFrame& frame, const AtomSource& atom) {
    if (std::abs(frame.wall_distance - atom.d) > 1e-12 * std::max(1.0, atom.d))
        throw std::invalid_argument("frame was derived for a different wall distance than this source");
}

}  // namespace wallcp
