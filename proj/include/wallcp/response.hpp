// Dyadic response tensors of an oscillating point dipole and the atomic
// polarizability at imaginary frequency.
//
// f_pq(zeta) is the radial profile produced by applying
// F_pq = -lap delta_pq + grad_p grad_q to an outgoing spherical wave:
//
//   F_pq e^{ikr}/r = k^3 f_pq(kr) e^{ikr},
//   f_pq(zeta) = (delta_pq - rh_p rh_q)/zeta
//              + (delta_pq - 3 rh_p rh_q)(i/zeta^2 - 1/zeta^3).
//
// g_pq(zeta) = i sum_s eps_pqs rh_s (1/zeta + 1/zeta^2) is the magnetic
// analogue produced by the curl. Both take one complex argument; real-axis
// and imaginary-axis evaluations share this single code path, and the
// leading factor i in g is what makes products of two g's on the imaginary
// axis contribute with an overall minus sign.
#pragma once

#include <complex>
#include <stdexcept>

#include "wallcp/geometry.hpp"
#include "wallcp/linalg.hpp"

namespace wallcp {

struct ResponseTensor {
    Mat3c entries;
    cplx argument{};
    Vec3d rhat{};
};

namespace detail {

inline void require_nonzero(const cplx& zeta, const char* who) {
    if (std::abs(zeta) == 0.0)
        throw std::invalid_argument(std::string(who) + ": zero argument");
}

}  // namespace detail

inline ResponseTensor f_tensor(cplx zeta, const Vec3d& rhat) {
    detail::require_nonzero(zeta, "f_tensor");
    const cplx inv = 1.0 / zeta;
    const cplx inv2 = inv * inv;
    const cplx radial2 = cplx(0.0, 1.0) * inv2 - inv2 * inv;

    ResponseTensor t;
    t.argument = zeta;
    t.rhat = rhat;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            const double del = (p == q) ? 1.0 : 0.0;
            const double rr = rhat[p] * rhat[q];
            t.entries(p, q) = (del - rr) * inv + (del - 3.0 * rr) * radial2;
        }
    return t;
}

inline ResponseTensor g_tensor(cplx zeta, const Vec3d& rhat) {
    detail::require_nonzero(zeta, "g_tensor");
    const cplx radial = cplx(0.0, 1.0) * (1.0 / zeta + 1.0 / (zeta * zeta));

    ResponseTensor t;
    t.argument = zeta;
    t.rhat = rhat;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            cplx e = 0.0;
            for (int s = 0; s < 3; ++s) e += levi_civita(p, q, s) * rhat[s];
            t.entries(p, q) = radial * e;
        }
    return t;
}

// Dynamic polarizability at imaginary wavenumber i*kappa, reduced units:
// a diagonal tensor with entries 2 mu_q^2 / (1 + kappa^2). The three axis
// transitions are independent, so cross components vanish; at kappa = 0
// this is the static tensor.
inline Mat3d polarizability(const AtomSource& atom, double kappa) {
    if (kappa < 0.0)
        throw std::invalid_argument("polarizability: kappa must be non-negative");
    const double denom = 1.0 + kappa * kappa;
    Mat3d a;
    for (int q = 0; q < 3; ++q) a(q, q) = 2.0 * atom.mu[q] * atom.mu[q] / denom;
    return a;
}

inline Mat3d static_polarizability(const AtomSource& atom) { return polarizability(atom, 0.0); }

// Scalar static polarizability of an isotropic source.
inline double static_polarizability_scalar(const AtomSource& atom) {
    if (!atom.isotropic())
        throw std::invalid_argument("static_polarizability_scalar: source is not isotropic");
    return 2.0 * atom.mu[0] * atom.mu[0];
}

}  // namespace wallcp
