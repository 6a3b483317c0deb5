// Polarization-summed angular integrals of the half-space mode functions,
// the construction from which the direct + image structure of the kernels
// emerges without ever invoking an image source.
//
// The standing-wave mode functions of a large box with one face on the wall
// carry trigonometric factors in the box size L; in the infinite-box limit
// the products of those factors are replaced by their averages over a period
// (sin^2, cos^2 -> 1/2, sin*cos -> 0). What remains is integrated over the
// propagation direction numerically, and must reproduce the closed form
//
//   (4 pi / k^3) sum_nu (-1)^{nu(1-delta_qz)} F_pq sin(k r_nu)/r_nu
//     = 4 pi sum_nu (-1)^{nu(1-delta_qz)} Im[ f_pq(k r_nu) e^{i k r_nu} ],
//
// with r_0, r_1 the distances from the observation point to the source and
// to its mirror image.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wallcp/geometry.hpp"
#include "wallcp/linalg.hpp"
#include "wallcp/quadrature.hpp"
#include "wallcp/response.hpp"

namespace wallcp {

namespace detail {

// Period-averaged product of the two L-shifted trig factors along a
// transverse axis; 'cosine' flags select cos(k(u+L/2)) vs sin(k(u+L/2)).
inline double averaged_transverse(bool cos1, bool cos2, double ka, double u, double v) {
    if (cos1 == cos2) return 0.5 * std::cos(ka * (u - v));
    if (cos1 && !cos2) return 0.5 * std::sin(ka * (v - u));
    return 0.5 * std::sin(ka * (u - v));
}

// The z factors carry no L and multiply directly.
inline double z_product(bool cos1, bool cos2, double kz, double z, double zA) {
    const double t1 = cos1 ? std::cos(kz * z) : std::sin(kz * z);
    const double t2 = cos2 ? std::cos(kz * zA) : std::sin(kz * zA);
    return t1 * t2;
}

inline double mode_product_integrand(int p, int q, const Vec3d& kvec, double k, const Vec3d& r,
                                     const Vec3d& rA) {
    const double khp = kvec[p] / k, khq = kvec[q] / k;
    double val = 8.0 * (((p == q) ? 1.0 : 0.0) - khp * khq);
    for (int a = 0; a < 3; ++a) {
        const bool c1 = (a == p), c2 = (a == q);
        if (a < 2)
            val *= averaged_transverse(c1, c2, kvec[a], r[a], rA[a]);
        else
            val *= z_product(c1, c2, kvec[a], r[a], rA[a]);
    }
    return val;
}

}  // namespace wallcp::detail

// Solid-angle integral of the averaged mode-function product, product
// Gauss-Legendre in cos(theta) x trapezoid in phi, refined until stable.
inline double angular_polarization_sum(double k, const Vec3d& r, const Vec3d& rA, int p, int q,
                                       double tol = 1e-8) {
    if (!(k > 0.0)) throw std::invalid_argument("angular_polarization_sum: k must be positive");
    if (!(r[2] > 0.0) || !(rA[2] > 0.0))
        throw std::invalid_argument("angular_polarization_sum: both points must lie in z > 0");
    if (p < 0 || p > 2 || q < 0 || q > 2)
        throw std::invalid_argument("angular_polarization_sum: component indices out of range");

    double prev = 0.0;
    bool have_prev = false;
    for (int n = 16; n <= 1024; n *= 2) {
        std::vector<double> xc, wc;
        detail::gauss_legendre_rule(n, xc, wc);
        const int nphi = 2 * n;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double c = xc[static_cast<std::size_t>(i)];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            double ring = 0.0;
            for (int j = 0; j < nphi; ++j) {
                const double phi = 2.0 * M_PI * j / nphi;
                const Vec3d kvec{{k * s * std::cos(phi), k * s * std::sin(phi), k * c}};
                ring += detail::mode_product_integrand(p, q, kvec, k, r, rA);
            }
            total += wc[static_cast<std::size_t>(i)] * ring * (2.0 * M_PI / nphi);
        }
        if (have_prev && std::abs(total - prev) <= tol * std::max(1.0, std::abs(total)))
            return total;
        prev = total;
        have_prev = true;
    }
    throw ConvergenceError("angular_polarization_sum: angular quadrature did not stabilize");
}

// The closed form the angular integral must match, with the image sign
// carried by the tangential dipole components.
inline double polarization_sum_closed_form(double k, const Vec3d& r, const Vec3d& rA, int p,
                                           int q) {
    const Vec3d image{{rA[0], rA[1], -rA[2]}};
    double total = 0.0;
    for (int nu = 0; nu < 2; ++nu) {
        const Vec3d& src = (nu == 0) ? rA : image;
        const Vec3d dv = r - src;
        const double rn = norm(dv);
        const Vec3d rhat = (1.0 / rn) * dv;
        const cplx fpq = f_tensor(k * rn, rhat).entries(p, q);
        total += reflection_sign(nu, q) * 4.0 * M_PI *
                 (fpq * std::exp(cplx(0.0, k * rn))).imag();
    }
    return total;
}

}  // namespace wallcp
