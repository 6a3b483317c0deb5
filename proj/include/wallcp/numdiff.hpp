// Finite-difference application of the vector differential operators that
// generate the field kernels, used as an independent check on the analytic
// radial tensors.
//
// Kind F applies F_pq = -lap delta_pq + grad_p grad_q to e^{ikr}/r by
// central-difference stencils; the analytic value is k^3 f_pq(kr) e^{ikr}.
// Kind G applies the curl/radial-derivative combination
// -G_pq [(1/r) d/dr e^{-ikr}] = eps_pqs grad_s [-ik e^{-ikr}/r]; the analytic
// value is -k^3 g_pq(ikr) e^{-ikr}, which is the branch structure of the
// magnetic kernel.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>

#include "wallcp/linalg.hpp"
#include "wallcp/response.hpp"

namespace wallcp {

enum class OperatorKind { F, G };

struct StencilSpec {
    double step = 0.0;  // 0 picks 1e-4 * min(r, 1/k)
    int order = 2;      // central differences, order 2 or 4
};

namespace detail {

using ScalarField = std::function<cplx(const Vec3d&)>;

inline Vec3d shifted(const Vec3d& x, int axis, double h) {
    Vec3d y = x;
    y[axis] += h;
    return y;
}

inline cplx fd_first(const ScalarField& f, const Vec3d& x, int s, double h, int order) {
    if (order == 2) return (f(shifted(x, s, h)) - f(shifted(x, s, -h))) / (2.0 * h);
    return (-f(shifted(x, s, 2 * h)) + 8.0 * f(shifted(x, s, h)) - 8.0 * f(shifted(x, s, -h)) +
            f(shifted(x, s, -2 * h))) /
           (12.0 * h);
}

inline cplx fd_second(const ScalarField& f, const Vec3d& x, int p, int q, double h, int order) {
    if (p == q) {
        if (order == 2)
            return (f(shifted(x, p, h)) - 2.0 * f(x) + f(shifted(x, p, -h))) / (h * h);
        return (-f(shifted(x, p, 2 * h)) + 16.0 * f(shifted(x, p, h)) - 30.0 * f(x) +
                16.0 * f(shifted(x, p, -h)) - f(shifted(x, p, -2 * h))) /
               (12.0 * h * h);
    }
    if (order == 2) {
        const auto fpp = f(shifted(shifted(x, p, h), q, h));
        const auto fpm = f(shifted(shifted(x, p, h), q, -h));
        const auto fmp = f(shifted(shifted(x, p, -h), q, h));
        const auto fmm = f(shifted(shifted(x, p, -h), q, -h));
        return (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    }
    // order 4 mixed: nested fourth-order first derivatives
    auto along_q = [&](const Vec3d& y) { return fd_first(f, y, q, h, 4); };
    return (-along_q(shifted(x, p, 2 * h)) + 8.0 * along_q(shifted(x, p, h)) -
            8.0 * along_q(shifted(x, p, -h)) + along_q(shifted(x, p, -2 * h))) /
           (12.0 * h);
}

inline double resolve_step(const StencilSpec& spec, double k, double r) {
    double h = spec.step;
    if (h <= 0.0) h = 1e-4 * std::min(r, 1.0 / k);
    if (h < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, r))
        throw std::invalid_argument("fd_operator_check: step underflow");
    if (r < 10.0 * h)
        throw std::invalid_argument("fd_operator_check: evaluation point too close to the origin");
    return h;
}

}  // namespace wallcp::detail

// Numerically applied operator matrix at the point r_vec; compare against
// fd_reference.
inline Mat3c fd_operator_check(OperatorKind kind, double k, const Vec3d& r_vec,
                               const StencilSpec& spec = {}) {
    if (!(k > 0.0)) throw std::invalid_argument("fd_operator_check: k must be positive");
    if (spec.order != 2 && spec.order != 4)
        throw std::invalid_argument("fd_operator_check: order must be 2 or 4");
    const double r = norm(r_vec);
    const double h = detail::resolve_step(spec, k, r);

    Mat3c out;
    if (kind == OperatorKind::F) {
        detail::ScalarField phi = [k](const Vec3d& x) {
            const double rr = norm(x);
            return std::exp(cplx(0.0, k * rr)) / rr;
        };
        cplx lap = 0.0;
        for (int s = 0; s < 3; ++s) lap += detail::fd_second(phi, r_vec, s, s, h, spec.order);
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                out(p, q) = detail::fd_second(phi, r_vec, p, q, h, spec.order);
                if (p == q) out(p, q) -= lap;
            }
    } else {
        detail::ScalarField psi = [k](const Vec3d& x) {
            const double rr = norm(x);
            return cplx(0.0, -k) * std::exp(cplx(0.0, -k * rr)) / rr;
        };
        Vec3c grad;
        for (int s = 0; s < 3; ++s) grad[s] = detail::fd_first(psi, r_vec, s, h, spec.order);
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                cplx e = 0.0;
                for (int s = 0; s < 3; ++s) e += levi_civita(p, q, s) * grad[s];
                out(p, q) = e;
            }
    }
    return out;
}

// Analytic operator matrix the stencil result should reproduce.
inline Mat3c fd_reference(OperatorKind kind, double k, const Vec3d& r_vec) {
    const double r = norm(r_vec);
    const Vec3d rhat = (1.0 / r) * r_vec;
    const double k3 = k * k * k;
    if (kind == OperatorKind::F)
        return (k3 * std::exp(cplx(0.0, k * r))) * f_tensor(k * r, rhat).entries;
    return (-k3 * std::exp(cplx(0.0, -k * r))) * g_tensor(cplx(0.0, k * r), rhat).entries;
}

}  // namespace wallcp
