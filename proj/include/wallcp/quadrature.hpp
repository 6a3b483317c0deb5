// Semi-infinite quadrature for integrands with a known exponential decay
// scale: the imaginary-axis density integrals and the exponentially damped
// transient integrals all live here.
//
// Two independent schemes are provided. The production scheme maps
// k = lambda*u/(1-u) onto (0,1), which concentrates nodes where e^{-lambda k}
// has its mass, and applies adaptive 7/15 Gauss-Kronrod bisection. The
// cross-check scheme is fixed-order Gauss-Laguerre with the decay factor
// taken as the weight. Tests require the two to agree; only the adaptive
// scheme is used in production paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcp/geometry.hpp"  // epsilon_lightcone
#include "wallcp/linalg.hpp"

namespace wallcp {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    double decay_scale = 1.0;  // lambda of the extracted e^{-lambda k}
};

struct QuadratureResult {
    cplx value{};
    double error_estimate = 0.0;
    int subdivisions = 0;
    std::size_t evaluations = 0;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void validate(const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw std::invalid_argument("quadrature: tolerances must be positive");
    if (!(spec.decay_scale > 0.0))
        throw std::invalid_argument("quadrature: decay_scale must be positive");
    if (spec.max_subdivisions < 1)
        throw std::invalid_argument("quadrature: max_subdivisions must be >= 1");
}

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx integral;
    double error;
};

template <typename F>
Segment gk15(F&& f, double a, double b, std::size_t& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const cplx fp = f(c + h * gk_nodes[i]);
        const cplx fm = (i < 7) ? f(c - h * gk_nodes[i]) : cplx(0.0);
        evals += (i < 7) ? 2 : 1;
        const cplx sum = (i < 7) ? fp + fm : fp;
        if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
            throw ConvergenceError("quadrature: non-finite integrand sample in [" +
                                   std::to_string(a) + "," + std::to_string(b) + "]");
        kron += gk_wk[i] * sum;
        if (i % 2 == 1) gauss += gk_wg[i / 2] * sum;
    }
    return {a, b, h * kron, std::abs(h * (kron - gauss))};
}

}  // namespace detail

// Adaptive integration of f over (0, infinity) for integrands with net
// exponential decay e^{-decay_scale * k}. The integrand callback must be
// re-entrant; the integrator holds no shared state.
template <typename F>
QuadratureResult integrate_decaying(F&& f, const QuadratureSpec& spec) {
    detail::validate(spec);
    const double lam = spec.decay_scale;
    auto mapped = [&](double u) -> cplx {
        const double om = 1.0 - u;
        const double k = lam * u / om;
        return f(k) * (lam / (om * om));
    };

    QuadratureResult res;
    std::vector<detail::Segment> segs;
    const int nseed = 8;
    for (int i = 0; i < nseed; ++i)
        segs.push_back(detail::gk15(mapped, i / double(nseed), (i + 1) / double(nseed), res.evaluations));

    auto recompute_totals = [&](cplx& total, double& err) {
        total = 0.0;
        err = 0.0;
        for (const auto& s : segs) {
            total += s.integral;
            err += s.error;
        }
    };

    cplx total;
    double err;
    recompute_totals(total, err);
    while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (res.subdivisions >= spec.max_subdivisions)
            throw ConvergenceError("integrate_decaying: no convergence after " +
                                   std::to_string(res.subdivisions) + " subdivisions (error " +
                                   std::to_string(err) + ")");
        auto worst = std::max_element(segs.begin(), segs.end(),
                                      [](const auto& x, const auto& y) { return x.error < y.error; });
        const double a = worst->a, b = worst->b, mid = 0.5 * (a + b);
        *worst = detail::gk15(mapped, a, mid, res.evaluations);
        segs.push_back(detail::gk15(mapped, mid, b, res.evaluations));
        ++res.subdivisions;
        recompute_totals(total, err);
    }
    res.value = total;
    res.error_estimate = err;
    return res;
}

namespace detail {

struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> scaled_weights;  // w_i * e^{x_i}
};

// Roots of L_n by Newton iteration; weights stored with the e^{x} factor
// already applied so the caller never forms the raw (underflowing) weight.
inline LaguerreRule gauss_laguerre_rule(int n) {
    if (n < 2 || n > 128) throw std::invalid_argument("gauss_laguerre_rule: order out of range");
    LaguerreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.scaled_weights.resize(static_cast<std::size_t>(n));
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[static_cast<std::size_t>(i - 2)]);
        }
        double p1 = 1.0, p2 = 0.0, pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p1 = 1.0;
            p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (p1 - p2) / z;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, z)) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = z;
        // w = -1/(pp * n * p2); log form keeps w*e^{x} finite at large x
        const double logw = -std::log(std::abs(pp * double(n) * p2));
        rule.scaled_weights[static_cast<std::size_t>(i)] = std::exp(logw + z);
        if (!std::isfinite(rule.scaled_weights[static_cast<std::size_t>(i)]))
            throw std::runtime_error("gauss_laguerre_rule: weight overflow");
    }
    return rule;
}

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration.
inline void gauss_legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
    }
}

}  // namespace detail

// Fixed-order Gauss-Laguerre evaluation of the same class of integrals,
// for cross-checking the adaptive scheme. The decay factor e^{-decay_scale*k}
// stays inside the callback; the rule works against the extracted weight.
template <typename F>
cplx integrate_decaying_laguerre(F&& f, const QuadratureSpec& spec, int order = 64) {
    detail::validate(spec);
    const auto rule = detail::gauss_laguerre_rule(order);
    const double lam = spec.decay_scale;
    cplx sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double k = rule.nodes[i] / lam;
        const cplx fk = f(k);
        if (!std::isfinite(fk.real()) || !std::isfinite(fk.imag()))
            throw ConvergenceError("integrate_decaying_laguerre: non-finite sample");
        sum += rule.scaled_weights[i] * fk;
    }
    return sum / lam;
}

// Damped-oscillatory variant: the integrand carries e^{-k tau} damping and
// phase factors whose radii do not exceed max_phase_radius, so the net decay
// scale is tau - max_phase_radius. Evaluation on or inside the light cone
// (tau <= max_phase_radius, within the wavefront window) is rejected.
template <typename F>
QuadratureResult integrate_damped_oscillatory(F&& f, double tau, double max_phase_radius,
                                              QuadratureSpec spec) {
    const double net = tau - max_phase_radius;
    if (!(net > epsilon_lightcone))
        throw std::domain_error(
            "integrate_damped_oscillatory: no net decay (tau too close to the light cone)");
    spec.decay_scale = net;
    return integrate_decaying(f, spec);
}

}  // namespace wallcp
