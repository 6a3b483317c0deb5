// Minimal fixed-size real/complex 3-vector and 3x3 matrix algebra used by the
// field kernels and energy-density integrands. All products are bilinear:
// dot(a,b) = sum_i a_i b_i with no complex conjugation anywhere, since the
// tensor contractions these serve are analytic continuations, not inner
// products.
#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace wallcp {

using cplx = std::complex<double>;

template <typename T>
struct Vec3 {
    std::array<T, 3> v{};

    constexpr T& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    constexpr const T& operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

using Vec3d = Vec3<double>;
using Vec3c = Vec3<cplx>;

template <typename T>
struct Mat3 {
    std::array<T, 9> m{};

    constexpr T& operator()(int p, int q) { return m[static_cast<std::size_t>(3 * p + q)]; }
    constexpr const T& operator()(int p, int q) const { return m[static_cast<std::size_t>(3 * p + q)]; }
};

using Mat3d = Mat3<double>;
using Mat3c = Mat3<cplx>;

// 27-entry Levi-Civita table.
inline constexpr double levi_civita(int p, int q, int s) {
    constexpr std::array<double, 27> eps = [] {
        std::array<double, 27> e{};
        e[0 * 9 + 1 * 3 + 2] = 1.0;
        e[1 * 9 + 2 * 3 + 0] = 1.0;
        e[2 * 9 + 0 * 3 + 1] = 1.0;
        e[0 * 9 + 2 * 3 + 1] = -1.0;
        e[2 * 9 + 1 * 3 + 0] = -1.0;
        e[1 * 9 + 0 * 3 + 2] = -1.0;
        return e;
    }();
    return eps[static_cast<std::size_t>(9 * p + 3 * q + s)];
}

template <typename T>
constexpr Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
    return {{a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]}};
}

template <typename T>
constexpr Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
    return {{a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2]}};
}

template <typename T, typename S>
constexpr auto operator*(S s, const Vec3<T>& a) -> Vec3<decltype(s * a.v[0])> {
    return {{s * a.v[0], s * a.v[1], s * a.v[2]}};
}

template <typename T>
constexpr T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

inline cplx dot(const Vec3c& a, const Vec3d& b) {
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

template <typename T, typename S>
auto operator*(const Mat3<S>& M, const Vec3<T>& x) -> Vec3<decltype(M(0, 0) * x[0])> {
    Vec3<decltype(M(0, 0) * x[0])> y;
    for (int p = 0; p < 3; ++p)
        y[p] = M(p, 0) * x[0] + M(p, 1) * x[1] + M(p, 2) * x[2];
    return y;
}

template <typename T>
constexpr Mat3<T> operator+(const Mat3<T>& a, const Mat3<T>& b) {
    Mat3<T> c;
    for (std::size_t i = 0; i < 9; ++i) c.m[i] = a.m[i] + b.m[i];
    return c;
}

template <typename T, typename S>
constexpr auto operator*(S s, const Mat3<T>& a) -> Mat3<decltype(s * a.m[0])> {
    Mat3<decltype(s * a.m[0])> c;
    for (std::size_t i = 0; i < 9; ++i) c.m[i] = s * a.m[i];
    return c;
}

inline constexpr Mat3d identity3() {
    Mat3d I;
    I(0, 0) = I(1, 1) = I(2, 2) = 1.0;
    return I;
}

// a_p b_q
inline Mat3d outer(const Vec3d& a, const Vec3d& b) {
    Mat3d M;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) M(p, q) = a[p] * b[q];
    return M;
}

inline Mat3d real_part(const Mat3c& M) {
    Mat3d R;
    for (std::size_t i = 0; i < 9; ++i) R.m[i] = M.m[i].real();
    return R;
}

inline Mat3d imag_part(const Mat3c& M) {
    Mat3d R;
    for (std::size_t i = 0; i < 9; ++i) R.m[i] = M.m[i].imag();
    return R;
}

}  // namespace wallcp
