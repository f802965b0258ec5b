#pragma once

#include <cmath>
#include <complex>
#include <ostream>

namespace qpot {

// Quaternion q = w + x*i + y*j + z*k over doubles. Component storage order is
// (w, x, y, z) and is relied on by the coordinate maps.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    // Real scalar embeds as w + 0i + 0j + 0k.
    constexpr Quaternion(double real) : w(real) {}

    [[nodiscard]] constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    [[nodiscard]] double norm() const { return std::sqrt(norm_sq()); }
    [[nodiscard]] constexpr double norm_sq() const {
        return w * w + x * x + y * y + z * z;
    }
    [[nodiscard]] constexpr bool is_real(double tol = 0.0) const {
        return std::abs(x) <= tol && std::abs(y) <= tol && std::abs(z) <= tol;
    }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        w += r.w; x += r.x; y += r.y; z += r.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        w -= r.w; x -= r.x; y -= r.y; z -= r.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) {
        return a += b;
    }
    friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) {
        return a -= b;
    }
    friend constexpr Quaternion operator-(const Quaternion& a) {
        return {-a.w, -a.x, -a.y, -a.z};
    }
    friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

    // Hamilton product; noncommutative.
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

inline constexpr Quaternion quat_i{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion quat_j{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion quat_k{0.0, 0.0, 0.0, 1.0};

// Split q = z1 + j*z2 with z1 = w + x*i and z2 = y - z*i, so that
// z1 + j*(y - z*i) = w + x*i + y*j + z*k.
struct ComplexPair {
    std::complex<double> z1;
    std::complex<double> z2;
};

[[nodiscard]] inline ComplexPair complex_split(const Quaternion& q) {
    return {{q.w, q.x}, {q.y, -q.z}};
}

[[nodiscard]] inline Quaternion from_complex_pair(const ComplexPair& p) {
    return {p.z1.real(), p.z1.imag(), p.z2.real(), -p.z2.imag()};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

} // namespace qpot
