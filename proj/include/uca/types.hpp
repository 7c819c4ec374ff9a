// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_TYPES_HPP
#define UCA_TYPES_HPP

#include <cmath>
#include <complex>
#include <vector>

namespace uca {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    return {a.x / n, a.y / n, a.z / n};
}

// Complex-valued field vector in global Cartesian coordinates.
struct FieldVec {
    cplx x{}, y{}, z{};

    FieldVec operator+(const FieldVec& o) const { return {x + o.x, y + o.y, z + o.z}; }
    FieldVec operator*(const cplx& s) const { return {x * s, y * s, z * s}; }
};

inline cplx dot(const FieldVec& f, const Vec3& v) { return f.x * v.x + f.y * v.y + f.z * v.z; }

// Spherical unit vectors for a global direction (theta from +z, phi from +x).
inline Vec3 dir_from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}
inline Vec3 theta_hat(double theta, double phi) {
    const double ct = std::cos(theta);
    return {ct * std::cos(phi), ct * std::sin(phi), -std::sin(theta)};
}
inline Vec3 phi_hat(double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

} // namespace uca

#endif
