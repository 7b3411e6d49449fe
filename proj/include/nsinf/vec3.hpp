#pragma once

#include <cmath>
#include <cstdint>
#include <compare>

namespace nsinf {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm_sq() const { return dot(*this); }
    double norm() const { return std::sqrt(norm_sq()); }

    bool operator==(const Vec3&) const = default;
};

inline Vec3 operator*(double a, const Vec3& v) { return v * a; }

// Integer lattice wavevector. Components are bounded well below the
// 64-bit limit at construction time so that |k|^2 stays exact in both
// int64 and double arithmetic.
struct IVec3 {
    std::int64_t x = 0, y = 0, z = 0;

    std::int64_t operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    IVec3 operator+(const IVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    IVec3 operator-(const IVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    IVec3 operator-() const { return {-x, -y, -z}; }

    std::int64_t norm_sq_i() const { return x * x + y * y + z * z; }
    double norm_sq() const { return double(norm_sq_i()); }
    double norm() const { return std::sqrt(norm_sq()); }

    Vec3 to_vec3() const { return {double(x), double(y), double(z)}; }
    double dot(const Vec3& v) const { return double(x) * v.x + double(y) * v.y + double(z) * v.z; }

    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
    // true if the first nonzero component is positive (canonical sign rule)
    bool lex_positive() const {
        if (x != 0) return x > 0;
        if (y != 0) return y > 0;
        return z > 0;
    }

    auto operator<=>(const IVec3&) const = default;
};

inline double dot(const Vec3& a, const IVec3& k) { return k.dot(a); }

} // namespace nsinf
