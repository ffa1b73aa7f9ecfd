// Quaternion arithmetic, similarity classes and canonical complex representatives.

#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace qnr {

/// Real quaternion a0 + a1 i + a2 j + a3 k in double precision.
class Quaternion {
public:
    constexpr Quaternion() = default;
    constexpr Quaternion(double a0, double a1 = 0.0, double a2 = 0.0, double a3 = 0.0)
        : c_{a0, a1, a2, a3} {}
    explicit constexpr Quaternion(const std::array<double, 4>& c) : c_(c) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr double operator[](std::size_t idx) const { return c_[idx]; }
    constexpr double& operator[](std::size_t idx) { return c_[idx]; }
    constexpr const std::array<double, 4>& coeffs() const { return c_; }

    constexpr double real() const { return c_[0]; }
    constexpr Quaternion vector_part() const { return {0.0, c_[1], c_[2], c_[3]}; }
    constexpr double vector_norm_sq() const { return c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }
    double vector_norm() const { return std::sqrt(vector_norm_sq()); }
    constexpr double norm_sq() const { return c_[0] * c_[0] + vector_norm_sq(); }
    double norm() const { return std::sqrt(norm_sq()); }

    constexpr Quaternion conj() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }
    Quaternion inverse() const;
    bool is_pure(double eps = 0.0) const { return std::abs(c_[0]) <= eps; }

    constexpr Quaternion& operator+=(const Quaternion& q) {
        for (std::size_t t = 0; t < 4; ++t) c_[t] += q.c_[t];
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& q) {
        for (std::size_t t = 0; t < 4; ++t) c_[t] -= q.c_[t];
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    constexpr Quaternion& operator/=(double s) {
        for (auto& v : c_) v /= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
    friend constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
    friend constexpr Quaternion operator-(const Quaternion& p) { return {-p.c_[0], -p.c_[1], -p.c_[2], -p.c_[3]}; }
    friend constexpr Quaternion operator*(Quaternion p, double s) { return p *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion p) { return p *= s; }
    friend constexpr Quaternion operator/(Quaternion p, double s) { return p /= s; }

    // Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
    friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        const auto& a = p.c_;
        const auto& b = q.c_;
        return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
    }
    Quaternion& operator*=(const Quaternion& q) { return *this = *this * q; }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

private:
    std::array<double, 4> c_{0.0, 0.0, 0.0, 0.0};
};

inline Quaternion hamilton_product(const Quaternion& p, const Quaternion& q) { return p * q; }

/// Euclidean inner product on R^4, equal to Re(p* q).
constexpr double dot(const Quaternion& p, const Quaternion& q) {
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3];
}

/// Largest coefficient difference.
double max_abs_diff(const Quaternion& p, const Quaternion& q);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// Similarity class [q], determined by (q_r, |q_v|).
struct SimilarityClass {
    double real_part = 0.0;
    double vector_norm = 0.0;
};

SimilarityClass similarity_class(const Quaternion& q);

inline constexpr double kDefaultSimilarityEps = 1e-9;

/// p ~ q iff they share real part and vector norm (up to eps).
bool similar(const Quaternion& p, const Quaternion& q, double eps = kDefaultSimilarityEps);

/// Point of the closed upper half plane, x + i y with y >= 0.
struct UpperPoint {
    double x = 0.0;
    double y = 0.0;
};

/// The class representative q_r + i|q_v| in span{1,i}^+.
UpperPoint upper_representative(const Quaternion& q);

/// p.x + p.y u, the representative of the class in span{1,u}^+.
/// Throws std::invalid_argument unless u is a unit pure quaternion (within tol).
Quaternion rotate_to_slice(const UpperPoint& p, const Quaternion& u, double tol = 1e-12);

}  // namespace qnr
