// Square quaternionic matrices, the hermitian/skew split, the complex adjoint
// representation, and the constructive real point of the numerical range.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "qnr/quaternion.hpp"

namespace qnr {

using QVector = std::vector<Quaternion>;

double norm(std::span<const Quaternion> x);
/// x* y = sum conj(x_l) y_l.
Quaternion inner(std::span<const Quaternion> x, std::span<const Quaternion> y);
/// x s (right scalar multiplication).
QVector scale_right(std::span<const Quaternion> x, const Quaternion& s);
QVector normalized(std::span<const Quaternion> x);
QVector basis_vector(std::size_t n, std::size_t idx);

class QMatrix {
public:
    QMatrix() = default;
    /// Zero matrix of dimension n >= 1.
    explicit QMatrix(std::size_t n);
    /// Row-major entries; throws std::invalid_argument when not square or empty.
    explicit QMatrix(const std::vector<std::vector<Quaternion>>& rows);

    static QMatrix identity(std::size_t n);
    static QMatrix diagonal(std::span<const Quaternion> d);

    std::size_t size() const { return n_; }
    const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }

    /// Conjugate transpose.
    QMatrix adjoint() const;
    QVector apply(std::span<const Quaternion> x) const;
    /// Frobenius norm.
    double norm() const;
    double max_abs_diff(const QMatrix& other) const;

    QMatrix& operator+=(const QMatrix& o);
    QMatrix& operator-=(const QMatrix& o);
    QMatrix& operator*=(double s);
    friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
    friend QMatrix operator*(QMatrix a, double s) { return a *= s; }
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);

    bool is_hermitian(double eps) const { return max_abs_diff(adjoint()) <= eps; }
    bool is_skew_hermitian(double eps) const;

private:
    std::size_t n_ = 0;
    std::vector<Quaternion> data_;
};

/// Quadratic form x* A x.
Quaternion quadratic_form(const QMatrix& a, std::span<const Quaternion> x);

struct HermitianSkewSplit {
    QMatrix hermitian;  // (A + A*) / 2
    QMatrix skew;       // (A - A*) / 2
};

HermitianSkewSplit hermitian_skew_split(const QMatrix& a);

/// 2n x 2n complex matrix [[A1, A2], [-conj(A2), conj(A1)]] for A = A1 + A2 j.
Eigen::MatrixXcd complex_adjoint(const QMatrix& a);

/// Inverse of complex_adjoint; throws std::invalid_argument when the block
/// structure is violated by more than tol.
QMatrix from_complex_adjoint(const Eigen::MatrixXcd& c, double tol = 1e-10);

struct SkewDiagonalization {
    QMatrix unitary;                 // U with U* S U diagonal
    std::vector<Quaternion> entries; // |lambda_l| i, sorted by descending modulus
};

/// Unitary diagonalization of a skew-hermitian matrix. Throws
/// std::invalid_argument when the input is not skew-hermitian within tol.
SkewDiagonalization diagonalize_skew(const QMatrix& s, double tol = 1e-10);

struct RealPoint {
    QVector x;       // unit vector with x* A x real
    double value{};  // r = x* A x
    double beta{};   // mixing weight of the two leading skew directions
    double imaginary_residual{};  // |vec(x* A x)|
};

/// Unit vector whose quadratic form is real. Throws std::domain_error for a
/// 1x1 non-real matrix, whose numerical range has no real element.
RealPoint real_point(const QMatrix& a);

}  // namespace qnr
