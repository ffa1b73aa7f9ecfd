#include "qnr/qmatrix.hpp"

#include <algorithm>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace qnr {

using cd = std::complex<double>;

double norm(std::span<const Quaternion> x) {
    double s = 0.0;
    for (const auto& q : x) s += q.norm_sq();
    return std::sqrt(s);
}

Quaternion inner(std::span<const Quaternion> x, std::span<const Quaternion> y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner: dimension mismatch");
    Quaternion s;
    for (std::size_t l = 0; l < x.size(); ++l) s += x[l].conj() * y[l];
    return s;
}

QVector scale_right(std::span<const Quaternion> x, const Quaternion& s) {
    QVector out(x.begin(), x.end());
    for (auto& q : out) q = q * s;
    return out;
}

QVector normalized(std::span<const Quaternion> x) {
    const double nx = norm(x);
    if (nx == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    QVector out(x.begin(), x.end());
    for (auto& q : out) q /= nx;
    return out;
}

QVector basis_vector(std::size_t n, std::size_t idx) {
    QVector e(n);
    e.at(idx) = Quaternion(1.0);
    return e;
}

QMatrix::QMatrix(std::size_t n) : n_(n), data_(n * n) {
    if (n == 0) throw std::invalid_argument("matrix dimension must be at least 1");
}

QMatrix::QMatrix(const std::vector<std::vector<Quaternion>>& rows) : QMatrix(rows.size()) {
    for (std::size_t r = 0; r < n_; ++r) {
        if (rows[r].size() != n_) throw std::invalid_argument("matrix must be square");
        std::copy(rows[r].begin(), rows[r].end(), data_.begin() + static_cast<std::ptrdiff_t>(r * n_));
    }
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n);
    for (std::size_t l = 0; l < n; ++l) m(l, l) = Quaternion(1.0);
    return m;
}

QMatrix QMatrix::diagonal(std::span<const Quaternion> d) {
    QMatrix m(d.size());
    for (std::size_t l = 0; l < d.size(); ++l) m(l, l) = d[l];
    return m;
}

QMatrix QMatrix::adjoint() const {
    QMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) out(c, r) = (*this)(r, c).conj();
    return out;
}

QVector QMatrix::apply(std::span<const Quaternion> x) const {
    if (x.size() != n_) throw std::invalid_argument("apply: dimension mismatch");
    QVector y(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
}

double QMatrix::norm() const {
    double s = 0.0;
    for (const auto& q : data_) s += q.norm_sq();
    return std::sqrt(s);
}

double QMatrix::max_abs_diff(const QMatrix& other) const {
    if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
    double d = 0.0;
    for (std::size_t t = 0; t < data_.size(); ++t) d = std::max(d, qnr::max_abs_diff(data_[t], other.data_[t]));
    return d;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
    if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
    for (std::size_t t = 0; t < data_.size(); ++t) data_[t] += o.data_[t];
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
    if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
    for (std::size_t t = 0; t < data_.size(); ++t) data_[t] -= o.data_[t];
    return *this;
}

QMatrix& QMatrix::operator*=(double s) {
    for (auto& q : data_) q *= s;
    return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    const std::size_t n = a.size();
    QMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t c = 0; c < n; ++c) out(r, c) += a(r, t) * b(t, c);
    return out;
}

bool QMatrix::is_skew_hermitian(double eps) const {
    const QMatrix sum = *this + adjoint();
    return sum.max_abs_diff(QMatrix(n_)) <= eps;
}

Quaternion quadratic_form(const QMatrix& a, std::span<const Quaternion> x) {
    const QVector ax = a.apply(x);
    return inner(x, ax);
}

HermitianSkewSplit hermitian_skew_split(const QMatrix& a) {
    const QMatrix star = a.adjoint();
    return {(a + star) * 0.5, (a - star) * 0.5};
}

Eigen::MatrixXcd complex_adjoint(const QMatrix& a) {
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXcd c(2 * n, 2 * n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index s = 0; s < n; ++s) {
            const auto& q = a(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
            const cd z1(q[0], q[1]);
            const cd z2(q[2], q[3]);
            c(r, s) = z1;
            c(r, s + n) = z2;
            c(r + n, s) = -std::conj(z2);
            c(r + n, s + n) = std::conj(z1);
        }
    }
    return c;
}

QMatrix from_complex_adjoint(const Eigen::MatrixXcd& c, double tol) {
    if (c.rows() != c.cols() || c.rows() == 0 || c.rows() % 2 != 0)
        throw std::invalid_argument("complex adjoint must be a nonempty 2n x 2n matrix");
    const Eigen::Index n = c.rows() / 2;
    QMatrix a(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index s = 0; s < n; ++s) {
            const cd z1 = c(r, s);
            const cd z2 = c(r, s + n);
            if (std::abs(c(r + n, s) + std::conj(z2)) > tol || std::abs(c(r + n, s + n) - std::conj(z1)) > tol)
                throw std::invalid_argument("matrix is not the complex adjoint of a quaternionic matrix");
            a(static_cast<std::size_t>(r), static_cast<std::size_t>(s)) =
                Quaternion(z1.real(), z1.imag(), z2.real(), z2.imag());
        }
    }
    return a;
}

namespace {

// Complex eigenvector (u; w) of the adjoint with eigenvalue lambda maps to the
// quaternionic vector x = u - conj(w) j, which satisfies A x = x lambda.
QVector quaternion_vector(const Eigen::VectorXcd& v) {
    const Eigen::Index n = v.size() / 2;
    QVector x(static_cast<std::size_t>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
        const cd u = v(l);
        const cd x2 = -std::conj(v(l + n));
        x[static_cast<std::size_t>(l)] = Quaternion(u.real(), u.imag(), x2.real(), x2.imag());
    }
    return x;
}

// Fix the free complex phase: the first coordinate of (near) maximal modulus
// becomes real and positive.
Eigen::VectorXcd canonical_phase(Eigen::VectorXcd v) {
    const double peak = v.cwiseAbs().maxCoeff();
    if (peak == 0.0) return v;
    Eigen::Index pivot = 0;
    for (Eigen::Index t = 0; t < v.size(); ++t) {
        if (std::abs(v(t)) >= peak * (1.0 - 1e-8)) {
            pivot = t;
            break;
        }
    }
    const cd phase = v(pivot) / std::abs(v(pivot));
    return v * std::conj(phase);
}

}  // namespace

SkewDiagonalization diagonalize_skew(const QMatrix& s, double tol) {
    if (!s.is_skew_hermitian(tol)) throw std::invalid_argument("diagonalize_skew: input is not skew-hermitian");
    const std::size_t n = s.size();

    // The adjoint of a skew-hermitian matrix is skew-hermitian, so -i * adjoint
    // is hermitian with real spectrum symmetric about zero.
    const Eigen::MatrixXcd herm = cd(0.0, -1.0) * complex_adjoint(s);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
    if (solver.info() != Eigen::Success) throw std::runtime_error("diagonalize_skew: eigensolver failed");
    const Eigen::VectorXd& mu = solver.eigenvalues();  // ascending

    std::vector<Eigen::Index> order(static_cast<std::size_t>(mu.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return mu(a) > mu(b); });

    SkewDiagonalization out{QMatrix(n), {}};
    std::vector<QVector> columns;
    for (Eigen::Index idx : order) {
        if (columns.size() == n) break;
        QVector x = quaternion_vector(canonical_phase(solver.eigenvectors().col(idx)));
        // Zero eigenvalues pair up with their j-partners; keep only quaternionically
        // independent directions.
        for (const auto& c : columns) {
            const Quaternion proj = inner(c, x);
            for (std::size_t l = 0; l < n; ++l) x[l] -= c[l] * proj;
        }
        const double nx = norm(x);
        if (nx < 1e-8) continue;
        for (auto& q : x) q /= nx;
        columns.push_back(std::move(x));
        out.entries.push_back(Quaternion::i() * std::max(mu(idx), 0.0));
    }
    if (columns.size() != n) throw std::runtime_error("diagonalize_skew: could not assemble a unitary basis");
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) out.unitary(r, c) = columns[c][r];
    return out;
}

RealPoint real_point(const QMatrix& a) {
    const std::size_t n = a.size();
    const double scale = std::max(1.0, a.norm());
    const auto split = hermitian_skew_split(a);

    auto finish = [&](QVector x, double beta) {
        RealPoint rp;
        const Quaternion v = quadratic_form(a, x);
        rp.x = std::move(x);
        rp.value = v.real();
        rp.beta = beta;
        rp.imaginary_residual = v.vector_norm();
        return rp;
    };

    if (n == 1) {
        if (a(0, 0).vector_norm() > 1e-12 * scale)
            throw std::domain_error("W∩R empty for 1x1 nonreal input");
        return finish(basis_vector(1, 0), 1.0);
    }

    const auto diag = diagonalize_skew(split.skew, 1e-10 * scale);
    const double s1 = diag.entries[0].vector_norm();
    const double s2 = diag.entries[1].vector_norm();
    if (s1 <= 1e-12 * scale) return finish(basis_vector(n, 0), 1.0);

    // q1 = s1 lies in C^+; conjugating s2 by j sends it to -|s2| i in C^-.
    // beta q1 + (1 - beta) q2 = 0 then fixes the mixing weight.
    const double beta = s2 / (s1 + s2);
    const double w1 = std::sqrt(beta);
    const double w2 = std::sqrt(1.0 - beta);
    QVector x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = diag.unitary(r, 0) * w1 + diag.unitary(r, 1) * Quaternion::j() * w2;
    return finish(normalized(x), beta);
}

}  // namespace qnr
