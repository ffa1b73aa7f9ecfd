#include "qnr/ellipse_oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qnr {

namespace {

// Roots lo <= hi of p t^2 + q t + r.
std::pair<double, double> quadratic_roots(double p, double q, double r) {
    const double disc = q * q - 4.0 * p * r;
    if (disc < 0.0) throw std::domain_error("quadratic has no real roots");
    const double s = std::sqrt(disc);
    // Stable form: avoid cancellation in the smaller-magnitude root.
    const double w = -0.5 * (q + std::copysign(s, q));
    double t1 = w / p;
    double t2 = w != 0.0 ? r / w : -q / p - t1;
    if (t1 > t2) std::swap(t1, t2);
    return {t1, t2};
}

std::string format_coefficient(double c, bool leading, const char* monomial) {
    const bool neg = c < 0.0;
    const double mag = std::abs(c);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", mag);
    std::string num = buf;
    std::string out;
    if (neg)
        out = "−";
    else if (!leading)
        out = "+";
    if (*monomial == '\0' || num != "1") out += num;
    out += monomial;
    return out;
}

}  // namespace

std::string format_conic(const Conic& c) {
    const auto k = c.coefficients();
    static const char* mono[6] = {"x²", "xy", "y²", "x", "y", ""};
    double scale = 0.0;
    for (double v : k) scale = std::max(scale, std::abs(v));
    std::string out;
    for (std::size_t t = 0; t < 6; ++t) {
        if (std::abs(k[t]) <= 1e-12 * scale) continue;
        out += format_coefficient(k[t], out.empty(), mono[t]);
    }
    if (out.empty()) out = "0";
    return out + "=0";
}

QMatrix st_matrix(double alpha, double k1, double k2) {
    return QMatrix({{Quaternion(0.0, k1), Quaternion(alpha)}, {Quaternion(-alpha), Quaternion(1.0, k2)}});
}

EllipseModel st_ellipse(double alpha, double k1, double k2) {
    if (!(alpha > 0.0 && k1 > 0.0 && k2 > 0.0)) throw std::invalid_argument("alpha, k1, k2 must be positive");
    if (!(alpha * alpha > k1 * k2)) throw std::invalid_argument("need alpha^2 > k1 k2");
    EllipseModel e{alpha, k1, k2, {}, 0.0, 0.0, 0.0, 0.0, 0.0};

    // Real points t of the bild: (k1 + (k2 - k1) t)^2 <= 4 alpha^2 t (1 - t).
    const double dk = k2 - k1;
    const double four_a2 = 4.0 * alpha * alpha;
    const auto [m, M_axis] = quadratic_roots(four_a2 + dk * dk, 2.0 * k1 * dk - four_a2, k1 * k1);

    // Columns A..F; points (0,-k1), (1,-k2), (m,0) and vertical tangents.
    Eigen::Matrix<double, 5, 6> sys;
    sys << 0, 0, k1 * k1, 0, -k1, 1,
           0, 0, -2 * k1, 0, 1, 0,
           1, -k2, k2 * k2, 1, -k2, 1,
           0, 1, -2 * k2, 0, 1, 0,
           m * m, 0, 0, m, 0, 1;
    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 6>> svd(sys, Eigen::ComputeFullV);
    Eigen::Matrix<double, 6, 1> v = svd.matrixV().col(5);
    if (std::abs(v(0)) < 1e-300) throw std::domain_error("degenerate conic");
    v /= v(0);
    e.conic = {v(0), v(1), v(2), v(3), v(4), v(5)};
    e.m = m;
    // Second root of the conic on y = 0, from the product of roots.
    e.M = e.conic.F / (e.conic.A * m);
    if (std::abs(e.M - M_axis) > 1e-8 * (1.0 + std::abs(M_axis)))
        throw std::domain_error("conic and real-axis roots disagree");

    // Lowest point: F_x = 0 gives x = p y + q on the polar line.
    const Conic& c = e.conic;
    const double p = -c.B / (2.0 * c.A);
    const double q = -c.D / (2.0 * c.A);
    const auto ys = quadratic_roots(c.A * p * p + c.B * p + c.C, 2.0 * c.A * p * q + c.B * q + c.D * p + c.E,
                                    c.A * q * q + c.D * q + c.F);
    e.y_m = ys.first;

    const EllipseSlopes s = st_derivatives(e, k1, k2);
    e.a = s.a;
    e.b = s.b;
    return e;
}

EllipseSlopes st_derivatives(const EllipseModel& model, double k1, double k2) {
    const double m = model.m, M = model.M;
    if (!(M - m > 0.0)) throw std::invalid_argument("derivatives need m < M");
    EllipseSlopes s;
    const double den = k1 * k1 * (M - m);
    s.a = 2.0 * m * M * (k1 + (k2 - k1) * m) / den;
    s.b = -2.0 * m * M * (k1 + (k2 - k1) * M) / den;
    const Conic& c = model.conic;
    s.a_implicit = -c.dy(m, 0.0) / c.dx(m, 0.0);
    s.b_implicit = -c.dy(M, 0.0) / c.dx(M, 0.0);
    return s;
}

EllipseSlopes st_derivatives(const EllipseModel& model) { return st_derivatives(model, model.k1, model.k2); }

Polygon st_upper_bild(const EllipseModel& model, std::size_t count) {
    const Conic& c = model.conic;
    Eigen::Matrix2d grad;
    grad << 2.0 * c.A, c.B, c.B, 2.0 * c.C;
    const Eigen::Vector2d ctr = grad.inverse() * Eigen::Vector2d(-c.D, -c.E);
    const double f0 = c(ctr(0), ctr(1));
    Eigen::Matrix2d quad;
    quad << c.A, 0.5 * c.B, 0.5 * c.B, c.C;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(quad);
    const Eigen::Vector2d radii(std::sqrt(-f0 / es.eigenvalues()(0)), std::sqrt(-f0 / es.eigenvalues()(1)));

    std::vector<Point2> pts{{model.m, 0.0}, {model.M, 0.0}};
    for (std::size_t t = 0; t < count; ++t) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(count);
        const Eigen::Vector2d p =
            ctr + es.eigenvectors() * Eigen::Vector2d(radii(0) * std::cos(th), radii(1) * std::sin(th));
        if (p(1) < 0.0) pts.push_back({p(0), -p(1)});
    }
    return convex_hull(pts);
}

Polygon st_kite(const EllipseModel& model) {
    const double y = (model.M - model.m) / (model.a - model.b);
    const double x = model.a * y + model.m;
    return {{model.M, 0.0}, {x, y}, {model.m, 0.0}, {x, -y}};
}

CenterRegion st_center(const EllipseModel& model, std::size_t count) {
    const BildEstimate est = estimate_from_polygon(st_upper_bild(model, count), 1e-2, 0.0);
    TangentPair tp;
    tp.m = model.m;
    tp.M = model.M;
    tp.a.value = tp.a.bracket_lo = tp.a.bracket_hi = model.a;
    tp.b.value = tp.b.bracket_lo = tp.b.bracket_hi = model.b;
    return center_upper(est, tp);
}

}  // namespace qnr
