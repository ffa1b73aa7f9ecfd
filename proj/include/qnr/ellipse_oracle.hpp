// Closed-form bild of the 2x2 family A = [[k1 i, alpha], [-alpha, 1 + k2 i]]:
// the lower bild is bounded by an ellipse tangent to x = 0 at (0, -k1) and to
// x = 1 at (1, -k2), closed off by the real segment [m, M].

#pragma once

#include <array>
#include <string>

#include "qnr/bild_geometry.hpp"
#include "qnr/qmatrix.hpp"

namespace qnr {

/// A x^2 + B xy + C y^2 + D x + E y + F = 0.
struct Conic {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;

    double operator()(double x, double y) const { return A * x * x + B * x * y + C * y * y + D * x + E * y + F; }
    double dx(double x, double y) const { return 2.0 * A * x + B * y + D; }
    double dy(double x, double y) const { return B * x + 2.0 * C * y + E; }
    double discriminant() const { return B * B - 4.0 * A * C; }
    std::array<double, 6> coefficients() const { return {A, B, C, D, E, F}; }
};

/// e.g. "x²+4y²−x+y+0.0625=0"; coefficients printed with 12 significant digits.
std::string format_conic(const Conic& c);

struct EllipseModel {
    double alpha = 0.0, k1 = 0.0, k2 = 0.0;
    Conic conic;          // normalized so that A = 1
    double m = 0.0, M = 0.0;
    double y_m = 0.0;     // lowest point of the ellipse
    double a = 0.0, b = 0.0;
};

/// Throws std::invalid_argument unless alpha, k1, k2 > 0 and alpha^2 > k1 k2.
EllipseModel st_ellipse(double alpha, double k1, double k2);

/// The matrix of the family with these parameters.
QMatrix st_matrix(double alpha, double k1, double k2);

struct EllipseSlopes {
    double a = 0.0, b = 0.0;                  // closed-form left derivatives
    double a_implicit = 0.0, b_implicit = 0.0; // -F_y / F_x at (m, 0) and (M, 0)
};

/// Throws std::invalid_argument when m = M.
EllipseSlopes st_derivatives(const EllipseModel& model, double k1, double k2);
EllipseSlopes st_derivatives(const EllipseModel& model);

/// Upper bild (mirror of the lower ellipse arc) as a polygon with `count` arc
/// points plus the exact axis endpoints.
Polygon st_upper_bild(const EllipseModel& model, std::size_t count = 4096);

/// conv{(m,0), apex, (M,0), apex*}.
Polygon st_kite(const EllipseModel& model);

/// Center from the exact tangents, clipped to the sampled upper bild.
CenterRegion st_center(const EllipseModel& model, std::size_t count = 4096);

}  // namespace qnr
