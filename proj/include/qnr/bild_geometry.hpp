// Boundary functions of the lower bild, their left tangents at the real axis,
// and the star-center of the bild (and, through similarity classes, of W).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnr/geometry.hpp"
#include "qnr/range_sampler.hpp"

namespace qnr {

/// x1(y) = min{x : (x, y) in B-}, x2(y) = max{x : (x, y) in B-} for y in
/// [y_m, 0], stored as piecewise-linear interpolants on shared knots.
class BoundaryFunctions {
public:
    BoundaryFunctions(std::vector<double> knots, std::vector<double> left, std::vector<double> right);

    double y_min() const { return knots_.front(); }
    double x1(double y) const { return interpolate(left_, y); }
    double x2(double y) const { return interpolate(right_, y); }
    const std::vector<double>& knots() const { return knots_; }

private:
    double interpolate(const std::vector<double>& vals, double y) const;
    std::vector<double> knots_;  // ascending, last knot is 0
    std::vector<double> left_, right_;
};

/// Throws std::invalid_argument for a hull that does not touch the axis, or
/// a non-flat estimate whose lower bild has no height.
BoundaryFunctions boundary_functions(const BildEstimate& est);

struct SlopeEstimate {
    double value = 0.0;            // extrapolated left derivative
    std::vector<double> secants;   // one per probe, in schedule order (probe step decreasing)
    double bracket_lo = 0.0;       // bracket around the derivative implied by monotone secants
    double bracket_hi = 0.0;
};

struct TangentPair {
    double m = 0.0, M = 0.0;
    SlopeEstimate a, b;  // left derivatives of x1 and x2 at 0
    Line l() const { return {a.value, m}; }
    Line L() const { return {b.value, M}; }
};

/// Probe steps y_M/8, y_M/16, y_M/32, y_M/64.
std::vector<double> default_probe_schedule(double y_max);

/// Monotone secant extrapolation of x1'(0-) and x2'(0-). Throws
/// std::invalid_argument when fewer than two probes fit inside the domain.
TangentPair left_derivatives(const BoundaryFunctions& bf, const std::vector<double>& probes);
TangentPair left_derivatives(const BoundaryFunctions& bf, double y_max);

struct SampledLine {
    Line line;
    Point2 from, to;  // endpoints at y_m and y_M
};

std::pair<SampledLine, SampledLine> tangent_lines(const TangentPair& tp, double y_m, double y_M);

enum class CenterKind { whole_bild, point, vertical_segment, kite_like };

std::string to_string(CenterKind kind);

struct CenterOptions {
    double eq_rel = 1e-3;      // m = M when M - m <= eq_rel * (pi_M - pi_m + 1)
    double slope_tol = 1e-2;   // a = b when |a - b| <= slope_tol
};

struct CenterRegion {
    CenterKind kind = CenterKind::kite_like;
    Polygon upper;                  // {w in B+ : l(w2) <= w1 <= L(w2)}
    Polygon polygon;                // upper and its conjugate
    std::optional<Point2> apex;     // l ∩ L when the slopes differ
    TangentPair tangents;
};

CenterRegion center_upper(const BildEstimate& est, const TangentPair& tp, const CenterOptions& opts = {});

/// Closed center polygon: the upper region together with its mirror image.
Polygon center_full(const CenterRegion& cr);

/// q lies in the center of W iff its class representative lies in the upper
/// region.
bool center_membership_W(const Quaternion& q, const CenterRegion& cr, double eps);

/// W is convex iff pi_m = m and pi_M = M.
bool is_convex(const BildEstimate& est, double eps);

/// True iff the line meets the interior of B- by more than `band`. With
/// `y_range` only the part of the line inside that height interval counts.
bool line_interior_test(const Line& line, const BildEstimate& est, double band = 1e-12,
                        std::optional<std::pair<double, double>> y_range = std::nullopt);

/// l_w: the line through w and (m, 0); L_w: through w and (M, 0). Throws
/// std::invalid_argument when w lies on the real axis.
Line line_through_m(const Point2& w, double m);
Line line_through_M(const Point2& w, double M);

/// Full pipeline: boundary functions, slopes and center for an estimate.
CenterRegion compute_center(const BildEstimate& est, const CenterOptions& opts = {});

}  // namespace qnr
