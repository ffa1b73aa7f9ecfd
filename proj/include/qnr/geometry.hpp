// Planar convex-polygon toolkit used by the bild and center computations.
//
// Polygons are vertex lists in counterclockwise order. Degenerate polygons
// (a single point or a segment given by its two endpoints) are allowed
// everywhere; they have zero area and an empty interior.

#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qnr {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

using Polygon = std::vector<Point2>;

/// Affine map y -> slope * y + intercept, read as the line x = slope * y + intercept.
struct Line {
    double slope = 0.0;
    double intercept = 0.0;
    double operator()(double y) const { return slope * y + intercept; }
};

double cross(const Point2& o, const Point2& a, const Point2& b);
double distance(const Point2& a, const Point2& b);
double distance_to_segment(const Point2& p, const Point2& a, const Point2& b);

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
/// Collinear input yields its two extreme points, a single point yields itself.
Polygon convex_hull(std::vector<Point2> pts);

double signed_area(std::span<const Point2> poly);
double perimeter(std::span<const Point2> poly);
Point2 centroid(std::span<const Point2> poly);

/// Keep the part of a convex polygon with nx*x + ny*y <= c.
Polygon clip_halfplane(std::span<const Point2> poly, double nx, double ny, double c);

/// Horizontal section of a convex polygon at height y: [xmin, xmax].
std::optional<std::pair<double, double>> slice_at(std::span<const Point2> poly, double y);

/// Minimum inward distance to the edges of a convex polygon with positive
/// area; positive strictly inside, negative outside.
double depth(std::span<const Point2> poly, const Point2& p);

/// Euclidean distance from p to the closed region (0 when inside).
double distance_to_polygon(std::span<const Point2> poly, const Point2& p);

bool contains(std::span<const Point2> poly, const Point2& p, double eps);

/// Mirror image across the real axis, re-oriented counterclockwise.
Polygon reflect(std::span<const Point2> poly);

/// Parameter range [t0, t1] of the line (slope*t + intercept, t) lying in the
/// closed convex polygon, when nonempty.
std::optional<std::pair<double, double>> clip_line(std::span<const Point2> poly, const Line& line);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff(std::span<const Point2> a, std::span<const Point2> b);

/// Points of the polygon boundary spaced evenly by arc length.
std::vector<Point2> sample_boundary(std::span<const Point2> poly, std::size_t count);

/// O(log n) point-in-region test for a convex polygon: horizontal sections
/// are read off its left and right chains, which are monotone in y.
class SliceTable {
public:
    SliceTable() = default;
    explicit SliceTable(std::span<const Point2> poly);
    /// Section [xmin, xmax] at height y, for y within the polygon's y-range.
    std::pair<double, double> section(double y) const;
    bool contains(const Point2& p, double eps) const;
    bool empty() const { return left_.empty(); }

private:
    std::vector<Point2> left_, right_;  // ascending in y
};

}  // namespace qnr
