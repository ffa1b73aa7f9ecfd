#include "qnr/bild_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnr {

BoundaryFunctions::BoundaryFunctions(std::vector<double> knots, std::vector<double> left, std::vector<double> right)
    : knots_(std::move(knots)), left_(std::move(left)), right_(std::move(right)) {
    if (knots_.empty() || knots_.size() != left_.size() || knots_.size() != right_.size())
        throw std::invalid_argument("boundary functions: knot/value size mismatch");
    if (!std::is_sorted(knots_.begin(), knots_.end()) || knots_.back() != 0.0)
        throw std::invalid_argument("boundary functions: knots must ascend to 0");
}

double BoundaryFunctions::interpolate(const std::vector<double>& vals, double y) const {
    const double slack = 1e-12 * (1.0 + std::abs(knots_.front()));
    if (y < knots_.front() - slack || y > slack) throw std::domain_error("boundary functions: y outside [y_m, 0]");
    if (knots_.size() == 1) return vals[0];
    y = std::clamp(y, knots_.front(), 0.0);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), y);
    const auto hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - knots_.begin(), knots_.size() - 1));
    const std::size_t lo = hi - 1;
    const double w = (y - knots_[lo]) / (knots_[hi] - knots_[lo]);
    return (1.0 - w) * vals[lo] + w * vals[hi];
}

BoundaryFunctions boundary_functions(const BildEstimate& est) {
    if (est.hull.empty() || !slice_at(est.hull, 0.0))
        throw std::invalid_argument("boundary functions: hull does not meet the real axis");
    if (est.flat) return BoundaryFunctions({0.0}, {est.m}, {est.M});
    if (est.y_M <= 0.0) throw std::invalid_argument("boundary functions: lower bild has no height");

    // Every hull vertex height is a knot, so interpolation between knots is exact.
    std::vector<double> knots;
    for (const auto& p : est.hull) knots.push_back(-p.y);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<double> left, right;
    for (double y : knots) {
        const auto s = slice_at(est.hull, -y);
        if (!s) throw std::invalid_argument("boundary functions: hull has a gap");
        left.push_back(s->first);
        right.push_back(s->second);
    }
    return BoundaryFunctions(std::move(knots), std::move(left), std::move(right));
}

std::vector<double> default_probe_schedule(double y_max) {
    return {y_max / 8.0, y_max / 16.0, y_max / 32.0, y_max / 64.0};
}

namespace {

SlopeEstimate extrapolate(const std::vector<double>& steps, const std::vector<double>& secants) {
    SlopeEstimate s;
    s.secants = secants;
    const std::size_t n = secants.size();
    const double e_prev = steps[n - 2], e_last = steps[n - 1];
    // First-order error in the step: remove it from the last two secants.
    s.value = secants[n - 1] + (secants[n - 1] - secants[n - 2]) * e_last / (e_prev - e_last);
    s.bracket_lo = std::min(secants[n - 1], s.value);
    s.bracket_hi = std::max(secants[n - 1], s.value);
    return s;
}

}  // namespace

TangentPair left_derivatives(const BoundaryFunctions& bf, const std::vector<double>& probes) {
    const double span = -bf.y_min();
    std::vector<double> steps;
    for (double e : probes)
        if (e > 0.0 && e <= span * (1.0 + 1e-12) && (steps.empty() || e < steps.back())) steps.push_back(std::min(e, span));
    if (steps.size() < 2) throw std::invalid_argument("left derivatives: fewer than 2 usable probes");

    TangentPair tp;
    tp.m = bf.x1(0.0);
    tp.M = bf.x2(0.0);
    std::vector<double> sa, sb;
    for (double e : steps) {
        sa.push_back((tp.m - bf.x1(-e)) / e);
        sb.push_back((tp.M - bf.x2(-e)) / e);
    }
    tp.a = extrapolate(steps, sa);
    tp.b = extrapolate(steps, sb);
    return tp;
}

TangentPair left_derivatives(const BoundaryFunctions& bf, double y_max) {
    return left_derivatives(bf, default_probe_schedule(y_max));
}

std::pair<SampledLine, SampledLine> tangent_lines(const TangentPair& tp, double y_m, double y_M) {
    auto sampled = [&](const Line& ln) { return SampledLine{ln, {ln(y_m), y_m}, {ln(y_M), y_M}}; };
    return {sampled(tp.l()), sampled(tp.L())};
}

std::string to_string(CenterKind kind) {
    switch (kind) {
        case CenterKind::whole_bild: return "whole_bild";
        case CenterKind::point: return "point";
        case CenterKind::vertical_segment: return "vertical_segment";
        case CenterKind::kite_like: return "kite_like";
    }
    return "unknown";
}

namespace {

Polygon symmetric_hull(const Polygon& upper) {
    std::vector<Point2> pts(upper.begin(), upper.end());
    for (const auto& p : upper)
        if (p.y != 0.0) pts.push_back({p.x, -p.y});
    return convex_hull(pts);
}

// Upper region glued to its mirror image. The region sits over its own axis
// segment, so the union is convex; assembling it by hand keeps the vertex
// list exactly symmetric.
Polygon mirror_union(const Polygon& upper) {
    if (upper.size() < 3) return symmetric_hull(upper);
    std::size_t right = upper.size();
    for (std::size_t t = 0; t < upper.size(); ++t)
        if (upper[t].y == 0.0 && (right == upper.size() || upper[t].x > upper[right].x)) right = t;
    if (right == upper.size()) return symmetric_hull(upper);
    std::vector<Point2> top;
    double lo = upper[right].x;
    for (std::size_t t = 1; t < upper.size(); ++t) {
        const Point2& p = upper[(right + t) % upper.size()];
        if (p.y > 0.0)
            top.push_back(p);
        else
            lo = std::min(lo, p.x);
    }
    Polygon out{{upper[right].x, 0.0}};
    out.insert(out.end(), top.begin(), top.end());
    if (lo < upper[right].x) out.push_back({lo, 0.0});
    for (auto it = top.rbegin(); it != top.rend(); ++it) out.push_back({it->x, -it->y});
    return out;
}

}  // namespace

CenterRegion center_upper(const BildEstimate& est, const TangentPair& tp, const CenterOptions& opts) {
    CenterRegion cr;
    cr.tangents = tp;
    const double tau_eq = opts.eq_rel * (est.pi_M - est.pi_m + 1.0);
    if (est.flat) {
        cr.kind = CenterKind::whole_bild;
        cr.upper = est.hull;
        cr.polygon = est.hull;
        return cr;
    }
    if (est.M - est.m <= tau_eq) {
        if (est.pi_M - est.pi_m <= tau_eq) {
            cr.kind = CenterKind::vertical_segment;
            cr.upper = est.hull;
            cr.polygon = symmetric_hull(est.hull);
        } else {
            cr.kind = CenterKind::point;
            cr.upper = {{est.m, 0.0}};
            cr.polygon = cr.upper;
        }
        if (std::abs(tp.a.value - tp.b.value) > opts.slope_tol) {
            const double y = (tp.M - tp.m) / (tp.a.value - tp.b.value);
            cr.apex = Point2{tp.l()(y), y};
        }
        return cr;
    }

    cr.kind = CenterKind::kite_like;
    // x >= a y + m  and  x <= b y + M.
    Polygon upper = clip_halfplane(est.hull, -1.0, tp.a.value, -tp.m);
    upper = clip_halfplane(upper, 1.0, -tp.b.value, tp.M);
    cr.upper = upper;
    cr.polygon = mirror_union(upper);
    if (std::abs(tp.a.value - tp.b.value) > opts.slope_tol) {
        const double y = (tp.M - tp.m) / (tp.a.value - tp.b.value);
        cr.apex = Point2{tp.l()(y), y};
    }
    return cr;
}

Polygon center_full(const CenterRegion& cr) { return cr.polygon; }

bool center_membership_W(const Quaternion& q, const CenterRegion& cr, double eps) {
    const UpperPoint u = upper_representative(q);
    return contains(cr.upper, {u.x, u.y}, eps);
}

bool is_convex(const BildEstimate& est, double eps) {
    return std::abs(est.pi_m - est.m) <= eps && std::abs(est.pi_M - est.M) <= eps;
}

bool line_interior_test(const Line& line, const BildEstimate& est, double band,
                        std::optional<std::pair<double, double>> y_range) {
    const Polygon lower = reflect(est.hull);
    auto chord = clip_line(lower, line);
    if (!chord) return false;
    double t0 = chord->first, t1 = chord->second;
    if (y_range) {
        t0 = std::max(t0, y_range->first);
        t1 = std::min(t1, y_range->second);
    }
    if (t0 > t1) return false;
    // Depth is concave along the chord.
    auto depth_at = [&](double t) { return depth(lower, {line(t), t}); };
    for (int it = 0; it < 100 && t1 - t0 > 1e-15; ++it) {
        const double u = t0 + (t1 - t0) / 3.0;
        const double v = t1 - (t1 - t0) / 3.0;
        if (depth_at(u) < depth_at(v))
            t0 = u;
        else
            t1 = v;
    }
    return depth_at(0.5 * (t0 + t1)) > band;
}

Line line_through_m(const Point2& w, double m) {
    if (w.y == 0.0) throw std::invalid_argument("line through a real point is horizontal");
    return {(w.x - m) / w.y, m};
}

Line line_through_M(const Point2& w, double M) { return line_through_m(w, M); }

CenterRegion compute_center(const BildEstimate& est, const CenterOptions& opts) {
    if (est.flat) {
        TangentPair tp;
        tp.m = est.m;
        tp.M = est.M;
        return center_upper(est, tp, opts);
    }
    const BoundaryFunctions bf = boundary_functions(est);
    return center_upper(est, left_derivatives(bf, est.y_M), opts);
}

}  // namespace qnr
