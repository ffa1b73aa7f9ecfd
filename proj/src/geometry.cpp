#include "qnr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnr {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance_to_segment(const Point2& p, const Point2& a, const Point2& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    return distance(p, {a.x + t * dx, a.y + t * dy});
}

Polygon convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;

    Polygon hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t t = pts.size() - 1, lower = k + 1; t-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[t]) <= 0.0) --k;
        hull[k++] = pts[t];
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
    return hull;
}

double signed_area(std::span<const Point2> poly) {
    double s = 0.0;
    for (std::size_t t = 0; t < poly.size(); ++t) {
        const auto& a = poly[t];
        const auto& b = poly[(t + 1) % poly.size()];
        s += a.x * b.y - a.y * b.x;
    }
    return 0.5 * s;
}

double perimeter(std::span<const Point2> poly) {
    if (poly.size() < 2) return 0.0;
    double s = 0.0;
    for (std::size_t t = 0; t < poly.size(); ++t) s += distance(poly[t], poly[(t + 1) % poly.size()]);
    return s;
}

Point2 centroid(std::span<const Point2> poly) {
    if (poly.empty()) throw std::invalid_argument("centroid of empty polygon");
    const double area = signed_area(poly);
    if (poly.size() < 3 || std::abs(area) < 1e-300) {
        Point2 c;
        for (const auto& p : poly) {
            c.x += p.x;
            c.y += p.y;
        }
        return {c.x / static_cast<double>(poly.size()), c.y / static_cast<double>(poly.size())};
    }
    double cx = 0.0, cy = 0.0;
    for (std::size_t t = 0; t < poly.size(); ++t) {
        const auto& a = poly[t];
        const auto& b = poly[(t + 1) % poly.size()];
        const double w = a.x * b.y - b.x * a.y;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    return {cx / (6.0 * area), cy / (6.0 * area)};
}

Polygon clip_halfplane(std::span<const Point2> poly, double nx, double ny, double c) {
    auto side = [&](const Point2& p) { return nx * p.x + ny * p.y - c; };
    Polygon out;
    if (poly.size() == 1) {
        if (side(poly[0]) <= 0.0) out.push_back(poly[0]);
        return out;
    }
    for (std::size_t t = 0; t < poly.size(); ++t) {
        const Point2& cur = poly[t];
        const Point2& nxt = poly[(t + 1) % poly.size()];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc <= 0.0) out.push_back(cur);
        if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
            const double u = sc / (sc - sn);
            out.push_back({cur.x + u * (nxt.x - cur.x), cur.y + u * (nxt.y - cur.y)});
        }
    }
    // Drop consecutive duplicates produced by vertices lying on the boundary.
    Polygon dedup;
    for (const auto& p : out)
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    if (dedup.size() == 2 && dedup[0] == dedup[1]) dedup.resize(1);
    return dedup;
}

std::optional<std::pair<double, double>> slice_at(std::span<const Point2> poly, double y) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    };
    if (poly.size() == 1) {
        if (poly[0].y == y) take(poly[0].x);
    }
    for (std::size_t t = 0; poly.size() > 1 && t < poly.size(); ++t) {
        const Point2& a = poly[t];
        const Point2& b = poly[(t + 1) % poly.size()];
        if (a.y == y) take(a.x);
        if ((a.y < y && b.y > y) || (a.y > y && b.y < y)) take(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

double depth(std::span<const Point2> poly, const Point2& p) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < poly.size(); ++t) {
        const Point2& a = poly[t];
        const Point2& b = poly[(t + 1) % poly.size()];
        const double len = distance(a, b);
        if (len == 0.0) continue;
        d = std::min(d, cross(a, b, p) / len);
    }
    return d;
}

double distance_to_polygon(std::span<const Point2> poly, const Point2& p) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return distance(p, poly[0]);
    if (poly.size() >= 3 && signed_area(poly) > 0.0 && depth(poly, p) >= 0.0) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < poly.size(); ++t)
        d = std::min(d, distance_to_segment(p, poly[t], poly[(t + 1) % poly.size()]));
    return d;
}

bool contains(std::span<const Point2> poly, const Point2& p, double eps) {
    return distance_to_polygon(poly, p) <= eps;
}

Polygon reflect(std::span<const Point2> poly) {
    Polygon out;
    out.reserve(poly.size());
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) out.push_back({it->x, -it->y});
    return out;
}

std::optional<std::pair<double, double>> clip_line(std::span<const Point2> poly, const Line& line) {
    if (poly.size() < 3 || signed_area(poly) <= 0.0) return std::nullopt;
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < poly.size(); ++e) {
        const Point2& a = poly[e];
        const Point2& b = poly[(e + 1) % poly.size()];
        // cross(a, b, P(t)) = alpha t + beta must stay >= 0.
        const double ex = b.x - a.x;
        const double ey = b.y - a.y;
        const double alpha = ex - ey * line.slope;
        const double beta = -ex * a.y - ey * (line.intercept - a.x);
        if (alpha == 0.0) {
            if (beta < 0.0) return std::nullopt;
        } else if (alpha > 0.0) {
            t0 = std::max(t0, -beta / alpha);
        } else {
            t1 = std::min(t1, -beta / alpha);
        }
    }
    if (t0 > t1) return std::nullopt;
    return std::make_pair(t0, t1);
}

double hausdorff(std::span<const Point2> a, std::span<const Point2> b) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](std::span<const Point2> from, std::span<const Point2> to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                const double dx = p.x - q.x;
                const double dy = p.y - q.y;
                best = std::min(best, dx * dx + dy * dy);
                if (best <= worst) break;
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

std::vector<Point2> sample_boundary(std::span<const Point2> poly, std::size_t count) {
    std::vector<Point2> out;
    if (poly.empty() || count == 0) return out;
    const double total = perimeter(poly);
    if (poly.size() == 1 || total == 0.0) return std::vector<Point2>(count, poly[0]);
    const double step = total / static_cast<double>(count);
    std::size_t edge = 0;
    double walked = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        const double target = step * static_cast<double>(s);
        double len = distance(poly[edge], poly[(edge + 1) % poly.size()]);
        while (walked + len < target && edge + 1 < poly.size()) {
            walked += len;
            ++edge;
            len = distance(poly[edge], poly[(edge + 1) % poly.size()]);
        }
        const Point2& a = poly[edge];
        const Point2& b = poly[(edge + 1) % poly.size()];
        const double u = len > 0.0 ? std::clamp((target - walked) / len, 0.0, 1.0) : 0.0;
        out.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
    }
    return out;
}

SliceTable::SliceTable(std::span<const Point2> poly) {
    if (poly.empty()) return;
    const std::size_t n = poly.size();
    std::size_t bottom = 0, top = 0;
    for (std::size_t t = 1; t < n; ++t) {
        const Point2& p = poly[t];
        if (p.y < poly[bottom].y || (p.y == poly[bottom].y && p.x < poly[bottom].x)) bottom = t;
        if (p.y > poly[top].y || (p.y == poly[top].y && p.x > poly[top].x)) top = t;
    }
    // Counterclockwise, bottom -> top runs up the right side.
    for (std::size_t t = bottom;; t = (t + 1) % n) {
        right_.push_back(poly[t]);
        if (t == top) break;
    }
    for (std::size_t t = top;; t = (t + 1) % n) {
        left_.push_back(poly[t]);
        if (t == bottom) break;
    }
    std::reverse(left_.begin(), left_.end());
}

std::pair<double, double> SliceTable::section(double y) const {
    auto lerp = [y](const Point2& a, const Point2& b) {
        return a.y == b.y ? a.x : a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
    };
    auto by_y = [](const Point2& p, double v) { return p.y < v; };
    auto by_y_rev = [](double v, const Point2& p) { return v < p.y; };
    // Left: first vertex at or above y, so a flat top edge yields its left end.
    auto li = std::lower_bound(left_.begin(), left_.end(), y, by_y);
    if (li == left_.end()) --li;
    const double lo = li == left_.begin() ? li->x : lerp(*(li - 1), *li);
    // Right: last vertex at or below y, so a flat bottom edge yields its right end.
    auto ri = std::upper_bound(right_.begin(), right_.end(), y, by_y_rev);
    if (ri != right_.begin()) --ri;
    const double hi = ri + 1 == right_.end() ? ri->x : lerp(*ri, *(ri + 1));
    return {lo, hi};
}

bool SliceTable::contains(const Point2& p, double eps) const {
    if (left_.empty()) return false;
    const double ylo = left_.front().y, yhi = left_.back().y;
    if (p.y < ylo - eps || p.y > yhi + eps) return false;
    const auto [lo, hi] = section(std::clamp(p.y, ylo, yhi));
    return p.x >= lo - eps && p.x <= hi + eps;
}

}  // namespace qnr
