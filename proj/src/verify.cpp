#include "qnr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qnr {

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

Quaternion random_unit_pure(std::mt19937_64& gen) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        const Quaternion u(0.0, g(gen), g(gen), g(gen));
        const double n = u.norm();
        if (n > 1e-12) return u / n;
    }
}

double bild_distance(const Quaternion& q, const BildEstimate& est) {
    const UpperPoint u = upper_representative(q);
    return distance_to_polygon(est.hull, {u.x, u.y});
}

// Point at arc length d from vertex `start`, walking forward (dir = 1) or
// backward along the boundary.
Point2 walk_boundary(const Polygon& poly, std::size_t start, int dir, double d) {
    const std::size_t n = poly.size();
    std::size_t cur = start;
    for (std::size_t steps = 0; steps < n; ++steps) {
        const std::size_t nxt = dir > 0 ? (cur + 1) % n : (cur + n - 1) % n;
        const double len = distance(poly[cur], poly[nxt]);
        if (len >= d) {
            const double u = len > 0.0 ? d / len : 0.0;
            return {poly[cur].x + u * (poly[nxt].x - poly[cur].x), poly[cur].y + u * (poly[nxt].y - poly[cur].y)};
        }
        d -= len;
        cur = nxt;
    }
    return poly[cur];
}

// Each piece is convex, so it meets the segment p + t (v - p) in an interval;
// walk from t = 0, jumping to the exit of a piece holding the current point.
bool segment_covered(const std::vector<SliceTable>& tables, const Point2& p, const Point2& v, double eps) {
    auto at = [&](double t) { return Point2{p.x + t * (v.x - p.x), p.y + t * (v.y - p.y)}; };
    double reach = 0.0;
    std::vector<bool> used(tables.size(), false);
    for (bool moved = true; moved && reach < 1.0;) {
        moved = false;
        const Point2 cur = at(reach);
        for (std::size_t k = 0; k < tables.size(); ++k) {
            if (used[k] || !tables[k].contains(cur, eps)) continue;
            used[k] = true;
            double lo = reach, hi = 1.0;
            if (tables[k].contains(at(1.0), eps)) {
                lo = 1.0;
            } else {
                for (int it = 0; it < 50 && hi - lo > 1e-15; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (tables[k].contains(at(mid), eps) ? lo : hi) = mid;
                }
            }
            if (lo > reach) moved = true;
            reach = std::max(reach, lo);
        }
    }
    return reach >= 1.0;
}

}  // namespace

Point2 point_in_polygon(const Polygon& poly, double u, double v, double pick) {
    if (poly.empty()) throw std::invalid_argument("point_in_polygon: empty polygon");
    const double area = poly.size() >= 3 ? signed_area(poly) : 0.0;
    if (poly.size() < 3 || area <= 0.0) {
        const Point2& p = poly[static_cast<std::size_t>(u * static_cast<double>(poly.size())) % poly.size()];
        const Point2& q = poly[static_cast<std::size_t>(v * static_cast<double>(poly.size())) % poly.size()];
        return {p.x + pick * (q.x - p.x), p.y + pick * (q.y - p.y)};
    }
    // Fan triangulation, triangle chosen by area.
    double target = pick * area;
    std::size_t t = 1;
    for (; t + 2 < poly.size(); ++t) {
        const double tri = 0.5 * cross(poly[0], poly[t], poly[t + 1]);
        if (target < tri) break;
        target -= tri;
    }
    if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    const Point2 &a = poly[0], &b = poly[t], &c = poly[t + 1];
    return {a.x + u * (b.x - a.x) + v * (c.x - a.x), a.y + u * (b.y - a.y) + v * (c.y - a.y)};
}

BruteCenter brute_center(const std::vector<Polygon>& pieces, const BruteCenterOptions& opts) {
    BruteCenter out;
    if (pieces.empty() || opts.grid < 2) return out;
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& poly : pieces)
        for (const auto& p : poly) {
            xlo = std::min(xlo, p.x);
            xhi = std::max(xhi, p.x);
            ylo = std::min(ylo, p.y);
            yhi = std::max(yhi, p.y);
        }
    const double extent = std::max({xhi - xlo, yhi - ylo, 1e-300});
    const double eps = opts.inside_eps * extent;
    const std::size_t nx = xhi > xlo ? opts.grid : 1;
    const std::size_t ny = yhi > ylo ? opts.grid : 1;
    const double dx = nx > 1 ? (xhi - xlo) / static_cast<double>(nx - 1) : 0.0;
    const double dy = ny > 1 ? (yhi - ylo) / static_cast<double>(ny - 1) : 0.0;
    out.cell = std::max(dx, dy);

    std::vector<SliceTable> tables;
    for (const auto& poly : pieces) tables.emplace_back(poly);
    auto piece_mask = [&](const Point2& p) {
        unsigned mask = 0;
        for (std::size_t k = 0; k < tables.size(); ++k)
            if (tables[k].contains(p, eps)) mask |= 1u << k;
        return mask;
    };
    std::vector<std::pair<Point2, unsigned>> boundary;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const Polygon& poly = pieces[k];
        for (const auto& v : sample_boundary(poly, opts.boundary_samples)) boundary.emplace_back(v, piece_mask(v) | 1u << k);
        // Where pieces meet, the union has reentrant corners whose nearby
        // boundary decides visibility; refine geometrically toward them.
        for (std::size_t t = 0; t < poly.size() && poly.size() > 1; ++t) {
            if ((piece_mask(poly[t]) & ~(1u << k)) == 0) continue;
            for (int dir : {1, -1}) {
                for (double d = 0.1 * extent; d > 1e-4 * extent; d *= 0.7) {
                    const Point2 v = walk_boundary(poly, t, dir, d);
                    boundary.emplace_back(v, piece_mask(v) | 1u << k);
                }
            }
        }
    }

    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const Point2 p{nx > 1 ? xlo + dx * static_cast<double>(ix) : xlo,
                           ny > 1 ? ylo + dy * static_cast<double>(iy) : ylo};
            const unsigned pm = piece_mask(p);
            if (pm == 0) continue;
            out.inside.push_back(p);
            bool ok = true;
            for (const auto& [v, vm] : boundary) {
                if (pm & vm) continue;  // shared convex piece
                if (!(ok = segment_covered(tables, p, v, eps))) break;
            }
            if (ok) out.kept.push_back(p);
        }
    }
    return out;
}

BruteCenter brute_center(const Polygon& upper, const BruteCenterOptions& opts) {
    return brute_center(std::vector<Polygon>{upper, reflect(upper)}, opts);
}

double center_hausdorff(const BruteCenter& bc, const Polygon& polygon) {
    std::vector<Point2> region = sample_boundary(polygon, 512);
    region.insert(region.end(), polygon.begin(), polygon.end());
    const double tol = 1e-9 * std::max(bc.cell, 1e-300);
    for (const auto& p : bc.inside)
        if (distance_to_polygon(polygon, p) <= tol) region.push_back(p);
    return hausdorff(bc.kept, region);
}

PropertyReport check_star_shaped(const QMatrix& a, const BildEstimate& est, const CenterRegion& cr,
                                 const StarOptions& opts) {
    PropertyReport rep{opts.mode == StarMode::center ? "star_shaped" : "star_shaped_reals", opts.trials, 0, 0.0,
                       opts.seed};
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        auto gen = trial_rng(opts.seed, trial);
        const QVector x = sample_sphere_vector(a.size(), opts.seed, trial);
        const Quaternion f = quadratic_form(a, x);
        Quaternion c;
        if (opts.mode == StarMode::reals) {
            c = Quaternion(est.m + unif(gen) * (est.M - est.m));
        } else {
            const double u = unif(gen), v = unif(gen), pick = unif(gen);
            const Point2 p = point_in_polygon(cr.upper, u, v, pick);
            c = rotate_to_slice({p.x, std::max(p.y, 0.0)}, random_unit_pure(gen));
        }
        const double t = unif(gen);
        const double d = bild_distance((1.0 - t) * c + t * f, est);
        rep.worst_violation = std::max(rep.worst_violation, d);
        if (d > opts.eps) ++rep.failures;
    }
    return rep;
}

ConvexityReport check_convexity_equivalence(const QMatrix& a, const BildEstimate& est, std::size_t trials,
                                            std::uint64_t seed, double eps) {
    ConvexityReport out;
    out.report = {"convexity_equivalence", 0, 0, 0.0, seed};
    out.convex = is_convex(est, eps);
    if (out.convex) {
        out.report.trials = trials;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const Quaternion f = quadratic_form(a, sample_sphere_vector(a.size(), seed, 2 * trial));
            const Quaternion g = quadratic_form(a, sample_sphere_vector(a.size(), seed, 2 * trial + 1));
            const double d = bild_distance(0.5 * (f + g), est);
            out.report.worst_violation = std::max(out.report.worst_violation, d);
            if (d > eps) ++out.report.failures;
        }
        return out;
    }
    // A hull vertex at the extreme real projection and its conjugate: the
    // midpoint is real but outside [m, M].
    out.report.trials = 1;
    double best = -1.0;
    for (const auto& v : est.hull) {
        const Point2 mid{v.x, 0.0};
        const double d = distance_to_polygon(est.hull, mid);
        if (d > best) {
            best = d;
            out.witness = std::array<Point2, 3>{v, Point2{v.x, -v.y}, mid};
        }
    }
    out.report.worst_violation = std::max(best, 0.0);
    if (best <= eps) {
        out.report.failures = 1;
        out.witness.reset();
    }
    return out;
}

PropertyReport check_line_equivalence(const BildEstimate& est, const CenterRegion& cr,
                                      const std::vector<Point2>& points, double band) {
    PropertyReport rep{"line_equivalence", 0, 0, 0.0, 0};
    const Line l = cr.tangents.l(), L = cr.tangents.L();
    const double depth_tol = 1e-9 * std::max(1.0, est.pi_M - est.pi_m);
    for (const auto& w : points) {
        if (w.y <= band) continue;
        const double dl = w.x - l(w.y);
        const double dL = L(w.y) - w.x;
        if (std::abs(dl) <= band || std::abs(dL) <= band) continue;
        ++rep.trials;
        const bool in_center = dl > 0.0 && dL > 0.0;
        const bool touches = line_interior_test(line_through_m(w, cr.tangents.m), est, depth_tol) ||
                             line_interior_test(line_through_M(w, cr.tangents.M), est, depth_tol);
        if (in_center == touches) {
            ++rep.failures;
            rep.worst_violation = std::max(rep.worst_violation, std::min(std::abs(dl), std::abs(dL)));
        }
    }
    return rep;
}

}  // namespace qnr
