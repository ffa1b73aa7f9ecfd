#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qnr/ellipse_oracle.hpp"
#include "qnr/verify.hpp"
#include "random_matrices.hpp"

using namespace qnr;

namespace {

QMatrix diag(std::initializer_list<Quaternion> d) {
    const std::vector<Quaternion> v(d);
    return QMatrix::diagonal(v);
}

const QMatrix& a_ex() {
    static const QMatrix a = st_matrix(0.25, 0.125, 0.125);
    return a;
}

const BildEstimate& est_ex() {
    static const BildEstimate est = upper_hull(a_ex());
    return est;
}

// Upper half of a random convex shape whose widest section is on the axis,
// so that its union with the mirror image is convex.
Polygon random_convex_upper(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts;
    double xlo = 1e9, xhi = -1e9;
    for (int t = 0; t < 12; ++t) {
        pts.push_back({u(gen), 0.8 * u(gen)});
        xlo = std::min(xlo, pts.back().x);
        xhi = std::max(xhi, pts.back().x);
    }
    pts.push_back({xlo, 0.0});
    pts.push_back({xhi, 0.0});
    return convex_hull(pts);
}

double tolerance(const BruteCenter& bc, double eps) { return std::max(2.0 * bc.cell, 3.0 * eps); }

}  // namespace

TEST(BruteCenter, ConvexPolygonIsKeptEntirely) {
    const Polygon hexagon{{1, 0}, {0.5, 0.8}, {-0.5, 0.8}, {-1, 0}, {-0.5, -0.8}, {0.5, -0.8}};
    const BruteCenter bc = brute_center(std::vector<Polygon>{hexagon}, {.grid = 40});
    EXPECT_GT(bc.inside.size(), 500u);
    EXPECT_EQ(bc.kept.size(), bc.inside.size());
}

TEST(BruteCenter, VerticalSegmentIsKeptEntirely) {
    const Polygon seg{{0.3, -1.0}, {0.3, 1.0}};
    const BruteCenter bc = brute_center(std::vector<Polygon>{seg}, {.grid = 50});
    EXPECT_EQ(bc.inside.size(), 50u);
    EXPECT_EQ(bc.kept.size(), bc.inside.size());
    // The same segment given as an upper half and its mirror.
    const BruteCenter halves = brute_center(Polygon{{0.3, 0.0}, {0.3, 1.0}}, {.grid = 50});
    EXPECT_EQ(halves.kept.size(), halves.inside.size());
}

TEST(BruteCenter, CrossDropsItsArms) {
    // Two thin bars crossing at the origin: only the intersection sees everything.
    const Polygon h{{-1, -0.05}, {1, -0.05}, {1, 0.05}, {-1, 0.05}};
    const Polygon v{{-0.05, -1}, {0.05, -1}, {0.05, 1}, {-0.05, 1}};
    const BruteCenter bc = brute_center(std::vector<Polygon>{h, v}, {.grid = 81});
    ASSERT_FALSE(bc.kept.empty());
    for (const auto& p : bc.kept) {
        EXPECT_LE(std::abs(p.x), 0.05 + 1e-9);
        EXPECT_LE(std::abs(p.y), 0.05 + 1e-9);
    }
}

TEST(BruteCenter, MatchesTheKiteForTheExampleOracle) {
    const EllipseModel e = st_ellipse(0.25, 0.125, 0.125);
    const Polygon upper = st_upper_bild(e, 1024);
    const BruteCenter bc = brute_center(upper, {.grid = 200});
    const CenterRegion cr = compute_center(estimate_from_polygon(upper));
    EXPECT_LE(center_hausdorff(bc, center_full(cr)), tolerance(bc, 1e-2));
    EXPECT_LE(center_hausdorff(bc, st_kite(e)), tolerance(bc, 1e-2));
}

TEST(BruteCenter, MatchesCenterOnRandomEllipseOracles) {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u(0.05, 0.4), w(1.2, 3.0);
    for (int t = 0; t < 4; ++t) {
        const double k1 = u(gen), k2 = u(gen), alpha = std::sqrt(k1 * k2) * w(gen);
        const Polygon upper = st_upper_bild(st_ellipse(alpha, k1, k2), 512);
        const BruteCenter bc = brute_center(upper, {.grid = 80});
        const CenterRegion cr = compute_center(estimate_from_polygon(upper));
        EXPECT_LE(center_hausdorff(bc, center_full(cr)), tolerance(bc, 1e-2))
            << "alpha " << alpha << " k1 " << k1 << " k2 " << k2;
    }
}

TEST(BruteCenter, MatchesCenterOnRandomConvexBilds) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Polygon upper = random_convex_upper(seed);
        const BildEstimate est = estimate_from_polygon(upper);
        ASSERT_TRUE(is_convex(est, 1e-12));
        const BruteCenter bc = brute_center(upper, {.grid = 60});
        EXPECT_EQ(bc.kept.size(), bc.inside.size());
        EXPECT_LE(center_hausdorff(bc, center_full(compute_center(est))), tolerance(bc, 1e-2));
    }
}

TEST(StarShaped, AExHasNoFailures) {
    const CenterRegion cr = compute_center(est_ex());
    const PropertyReport rep = check_star_shaped(a_ex(), est_ex(), cr, {.trials = 10000, .eps = 2e-2});
    EXPECT_EQ(rep.trials, 10000u);
    EXPECT_TRUE(rep.passed()) << rep.failures << " worst " << rep.worst_violation;
    const PropertyReport reals =
        check_star_shaped(a_ex(), est_ex(), cr, {.trials = 10000, .eps = 2e-2, .mode = StarMode::reals});
    EXPECT_TRUE(reals.passed()) << reals.failures << " worst " << reals.worst_violation;
    EXPECT_EQ(reals.name, "star_shaped_reals");
}

TEST(StarShaped, HermitianHasNoFailures) {
    const QMatrix a = diag({1.0, 2.0});
    const BildEstimate est = upper_hull(a, {.samples = 5000, .theta_steps = 64});
    const PropertyReport rep = check_star_shaped(a, est, compute_center(est), {.trials = 2000});
    EXPECT_TRUE(rep.passed());
    EXPECT_LE(rep.worst_violation, 1e-9);
}

TEST(StarShaped, NonCenterPointFails) {
    // (0, 0.125) is in the bild but left of l, so some segments leave W.
    CenterRegion fake = compute_center(est_ex());
    fake.upper = {{0.0, 0.125}};
    const PropertyReport rep = check_star_shaped(a_ex(), est_ex(), fake, {.trials = 10000, .eps = 1e-3});
    EXPECT_GT(rep.failures, 0u);
    EXPECT_GT(rep.worst_violation, 1e-3);
}

TEST(StarShaped, DeterministicUnderSeed) {
    const CenterRegion cr = compute_center(est_ex());
    const StarOptions opts{.trials = 500, .seed = 5};
    const PropertyReport r1 = check_star_shaped(a_ex(), est_ex(), cr, opts);
    const PropertyReport r2 = check_star_shaped(a_ex(), est_ex(), cr, opts);
    EXPECT_EQ(r1.failures, r2.failures);
    EXPECT_EQ(r1.worst_violation, r2.worst_violation);
    EXPECT_EQ(r1.seed, 5u);
}

TEST(Convexity, HermitianIsConvexWithoutMidpointFailures) {
    const QMatrix a = diag({1.0, 2.0});
    const BildEstimate est = upper_hull(a, {.samples = 5000, .theta_steps = 64});
    const ConvexityReport rep = check_convexity_equivalence(a, est, 2000, 1);
    EXPECT_TRUE(rep.convex);
    EXPECT_TRUE(rep.report.passed());
    EXPECT_FALSE(rep.witness.has_value());
}

TEST(Convexity, RandomHermitianTwoByTwo) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const QMatrix a = rnd::random_hermitian(2, 40 + seed);
        const BildEstimate est = upper_hull(a, {.samples = 5000, .theta_steps = 64});
        const ConvexityReport rep = check_convexity_equivalence(a, est, 1000, seed);
        EXPECT_TRUE(rep.convex);
        EXPECT_TRUE(rep.report.passed());
    }
}

TEST(Convexity, AExHasAWitnessNearTheOrigin) {
    const ConvexityReport rep = check_convexity_equivalence(a_ex(), est_ex(), 1000, 0);
    EXPECT_FALSE(rep.convex);
    EXPECT_TRUE(rep.report.passed());
    ASSERT_TRUE(rep.witness.has_value());
    const auto& [p, q, mid] = *rep.witness;
    EXPECT_NEAR(mid.x, 0.0, 5e-3);
    EXPECT_EQ(mid.y, 0.0);
    EXPECT_EQ(q.y, -p.y);
    // Gap to the bild, measured against the closed-form arc.
    const Polygon exact = st_upper_bild(st_ellipse(0.25, 0.125, 0.125));
    EXPECT_GT(rep.report.worst_violation, 2e-2);
    EXPECT_NEAR(rep.report.worst_violation, distance_to_polygon(exact, {0.0, 0.0}), 5e-3);
}

TEST(LineEquivalence, HoldsOnHullVertices) {
    const CenterRegion cr = compute_center(est_ex());
    const PropertyReport rep = check_line_equivalence(est_ex(), cr, est_ex().hull, 2e-2);
    EXPECT_GT(rep.trials, 10u);
    EXPECT_TRUE(rep.passed()) << rep.failures;
}

TEST(LineEquivalence, HoldsOnTheOracleGrid) {
    const Polygon upper = st_upper_bild(st_ellipse(0.25, 0.125, 0.125), 1024);
    const BildEstimate est = estimate_from_polygon(upper);
    const CenterRegion cr = compute_center(est);
    std::vector<Point2> pts;
    for (int ix = 0; ix <= 40; ++ix)
        for (int iy = 1; iy <= 20; ++iy) {
            const Point2 p{ix / 40.0, 0.375 * iy / 20.0};
            if (contains(upper, p, 0.0)) pts.push_back(p);
        }
    const PropertyReport rep = check_line_equivalence(est, cr, pts, 2e-2);
    EXPECT_GT(rep.trials, 100u);
    EXPECT_TRUE(rep.passed()) << rep.failures;
}

TEST(PointInPolygon, StaysInside) {
    const Polygon tri{{0, 0}, {1, 0}, {0, 1}};
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) EXPECT_TRUE(contains(tri, point_in_polygon(tri, u(gen), u(gen), u(gen)), 1e-12));
    const Point2 single = point_in_polygon(Polygon{{2, 3}}, 0.4, 0.5, 0.6);
    EXPECT_EQ(single, (Point2{2, 3}));
    const Point2 on_seg = point_in_polygon(Polygon{{0, 0}, {2, 0}}, 0.25, 0.5, 0.5);
    EXPECT_EQ(on_seg.y, 0.0);
    EXPECT_GE(on_seg.x, 0.0);
    EXPECT_LE(on_seg.x, 2.0);
}
