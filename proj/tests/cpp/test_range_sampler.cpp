#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qnr/range_sampler.hpp"
#include "random_matrices.hpp"

using namespace qnr;

namespace {

const Quaternion I = Quaternion::i();

QMatrix a_ex() { return QMatrix({{0.125 * I, 0.25}, {-0.25, 1.0 + 0.125 * I}}); }

QMatrix diag(std::initializer_list<Quaternion> d) {
    const std::vector<Quaternion> v(d);
    return QMatrix::diagonal(v);
}

const double kM = 0.5 + std::sqrt(3.0) / 4.0;
const double km = 0.5 - std::sqrt(3.0) / 4.0;

}  // namespace

TEST(EvaluateForm, BasisVectorsPickDiagonalEntries) {
    const QMatrix a = a_ex();
    const Quaternion f1 = evaluate_form(a, basis_vector(2, 0));
    EXPECT_EQ(f1, 0.125 * I);
    const RangeSample s1 = make_sample(a, basis_vector(2, 0));
    EXPECT_DOUBLE_EQ(s1.bild_point.x, 0.0);
    EXPECT_DOUBLE_EQ(s1.bild_point.y, 0.125);
    const RangeSample s2 = make_sample(a, basis_vector(2, 1));
    EXPECT_EQ(s2.value, 1.0 + 0.125 * I);
    EXPECT_DOUBLE_EQ(s2.bild_point.x, 1.0);
    EXPECT_DOUBLE_EQ(s2.bild_point.y, 0.125);
}

TEST(EvaluateForm, HermitianConvexCombination) {
    const double h = 1.0 / std::sqrt(2.0);
    const Quaternion f = evaluate_form(diag({1.0, 2.0}), QVector{h, h});
    EXPECT_NEAR(f.real(), 1.5, 1e-15);
    EXPECT_EQ(f.vector_norm(), 0.0);
}

TEST(EvaluateForm, RejectsNonUnitVectors) {
    EXPECT_THROW(evaluate_form(a_ex(), QVector{1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(evaluate_form(a_ex(), QVector{1.0}), std::invalid_argument);
}

TEST(SampleSphere, UnitVectors) {
    const auto xs = sample_sphere(1, 3, 42);
    ASSERT_EQ(xs.size(), 3u);
    for (const auto& x : xs) EXPECT_NEAR(norm(x), 1.0, 1e-12);
    EXPECT_THROW(sample_sphere(2, 0, 1), std::invalid_argument);
}

TEST(SampleSphere, DeterministicInSeed) {
    const auto a = sample_sphere(2, 100000, 7);
    const auto b = sample_sphere(2, 100000, 7);
    const auto c = sample_sphere(2, 100000, 8);
    ASSERT_EQ(a.size(), 100000u);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    // Counter-based: element t depends only on (seed, t).
    EXPECT_EQ(a[12345], sample_sphere_vector(2, 7, 12345));
}

TEST(SampleSphere, RoughlyIsotropic) {
    // Each of the 8 real coordinates of a uniform point on S^7 has mean 0 and
    // second moment 1/8.
    const auto xs = sample_sphere(2, 40000, 3);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t t = 0; t < 4; ++t) {
            double s1 = 0.0, s2 = 0.0;
            for (const auto& x : xs) s1 += x[l][t], s2 += x[l][t] * x[l][t];
            EXPECT_NEAR(s1 / 40000.0, 0.0, 0.01);
            EXPECT_NEAR(s2 / 40000.0, 0.125, 0.005);
        }
}

TEST(Support, AExTopAndRight) {
    const SupportResult top = support_upper_bild(a_ex(), std::numbers::pi / 2);
    EXPECT_NEAR(top.h, 0.375, 5e-3);
    EXPECT_LE(top.h, 0.375 + 1e-9);
    const SupportResult right = support_upper_bild(a_ex(), 0.0);
    EXPECT_NEAR(right.h, 1.0, 5e-3);
    EXPECT_NEAR(right.witness.bild_point.x, right.h, 1e-12);
}

TEST(Support, HermitianRightEnd) {
    EXPECT_NEAR(support_upper_bild(diag({1.0, 2.0}), 0.0).h, 2.0, 1e-9);
    EXPECT_NEAR(support_upper_bild(diag({1.0, 2.0}), std::numbers::pi).h, -1.0, 1e-9);
}

TEST(Support, WitnessAttainsValueAndIsAGenuineSample) {
    const QMatrix a = rnd::random_matrix(3, 21);
    const RangeSampler sampler(a, {.samples = 5000, .theta_steps = 64});
    for (double th : {-2.5, -1.0, 0.3, 1.2, 2.9}) {
        const SupportResult r = sampler.support(th);
        const UpperPoint p = upper_representative(evaluate_form(a, r.witness.x));
        EXPECT_NEAR(std::cos(th) * p.x + std::sin(th) * p.y, r.h, 1e-12);
    }
    EXPECT_THROW(support_upper_bild(a, 4.0), std::invalid_argument);
}

TEST(Support, NondecreasingInBudget) {
    const QMatrix a = rnd::random_matrix(3, 22);
    const RangeSampler sampler(a, {.samples = 2000, .theta_steps = 64});
    for (double th : {-1.7, 0.0, 0.8, std::numbers::pi / 2, 2.2}) {
        double prev = -1e300;
        for (std::size_t budget : {0u, 5u, 20u, 50u, 120u}) {
            const double h = sampler.support(th, budget).h;
            EXPECT_GE(h, prev - 1e-14) << "theta " << th << " budget " << budget;
            prev = h;
        }
    }
}

TEST(Support, NondecreasingInSamples) {
    const QMatrix a = rnd::random_matrix(2, 23);
    const RangeSampler small(a, {.samples = 500, .theta_steps = 64, .seed = 4});
    const RangeSampler large(a, {.samples = 5000, .theta_steps = 64, .seed = 4});
    for (double th : {-2.0, 0.5, 1.5}) EXPECT_GE(large.support(th, 0).h, small.support(th, 0).h - 1e-14);
}

TEST(UpperHull, AExExtremes) {
    const BildEstimate est = upper_hull(a_ex());
    EXPECT_NEAR(est.m, km, 5e-3);
    EXPECT_NEAR(est.M, kM, 5e-3);
    EXPECT_NEAR(est.pi_m, 0.0, 5e-3);
    EXPECT_NEAR(est.pi_M, 1.0, 5e-3);
    EXPECT_NEAR(est.y_M, 0.375, 5e-3);
    EXPECT_FALSE(est.flat);
    EXPECT_GE(est.m, est.pi_m - 1e-6);
    EXPECT_LE(est.M, est.pi_M + 1e-6);
    EXPECT_GT(signed_area(est.hull), 0.0);
    for (const auto& p : est.hull) EXPECT_GE(p.y, 0.0);
}

TEST(UpperHull, VerticesAreGenuineBildPoints) {
    const QMatrix a = a_ex();
    const BildEstimate est = upper_hull(a, {.samples = 20000, .theta_steps = 180});
    ASSERT_EQ(est.witnesses.size(), est.hull.size());
    for (std::size_t v = 0; v < est.hull.size(); ++v) {
        const UpperPoint p = upper_representative(evaluate_form(a, est.witnesses[v].x));
        EXPECT_NEAR(p.x, est.hull[v].x, 1e-9);
        EXPECT_NEAR(p.y, est.hull[v].y, 1e-9);
    }
}

TEST(UpperHull, HermitianSegment) {
    const BildEstimate est = upper_hull(diag({1.0, 2.0}), {.samples = 5000, .theta_steps = 64});
    EXPECT_TRUE(est.flat);
    EXPECT_LE(est.y_M, 1e-9);
    EXPECT_NEAR(est.m, 1.0, 1e-9);
    EXPECT_NEAR(est.M, 2.0, 1e-9);
    EXPECT_NEAR(est.pi_m, 1.0, 1e-9);
    EXPECT_NEAR(est.pi_M, 2.0, 1e-9);
}

TEST(UpperHull, RandomHermitianIsFlatWithEqualEnds) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const BildEstimate est = upper_hull(rnd::random_hermitian(3, seed), {.samples = 5000, .theta_steps = 64});
        EXPECT_TRUE(est.flat);
        EXPECT_NEAR(est.m, est.pi_m, 1e-9);
        EXPECT_NEAR(est.M, est.pi_M, 1e-9);
    }
}

TEST(UpperHull, PurelyImaginaryDiagonal) {
    const BildEstimate est = upper_hull(diag({I, I}), {.samples = 5000, .theta_steps = 64});
    EXPECT_NEAR(est.m, 0.0, 1e-9);
    EXPECT_NEAR(est.M, 0.0, 1e-9);
    EXPECT_NEAR(est.y_M, 1.0, 1e-9);
    for (const auto& p : est.hull) EXPECT_NEAR(p.x, 0.0, 1e-9);
}

TEST(UpperHull, SeededDeterminism) {
    const QMatrix a = rnd::random_matrix(2, 31);
    const SamplerOptions opts{.samples = 5000, .theta_steps = 90, .seed = 9};
    const BildEstimate e1 = upper_hull(a, opts), e2 = upper_hull(a, opts);
    EXPECT_EQ(e1.hull, e2.hull);
    EXPECT_EQ(e1.m, e2.m);
    EXPECT_EQ(e1.M, e2.M);
    EXPECT_EQ(e1.y_M, e2.y_M);
}

TEST(UpperHull, ValidatesOptions) {
    EXPECT_THROW(upper_hull(a_ex(), {.theta_steps = 4}), std::invalid_argument);
    EXPECT_THROW(upper_hull(a_ex(), {.samples = 0}), std::invalid_argument);
}

TEST(Membership, AExExamples) {
    const BildEstimate est = upper_hull(a_ex());
    EXPECT_TRUE(membership(Quaternion(0.5, 0.0, 0.375), est, 1e-2));
    EXPECT_FALSE(membership(Quaternion(2.0), est, 1e-2));
    EXPECT_TRUE(membership(Quaternion(real_point(a_ex()).value), est, 1e-2));
    // Class invariance: any slice direction gives the same answer.
    EXPECT_TRUE(membership(Quaternion(0.5, 0.0, 0.0, -0.375), est, 1e-2));
    EXPECT_FALSE(membership(Quaternion(0.5, 0.3, 0.3, 0.3), est, 1e-2));
}

TEST(EstimateFromPolygon, ReadsExtremes) {
    const BildEstimate est = estimate_from_polygon({{0, 0}, {4, 0}, {3, 1}, {1, 2}, {-1, 1}});
    EXPECT_DOUBLE_EQ(est.m, 0.0);
    EXPECT_DOUBLE_EQ(est.M, 4.0);
    EXPECT_DOUBLE_EQ(est.pi_m, -1.0);
    EXPECT_DOUBLE_EQ(est.pi_M, 4.0);
    EXPECT_DOUBLE_EQ(est.y_M, 2.0);
    EXPECT_THROW(estimate_from_polygon({{0, 1}, {1, 1}, {0, 2}}), std::invalid_argument);
    EXPECT_THROW(estimate_from_polygon({{0, -1}, {1, 1}}), std::invalid_argument);
}

TEST(Histogram, CountsEverySample) {
    const std::vector<UpperPoint> pts{{0, 0}, {1, 1}, {1, 1}, {0.5, 0.5}};
    const auto cells = sample_histogram(pts, 4);
    std::size_t total = 0;
    for (const auto& c : cells) total += c.count;
    EXPECT_EQ(total, pts.size());
}
