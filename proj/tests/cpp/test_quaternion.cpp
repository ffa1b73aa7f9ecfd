#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qnr/quaternion.hpp"
#include "random_matrices.hpp"

using namespace qnr;

namespace {

void expect_quat_near(const Quaternion& a, const Quaternion& b, double tol) {
    EXPECT_LE(max_abs_diff(a, b), tol) << a << " vs " << b;
}

}  // namespace

TEST(Quaternion, BasisRelations) {
    const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    EXPECT_EQ(hamilton_product(i, j), k);
    EXPECT_EQ(j * k, i);
    EXPECT_EQ(k * i, j);
    EXPECT_EQ(j * i, -k);
    EXPECT_EQ(i * i, Quaternion(-1.0));
    EXPECT_EQ(j * j, Quaternion(-1.0));
    EXPECT_EQ(k * k, Quaternion(-1.0));
    EXPECT_EQ(i * j * k, Quaternion(-1.0));
}

TEST(Quaternion, IdentityElement) {
    const Quaternion q(2.0, 3.0, 0.0, -1.0);
    EXPECT_EQ(hamilton_product(Quaternion(1.0), q), q);
    EXPECT_EQ(q * Quaternion(1.0), q);
}

TEST(Quaternion, ProductWithConjugateIsNormSquared) {
    const Quaternion p(1.0, 1.0, 1.0, 1.0);
    EXPECT_EQ(p * p.conj(), Quaternion(4.0));
    EXPECT_EQ(p.conj() * p, Quaternion(4.0));
    EXPECT_DOUBLE_EQ(p.norm_sq(), 4.0);
}

TEST(Quaternion, ConjugateAndParts) {
    const Quaternion q(1.5, -2.0, 0.5, 3.0);
    EXPECT_EQ(q.conj(), Quaternion(1.5, 2.0, -0.5, -3.0));
    EXPECT_DOUBLE_EQ(q.real(), 1.5);
    EXPECT_EQ(q.vector_part(), Quaternion(0.0, -2.0, 0.5, 3.0));
    EXPECT_DOUBLE_EQ(q.vector_norm_sq(), 4.0 + 0.25 + 9.0);
    EXPECT_EQ(Quaternion().norm(), 0.0);
}

TEST(Quaternion, Inverse) {
    const Quaternion q(1.0, 2.0, -1.0, 0.5);
    expect_quat_near(q * q.inverse(), Quaternion(1.0), 1e-15);
    expect_quat_near(q.inverse() * q, Quaternion(1.0), 1e-15);
    EXPECT_THROW(Quaternion().inverse(), std::domain_error);
}

TEST(Quaternion, NormIsMultiplicativeAndProductAssociative) {
    std::mt19937_64 gen(11);
    for (int t = 0; t < 200; ++t) {
        const Quaternion p = rnd::random_quaternion(gen);
        const Quaternion q = rnd::random_quaternion(gen);
        const Quaternion r = rnd::random_quaternion(gen);
        EXPECT_NEAR((p * q).norm(), p.norm() * q.norm(), 1e-13 * (1.0 + p.norm() * q.norm()));
        expect_quat_near((p * q) * r, p * (q * r), 1e-12);
        expect_quat_near(p * (q + r), p * q + p * r, 1e-12);
    }
}

TEST(Similarity, SpecExamples) {
    EXPECT_TRUE(similar(Quaternion(1.0, 2.0), Quaternion(1.0, 0.0, 0.0, -2.0)));
    EXPECT_FALSE(similar(Quaternion::i(), Quaternion(0.0, 2.0)));
    EXPECT_TRUE(similar(Quaternion(3.0, 0.0, -4.0), Quaternion(3.0, 4.0)));
}

TEST(Similarity, DifferentRealPartsAreNotSimilar) {
    EXPECT_FALSE(similar(Quaternion(1.0, 1.0), Quaternion(1.1, 1.0)));
}

TEST(Similarity, ToleranceAndValidation) {
    EXPECT_TRUE(similar(Quaternion(1.0, 2.0), Quaternion(1.0, 2.0 + 1e-12)));
    EXPECT_FALSE(similar(Quaternion(1.0, 2.0), Quaternion(1.0, 2.0 + 1e-12), 0.0));
    EXPECT_THROW(similar(Quaternion(), Quaternion(), -1.0), std::invalid_argument);
}

TEST(Similarity, ConjugationByUnitsPreservesClass) {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 200; ++t) {
        const Quaternion q = rnd::random_quaternion(gen);
        Quaternion s = rnd::random_quaternion(gen);
        s /= s.norm();
        EXPECT_TRUE(similar(s.conj() * q * s, q, 1e-12));
    }
}

TEST(Similarity, IsAnEquivalenceOnSamples) {
    // Classes drawn from a small set so that many pairs are similar.
    std::mt19937_64 gen(9);
    std::vector<Quaternion> qs;
    for (int t = 0; t < 30; ++t) {
        Quaternion u = rnd::random_quaternion(gen).vector_part();
        u /= u.norm();
        qs.push_back(rotate_to_slice({static_cast<double>(t % 3), static_cast<double>(t % 2 + 1)}, u));
    }
    for (const auto& a : qs) {
        EXPECT_TRUE(similar(a, a));
        for (const auto& b : qs) {
            EXPECT_EQ(similar(a, b), similar(b, a));
            for (const auto& c : qs)
                if (similar(a, b) && similar(b, c)) EXPECT_TRUE(similar(a, c));
        }
    }
}

TEST(UpperRepresentative, SpecExamples) {
    auto u = upper_representative(Quaternion(3.0, 0.0, -4.0));
    EXPECT_DOUBLE_EQ(u.x, 3.0);
    EXPECT_DOUBLE_EQ(u.y, 4.0);
    u = upper_representative(Quaternion(5.0));
    EXPECT_DOUBLE_EQ(u.x, 5.0);
    EXPECT_DOUBLE_EQ(u.y, 0.0);
    u = upper_representative(Quaternion(1.0, 1.0, 1.0, 1.0));
    EXPECT_DOUBLE_EQ(u.x, 1.0);
    EXPECT_DOUBLE_EQ(u.y, std::sqrt(3.0));
}

TEST(UpperRepresentative, IdempotentUnderClassChange) {
    const Quaternion q(0.7, -0.2, 0.9, 0.4);
    const UpperPoint u = upper_representative(q);
    const Quaternion w = rotate_to_slice(u, Quaternion::i());
    const UpperPoint v = upper_representative(w);
    EXPECT_NEAR(v.x, u.x, 1e-15);
    EXPECT_NEAR(v.y, u.y, 1e-15);
    const SimilarityClass c = similarity_class(q);
    EXPECT_DOUBLE_EQ(c.real_part, u.x);
    EXPECT_DOUBLE_EQ(c.vector_norm, u.y);
}

TEST(RotateToSlice, SpecExamples) {
    EXPECT_EQ(rotate_to_slice({3.0, 4.0}, Quaternion::k()), Quaternion(3.0, 0.0, 0.0, 4.0));
    EXPECT_EQ(rotate_to_slice({3.0, 4.0}, Quaternion::i()), Quaternion(3.0, 4.0));
    EXPECT_EQ(rotate_to_slice({0.5, 0.375}, Quaternion::j()), Quaternion(0.5, 0.0, 0.375));
}

TEST(RotateToSlice, RejectsNonUnitOrNonPure) {
    EXPECT_THROW(rotate_to_slice({1.0, 1.0}, Quaternion(0.0, 2.0)), std::invalid_argument);
    EXPECT_THROW(rotate_to_slice({1.0, 1.0}, Quaternion(0.6, 0.8)), std::invalid_argument);
    EXPECT_THROW(rotate_to_slice({1.0, 1.0}, Quaternion()), std::invalid_argument);
}

TEST(RotateToSlice, RoundTrip) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        Quaternion u = rnd::random_quaternion(gen).vector_part();
        u /= u.norm();
        const UpperPoint p{ux(gen), uy(gen)};
        const UpperPoint back = upper_representative(rotate_to_slice(p, u));
        EXPECT_NEAR(back.x, p.x, 1e-12);
        EXPECT_NEAR(back.y, p.y, 1e-12);
    }
}
