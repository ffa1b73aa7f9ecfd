// Sampling of the quadratic form x* A x on the unit sphere of H^n and
// reconstruction of the (convex) upper bild from its support function.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qnr/geometry.hpp"
#include "qnr/qmatrix.hpp"

namespace qnr {

struct RangeSample {
    QVector x;
    Quaternion value;
    UpperPoint bild_point;
};

/// x* A x for a unit vector x; throws std::invalid_argument if |x| differs
/// from 1 by more than 1e-9.
Quaternion evaluate_form(const QMatrix& a, std::span<const Quaternion> x);

RangeSample make_sample(const QMatrix& a, QVector x);

/// Counter-based substream: the vector with a given index depends only on
/// (seed, index), so shards can be generated independently.
QVector sample_sphere_vector(std::size_t n, std::uint64_t seed, std::uint64_t index);

/// `count` normalized gaussian vectors of H^n; deterministic in seed.
std::vector<QVector> sample_sphere(std::size_t n, std::size_t count, std::uint64_t seed);

struct SamplerOptions {
    std::size_t samples = 200000;
    std::size_t theta_steps = 720;
    std::uint64_t seed = 0;
    std::size_t budget = 50;   // refinement steps per start
    std::size_t starts = 3;    // multistart width per direction
    double tol = 1e-2;         // membership tolerance
};

struct SupportResult {
    double h = 0.0;
    RangeSample witness;
};

struct BildEstimate {
    Polygon hull;                       // counterclockwise, inside {y >= 0}
    std::vector<RangeSample> witnesses; // witnesses[v] realizes hull[v]; empty for synthetic estimates
    double m = 0.0;
    double M = 0.0;
    double pi_m = 0.0;
    double pi_M = 0.0;
    double y_M = 0.0;
    bool flat = false;                  // y_M below the flatness threshold: the bild is [m, M]
    double tol = 1e-2;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;

    double y_m() const { return -y_M; }
};

/// Estimate assembled from a given upper-bild polygon (used for closed-form
/// oracles and synthetic shapes). Vertices with |y| <= snap are moved onto the axis.
BildEstimate estimate_from_polygon(const Polygon& upper, double tol = 1e-2, double snap = 1e-12);

/// Holds the sample cloud of one matrix so that many support directions can
/// reuse it.
class RangeSampler {
public:
    RangeSampler(QMatrix a, SamplerOptions opts);

    const QMatrix& matrix() const { return a_; }
    const SamplerOptions& options() const { return opts_; }
    const std::vector<UpperPoint>& sample_points() const { return points_; }

    /// max over refined x of cos(theta) Re f + sin(theta) |vec f|; a lower
    /// bound on the support value of B+, nondecreasing in `budget`.
    SupportResult support(double theta, std::size_t budget) const;
    SupportResult support(double theta) const { return support(theta, opts_.budget); }

    /// Endpoint of W∩R: maximizes sign * Re f on {x : vec(x* A x) = 0}.
    /// Starts must be unit vectors; returns nothing if no start can be
    /// projected onto the real set.
    std::optional<RangeSample> real_extreme(int sign, const std::vector<QVector>& starts,
                                            std::size_t budget) const;

    BildEstimate upper_hull() const;

private:
    QMatrix a_;
    QMatrix a_star_;
    SamplerOptions opts_;
    double scale_;
    std::vector<UpperPoint> points_;
};

SupportResult support_upper_bild(const QMatrix& a, double theta, const SamplerOptions& opts = {});
BildEstimate upper_hull(const QMatrix& a, const SamplerOptions& opts = {});

/// upper_representative(q) lies within eps of the hull.
bool membership(const Quaternion& q, const BildEstimate& est, double eps);

/// Histogram of the sample cloud's bild points on a bins x bins grid; rows
/// (cell-center x, cell-center y, count) with count > 0.
struct HistogramCell {
    double x, y;
    std::size_t count;
};
std::vector<HistogramCell> sample_histogram(const std::vector<UpperPoint>& pts, std::size_t bins = 200);

}  // namespace qnr
