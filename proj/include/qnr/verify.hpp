// Brute-force oracles and seeded property harnesses for the star-shape,
// convexity and center statements.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnr/bild_geometry.hpp"
#include "qnr/range_sampler.hpp"

namespace qnr {

struct PropertyReport {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst_violation = 0.0;
    std::uint64_t seed = 0;

    bool passed() const { return failures == 0; }
};

struct BruteCenterOptions {
    std::size_t grid = 200;              // points per axis
    std::size_t boundary_samples = 128;  // per convex piece
    double inside_eps = 1e-9;            // relative to the region's extent
};

struct BruteCenter {
    std::vector<Point2> kept;    // grid points that see every boundary sample
    std::vector<Point2> inside;  // grid points of the region
    double cell = 0.0;           // larger grid spacing
};

/// Star-center of a union of convex pieces by exhaustive segment tests.
BruteCenter brute_center(const std::vector<Polygon>& pieces, const BruteCenterOptions& opts = {});

/// Bild given by its upper hull: pieces B+ and its mirror image.
BruteCenter brute_center(const Polygon& upper, const BruteCenterOptions& opts = {});

/// Hausdorff distance between the kept grid points and a closed polygon
/// (represented by its boundary samples and the grid points it contains).
double center_hausdorff(const BruteCenter& bc, const Polygon& polygon);

enum class StarMode { center, reals };

struct StarOptions {
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    double eps = 2e-2;
    StarMode mode = StarMode::center;
};

/// (1 - t) c + t x*Ax stays in W for centers c drawn from random classes of
/// the center region (or from [m, M] in reals mode).
PropertyReport check_star_shaped(const QMatrix& a, const BildEstimate& est, const CenterRegion& cr,
                                 const StarOptions& opts = {});

struct ConvexityReport {
    PropertyReport report;
    bool convex = false;
    // Non-convex case: two bild points whose midpoint leaves the bild.
    std::optional<std::array<Point2, 3>> witness;  // p, q, midpoint
};

/// Convex verdict: midpoints of sampled W-points stay in W. Non-convex
/// verdict: a witness pair is found; a missing witness counts as a failure.
ConvexityReport check_convexity_equivalence(const QMatrix& a, const BildEstimate& est, std::size_t trials,
                                            std::uint64_t seed, double eps = 2e-2);

/// For every point w of B+ away from the tangent lines by more than `band`:
/// l(w2) <= w1 <= L(w2) iff neither l_w nor L_w meets the interior of B-.
PropertyReport check_line_equivalence(const BildEstimate& est, const CenterRegion& cr,
                                      const std::vector<Point2>& points, double band);

/// Uniform point of a convex polygon (degenerate ones included) from two
/// uniforms in [0, 1) and a selector in [0, 1).
Point2 point_in_polygon(const Polygon& poly, double u, double v, double pick);

}  // namespace qnr
