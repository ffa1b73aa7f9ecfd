#include "qnr/range_sampler.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qnr {

namespace {

// splitmix64 as a UniformRandomBitGenerator.
struct SplitMix64 {
    using result_type = std::uint64_t;
    std::uint64_t state;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g{seed};
    const std::uint64_t base = g();
    SplitMix64 h{base ^ (index * 0xD1B54A32D192ED03ULL)};
    return h();
}

Eigen::VectorXd to_real(std::span<const Quaternion> x) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(4 * x.size()));
    for (std::size_t l = 0; l < x.size(); ++l)
        for (std::size_t t = 0; t < 4; ++t) v(static_cast<Eigen::Index>(4 * l + t)) = x[l][t];
    return v;
}

QVector from_real(const Eigen::VectorXd& v) {
    QVector x(static_cast<std::size_t>(v.size() / 4));
    for (std::size_t l = 0; l < x.size(); ++l)
        for (std::size_t t = 0; t < 4; ++t) x[l][t] = v(static_cast<Eigen::Index>(4 * l + t));
    return x;
}

double real_dot(std::span<const Quaternion> a, std::span<const Quaternion> b) {
    double s = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) s += dot(a[l], b[l]);
    return s;
}

// Gradient over the 4n real coordinates of x -> <w, x* A x> is
// (Ax) conj(w) + (A* x) w.
QVector form_gradient(const QVector& ax, const QVector& astar_x, const Quaternion& w) {
    QVector g(ax.size());
    const Quaternion wc = w.conj();
    for (std::size_t l = 0; l < ax.size(); ++l) g[l] = ax[l] * wc + astar_x[l] * w;
    return g;
}

struct FormState {
    QVector ax, astar_x;
    Quaternion f;
};

FormState eval_state(const QMatrix& a, const QMatrix& a_star, const QVector& x) {
    FormState s{a.apply(x), a_star.apply(x), {}};
    s.f = inner(x, s.ax);
    return s;
}

}  // namespace

Quaternion evaluate_form(const QMatrix& a, std::span<const Quaternion> x) {
    if (x.size() != a.size()) throw std::invalid_argument("evaluate_form: dimension mismatch");
    if (std::abs(norm(x) - 1.0) > 1e-9) throw std::invalid_argument("evaluate_form: x must be a unit vector");
    return quadratic_form(a, x);
}

RangeSample make_sample(const QMatrix& a, QVector x) {
    RangeSample s;
    s.value = evaluate_form(a, x);
    s.bild_point = upper_representative(s.value);
    s.x = std::move(x);
    return s;
}

QVector sample_sphere_vector(std::size_t n, std::uint64_t seed, std::uint64_t index) {
    SplitMix64 gen{substream_seed(seed, index)};
    std::normal_distribution<double> gauss(0.0, 1.0);
    QVector x(n);
    double nx = 0.0;
    do {
        for (auto& q : x) q = Quaternion(gauss(gen), gauss(gen), gauss(gen), gauss(gen));
        nx = norm(x);
    } while (nx == 0.0);
    for (auto& q : x) q /= nx;
    return x;
}

std::vector<QVector> sample_sphere(std::size_t n, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample_sphere: count must be at least 1");
    std::vector<QVector> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) out.push_back(sample_sphere_vector(n, seed, t));
    return out;
}

RangeSampler::RangeSampler(QMatrix a, SamplerOptions opts)
    : a_(std::move(a)), a_star_(a_.adjoint()), opts_(opts), scale_(std::max(1.0, a_.norm())) {
    if (opts_.samples == 0) throw std::invalid_argument("samples must be at least 1");
    if (opts_.theta_steps < 8) throw std::invalid_argument("theta_steps must be at least 8");
    if (!(opts_.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (opts_.starts == 0) opts_.starts = 1;
    points_.reserve(opts_.samples);
    for (std::size_t t = 0; t < opts_.samples; ++t)
        points_.push_back(upper_representative(quadratic_form(a_, sample_sphere_vector(a_.size(), opts_.seed, t))));
}

SupportResult RangeSampler::support(double theta, std::size_t budget) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    // Top-k sample indices by score.
    const std::size_t k = std::min(opts_.starts, points_.size());
    std::vector<std::pair<double, std::size_t>> top;
    top.reserve(k + 1);
    for (std::size_t t = 0; t < points_.size(); ++t) {
        const double score = c * points_[t].x + s * points_[t].y;
        if (top.size() < k || score > top.back().first) {
            auto pos = std::find_if(top.begin(), top.end(), [&](const auto& e) { return score > e.first; });
            top.insert(pos, {score, t});
            if (top.size() > k) top.pop_back();
        }
    }

    auto objective = [&](const Quaternion& f, double delta) {
        return c * f.real() + s * std::sqrt(f.vector_norm_sq() + delta * delta);
    };

    SupportResult best;
    best.h = -std::numeric_limits<double>::infinity();
    for (const auto& [score, idx] : top) {
        QVector x = sample_sphere_vector(a_.size(), opts_.seed, idx);
        FormState st = eval_state(a_, a_star_, x);
        QVector best_x = x;
        double best_val = objective(st.f, 0.0);

        // Smoothed ascent: |vec f| is replaced by sqrt(|vec f|^2 + delta^2) with
        // delta shrinking geometrically; the unsmoothed best is tracked.
        double delta = 1e-2 * scale_;
        double step = 1.0 / scale_;
        for (std::size_t it = 0; it < budget; ++it) {
            const double g = std::sqrt(st.f.vector_norm_sq() + delta * delta);
            const Quaternion w = g > 0.0 ? Quaternion(c) + (s / g) * st.f.vector_part() : Quaternion(c);
            QVector grad = form_gradient(st.ax, st.astar_x, w);
            const double radial = real_dot(grad, x);
            for (std::size_t l = 0; l < x.size(); ++l) grad[l] -= x[l] * radial;
            const double gnorm2 = real_dot(grad, grad);
            if (gnorm2 < 1e-30 * scale_ * scale_) break;

            const double cur = objective(st.f, delta);
            double t = std::min(step * 2.0, 1.0 / scale_);
            bool moved = false;
            while (t > 1e-16 / scale_) {
                QVector y(x.size());
                for (std::size_t l = 0; l < x.size(); ++l) y[l] = x[l] + grad[l] * t;
                y = normalized(y);
                FormState sy = eval_state(a_, a_star_, y);
                if (objective(sy.f, delta) >= cur + 1e-4 * t * gnorm2) {
                    x = std::move(y);
                    st = std::move(sy);
                    step = t;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            const double val = objective(st.f, 0.0);
            if (val > best_val) {
                best_val = val;
                best_x = x;
            }
            const double next_delta = std::max(delta * 0.5, 1e-12 * scale_);
            if (!moved && next_delta == delta) break;
            delta = next_delta;
        }
        if (best_val > best.h) {
            best.h = best_val;
            best.witness = make_sample(a_, best_x);
        }
    }
    return best;
}

namespace {

struct Manifold {
    const QMatrix& a;
    const QMatrix& a_star;
    double scale;

    // Rows: gradients of the i, j, k components of x* A x, then x itself.
    Eigen::MatrixXd constraint_jacobian(const FormState& st, const QVector& x) const {
        Eigen::MatrixXd j(4, static_cast<Eigen::Index>(4 * x.size()));
        const Quaternion units[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
        for (int r = 0; r < 3; ++r) j.row(r) = to_real(form_gradient(st.ax, st.astar_x, units[r])).transpose();
        j.row(3) = to_real(x).transpose();
        return j;
    }

    // Newton projection onto {vec(x* A x) = 0, |x| = 1}.
    std::optional<QVector> retract(QVector y) const {
        y = normalized(y);
        for (int it = 0; it < 40; ++it) {
            const FormState st = eval_state(a, a_star, y);
            const double res = st.f.vector_norm();
            if (res <= 1e-14 * scale) return y;
            Eigen::VectorXd rhs(4);
            rhs << st.f[1], st.f[2], st.f[3], 0.5 * (real_dot(y, y) - 1.0);
            const Eigen::MatrixXd jac = constraint_jacobian(st, y);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
            svd.setThreshold(1e-10);
            const Eigen::VectorXd delta = svd.solve(rhs);
            y = normalized(from_real(to_real(y) - delta));
        }
        const FormState st = eval_state(a, a_star, y);
        if (st.f.vector_norm() <= 1e-12 * scale) return y;
        return std::nullopt;
    }
};

}  // namespace

std::optional<RangeSample> RangeSampler::real_extreme(int sign, const std::vector<QVector>& starts,
                                                     std::size_t budget) const {
    const Manifold mf{a_, a_star_, scale_};
    const double sg = sign >= 0 ? 1.0 : -1.0;
    std::optional<QVector> best_x;
    double best_val = -std::numeric_limits<double>::infinity();

    for (const auto& start : starts) {
        auto proj = mf.retract(start);
        if (!proj) continue;
        QVector x = *proj;
        FormState st = eval_state(a_, a_star_, x);
        double cur = sg * st.f.real();
        double step = 1.0 / scale_;
        for (std::size_t it = 0; it < budget; ++it) {
            // Gradient of sign * Re f is sign * (Ax + A*x), projected on the
            // tangent space of the real set.
            const Eigen::VectorXd grad = sg * to_real(form_gradient(st.ax, st.astar_x, Quaternion(1.0)));
            const Eigen::MatrixXd jac = mf.constraint_jacobian(st, x);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
            svd.setThreshold(1e-10);
            const auto rank = svd.rank();
            const Eigen::MatrixXd basis = svd.matrixV().leftCols(rank);
            const Eigen::VectorXd dir = grad - basis * (basis.transpose() * grad);
            const double dnorm2 = dir.squaredNorm();
            if (dnorm2 < 1e-28 * scale_ * scale_) break;

            double t = std::min(step * 2.0, 1.0 / scale_);
            bool moved = false;
            while (t > 1e-16 / scale_) {
                auto y = mf.retract(from_real(to_real(x) + t * dir));
                if (y) {
                    FormState sy = eval_state(a_, a_star_, *y);
                    const double val = sg * sy.f.real();
                    if (val > cur + 1e-4 * t * dnorm2) {
                        x = std::move(*y);
                        st = std::move(sy);
                        cur = val;
                        step = t;
                        moved = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if (!moved) break;
        }
        if (cur > best_val) {
            best_val = cur;
            best_x = x;
        }
    }
    if (!best_x) return std::nullopt;
    return make_sample(a_, *best_x);
}

BildEstimate RangeSampler::upper_hull() const {
    const double snap = 1e-9 * scale_;

    std::vector<RangeSample> cands;
    cands.reserve(opts_.theta_steps + 3);
    for (std::size_t k = 0; k < opts_.theta_steps; ++k) {
        const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                     static_cast<double>(opts_.theta_steps);
        cands.push_back(support(theta).witness);
    }

    // W∩R is nonempty (except for 1x1 non-real input, which throws here), so
    // the hull always touches the axis.
    const RealPoint rp = real_point(a_);
    cands.push_back(make_sample(a_, rp.x));

    // The corners (m, 0) and (M, 0) sit on the ridge vec f = 0 where the
    // support objective is not smooth; polish them on the real set directly.
    std::vector<std::size_t> order(opts_.theta_steps);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t p, std::size_t q) { return cands[p].bild_point.x < cands[q].bild_point.x; });
    auto starts_for = [&](bool left) {
        std::vector<QVector> starts{rp.x};
        std::size_t taken = 0;
        for (std::size_t t = 0; t < order.size() && taken < opts_.starts; ++t) {
            const std::size_t idx = left ? order[t] : order[order.size() - 1 - t];
            const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(idx) /
                                                         static_cast<double>(opts_.theta_steps);
            if (std::sin(theta) < 0.0) {
                starts.push_back(cands[idx].x);
                ++taken;
            }
        }
        return starts;
    };
    if (auto lo = real_extreme(-1, starts_for(true), opts_.budget)) cands.push_back(*lo);
    if (auto hi = real_extreme(+1, starts_for(false), opts_.budget)) cands.push_back(*hi);

    for (auto& c : cands)
        if (c.bild_point.y <= snap) c.bild_point.y = 0.0;

    std::vector<Point2> pts;
    pts.reserve(cands.size());
    for (const auto& c : cands) pts.push_back({c.bild_point.x, c.bild_point.y});

    BildEstimate est = estimate_from_polygon(convex_hull(pts), opts_.tol, 0.0);
    est.witnesses.clear();
    for (const auto& v : est.hull) {
        auto it = std::find_if(cands.begin(), cands.end(),
                               [&](const RangeSample& c) { return c.bild_point.x == v.x && c.bild_point.y == v.y; });
        est.witnesses.push_back(*it);
    }
    est.flat = est.y_M <= snap;
    est.sample_count = opts_.samples;
    est.seed = opts_.seed;
    return est;
}

BildEstimate estimate_from_polygon(const Polygon& upper, double tol, double snap) {
    if (upper.empty()) throw std::invalid_argument("empty bild polygon");
    std::vector<Point2> pts(upper.begin(), upper.end());
    for (auto& p : pts) {
        if (p.y < -snap) throw std::invalid_argument("upper bild polygon must lie in y >= 0");
        if (p.y <= snap) p.y = 0.0;
    }
    BildEstimate est;
    est.hull = convex_hull(pts);
    est.tol = tol;
    bool any_real = false;
    est.m = std::numeric_limits<double>::infinity();
    est.M = -est.m;
    est.pi_m = est.m;
    est.pi_M = -est.m;
    for (const auto& p : est.hull) {
        est.pi_m = std::min(est.pi_m, p.x);
        est.pi_M = std::max(est.pi_M, p.x);
        est.y_M = std::max(est.y_M, p.y);
        if (p.y == 0.0) {
            any_real = true;
            est.m = std::min(est.m, p.x);
            est.M = std::max(est.M, p.x);
        }
    }
    if (!any_real) throw std::invalid_argument("bild polygon does not meet the real axis");
    est.flat = est.y_M <= snap;
    return est;
}

SupportResult support_upper_bild(const QMatrix& a, double theta, const SamplerOptions& opts) {
    if (theta < -std::numbers::pi - 1e-12 || theta > std::numbers::pi + 1e-12)
        throw std::invalid_argument("theta must lie in [-pi, pi]");
    return RangeSampler(a, opts).support(theta);
}

BildEstimate upper_hull(const QMatrix& a, const SamplerOptions& opts) { return RangeSampler(a, opts).upper_hull(); }

bool membership(const Quaternion& q, const BildEstimate& est, double eps) {
    const UpperPoint u = upper_representative(q);
    return distance_to_polygon(est.hull, {u.x, u.y}) <= eps;
}

std::vector<HistogramCell> sample_histogram(const std::vector<UpperPoint>& pts, std::size_t bins) {
    std::vector<HistogramCell> out;
    if (pts.empty() || bins == 0) return out;
    double x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
    for (const auto& p : pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double wx = x1 > x0 ? (x1 - x0) / static_cast<double>(bins) : 1.0;
    const double wy = y1 > y0 ? (y1 - y0) / static_cast<double>(bins) : 1.0;
    std::vector<std::size_t> counts(bins * bins, 0);
    for (const auto& p : pts) {
        const auto ix = std::min(bins - 1, static_cast<std::size_t>((p.x - x0) / wx));
        const auto iy = std::min(bins - 1, static_cast<std::size_t>((p.y - y0) / wy));
        ++counts[iy * bins + ix];
    }
    for (std::size_t iy = 0; iy < bins; ++iy)
        for (std::size_t ix = 0; ix < bins; ++ix)
            if (const auto c = counts[iy * bins + ix]; c > 0)
                out.push_back({x0 + (static_cast<double>(ix) + 0.5) * wx, y0 + (static_cast<double>(iy) + 0.5) * wy, c});
    return out;
}

}  // namespace qnr
