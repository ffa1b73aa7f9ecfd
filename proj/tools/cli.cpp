#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qnr/bild_geometry.hpp"
#include "qnr/ellipse_oracle.hpp"
#include "qnr/verify.hpp"

namespace qnr::cli {

using nlohmann::json;

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    SamplerOptions sampler;
    std::string format;  // empty: the subcommand's default
    std::string out;
    std::string samples_csv;
    double alpha = 0.25, k1 = 0.125, k2 = 0.125;
    std::size_t trials = 10000;
    double eps = 2e-2;
    bool brute = false;
};

// Malformed input; reported with exit status 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json point_json(const Point2& p) { return json::array({p.x, p.y}); }

json polygon_json(const Polygon& poly) {
    json arr = json::array();
    for (const auto& p : poly) arr.push_back(point_json(p));
    return arr;
}

std::string polygon_csv(const Polygon& poly) {
    std::string s = "x,y\n";
    for (const auto& p : poly) s += num(p.x) + "," + num(p.y) + "\n";
    return s;
}

// Minimal SVG canvas in world coordinates; a single group transform flips
// the y axis, so plotted vertices are written exactly as in the CSV export.
class SvgPlot {
public:
    void polygon(const Polygon& poly, const std::string& cls) {
        if (poly.empty()) return;
        std::string pts;
        for (const auto& p : poly) {
            if (!pts.empty()) pts += ' ';
            pts += num(p.x) + "," + num(p.y);
            grow(p);
        }
        body_ += "    <polygon class=\"" + cls + "\" points=\"" + pts + "\"/>\n";
    }
    void segment(const Point2& a, const Point2& b, const std::string& cls) {
        grow(a);
        grow(b);
        body_ += "    <line class=\"" + cls + "\" x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) +
                 "\" y2=\"" + num(b.y) + "\"/>\n";
    }
    void marker(const Point2& p, const std::string& cls) {
        grow(p);
        markers_.push_back({p, cls});
    }

    std::string str() const {
        const double size = 720.0, pad = 40.0;
        const double w = std::max(xhi_ - xlo_, 1e-12), h = std::max(yhi_ - ylo_, 1e-12);
        const double s = size / std::max(w, h);
        const double width = s * w + 2 * pad, height = s * h + 2 * pad;
        std::ostringstream o;
        o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
          << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
          << "  <style>\n"
          << "    * { vector-effect: non-scaling-stroke; stroke-width: 1.5; }\n"
          << "    .bild { fill: #9ecae1; fill-opacity: 0.6; stroke: #3182bd; }\n"
          << "    .bild-lower { fill: #c6dbef; fill-opacity: 0.6; stroke: #6baed6; stroke-dasharray: 4 3; }\n"
          << "    .center { fill: #fd8d3c; fill-opacity: 0.55; stroke: #d94701; }\n"
          << "    .kite { fill: none; stroke: #54278f; stroke-dasharray: 2 2; }\n"
          << "    .tangent { stroke: #31a354; }\n"
          << "    .axis { stroke: #888888; stroke-width: 0.75; }\n"
          << "    .apex { fill: #d94701; }\n"
          << "  </style>\n"
          << "  <g transform=\"matrix(" << num(s) << " 0 0 " << num(-s) << " " << num(pad - s * xlo_) << " "
          << num(pad + s * yhi_) << ")\">\n"
          << "    <line class=\"axis\" x1=\"" << num(xlo_) << "\" y1=\"0\" x2=\"" << num(xhi_) << "\" y2=\"0\"/>\n"
          << body_;
        for (const auto& [p, cls] : markers_)
            o << "    <circle class=\"" << cls << "\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\""
              << num(4.0 / s) << "\"/>\n";
        o << "  </g>\n</svg>\n";
        return o.str();
    }

private:
    void grow(const Point2& p) {
        xlo_ = std::min(xlo_, p.x);
        xhi_ = std::max(xhi_, p.x);
        ylo_ = std::min(ylo_, p.y);
        yhi_ = std::max(yhi_, p.y);
    }
    double xlo_ = std::numeric_limits<double>::infinity(), xhi_ = -xlo_;
    double ylo_ = xlo_, yhi_ = -xlo_;
    std::string body_;
    std::vector<std::pair<Point2, std::string>> markers_;
};

QMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
}

json estimate_json(const BildEstimate& est) {
    return {{"m", est.m},       {"M", est.M},         {"pi_m", est.pi_m}, {"pi_M", est.pi_M},
            {"y_M", est.y_M},   {"flat", est.flat},   {"seed", est.seed}, {"samples", est.sample_count},
            {"hull", polygon_json(est.hull)}};
}

void add_tangents(SvgPlot& svg, const CenterRegion& cr, double y_lo, double y_hi) {
    const auto [l, L] = tangent_lines(cr.tangents, y_lo, y_hi);
    svg.segment(l.from, l.to, "tangent");
    svg.segment(L.from, L.to, "tangent");
}

std::string run_bild(const RunConfig& cfg, const std::string& fmt) {
    const RangeSampler sampler(load_matrix(cfg.input), cfg.sampler);
    const BildEstimate est = sampler.upper_hull();
    if (!cfg.samples_csv.empty()) {
        std::ofstream hist(cfg.samples_csv);
        if (!hist) throw InputError("cannot write " + cfg.samples_csv);
        hist << "x,y,count\n";
        for (const auto& c : sample_histogram(sampler.sample_points())) hist << num(c.x) << "," << num(c.y) << "," << c.count << "\n";
    }
    if (fmt == "csv") return polygon_csv(est.hull);
    if (fmt == "json") return estimate_json(est).dump(2) + "\n";
    SvgPlot svg;
    svg.polygon(reflect(est.hull), "bild-lower");
    svg.polygon(est.hull, "bild");
    return svg.str();
}

json center_json(const BildEstimate& est, const CenterRegion& cr) {
    const auto& tp = cr.tangents;
    json j = {{"kind", to_string(cr.kind)},
              {"m", est.m},
              {"M", est.M},
              {"pi_m", est.pi_m},
              {"pi_M", est.pi_M},
              {"y_M", est.y_M},
              {"a", tp.a.value},
              {"b", tp.b.value},
              {"a_bracket", json::array({tp.a.bracket_lo, tp.a.bracket_hi})},
              {"b_bracket", json::array({tp.b.bracket_lo, tp.b.bracket_hi})},
              {"apex", cr.apex ? point_json(*cr.apex) : json(nullptr)},
              {"convex", is_convex(est, est.tol)},
              {"polygon", polygon_json(center_full(cr))}};
    return j;
}

std::string run_center(const RunConfig& cfg, const std::string& fmt) {
    const BildEstimate est = upper_hull(load_matrix(cfg.input), cfg.sampler);
    const CenterRegion cr = compute_center(est);
    if (fmt == "csv") return polygon_csv(center_full(cr));
    if (fmt == "json") return center_json(est, cr).dump(2) + "\n";
    SvgPlot svg;
    svg.polygon(reflect(est.hull), "bild-lower");
    svg.polygon(est.hull, "bild");
    if (!est.flat) add_tangents(svg, cr, est.y_m(), est.y_M);
    svg.polygon(center_full(cr), "center");
    if (cr.apex) svg.marker(*cr.apex, "apex");
    return svg.str();
}

std::string run_convexity(const RunConfig& cfg) {
    const BildEstimate est = upper_hull(load_matrix(cfg.input), cfg.sampler);
    json j = {{"convex", is_convex(est, est.tol)}, {"m", est.m},          {"M", est.M},
              {"pi_m", est.pi_m},                  {"pi_M", est.pi_M},    {"tol", est.tol}};
    return j.dump(2) + "\n";
}

std::string run_realpoint(const RunConfig& cfg) {
    const RealPoint rp = real_point(load_matrix(cfg.input));
    json x = json::array();
    for (const auto& q : rp.x) x.push_back(json::array({q[0], q[1], q[2], q[3]}));
    json j = {{"r", rp.value}, {"beta", rp.beta}, {"imaginary_residual", rp.imaginary_residual}, {"x", x}};
    return j.dump(2) + "\n";
}

std::string run_oracle(const RunConfig& cfg, const std::string& fmt) {
    EllipseModel e;
    try {
        e = st_ellipse(cfg.alpha, cfg.k1, cfg.k2);
    } catch (const std::invalid_argument& ex) {
        throw InputError(ex.what());
    }
    const CenterRegion cr = st_center(e);
    const Polygon kite = st_kite(e);
    if (fmt == "csv") return polygon_csv(kite);
    if (fmt == "json") {
        const auto k = e.conic.coefficients();
        json j = {{"alpha", e.alpha},
                  {"k1", e.k1},
                  {"k2", e.k2},
                  {"conic", format_conic(e.conic)},
                  {"coefficients", {{"A", k[0]}, {"B", k[1]}, {"C", k[2]}, {"D", k[3]}, {"E", k[4]}, {"F", k[5]}}},
                  {"m", e.m},
                  {"M", e.M},
                  {"y_m", e.y_m},
                  {"a", e.a},
                  {"b", e.b},
                  {"apex", cr.apex ? point_json(*cr.apex) : json(nullptr)},
                  {"kite", polygon_json(kite)}};
        return j.dump(2) + "\n";
    }
    const Polygon upper = st_upper_bild(e, 512);
    SvgPlot svg;
    svg.polygon(reflect(upper), "bild-lower");
    svg.polygon(upper, "bild");
    add_tangents(svg, cr, e.y_m, -e.y_m);
    svg.polygon(kite, "kite");
    if (cr.apex) svg.marker(*cr.apex, "apex");
    return svg.str();
}

json report_json(const PropertyReport& r) {
    return {{"name", r.name},       {"trials", r.trials}, {"failures", r.failures},
            {"worst_violation", r.worst_violation}, {"seed", r.seed}, {"passed", r.passed()}};
}

std::string run_verify(const RunConfig& cfg, bool& all_passed) {
    const QMatrix a = load_matrix(cfg.input);
    const BildEstimate est = upper_hull(a, cfg.sampler);
    const CenterRegion cr = compute_center(est);
    std::vector<PropertyReport> reports;
    StarOptions so{cfg.trials, cfg.sampler.seed, cfg.eps, StarMode::center};
    reports.push_back(check_star_shaped(a, est, cr, so));
    so.mode = StarMode::reals;
    reports.push_back(check_star_shaped(a, est, cr, so));
    const ConvexityReport conv = check_convexity_equivalence(a, est, std::min<std::size_t>(cfg.trials, 2000),
                                                             cfg.sampler.seed, cfg.eps);
    reports.push_back(conv.report);
    if (!est.flat) reports.push_back(check_line_equivalence(est, cr, est.hull, 2.0 * cfg.eps));
    if (cfg.brute) {
        const BruteCenter bc = brute_center(est.hull);
        const double h = center_hausdorff(bc, center_full(cr));
        const double limit = std::max(2.0 * bc.cell, 3.0 * cfg.eps);
        reports.push_back({"brute_center_hausdorff", 1, h > limit ? 1u : 0u, h, cfg.sampler.seed});
    }
    json arr = json::array();
    all_passed = true;
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
        all_passed = all_passed && r.passed();
    }
    json j = {{"convex", conv.convex}, {"reports", arr}};
    if (conv.witness) {
        const auto& w = *conv.witness;
        j["witness"] = {{"p", point_json(w[0])}, {"q", point_json(w[1])}, {"midpoint", point_json(w[2])}};
    }
    return j.dump(2) + "\n";
}

}  // namespace

QMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON needs \"n\" and \"entries\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw std::invalid_argument("\"n\" must be a positive integer");
    const auto n = static_cast<std::size_t>(j["n"].get<long long>());
    const json& rows = j["entries"];
    if (!rows.is_array() || rows.size() != n) throw std::invalid_argument("\"entries\" must have n rows");
    QMatrix a(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n) throw std::invalid_argument("each row must have n entries");
        for (std::size_t c = 0; c < n; ++c) {
            const json& q = rows[r][c];
            if (!q.is_array() || q.size() != 4) throw std::invalid_argument("entries are [a0,a1,a2,a3] arrays");
            for (std::size_t t = 0; t < 4; ++t) {
                if (!q[t].is_number()) throw std::invalid_argument("quaternion coefficients must be numbers");
                const double v = q[t].get<double>();
                if (!std::isfinite(v)) throw std::invalid_argument("quaternion coefficients must be finite");
                a(r, c)[t] = v;
            }
        }
    }
    return a;
}

json matrix_to_json(const QMatrix& a) {
    json rows = json::array();
    for (std::size_t r = 0; r < a.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.size(); ++c) {
            const auto& q = a(r, c);
            row.push_back(json::array({q[0], q[1], q[2], q[3]}));
        }
        rows.push_back(row);
    }
    return {{"n", a.size()}, {"entries", rows}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Quaternionic numerical range: bild, star-center and convexity tools", "qnr"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub, const std::vector<std::string>& formats) {
        sub->add_option("--samples", cfg.sampler.samples, "Random unit vectors")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--theta-steps", cfg.sampler.theta_steps, "Support directions")
            ->check(CLI::Range(std::size_t{8}, std::numeric_limits<std::size_t>::max()))
            ->capture_default_str();
        sub->add_option("--seed", cfg.sampler.seed, "RNG seed")->capture_default_str();
        sub->add_option("--budget", cfg.sampler.budget, "Refinement steps per start")->capture_default_str();
        sub->add_option("--tol", cfg.sampler.tol, "Membership tolerance")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    };
    auto with_input = [&](const std::string& name, const std::string& help, const std::vector<std::string>& formats) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", cfg.input, "Matrix JSON file")->required();
        common(sub, formats);
        return sub;
    };

    CLI::App* bild = with_input("bild", "Upper bild hull", {"csv", "json", "svg"});
    bild->add_option("--samples-csv", cfg.samples_csv, "Write the sample histogram (x,y,count) here");
    with_input("center", "Star-center of the bild", {"csv", "json", "svg"});
    with_input("convexity", "Convexity verdict from pi_m = m and pi_M = M", {"json"});
    with_input("realpoint", "A unit vector with real x* A x", {"json"});
    CLI::App* verify = with_input("verify", "Run the property suites", {"json"});
    verify->add_option("--trials", cfg.trials, "Trials per property")->capture_default_str();
    verify->add_option("--eps", cfg.eps, "Property tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_flag("--brute", cfg.brute, "Also compare against the brute-force center");
    CLI::App* oracle = app.add_subcommand("oracle", "Closed-form ellipse family");
    oracle->add_option("--alpha", cfg.alpha)->required();
    oracle->add_option("--k1", cfg.k1)->required();
    oracle->add_option("--k2", cfg.k2)->required();
    common(oracle, {"csv", "json", "svg"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    std::string text;
    bool passed = true;
    try {
        const std::string& c = cfg.command;
        const std::string fmt = !cfg.format.empty() ? cfg.format : (c == "bild" ? "csv" : "json");
        if (c == "bild")
            text = run_bild(cfg, fmt);
        else if (c == "center")
            text = run_center(cfg, fmt);
        else if (c == "convexity")
            text = run_convexity(cfg);
        else if (c == "realpoint")
            text = run_realpoint(cfg);
        else if (c == "oracle")
            text = run_oracle(cfg, fmt);
        else
            text = run_verify(cfg, passed);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << cfg.out << "\n";
            return 2;
        }
        f << text;
    }
    return passed ? 0 : 1;
}

}  // namespace qnr::cli
