// Python bindings. Quaternions cross the boundary as length-4 sequences
// (a0, a1, a2, a3) and matrices as n x n x 4 arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "qnr/bild_geometry.hpp"
#include "qnr/ellipse_oracle.hpp"
#include "qnr/verify.hpp"

namespace py = pybind11;
using namespace qnr;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Quaternion to_quat(const std::array<double, 4>& c) { return Quaternion(c); }
std::array<double, 4> from_quat(const Quaternion& q) { return q.coeffs(); }

QMatrix to_matrix(const Array& arr) {
    if (arr.ndim() != 3 || arr.shape(0) != arr.shape(1) || arr.shape(2) != 4 || arr.shape(0) < 1)
        throw std::invalid_argument("matrix must have shape (n, n, 4) with n >= 1");
    const auto n = static_cast<std::size_t>(arr.shape(0));
    const auto v = arr.unchecked<3>();
    QMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t t = 0; t < 4; ++t)
                a(r, c)[t] = v(static_cast<py::ssize_t>(r), static_cast<py::ssize_t>(c), static_cast<py::ssize_t>(t));
    return a;
}

Array from_matrix(const QMatrix& a) {
    const auto n = static_cast<py::ssize_t>(a.size());
    Array out({n, n, py::ssize_t{4}});
    auto v = out.mutable_unchecked<3>();
    for (py::ssize_t r = 0; r < n; ++r)
        for (py::ssize_t c = 0; c < n; ++c)
            for (py::ssize_t t = 0; t < 4; ++t)
                v(r, c, t) = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c))[static_cast<std::size_t>(t)];
    return out;
}

Array from_vector(const QVector& x) {
    Array out({static_cast<py::ssize_t>(x.size()), py::ssize_t{4}});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t l = 0; l < x.size(); ++l)
        for (std::size_t t = 0; t < 4; ++t) v(static_cast<py::ssize_t>(l), static_cast<py::ssize_t>(t)) = x[l][t];
    return out;
}

Array from_polygon(const Polygon& poly) {
    Array out({static_cast<py::ssize_t>(poly.size()), py::ssize_t{2}});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t k = 0; k < poly.size(); ++k) {
        v(static_cast<py::ssize_t>(k), 0) = poly[k].x;
        v(static_cast<py::ssize_t>(k), 1) = poly[k].y;
    }
    return out;
}

Polygon to_polygon(const Array& arr) {
    if (arr.ndim() != 2 || arr.shape(1) != 2) throw std::invalid_argument("polygon must have shape (k, 2)");
    const auto v = arr.unchecked<2>();
    Polygon poly;
    for (py::ssize_t k = 0; k < arr.shape(0); ++k) poly.push_back({v(k, 0), v(k, 1)});
    return poly;
}

py::dict report_dict(const PropertyReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["trials"] = r.trials;
    d["failures"] = r.failures;
    d["worst_violation"] = r.worst_violation;
    d["seed"] = r.seed;
    d["passed"] = r.passed();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quaternionic numerical ranges: bild hull, star-center and convexity";

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

    m.def("hamilton_product", [](const std::array<double, 4>& p, const std::array<double, 4>& q) {
        return from_quat(to_quat(p) * to_quat(q));
    });
    m.def("similar", [](const std::array<double, 4>& p, const std::array<double, 4>& q,
                        double eps) { return similar(to_quat(p), to_quat(q), eps); },
          py::arg("p"), py::arg("q"), py::arg("eps") = kDefaultSimilarityEps);
    m.def("upper_representative", [](const std::array<double, 4>& q) {
        const UpperPoint u = upper_representative(to_quat(q));
        return std::make_pair(u.x, u.y);
    });
    m.def("rotate_to_slice", [](double x, double y, const std::array<double, 4>& u) {
        return from_quat(rotate_to_slice({x, y}, to_quat(u)));
    });

    m.def("quadratic_form", [](const Array& a, const Array& x) {
        const QMatrix mat = to_matrix(a);
        if (x.ndim() != 2 || x.shape(1) != 4) throw std::invalid_argument("vector must have shape (n, 4)");
        const auto v = x.unchecked<2>();
        QVector xs(static_cast<std::size_t>(x.shape(0)));
        for (std::size_t l = 0; l < xs.size(); ++l)
            for (std::size_t t = 0; t < 4; ++t) xs[l][t] = v(static_cast<py::ssize_t>(l), static_cast<py::ssize_t>(t));
        return from_quat(evaluate_form(mat, xs));
    });
    m.def("hermitian_skew_split", [](const Array& a) {
        const auto [h, s] = hermitian_skew_split(to_matrix(a));
        return std::make_pair(from_matrix(h), from_matrix(s));
    });
    m.def("real_point", [](const Array& a) {
        const RealPoint rp = real_point(to_matrix(a));
        py::dict d;
        d["x"] = from_vector(rp.x);
        d["value"] = rp.value;
        d["beta"] = rp.beta;
        d["imaginary_residual"] = rp.imaginary_residual;
        return d;
    });

    py::class_<BildEstimate>(m, "BildEstimate")
        .def_property_readonly("hull", [](const BildEstimate& e) { return from_polygon(e.hull); })
        .def_readonly("m", &BildEstimate::m)
        .def_readonly("M", &BildEstimate::M)
        .def_readonly("pi_m", &BildEstimate::pi_m)
        .def_readonly("pi_M", &BildEstimate::pi_M)
        .def_readonly("y_M", &BildEstimate::y_M)
        .def_readonly("flat", &BildEstimate::flat)
        .def_readonly("tol", &BildEstimate::tol)
        .def_readonly("seed", &BildEstimate::seed);

    m.def(
        "upper_hull",
        [](const Array& a, std::size_t samples, std::size_t theta_steps, std::uint64_t seed, std::size_t budget,
           double tol) {
            SamplerOptions opts;
            opts.samples = samples;
            opts.theta_steps = theta_steps;
            opts.seed = seed;
            opts.budget = budget;
            opts.tol = tol;
            const QMatrix mat = to_matrix(a);
            py::gil_scoped_release release;
            return upper_hull(mat, opts);
        },
        py::arg("a"), py::arg("samples") = 200000, py::arg("theta_steps") = 720, py::arg("seed") = 0,
        py::arg("budget") = 50, py::arg("tol") = 1e-2);
    m.def(
        "estimate_from_polygon",
        [](const Array& upper, double tol) { return estimate_from_polygon(to_polygon(upper), tol); },
        py::arg("upper"), py::arg("tol") = 1e-2);
    m.def("membership", [](const std::array<double, 4>& q, const BildEstimate& est,
                           double eps) { return membership(to_quat(q), est, eps); },
          py::arg("q"), py::arg("est"), py::arg("eps") = 1e-2);
    m.def("is_convex", &is_convex, py::arg("est"), py::arg("eps") = 1e-2);

    py::class_<CenterRegion>(m, "CenterRegion")
        .def_property_readonly("kind", [](const CenterRegion& c) { return to_string(c.kind); })
        .def_property_readonly("upper", [](const CenterRegion& c) { return from_polygon(c.upper); })
        .def_property_readonly("polygon", [](const CenterRegion& c) { return from_polygon(center_full(c)); })
        .def_property_readonly("apex",
                               [](const CenterRegion& c) -> py::object {
                                   if (!c.apex) return py::none();
                                   return py::make_tuple(c.apex->x, c.apex->y);
                               })
        .def_property_readonly("a", [](const CenterRegion& c) { return c.tangents.a.value; })
        .def_property_readonly("b", [](const CenterRegion& c) { return c.tangents.b.value; })
        .def_property_readonly("m", [](const CenterRegion& c) { return c.tangents.m; })
        .def_property_readonly("M", [](const CenterRegion& c) { return c.tangents.M; });

    m.def("compute_center", [](const BildEstimate& est) { return compute_center(est); });
    m.def("center_membership", [](const std::array<double, 4>& q, const CenterRegion& cr,
                                  double eps) { return center_membership_W(to_quat(q), cr, eps); },
          py::arg("q"), py::arg("center"), py::arg("eps") = 1e-2);

    m.def(
        "ellipse",
        [](double alpha, double k1, double k2) {
            const EllipseModel e = st_ellipse(alpha, k1, k2);
            const CenterRegion cr = st_center(e);
            py::dict d;
            d["conic"] = format_conic(e.conic);
            d["coefficients"] = e.conic.coefficients();
            d["m"] = e.m;
            d["M"] = e.M;
            d["y_m"] = e.y_m;
            d["a"] = e.a;
            d["b"] = e.b;
            d["apex"] = cr.apex ? py::object(py::make_tuple(cr.apex->x, cr.apex->y)) : py::object(py::none());
            d["kite"] = from_polygon(st_kite(e));
            return d;
        },
        py::arg("alpha"), py::arg("k1"), py::arg("k2"));
    m.def("ellipse_matrix", [](double alpha, double k1, double k2) { return from_matrix(st_matrix(alpha, k1, k2)); });

    m.def(
        "check_star_shaped",
        [](const Array& a, const BildEstimate& est, const CenterRegion& cr, std::size_t trials, std::uint64_t seed,
           double eps, bool reals) {
            const QMatrix mat = to_matrix(a);
            const StarOptions opts{trials, seed, eps, reals ? StarMode::reals : StarMode::center};
            return report_dict(check_star_shaped(mat, est, cr, opts));
        },
        py::arg("a"), py::arg("est"), py::arg("center"), py::arg("trials") = 10000, py::arg("seed") = 0,
        py::arg("eps") = 2e-2, py::arg("reals") = false);
    m.def(
        "check_convexity_equivalence",
        [](const Array& a, const BildEstimate& est, std::size_t trials, std::uint64_t seed, double eps) {
            const ConvexityReport rep = check_convexity_equivalence(to_matrix(a), est, trials, seed, eps);
            py::dict d = report_dict(rep.report);
            d["convex"] = rep.convex;
            if (rep.witness) {
                const auto& w = *rep.witness;
                d["witness"] = py::make_tuple(py::make_tuple(w[0].x, w[0].y), py::make_tuple(w[1].x, w[1].y),
                                              py::make_tuple(w[2].x, w[2].y));
            } else {
                d["witness"] = py::none();
            }
            return d;
        },
        py::arg("a"), py::arg("est"), py::arg("trials") = 2000, py::arg("seed") = 0, py::arg("eps") = 2e-2);
}
