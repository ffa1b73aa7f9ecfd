#include "qnr/quaternion.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnr {

Quaternion Quaternion::inverse() const {
    const double n2 = norm_sq();
    if (n2 == 0.0) throw std::domain_error("inverse of zero quaternion");
    return conj() / n2;
}

double max_abs_diff(const Quaternion& p, const Quaternion& q) {
    double d = 0.0;
    for (std::size_t t = 0; t < 4; ++t) d = std::max(d, std::abs(p[t] - q[t]));
    return d;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ']';
}

SimilarityClass similarity_class(const Quaternion& q) { return {q.real(), q.vector_norm()}; }

bool similar(const Quaternion& p, const Quaternion& q, double eps) {
    if (eps < 0.0) throw std::invalid_argument("similarity tolerance must be nonnegative");
    const auto a = similarity_class(p);
    const auto b = similarity_class(q);
    return std::abs(a.real_part - b.real_part) <= eps && std::abs(a.vector_norm - b.vector_norm) <= eps;
}

UpperPoint upper_representative(const Quaternion& q) { return {q.real(), q.vector_norm()}; }

Quaternion rotate_to_slice(const UpperPoint& p, const Quaternion& u, double tol) {
    if (std::abs(u.real()) > tol || std::abs(u.norm() - 1.0) > tol)
        throw std::invalid_argument("slice direction must be a unit pure quaternion");
    return Quaternion(p.x) + p.y * u;
}

}  // namespace qnr
