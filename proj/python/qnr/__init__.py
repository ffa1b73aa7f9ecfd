"""Quaternionic numerical ranges: bild hull, star-center and convexity."""

from ._core import (
    BildEstimate,
    CenterRegion,
    DomainError,
    center_membership,
    check_convexity_equivalence,
    check_star_shaped,
    compute_center,
    ellipse,
    ellipse_matrix,
    estimate_from_polygon,
    hamilton_product,
    hermitian_skew_split,
    is_convex,
    membership,
    quadratic_form,
    real_point,
    rotate_to_slice,
    similar,
    upper_hull,
    upper_representative,
)

__all__ = [
    "BildEstimate",
    "CenterRegion",
    "DomainError",
    "center_membership",
    "check_convexity_equivalence",
    "check_star_shaped",
    "compute_center",
    "ellipse",
    "ellipse_matrix",
    "estimate_from_polygon",
    "hamilton_product",
    "hermitian_skew_split",
    "is_convex",
    "membership",
    "quadratic_form",
    "real_point",
    "rotate_to_slice",
    "similar",
    "upper_hull",
    "upper_representative",
]
