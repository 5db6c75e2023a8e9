#pragma once

#include <algorithm>
#include <numbers>

#include "skewgeom/core.hpp"
#include "skewgeom/frame.hpp"
#include "skewgeom/tensor.hpp"

// Orthogonal projections onto a line and onto a plane, rotations about an
// axis, and the projection/rotation decomposition of the vector product.
// All maps act on coordinate triples in a given frame and use its metric.

namespace skewgeom {

namespace detail {
inline void require_nonzero_axis(const Vec3& a, const Frame& f) {
    if (scalar_product(a, a, f) <= 1e-24) throw ZeroAxis();
}
}  // namespace detail

/// Component of b collinear with a:  (b,a)/(a,a) * a.
inline Vec3 project_onto_line(const Vec3& b, const Vec3& a, const Frame& f) {
    detail::require_nonzero_axis(a, f);
    return a * (scalar_product(b, a, f) / scalar_product(a, a, f));
}

/// Component of b perpendicular to a:  b - (b,a)/(a,a) * a.
inline Vec3 project_onto_plane(const Vec3& b, const Vec3& a, const Frame& f) {
    return b - project_onto_line(b, a, f);
}

/// Rotation of b by the angle phi about the axis spanned by a.  Positive
/// angles rotate counterclockwise when viewed from the tip of a.
inline Vec3 rotate_about_axis(const Vec3& b, const Vec3& a, Scalar phi, const Frame& f) {
    detail::require_nonzero_axis(a, f);
    require_finite(phi, "angle");
    const Vec3 parallel = project_onto_line(b, a, f);
    const Vec3 perp = b - parallel;
    const Vec3 axis_unit = a / metric_norm(a, f);
    // [axis, perp] has the same metric length as perp and is perpendicular
    // to both, so (perp, [axis,perp]) is an orthogonal pair in the rotation
    // plane.
    const Vec3 side = vector_product(axis_unit, perp, f);
    return parallel + perp * std::cos(phi) + side * std::sin(phi);
}

/// [a,b] recovered as -|b| * rotation-by-pi/2 about b of the projection of a
/// onto the plane perpendicular to b.  Cross-check path for the vector
/// product, not the primary one.
inline Vec3 vector_product_via_rotation(const Vec3& a, const Vec3& b, const Frame& f) {
    detail::require_nonzero_axis(b, f);
    const Vec3 projected = project_onto_plane(a, b, f);
    const Vec3 rotated = rotate_about_axis(projected, b, std::numbers::pi / 2.0, f);
    return rotated * (-metric_norm(b, f));
}

}  // namespace skewgeom
