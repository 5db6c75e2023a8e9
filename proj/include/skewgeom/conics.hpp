#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "skewgeom/core.hpp"
#include "skewgeom/loci.hpp"

// Ellipse, hyperbola and parabola in their canonical coordinate systems:
// derived parameters, tangent lines, directrix ratios, focal bisector
// residuals and asymptotes.  Canonical coordinates are rectangular, so all
// lengths below are Euclidean.

namespace skewgeom {

// Scale-aware tolerance for the "point lies on the curve" preconditions;
// canonical equations are quadratic, hence the squared semiaxes.
inline Scalar on_curve_tolerance(Scalar a, Scalar b) {
    return 1e-9 * std::max(1.0, std::max(a * a, b * b));
}

/// Ellipse x^2/a^2 + y^2/b^2 = 1 with foci (-c,0), (c,0).
/// The directrix distance d is undefined for a circle (c = 0).
struct EllipseParams {
    Scalar a = 1.0;  // semimajor
    Scalar b = 1.0;  // semiminor
    Scalar c = 0.0;  // half interfocal distance
    Scalar eps = 0.0;
    std::optional<Scalar> d;
};

inline EllipseParams ellipse_from_a_c(Scalar a, Scalar c) {
    require_finite(a, "a");
    require_finite(c, "c");
    if (a <= 0.0) throw InvalidShape("ellipse: semimajor axis must be positive");
    if (c < 0.0 || c >= a) throw InvalidShape("ellipse: need 0 <= c < a");
    EllipseParams e;
    e.a = a;
    e.c = c;
    e.b = std::sqrt(a * a - c * c);
    e.eps = c / a;
    if (c > 0.0) e.d = a * a / c;
    return e;
}

/// Hyperbola x^2/a^2 - y^2/b^2 = 1 with foci (-c,0), (c,0).
struct HyperbolaParams {
    Scalar a = 1.0;  // real semiaxis
    Scalar b = 1.0;  // imaginary semiaxis
    Scalar c = 2.0;
    Scalar eps = 2.0;
    Scalar d = 0.5;
};

inline HyperbolaParams hyperbola_from_a_c(Scalar a, Scalar c) {
    require_finite(a, "a");
    require_finite(c, "c");
    if (a <= 0.0 || c <= a) throw InvalidShape("hyperbola: need c > a > 0");
    HyperbolaParams h;
    h.a = a;
    h.c = c;
    h.b = std::sqrt(c * c - a * a);
    h.eps = c / a;
    h.d = a * a / c;
    return h;
}

/// Parabola y^2 = 2 p x with focus (p/2, 0) and directrix x = -p/2.
/// The eccentricity of a parabola is 1.
struct ParabolaParams {
    Scalar p = 1.0;
};

inline ParabolaParams parabola_from_p(Scalar p) {
    require_finite(p, "p");
    if (p <= 0.0) throw InvalidShape("parabola: focal parameter must be positive");
    return {p};
}

// -- membership ---------------------------------------------------------------

inline bool on_curve(const EllipseParams& e, Scalar x, Scalar y) {
    const Scalar r = x * x / (e.a * e.a) + y * y / (e.b * e.b) - 1.0;
    return std::abs(r) <= on_curve_tolerance(e.a, e.b);
}
inline bool on_curve(const HyperbolaParams& h, Scalar x, Scalar y) {
    const Scalar r = x * x / (h.a * h.a) - y * y / (h.b * h.b) - 1.0;
    return std::abs(r) <= on_curve_tolerance(h.a, h.b);
}
inline bool on_curve(const ParabolaParams& p, Scalar x, Scalar y) {
    return std::abs(y * y - 2.0 * p.p * x) <= on_curve_tolerance(p.p, p.p);
}

// -- tangent lines -------------------------------------------------------------

/// Tangent x x0/a^2 + y y0/b^2 = 1 at a point of the ellipse.
inline line2d::General ellipse_tangent_at(const EllipseParams& e, Scalar x0, Scalar y0) {
    if (!on_curve(e, x0, y0)) throw PointNotOnCurve();
    return {x0 / (e.a * e.a), y0 / (e.b * e.b), 1.0};
}

/// Tangent x x0/a^2 - y y0/b^2 = 1 at a point of the hyperbola.
inline line2d::General hyperbola_tangent_at(const HyperbolaParams& h, Scalar x0, Scalar y0) {
    if (!on_curve(h, x0, y0)) throw PointNotOnCurve();
    return {x0 / (h.a * h.a), -y0 / (h.b * h.b), 1.0};
}

/// Tangent y y0 = p x + p x0 at a point of the parabola.
inline line2d::General parabola_tangent_at(const ParabolaParams& p, Scalar x0, Scalar y0) {
    if (!on_curve(p, x0, y0)) throw PointNotOnCurve();
    return {p.p, -y0, -p.p * x0};
}

// -- directrix and focal theorems ------------------------------------------------

/// |MF1| / |MH1| for the focus (-c,0) and the directrix x = -d; equals the
/// eccentricity for every point of the curve.
inline Scalar directrix_ratio(const EllipseParams& e, Scalar x, Scalar y) {
    if (e.c == 0.0 || !e.d) throw UndefinedForCircle();
    if (!on_curve(e, x, y)) throw PointNotOnCurve();
    const Scalar to_focus = Vec2{x + e.c, y}.norm();
    const Scalar to_directrix = std::abs(x + *e.d);
    return to_focus / to_directrix;
}

inline Scalar directrix_ratio(const HyperbolaParams& h, Scalar x, Scalar y) {
    if (!on_curve(h, x, y)) throw PointNotOnCurve();
    const Scalar to_focus = Vec2{x + h.c, y}.norm();
    const Scalar to_directrix = std::abs(x + h.d);
    return to_focus / to_directrix;
}

/// Bisector property of the tangent normal: the residual of
/// (MF1,n)/|MF1| = (MF2,n)/|MF2| at a point of the ellipse.
inline Scalar focal_bisector_residual(const EllipseParams& e, Scalar x0, Scalar y0) {
    if (!on_curve(e, x0, y0)) throw PointNotOnCurve();
    const Vec2 n{x0 / (e.a * e.a), y0 / (e.b * e.b)};
    const Vec2 mf1{-e.c - x0, -y0};
    const Vec2 mf2{e.c - x0, -y0};
    return std::abs(mf1.dot(n) / mf1.norm() - mf2.dot(n) / mf2.norm());
}

/// Same bisector property for the hyperbola; the normal bisects the inner
/// angle, so one focal vector enters reversed.
inline Scalar focal_bisector_residual(const HyperbolaParams& h, Scalar x0, Scalar y0) {
    if (!on_curve(h, x0, y0)) throw PointNotOnCurve();
    const Vec2 n{x0 / (h.a * h.a), -y0 / (h.b * h.b)};
    const Vec2 f1m{x0 + h.c, y0};
    const Vec2 mf2{h.c - x0, -y0};
    return std::abs(f1m.dot(n) / f1m.norm() - mf2.dot(n) / mf2.norm());
}

/// Isosceles property of the parabola: | |MF| - |NF| | where N is the
/// intersection of the tangent with the axis, N = (-x0, 0).
inline Scalar focal_bisector_residual(const ParabolaParams& p, Scalar x0, Scalar y0) {
    if (!on_curve(p, x0, y0)) throw PointNotOnCurve();
    const Scalar mf = Vec2{x0 - p.p / 2.0, y0}.norm();
    const Scalar nf = p.p / 2.0 + x0;
    return std::abs(mf - nf);
}

/// The two asymptotes y = (b/a) x and y = -(b/a) x as general-form lines.
inline std::pair<line2d::General, line2d::General> hyperbola_asymptotes(const HyperbolaParams& h) {
    return {line2d::General{1.0, -h.a / h.b, 0.0}, line2d::General{1.0, h.a / h.b, 0.0}};
}

}  // namespace skewgeom
