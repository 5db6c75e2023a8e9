#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <variant>

#include "skewgeom/core.hpp"
#include "skewgeom/frame.hpp"
#include "skewgeom/tensor.hpp"

// Equation forms for straight lines on a plane, planes in space and straight
// lines in space, with conversions between every pair of forms, plus
// Cartesian coordinate systems with origin displacement.
//
// Conventions baked into the data model:
//   - General forms carry the constant with a minus sign: A x + B y - D = 0
//     and A x + B y + C z - D = 0, so the intercept formulas a = D/A, ...
//     hold verbatim.
//   - Output implicit forms are normalized so the first nonzero of
//     (A, B[, C]) equals +1.
//   - The 2D machinery lives on the e3 = 0 slice of the ambient space; its
//     metric is the top-left 2x2 block of a frame's Gram matrix.

namespace skewgeom {

// Tolerance for "this coefficient counts as zero" decisions in conversions,
// relative to the scale of the form at hand.
inline constexpr Scalar kFormZeroTol = 1e-12;

/// Metric of a plane spanned by the first two vectors of a frame.
struct Metric2 {
    SymMat2 g;
    SymMat2 g_inv;

    static Metric2 euclidean() { return {SymMat2::identity(), SymMat2::identity()}; }
    static Metric2 from_frame(const Frame& f) {
        Metric2 m;
        m.g = SymMat2{f.gram.xx, f.gram.xy, f.gram.yy};
        m.g_inv = m.g.inverse();
        return m;
    }
    Scalar dot(const Vec2& a, const Vec2& b) const { return a.dot(g * b); }
};

// ---------------------------------------------------------------------------
// Straight line on a plane

namespace line2d {

struct Parametric {
    Vec2 r0, a;
};
struct Normal {
    Vec2 n;  // contravariant coordinates of the normal vector
    Scalar d = 0.0;
};
struct Canonical {
    // (x - x0)/ax = (y - y0)/ay; a zero direction component degenerates to
    // x = x0 or y = y0.
    Scalar x0 = 0.0, y0 = 0.0, ax = 0.0, ay = 0.0;
};
struct TwoPoint {
    Vec2 p0, p1;
};
struct General {
    Scalar a = 0.0, b = 0.0, d = 0.0;  // A x + B y - D = 0
};
struct Intercept {
    Scalar a = 0.0, b = 0.0;  // x/a + y/b = 1
};

using Form = std::variant<Parametric, Normal, Canonical, TwoPoint, General, Intercept>;

enum class Tag { parametric, normal, canonical, two_point, general, intercept };

namespace detail {

inline Scalar cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

struct Carrier {
    Vec2 r0, a;          // parametric realization
    Scalar A, B, D;      // implicit A x + B y - D = 0 (covariant coefficients)
};

inline void validate(const Form& form) {
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Parametric>) {
                require_finite(f.r0, "r0");
                require_finite(f.a, "a");
                if (f.a.norm() <= kFormZeroTol * std::max(1.0, f.r0.norm()))
                    throw InvalidForm("parametric line: zero direction");
            } else if constexpr (std::is_same_v<T, Normal>) {
                require_finite(f.n, "n");
                require_finite(f.d, "D");
                if (f.n.norm() <= kFormZeroTol * std::max(1.0, std::abs(f.d)))
                    throw InvalidForm("normal line form: zero normal");
            } else if constexpr (std::is_same_v<T, Canonical>) {
                require_finite(Vec2{f.x0, f.y0}, "r0");
                require_finite(Vec2{f.ax, f.ay}, "direction");
                if (Vec2{f.ax, f.ay}.norm() <=
                    kFormZeroTol * std::max(1.0, Vec2{f.x0, f.y0}.norm()))
                    throw InvalidForm("canonical line form: zero direction");
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                require_finite(f.p0, "p0");
                require_finite(f.p1, "p1");
                if ((f.p1 - f.p0).norm() <=
                    kFormZeroTol * std::max(1.0, std::max(f.p0.norm(), f.p1.norm())))
                    throw InvalidForm("two-point line form: coinciding points");
            } else if constexpr (std::is_same_v<T, General>) {
                require_finite(Vec2{f.a, f.b}, "(A,B)");
                require_finite(f.d, "D");
                if (std::max(std::abs(f.a), std::abs(f.b)) <=
                    kFormZeroTol * std::max(1.0, std::abs(f.d)))
                    throw InvalidForm("general line form: A and B both vanish");
            } else if constexpr (std::is_same_v<T, Intercept>) {
                require_finite(Vec2{f.a, f.b}, "(a,b)");
                if (f.a == 0.0 || f.b == 0.0)
                    throw InvalidForm("intercept line form: zero intercept");
            }
        },
        form);
}

// Normalize implicit coefficients so the first nonzero of (A, B) is +1.
inline void normalize_implicit(Scalar& A, Scalar& B, Scalar& D) {
    const Scalar scale = std::max(std::abs(A), std::abs(B));
    const Scalar lead = std::abs(A) > kFormZeroTol * scale ? A : B;
    A /= lead;
    B /= lead;
    D /= lead;
}

inline Carrier to_carrier(const Form& form, const Metric2& m) {
    Carrier c{};
    if (const auto* p = std::get_if<Parametric>(&form)) {
        c.r0 = p->r0;
        c.a = p->a;
        c.A = p->a.y;
        c.B = -p->a.x;
        c.D = c.A * c.r0.x + c.B * c.r0.y;
    } else if (const auto* p = std::get_if<Canonical>(&form)) {
        c.r0 = {p->x0, p->y0};
        c.a = {p->ax, p->ay};
        c.A = c.a.y;
        c.B = -c.a.x;
        c.D = c.A * c.r0.x + c.B * c.r0.y;
    } else if (const auto* p = std::get_if<TwoPoint>(&form)) {
        c.r0 = p->p0;
        c.a = p->p1 - p->p0;
        c.A = c.a.y;
        c.B = -c.a.x;
        c.D = c.A * c.r0.x + c.B * c.r0.y;
    } else {
        // implicit sources: Normal, General, Intercept
        if (const auto* p = std::get_if<Normal>(&form)) {
            const Vec2 lower = m.g * p->n;  // covariant coordinates
            c.A = lower.x;
            c.B = lower.y;
            c.D = p->d;
        } else if (const auto* p = std::get_if<General>(&form)) {
            c.A = p->a;
            c.B = p->b;
            c.D = p->d;
        } else {
            const auto& icpt = std::get<Intercept>(form);
            c.A = 1.0 / icpt.a;
            c.B = 1.0 / icpt.b;
            c.D = 1.0;
        }
        c.a = {-c.B, c.A};
        c.r0 = std::abs(c.A) >= std::abs(c.B) ? Vec2{c.D / c.A, 0.0} : Vec2{0.0, c.D / c.B};
    }
    normalize_implicit(c.A, c.B, c.D);
    return c;
}

}  // namespace detail

/// Point of the line's parametric realization at parameter t.
inline Vec2 point_at(const Form& form, Scalar t, const Metric2& m = Metric2::euclidean()) {
    detail::validate(form);
    const detail::Carrier c = detail::to_carrier(form, m);
    return c.r0 + c.a * t;
}

/// Residual of the form's own defining equation at a point; zero iff the
/// point lies on the line (up to roundoff).
inline Scalar implicit_residual(const Form& form, const Vec2& p,
                                const Metric2& m = Metric2::euclidean()) {
    return std::visit(
        [&](const auto& f) -> Scalar {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Parametric>) {
                return detail::cross(p - f.r0, f.a);
            } else if constexpr (std::is_same_v<T, Normal>) {
                return m.dot(p, f.n) - f.d;
            } else if constexpr (std::is_same_v<T, Canonical>) {
                if (f.ax == 0.0) return p.x - f.x0;
                if (f.ay == 0.0) return p.y - f.y0;
                return (p.x - f.x0) * f.ay - (p.y - f.y0) * f.ax;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                return detail::cross(p - f.p0, f.p1 - f.p0);
            } else if constexpr (std::is_same_v<T, General>) {
                return f.a * p.x + f.b * p.y - f.d;
            } else {
                return p.x / f.a + p.y / f.b - 1.0;
            }
        },
        form);
}

inline Form convert(const Form& src, Tag to, const Metric2& m = Metric2::euclidean()) {
    detail::validate(src);
    const detail::Carrier c = detail::to_carrier(src, m);
    const Scalar dir_scale = c.a.norm();
    switch (to) {
        case Tag::parametric:
            return Parametric{c.r0, c.a};
        case Tag::normal:
            // raise the covariant implicit coefficients back to a vector
            return Normal{m.g_inv * Vec2{c.A, c.B}, c.D};
        case Tag::canonical: {
            Canonical out{c.r0.x, c.r0.y, c.a.x, c.a.y};
            if (std::abs(out.ax) <= kFormZeroTol * dir_scale) out.ax = 0.0;
            if (std::abs(out.ay) <= kFormZeroTol * dir_scale) out.ay = 0.0;
            return out;
        }
        case Tag::two_point:
            return TwoPoint{c.r0, c.r0 + c.a};
        case Tag::general:
            return General{c.A, c.B, c.D};
        case Tag::intercept: {
            const Scalar scale = std::max(std::abs(c.A), std::abs(c.B));
            if (std::abs(c.D) <= kFormZeroTol * scale)
                throw NotRepresentable("intercept form: line passes through the origin");
            if (std::abs(c.A) <= kFormZeroTol * scale || std::abs(c.B) <= kFormZeroTol * scale)
                throw NotRepresentable("intercept form: line is parallel to a coordinate axis");
            return Intercept{c.D / c.A, c.D / c.B};
        }
    }
    throw KernelError("unreachable line2d conversion target");
}

}  // namespace line2d

// ---------------------------------------------------------------------------
// Plane in space

namespace plane {

struct Parametric {
    Vec3 r0, a, b;
};
struct Normal {
    Vec3 n;  // contravariant coordinates
    Scalar d = 0.0;
};
struct Canonical {
    // det[r - r0; a; b] = 0
    Vec3 r0, a, b;
};
struct ThreePoint {
    Vec3 p0, p1, p2;
};
struct General {
    Scalar a = 0.0, b = 0.0, c = 0.0, d = 0.0;  // A x + B y + C z - D = 0
};
struct Intercept {
    Scalar a = 0.0, b = 0.0, c = 0.0;  // x/a + y/b + z/c = 1
};

using Form = std::variant<Parametric, Normal, Canonical, ThreePoint, General, Intercept>;

enum class Tag { parametric, normal, canonical, three_point, general, intercept };

namespace detail {

struct Carrier {
    Vec3 r0, a, b;             // parametric realization
    Scalar A, B, C, D;         // implicit A x + B y + C z - D = 0
};

inline void require_directions(const Vec3& a, const Vec3& b, const char* what) {
    if (a.cross(b).norm() <= kFormZeroTol * std::max(1.0, a.norm() * b.norm()))
        throw InvalidForm(std::string(what) + ": directional vectors are proportional");
}

inline void validate(const Form& form) {
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Parametric> || std::is_same_v<T, Canonical>) {
                require_finite(f.r0, "r0");
                require_finite(f.a, "a");
                require_finite(f.b, "b");
                require_directions(f.a, f.b, "plane");
            } else if constexpr (std::is_same_v<T, Normal>) {
                require_finite(f.n, "n");
                require_finite(f.d, "D");
                if (f.n.norm() <= kFormZeroTol * std::max(1.0, std::abs(f.d)))
                    throw InvalidForm("normal plane form: zero normal");
            } else if constexpr (std::is_same_v<T, ThreePoint>) {
                require_finite(f.p0, "p0");
                require_finite(f.p1, "p1");
                require_finite(f.p2, "p2");
                require_directions(f.p1 - f.p0, f.p2 - f.p0, "three-point plane");
            } else if constexpr (std::is_same_v<T, General>) {
                require_finite(Vec3{f.a, f.b, f.c}, "(A,B,C)");
                require_finite(f.d, "D");
                if (Vec3{f.a, f.b, f.c}.norm() <= kFormZeroTol * std::max(1.0, std::abs(f.d)))
                    throw InvalidForm("general plane form: normal coefficients vanish");
            } else if constexpr (std::is_same_v<T, Intercept>) {
                if (f.a == 0.0 || f.b == 0.0 || f.c == 0.0)
                    throw InvalidForm("intercept plane form: zero intercept");
            }
        },
        form);
}

inline void normalize_implicit(Scalar& A, Scalar& B, Scalar& C, Scalar& D) {
    const Scalar scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
    Scalar lead = C;
    if (std::abs(A) > kFormZeroTol * scale)
        lead = A;
    else if (std::abs(B) > kFormZeroTol * scale)
        lead = B;
    A /= lead;
    B /= lead;
    C /= lead;
    D /= lead;
}

// Two independent directions annihilating the covariant coefficients (A,B,C)
// plus one particular solution of A x + B y + C z = D.
inline void implicit_to_point_dirs(Scalar A, Scalar B, Scalar C, Scalar D, Vec3& r0, Vec3& a,
                                   Vec3& b) {
    const Vec3 n{A, B, C};
    int k = 0;
    if (std::abs(n[1]) > std::abs(n[k])) k = 1;
    if (std::abs(n[2]) > std::abs(n[k])) k = 2;
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    a = {};
    b = {};
    a[i] = 1.0;
    a[k] = -n[i] / n[k];
    b[j] = 1.0;
    b[k] = -n[j] / n[k];
    r0 = {};
    r0[k] = D / n[k];
}

inline Carrier to_carrier(const Form& form, const Frame& f) {
    Carrier c{};
    if (const auto* p = std::get_if<Parametric>(&form)) {
        c.r0 = p->r0;
        c.a = p->a;
        c.b = p->b;
    } else if (const auto* p = std::get_if<Canonical>(&form)) {
        c.r0 = p->r0;
        c.a = p->a;
        c.b = p->b;
    } else if (const auto* p = std::get_if<ThreePoint>(&form)) {
        c.r0 = p->p0;
        c.a = p->p1 - p->p0;
        c.b = p->p2 - p->p0;
    } else {
        Scalar A = 0.0, B = 0.0, C = 0.0, D = 0.0;
        if (const auto* p = std::get_if<Normal>(&form)) {
            // lower the index: the implicit coefficients are the covariant
            // coordinates of the normal vector
            const Vec3 lower = f.gram * p->n;
            A = lower.x;
            B = lower.y;
            C = lower.z;
            D = p->d;
        } else if (const auto* p = std::get_if<General>(&form)) {
            A = p->a;
            B = p->b;
            C = p->c;
            D = p->d;
        } else if (const auto* p = std::get_if<Intercept>(&form)) {
            A = 1.0 / p->a;
            B = 1.0 / p->b;
            C = 1.0 / p->c;
            D = 1.0;
        }
        implicit_to_point_dirs(A, B, C, D, c.r0, c.a, c.b);
        c.A = A;
        c.B = B;
        c.C = C;
        c.D = D;
        normalize_implicit(c.A, c.B, c.C, c.D);
        return c;
    }
    // implicit coefficients from the determinant expansion: the coordinate
    // cross product of the directions annihilates both of them
    const Vec3 n = c.a.cross(c.b);
    c.A = n.x;
    c.B = n.y;
    c.C = n.z;
    c.D = n.dot(c.r0);
    normalize_implicit(c.A, c.B, c.C, c.D);
    return c;
}

}  // namespace detail

inline Vec3 point_at(const Form& form, Scalar t, Scalar tau, const Frame& f = Frame::reference()) {
    detail::validate(form);
    const detail::Carrier c = detail::to_carrier(form, f);
    return c.r0 + c.a * t + c.b * tau;
}

inline Scalar implicit_residual(const Form& form, const Vec3& p,
                                const Frame& f = Frame::reference()) {
    return std::visit(
        [&](const auto& q) -> Scalar {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Parametric> || std::is_same_v<T, Canonical>) {
                return Mat3::from_rows(p - q.r0, q.a, q.b).det();
            } else if constexpr (std::is_same_v<T, Normal>) {
                return scalar_product(p, q.n, f) - q.d;
            } else if constexpr (std::is_same_v<T, ThreePoint>) {
                return Mat3::from_rows(p - q.p0, q.p1 - q.p0, q.p2 - q.p0).det();
            } else if constexpr (std::is_same_v<T, General>) {
                return q.a * p.x + q.b * p.y + q.c * p.z - q.d;
            } else {
                return p.x / q.a + p.y / q.b + p.z / q.c - 1.0;
            }
        },
        form);
}

inline Form convert(const Form& src, Tag to, const Frame& f = Frame::reference()) {
    detail::validate(src);
    const detail::Carrier c = detail::to_carrier(src, f);
    switch (to) {
        case Tag::parametric:
            return Parametric{c.r0, c.a, c.b};
        case Tag::canonical:
            return Canonical{c.r0, c.a, c.b};
        case Tag::three_point:
            return ThreePoint{c.r0, c.r0 + c.a, c.r0 + c.b};
        case Tag::normal: {
            const Vec3 n = vector_product(c.a, c.b, f);
            return Normal{n, scalar_product(c.r0, n, f)};
        }
        case Tag::general:
            return General{c.A, c.B, c.C, c.D};
        case Tag::intercept: {
            const Scalar scale = std::max({std::abs(c.A), std::abs(c.B), std::abs(c.C)});
            if (std::abs(c.D) <= kFormZeroTol * scale)
                throw NotRepresentable("intercept form: plane passes through the origin");
            if (std::abs(c.A) <= kFormZeroTol * scale || std::abs(c.B) <= kFormZeroTol * scale ||
                std::abs(c.C) <= kFormZeroTol * scale)
                throw NotRepresentable("intercept form: plane misses a coordinate axis");
            return Intercept{c.D / c.A, c.D / c.B, c.D / c.C};
        }
    }
    throw KernelError("unreachable plane conversion target");
}

}  // namespace plane

// ---------------------------------------------------------------------------
// Straight line in space

namespace line3d {

/// The seven canonical cases, named by which coordinates are pinned to a
/// constant (zero components of the direction vector).
enum class CanonicalCase {
    all_free,  // (x-x0)/ax = (y-y0)/ay = (z-z0)/az
    x_fixed,
    y_fixed,
    z_fixed,
    xy_fixed,
    xz_fixed,
    yz_fixed,
};

struct Parametric {
    Vec3 r0, a;
};
struct Vectorial {
    Vec3 a, b;  // [r,a] = b with (a,b) = 0
};
struct Canonical {
    Vec3 r0, a;
    CanonicalCase degeneracy = CanonicalCase::all_free;
};
struct TwoPoint {
    Vec3 p0, p1;
};
struct TwoPlanes {
    plane::General first, second;
};

using Form = std::variant<Parametric, Vectorial, Canonical, TwoPoint, TwoPlanes>;

enum class Tag { parametric, vectorial, canonical, two_point, two_planes };

namespace detail {

struct Carrier {
    Vec3 r0, a;
};

inline CanonicalCase case_for_direction(const Vec3& a) {
    const Scalar tol = kFormZeroTol * a.norm();
    const bool zx = std::abs(a.x) <= tol, zy = std::abs(a.y) <= tol, zz = std::abs(a.z) <= tol;
    if (zx && zy) return CanonicalCase::xy_fixed;
    if (zx && zz) return CanonicalCase::xz_fixed;
    if (zy && zz) return CanonicalCase::yz_fixed;
    if (zx) return CanonicalCase::x_fixed;
    if (zy) return CanonicalCase::y_fixed;
    if (zz) return CanonicalCase::z_fixed;
    return CanonicalCase::all_free;
}

inline void validate(const Form& form, const Frame& f) {
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Parametric> || std::is_same_v<T, Canonical>) {
                require_finite(q.r0, "r0");
                require_finite(q.a, "a");
                if (q.a.norm() <= kFormZeroTol * std::max(1.0, q.r0.norm()))
                    throw InvalidForm("space line: zero direction");
            } else if constexpr (std::is_same_v<T, Vectorial>) {
                require_finite(q.a, "a");
                require_finite(q.b, "b");
                if (q.a.norm() <= kFormZeroTol * std::max(1.0, q.b.norm()))
                    throw InvalidForm("vectorial line form: zero direction");
                const Scalar scale =
                    std::max(1.0, metric_norm(q.a, f) * std::max(1.0, metric_norm(q.b, f)));
                if (std::abs(scalar_product(q.a, q.b, f)) > 1e-9 * scale)
                    throw InvalidForm("vectorial line form: b is not perpendicular to a");
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                require_finite(q.p0, "p0");
                require_finite(q.p1, "p1");
                if ((q.p1 - q.p0).norm() <=
                    kFormZeroTol * std::max(1.0, std::max(q.p0.norm(), q.p1.norm())))
                    throw InvalidForm("two-point line form: coinciding points");
            } else if constexpr (std::is_same_v<T, TwoPlanes>) {
                plane::detail::validate(plane::Form{q.first});
                plane::detail::validate(plane::Form{q.second});
            }
        },
        form);
}

inline Carrier to_carrier(const Form& form, const Frame& f) {
    Carrier c{};
    if (const auto* p = std::get_if<Parametric>(&form)) {
        c = {p->r0, p->a};
    } else if (const auto* p = std::get_if<Canonical>(&form)) {
        c = {p->r0, p->a};
    } else if (const auto* p = std::get_if<TwoPoint>(&form)) {
        c = {p->p0, p->p1 - p->p0};
    } else if (const auto* p = std::get_if<Vectorial>(&form)) {
        // the point of the line closest to the origin in the frame metric
        c.a = p->a;
        c.r0 = vector_product(p->a, p->b, f) / scalar_product(p->a, p->a, f);
    } else {
        const auto& tp = std::get<TwoPlanes>(form);
        const Vec3 n1{tp.first.a, tp.first.b, tp.first.c};
        const Vec3 n2{tp.second.a, tp.second.b, tp.second.c};
        const Vec3 dir = n1.cross(n2);
        if (dir.norm() <= 1e-9 * std::max(1.0, n1.norm() * n2.norm())) throw ParallelPlanes();
        // fix the coordinate with the largest direction component to zero and
        // solve the remaining 2x2 system
        int k = 0;
        if (std::abs(dir[1]) > std::abs(dir[k])) k = 1;
        if (std::abs(dir[2]) > std::abs(dir[k])) k = 2;
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        const Scalar det = n1[i] * n2[j] - n1[j] * n2[i];
        Vec3 r0{};
        r0[i] = (tp.first.d * n2[j] - tp.second.d * n1[j]) / det;
        r0[j] = (n1[i] * tp.second.d - n2[i] * tp.first.d) / det;
        c = {r0, dir};
    }
    return c;
}

}  // namespace detail

inline Vec3 point_at(const Form& form, Scalar t, const Frame& f = Frame::reference()) {
    detail::validate(form, f);
    const detail::Carrier c = detail::to_carrier(form, f);
    return c.r0 + c.a * t;
}

/// Residual of the form's defining equations at a point (max over the
/// equations of the pair for canonical/two-plane forms).
inline Scalar implicit_residual(const Form& form, const Vec3& p,
                                const Frame& f = Frame::reference()) {
    return std::visit(
        [&](const auto& q) -> Scalar {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Parametric> || std::is_same_v<T, TwoPoint>) {
                Vec3 r0, a;
                if constexpr (std::is_same_v<T, Parametric>) {
                    r0 = q.r0;
                    a = q.a;
                } else {
                    r0 = q.p0;
                    a = q.p1 - q.p0;
                }
                return (p - r0).cross(a).norm();
            } else if constexpr (std::is_same_v<T, Vectorial>) {
                const Vec3 lhs = vector_product(p, q.a, f);
                return metric_norm(lhs - q.b, f);
            } else if constexpr (std::is_same_v<T, Canonical>) {
                const Vec3 d = p - q.r0;
                Scalar worst = 0.0;
                const Scalar ax = q.a.x, ay = q.a.y, az = q.a.z;
                const bool zx = ax == 0.0, zy = ay == 0.0, zz = az == 0.0;
                if (zx) worst = std::max(worst, std::abs(d.x));
                if (zy) worst = std::max(worst, std::abs(d.y));
                if (zz) worst = std::max(worst, std::abs(d.z));
                if (!zx && !zy) worst = std::max(worst, std::abs(d.x * ay - d.y * ax));
                if (!zy && !zz) worst = std::max(worst, std::abs(d.y * az - d.z * ay));
                if (!zx && !zz) worst = std::max(worst, std::abs(d.x * az - d.z * ax));
                return worst;
            } else {
                return std::max(std::abs(plane::implicit_residual(plane::Form{q.first}, p, f)),
                                std::abs(plane::implicit_residual(plane::Form{q.second}, p, f)));
            }
        },
        form);
}

inline Form convert(const Form& src, Tag to, const Frame& f = Frame::reference()) {
    detail::validate(src, f);
    const detail::Carrier c = detail::to_carrier(src, f);
    switch (to) {
        case Tag::parametric:
            return Parametric{c.r0, c.a};
        case Tag::two_point:
            return TwoPoint{c.r0, c.r0 + c.a};
        case Tag::vectorial: {
            Vec3 b = vector_product(c.r0, c.a, f);
            // kill roundoff dust so (a,b) = 0 holds exactly at construction
            b = b - c.a * (scalar_product(c.a, b, f) / scalar_product(c.a, c.a, f));
            return Vectorial{c.a, b};
        }
        case Tag::canonical: {
            Canonical out{c.r0, c.a, detail::case_for_direction(c.a)};
            const Scalar tol = kFormZeroTol * c.a.norm();
            if (std::abs(out.a.x) <= tol) out.a.x = 0.0;
            if (std::abs(out.a.y) <= tol) out.a.y = 0.0;
            if (std::abs(out.a.z) <= tol) out.a.z = 0.0;
            return out;
        }
        case Tag::two_planes: {
            // pick the coordinate axis least aligned with the direction to
            // seed two independent normals annihilating it
            int k = 0;
            Vec3 abs_a{std::abs(c.a.x), std::abs(c.a.y), std::abs(c.a.z)};
            if (abs_a[1] < abs_a[k]) k = 1;
            if (abs_a[2] < abs_a[k]) k = 2;
            Vec3 axis{};
            axis[k] = 1.0;
            const Vec3 n1 = c.a.cross(axis);
            const Vec3 n2 = c.a.cross(n1);
            plane::General g1{n1.x, n1.y, n1.z, n1.dot(c.r0)};
            plane::General g2{n2.x, n2.y, n2.z, n2.dot(c.r0)};
            plane::detail::normalize_implicit(g1.a, g1.b, g1.c, g1.d);
            plane::detail::normalize_implicit(g2.a, g2.b, g2.c, g2.d);
            return TwoPlanes{g1, g2};
        }
    }
    throw KernelError("unreachable line3d conversion target");
}

}  // namespace line3d

// ---------------------------------------------------------------------------
// Cartesian coordinate systems

/// A basis complemented by a fixed origin point (given in the ambient ONB).
struct CoordinateSystem {
    Vec3 origin;
    Frame frame;

    static CoordinateSystem reference() { return {Vec3{}, Frame::reference()}; }
};

/// Both origin displacement vectors of a pair of coordinate systems:
/// a points from the old origin to the new one (in the old basis),
/// a_tilde the other way round (in the new basis); a_tilde = -T a.
struct OriginDisplacement {
    Vec3 a;
    Vec3 a_tilde;
};

inline OriginDisplacement origin_displacement(const CoordinateSystem& from,
                                              const CoordinateSystem& to) {
    return {expand_in_frame(to.origin - from.origin, from.frame),
            expand_in_frame(from.origin - to.origin, to.frame)};
}

/// Coordinates of a point in the target system: x~ = T x + a~.  T and the
/// displacement come out of a single inversion of the target basis.
inline Vec3 change_coordinate_system(const Vec3& p, const CoordinateSystem& from,
                                     const CoordinateSystem& to) {
    require_finite(p, "point");
    const Mat3 to_inv = Mat3::from_columns(to.frame.e1, to.frame.e2, to.frame.e3).inverse();
    const Mat3 direct =
        to_inv * Mat3::from_columns(from.frame.e1, from.frame.e2, from.frame.e3);
    const Vec3 a_tilde = to_inv * (from.origin - to.origin);
    return direct * p + a_tilde;
}

// ---------------------------------------------------------------------------
// Covariant coordinates

/// Lowered-index components n_i = sum_j g_ij n^j of a vector.
struct CovariantNormal {
    Vec3 n_lower;
};

inline CovariantNormal lower_index(const Vec3& n_upper, const Frame& f) {
    return {f.gram * n_upper};
}

inline Vec3 raise_index(const CovariantNormal& n, const Frame& f) {
    return f.gram_inv * n.n_lower;
}

}  // namespace skewgeom
