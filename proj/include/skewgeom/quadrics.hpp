#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "skewgeom/core.hpp"

// Classification and canonical-form reduction of second-order curves on a
// plane and second-order surfaces in space, by explicit reduction: rotate to
// kill cross terms, translate to kill linear terms along full-rank axes,
// then branch on the signs of what is left.
//
// Coefficient conventions (the embedded factors of 2 are part of the data
// model):
//   conic    A x^2 + 2B xy + C y^2 + 2D x + 2E y + F = 0
//   quadric  A x^2 + 2B xy + C y^2 + 2D xz + 2E yz + F z^2
//            + 2G x + 2H y + 2I z + J = 0
//
// Reports carry the rigid motion taking original points to canonical ones:
// p_canonical = rotation * p + translation.

namespace skewgeom {

struct ConicEquation {
    Scalar a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;
};

struct QuadricEquation {
    Scalar a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;
    Scalar g = 0.0, h = 0.0, i = 0.0, j = 0.0;
};

enum class ConicClass {
    ellipse,
    imaginary_ellipse,
    point,
    hyperbola,
    intersecting_lines,
    parabola,
    parallel_lines,
    coinciding_lines,
    imaginary_parallel_lines,
};

enum class QuadricClass {
    ellipsoid,
    imaginary_ellipsoid,
    point,
    hyperboloid_one_sheet,
    hyperboloid_two_sheets,
    cone,
    elliptic_paraboloid,
    hyperbolic_paraboloid,
    elliptic_cylinder,
    imaginary_elliptic_cylinder,
    straight_line,
    hyperbolic_cylinder,
    intersecting_planes,
    parabolic_cylinder,
    parallel_planes,
    coinciding_planes,
    imaginary_parallel_planes,
};

inline const char* to_string(ConicClass c) {
    switch (c) {
        case ConicClass::ellipse: return "Ellipse";
        case ConicClass::imaginary_ellipse: return "ImaginaryEllipse";
        case ConicClass::point: return "Point";
        case ConicClass::hyperbola: return "Hyperbola";
        case ConicClass::intersecting_lines: return "IntersectingLines";
        case ConicClass::parabola: return "Parabola";
        case ConicClass::parallel_lines: return "ParallelLines";
        case ConicClass::coinciding_lines: return "CoincidingLines";
        case ConicClass::imaginary_parallel_lines: return "ImaginaryParallelLines";
    }
    return "?";
}

inline const char* to_string(QuadricClass c) {
    switch (c) {
        case QuadricClass::ellipsoid: return "Ellipsoid";
        case QuadricClass::imaginary_ellipsoid: return "ImaginaryEllipsoid";
        case QuadricClass::point: return "Point";
        case QuadricClass::hyperboloid_one_sheet: return "HyperboloidOneSheet";
        case QuadricClass::hyperboloid_two_sheets: return "HyperboloidTwoSheets";
        case QuadricClass::cone: return "Cone";
        case QuadricClass::elliptic_paraboloid: return "EllipticParaboloid";
        case QuadricClass::hyperbolic_paraboloid: return "HyperbolicParaboloid";
        case QuadricClass::elliptic_cylinder: return "EllipticCylinder";
        case QuadricClass::imaginary_elliptic_cylinder: return "ImaginaryEllipticCylinder";
        case QuadricClass::straight_line: return "StraightLine";
        case QuadricClass::hyperbolic_cylinder: return "HyperbolicCylinder";
        case QuadricClass::intersecting_planes: return "IntersectingPlanes";
        case QuadricClass::parabolic_cylinder: return "ParabolicCylinder";
        case QuadricClass::parallel_planes: return "ParallelPlanes";
        case QuadricClass::coinciding_planes: return "CoincidingPlanes";
        case QuadricClass::imaginary_parallel_planes: return "ImaginaryParallelPlanes";
    }
    return "?";
}

/// The classifier's zero threshold is relative and configurable; class
/// decisions are threshold-sensitive by nature.
struct ClassifyOptions {
    Scalar zero_tol = 1e-9;
};

struct ConicReport {
    ConicClass cls = ConicClass::ellipse;
    ConicEquation canonical;
    Mat2 rotation;  // p_canonical = rotation * p + translation
    Vec2 translation;
    Scalar residual = 0.0;
};

struct QuadricReport {
    QuadricClass cls = QuadricClass::ellipsoid;
    QuadricEquation canonical;
    Mat3 rotation;
    Vec3 translation;
    Scalar residual = 0.0;
};

// ---------------------------------------------------------------------------
// Rigid motions on coefficient records

namespace detail {

inline void require_orthogonal(const Mat2& r) {
    const Mat2 e = r.transposed() * r;
    const Scalar err = std::max(
        std::max(std::abs(e(0, 0) - 1.0), std::abs(e(1, 1) - 1.0)),
        std::max(std::abs(e(0, 1)), std::abs(e(1, 0))));
    if (err > 1e-9) throw NonOrthogonalRotation();
}

inline void require_orthogonal(const Mat3& r) {
    const Mat3 e = r.transposed() * r;
    Scalar err = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) err = std::max(err, std::abs(e(i, j) - (i == j ? 1.0 : 0.0)));
    if (err > 1e-9) throw NonOrthogonalRotation();
}

}  // namespace detail

/// Equation of the image of the point set under the motion p -> R p + t.
inline ConicEquation apply_rigid_motion(const ConicEquation& eq, const Mat2& rotation,
                                        const Vec2& translation) {
    detail::require_orthogonal(rotation);
    const Mat2& r = rotation;
    const Vec2& t = translation;
    // q(x) = x^T Q x + 2 l^T x + f
    const Scalar q00 = eq.a, q01 = eq.b, q11 = eq.c;
    // Q' = R Q R^T
    Mat2 q;
    q.m = {{{q00, q01}, {q01, q11}}};
    const Mat2 qp = r * q * r.transposed();
    const Vec2 rl = r * Vec2{eq.d, eq.e};
    const Vec2 lp = rl - qp * t;
    const Scalar fp = t.dot(qp * t) - 2.0 * rl.dot(t) + eq.f;
    return {qp(0, 0), qp(0, 1), qp(1, 1), lp.x, lp.y, fp};
}

inline QuadricEquation apply_rigid_motion(const QuadricEquation& eq, const Mat3& rotation,
                                          const Vec3& translation) {
    detail::require_orthogonal(rotation);
    const Mat3& r = rotation;
    const Vec3& t = translation;
    Mat3 q;
    q.m = {{{eq.a, eq.b, eq.d}, {eq.b, eq.c, eq.e}, {eq.d, eq.e, eq.f}}};
    const Mat3 qp = r * q * r.transposed();
    const Vec3 rl = r * Vec3{eq.g, eq.h, eq.i};
    const Vec3 lp = rl - qp * t;
    const Scalar jp = t.dot(qp * t) - 2.0 * rl.dot(t) + eq.j;
    return {qp(0, 0), qp(0, 1), qp(1, 1), qp(0, 2), qp(1, 2), qp(2, 2),
            lp.x,     lp.y,     lp.z,     jp};
}

// ---------------------------------------------------------------------------
// Symmetric 3x3 eigendecomposition (cyclic Jacobi)

struct EigenSym3 {
    std::array<Scalar, 3> values{};
    Mat3 vectors;  // columns; always a proper rotation
};

inline EigenSym3 eigen_sym3(const SymMat3& s) {
    Mat3 a = s.to_mat();
    Mat3 v = Mat3::identity();
    const Scalar norm = std::max(a.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 30; ++sweep) {
        const Scalar off =
            std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
        if (off <= 1e-300 || off <= 3e-16 * norm) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const Scalar apq = a(p, q);
                if (apq == 0.0) continue;
                const Scalar tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const Scalar sign = tau >= 0.0 ? 1.0 : -1.0;
                const Scalar t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const Scalar c = 1.0 / std::sqrt(1.0 + t * t);
                const Scalar sn = t * c;
                // a <- J^T a J with the Givens rotation J in the (p,q) plane
                for (int k = 0; k < 3; ++k) {
                    const Scalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const Scalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < 3; ++k) {
                    const Scalar vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }
    EigenSym3 out;
    out.values = {a(0, 0), a(1, 1), a(2, 2)};
    if (v.det() < 0.0) {
        for (int k = 0; k < 3; ++k) v(k, 2) = -v(k, 2);
    }
    out.vectors = v;
    return out;
}

// ---------------------------------------------------------------------------
// Classification engine

namespace detail {

inline Scalar coeff_norm(const ConicEquation& e) {
    return std::max({std::abs(e.a), std::abs(e.b), std::abs(e.c), std::abs(e.d), std::abs(e.e),
                     std::abs(e.f)});
}
inline Scalar coeff_norm(const QuadricEquation& e) {
    return std::max({std::abs(e.a), std::abs(e.b), std::abs(e.c), std::abs(e.d), std::abs(e.e),
                     std::abs(e.f), std::abs(e.g), std::abs(e.h), std::abs(e.i), std::abs(e.j)});
}

inline Scalar eval(const ConicEquation& q, const Vec2& p) {
    return q.a * p.x * p.x + 2.0 * q.b * p.x * p.y + q.c * p.y * p.y + 2.0 * q.d * p.x +
           2.0 * q.e * p.y + q.f;
}
inline Scalar eval(const QuadricEquation& q, const Vec3& p) {
    return q.a * p.x * p.x + 2.0 * q.b * p.x * p.y + q.c * p.y * p.y + 2.0 * q.d * p.x * p.z +
           2.0 * q.e * p.y * p.z + q.f * p.z * p.z + 2.0 * q.g * p.x + 2.0 * q.h * p.y +
           2.0 * q.i * p.z + q.j;
}

inline void scale_coeffs(ConicEquation& e, Scalar s) {
    e.a *= s;
    e.b *= s;
    e.c *= s;
    e.d *= s;
    e.e *= s;
    e.f *= s;
}
inline void scale_coeffs(QuadricEquation& e, Scalar s) {
    e.a *= s;
    e.b *= s;
    e.c *= s;
    e.d *= s;
    e.e *= s;
    e.f *= s;
    e.g *= s;
    e.h *= s;
    e.i *= s;
    e.j *= s;
}

// Accumulates the rigid motion taking original points to the current
// working coordinates.
struct Mover2 {
    Mat2 r = Mat2::identity();
    Vec2 t;
    void stage(ConicEquation& work, const Mat2& rk, const Vec2& tk) {
        work = apply_rigid_motion(work, rk, tk);
        r = rk * r;
        t = rk * t + tk;
    }
};

struct Mover3 {
    Mat3 r = Mat3::identity();
    Vec3 t;
    void stage(QuadricEquation& work, const Mat3& rk, const Vec3& tk) {
        work = apply_rigid_motion(work, rk, tk);
        r = rk * r;
        t = rk * t + tk;
    }
};

// Canonical-form samplers: deterministic points satisfying the canonical
// equation, used to verify the reported motion against the original
// equation.  Empty for the imaginary classes.
inline std::vector<Vec2> canonical_samples(ConicClass cls, const ConicEquation& c) {
    std::vector<Vec2> pts;
    constexpr int n = 16;
    switch (cls) {
        case ConicClass::ellipse: {
            const Scalar a = std::sqrt(1.0 / c.a), b = std::sqrt(1.0 / c.c);
            for (int k = 0; k < n; ++k) {
                const Scalar th = 2.0 * std::numbers::pi * k / n;
                pts.push_back({a * std::cos(th), b * std::sin(th)});
            }
            break;
        }
        case ConicClass::point:
            pts.push_back({0.0, 0.0});
            break;
        case ConicClass::hyperbola: {
            const Scalar a = std::sqrt(1.0 / c.a), b = std::sqrt(-1.0 / c.c);
            for (int k = 0; k < n / 2; ++k) {
                const Scalar u = -2.0 + 4.0 * k / (n / 2 - 1);
                pts.push_back({a * std::cosh(u), b * std::sinh(u)});
                pts.push_back({-a * std::cosh(u), b * std::sinh(u)});
            }
            break;
        }
        case ConicClass::intersecting_lines: {
            const Scalar slope = std::sqrt(c.a / -c.c);
            for (int k = 0; k < n / 2; ++k) {
                const Scalar t = -3.0 + 6.0 * k / (n / 2 - 1);
                pts.push_back({t, slope * t});
                pts.push_back({t, -slope * t});
            }
            break;
        }
        case ConicClass::parabola: {
            const Scalar p = -c.d;
            for (int k = 0; k < n; ++k) {
                const Scalar y = -3.0 + 6.0 * k / (n - 1);
                pts.push_back({y * y / (2.0 * p), y});
            }
            break;
        }
        case ConicClass::parallel_lines: {
            const Scalar y0 = std::sqrt(-c.f);
            for (int k = 0; k < n / 2; ++k) {
                const Scalar t = -3.0 + 6.0 * k / (n / 2 - 1);
                pts.push_back({t, y0});
                pts.push_back({t, -y0});
            }
            break;
        }
        case ConicClass::coinciding_lines: {
            for (int k = 0; k < n; ++k) pts.push_back({-3.0 + 6.0 * k / (n - 1), 0.0});
            break;
        }
        case ConicClass::imaginary_ellipse:
        case ConicClass::imaginary_parallel_lines:
            break;
    }
    return pts;
}

inline std::vector<Vec3> canonical_samples(QuadricClass cls, const QuadricEquation& c) {
    std::vector<Vec3> pts;
    constexpr int n = 6;
    auto grid = [&](auto&& fn) {
        for (int ku = 0; ku < n; ++ku)
            for (int kv = 0; kv < n; ++kv) {
                const Scalar u = -2.0 + 4.0 * ku / (n - 1);
                const Scalar v = -2.0 + 4.0 * kv / (n - 1);
                fn(u, v);
            }
    };
    switch (cls) {
        case QuadricClass::ellipsoid: {
            const Scalar a = std::sqrt(-c.j / c.a), b = std::sqrt(-c.j / c.c),
                         cc = std::sqrt(-c.j / c.f);
            grid([&](Scalar u, Scalar v) {
                const Scalar th = std::numbers::pi * (u + 2.0) / 4.0;
                const Scalar ph = 2.0 * std::numbers::pi * (v + 2.0) / 4.0;
                pts.push_back({a * std::sin(th) * std::cos(ph), b * std::sin(th) * std::sin(ph),
                               cc * std::cos(th)});
            });
            break;
        }
        case QuadricClass::point:
            pts.push_back({0.0, 0.0, 0.0});
            break;
        case QuadricClass::hyperboloid_one_sheet: {
            const Scalar a = std::sqrt(-c.j / c.a), b = std::sqrt(-c.j / c.c),
                         cc = std::sqrt(c.j / c.f);
            grid([&](Scalar u, Scalar v) {
                const Scalar ph = 2.0 * std::numbers::pi * (v + 2.0) / 4.0;
                pts.push_back({a * std::cosh(u) * std::cos(ph), b * std::cosh(u) * std::sin(ph),
                               cc * std::sinh(u)});
            });
            break;
        }
        case QuadricClass::hyperboloid_two_sheets: {
            const Scalar a = std::sqrt(c.j / c.a), b = std::sqrt(c.j / c.c),
                         cc = std::sqrt(-c.j / c.f);
            grid([&](Scalar u, Scalar v) {
                const Scalar ph = 2.0 * std::numbers::pi * (v + 2.0) / 4.0;
                const Scalar sgn = u >= 0.0 ? 1.0 : -1.0;
                pts.push_back({a * std::sinh(u) * std::cos(ph), b * std::sinh(u) * std::sin(ph),
                               sgn * cc * std::cosh(u)});
            });
            break;
        }
        case QuadricClass::cone: {
            const Scalar a = std::sqrt(1.0 / c.a), b = std::sqrt(1.0 / c.c),
                         cc = std::sqrt(-1.0 / c.f);
            grid([&](Scalar u, Scalar v) {
                const Scalar ph = 2.0 * std::numbers::pi * (v + 2.0) / 4.0;
                pts.push_back({a * u * std::cos(ph), b * u * std::sin(ph), cc * u});
            });
            break;
        }
        case QuadricClass::elliptic_paraboloid: {
            // A x^2 + C y^2 - 2 z = 0
            const Scalar a = std::sqrt(1.0 / c.a), b = std::sqrt(1.0 / c.c);
            grid([&](Scalar u, Scalar v) {
                const Scalar ph = 2.0 * std::numbers::pi * (v + 2.0) / 4.0;
                pts.push_back({a * u * std::cos(ph), b * u * std::sin(ph), u * u / 2.0});
            });
            break;
        }
        case QuadricClass::hyperbolic_paraboloid: {
            const Scalar a = std::sqrt(1.0 / c.a), b = std::sqrt(-1.0 / c.c);
            grid([&](Scalar u, Scalar v) {
                pts.push_back({a * u, b * v, (u * u - v * v) / 2.0});
            });
            break;
        }
        case QuadricClass::elliptic_cylinder: {
            const Scalar a = std::sqrt(-c.j / c.a), b = std::sqrt(-c.j / c.c);
            grid([&](Scalar u, Scalar v) {
                const Scalar th = 2.0 * std::numbers::pi * (u + 2.0) / 4.0;
                pts.push_back({a * std::cos(th), b * std::sin(th), v});
            });
            break;
        }
        case QuadricClass::straight_line: {
            for (int k = 0; k < n; ++k) pts.push_back({0.0, 0.0, -2.0 + 4.0 * k / (n - 1)});
            break;
        }
        case QuadricClass::hyperbolic_cylinder: {
            const Scalar a = std::sqrt(-c.j / c.a), b = std::sqrt(c.j / c.c);
            grid([&](Scalar u, Scalar v) {
                pts.push_back({a * std::cosh(u), b * std::sinh(u), v});
                pts.push_back({-a * std::cosh(u), b * std::sinh(u), v});
            });
            break;
        }
        case QuadricClass::intersecting_planes: {
            const Scalar slope = std::sqrt(c.a / -c.c);
            grid([&](Scalar u, Scalar v) {
                pts.push_back({u, slope * u, v});
                pts.push_back({u, -slope * u, v});
            });
            break;
        }
        case QuadricClass::parabolic_cylinder: {
            const Scalar p = -c.g;
            grid([&](Scalar u, Scalar v) { pts.push_back({u * u / (2.0 * p), u, v}); });
            break;
        }
        case QuadricClass::parallel_planes: {
            const Scalar y0 = std::sqrt(-c.j);
            grid([&](Scalar u, Scalar v) {
                pts.push_back({u, y0, v});
                pts.push_back({u, -y0, v});
            });
            break;
        }
        case QuadricClass::coinciding_planes: {
            grid([&](Scalar u, Scalar v) { pts.push_back({u, 0.0, v}); });
            break;
        }
        case QuadricClass::imaginary_ellipsoid:
        case QuadricClass::imaginary_elliptic_cylinder:
        case QuadricClass::imaginary_parallel_planes:
            break;
    }
    return pts;
}

// Relative residual of the report against the original equation: canonical
// samples are carried back through the inverse motion and plugged into the
// original equation.  For empty (imaginary) point sets, the transformed
// coefficients are compared against the canonical record instead.
inline Scalar report_residual(const ConicEquation& original, const ConicReport& rep) {
    const std::vector<Vec2> samples = canonical_samples(rep.cls, rep.canonical);
    const Scalar nq = std::max(coeff_norm(original), 1e-300);
    if (!samples.empty()) {
        Scalar worst = 0.0;
        const Mat2 rt = rep.rotation.transposed();
        for (const Vec2& s : samples) {
            const Vec2 p = rt * (s - rep.translation);
            worst = std::max(worst, std::abs(eval(original, p)) / (nq * (1.0 + p.dot(p))));
        }
        return worst;
    }
    const ConicEquation moved = apply_rigid_motion(original, rep.rotation, rep.translation);
    // least-squares scale matching the canonical record
    const Scalar mm = moved.a * moved.a + moved.b * moved.b + moved.c * moved.c +
                      moved.d * moved.d + moved.e * moved.e + moved.f * moved.f;
    const Scalar mc = moved.a * rep.canonical.a + moved.b * rep.canonical.b +
                      moved.c * rep.canonical.c + moved.d * rep.canonical.d +
                      moved.e * rep.canonical.e + moved.f * rep.canonical.f;
    const Scalar s = mc / std::max(mm, 1e-300);
    ConicEquation scaled = moved;
    scale_coeffs(scaled, s);
    const Scalar nc = std::max(coeff_norm(rep.canonical), 1e-300);
    return std::max({std::abs(scaled.a - rep.canonical.a), std::abs(scaled.b - rep.canonical.b),
                     std::abs(scaled.c - rep.canonical.c), std::abs(scaled.d - rep.canonical.d),
                     std::abs(scaled.e - rep.canonical.e), std::abs(scaled.f - rep.canonical.f)}) /
           nc;
}

inline Scalar report_residual(const QuadricEquation& original, const QuadricReport& rep) {
    const std::vector<Vec3> samples = canonical_samples(rep.cls, rep.canonical);
    const Scalar nq = std::max(coeff_norm(original), 1e-300);
    if (!samples.empty()) {
        Scalar worst = 0.0;
        const Mat3 rt = rep.rotation.transposed();
        for (const Vec3& s : samples) {
            const Vec3 p = rt * (s - rep.translation);
            worst = std::max(worst, std::abs(eval(original, p)) / (nq * (1.0 + p.dot(p))));
        }
        return worst;
    }
    const QuadricEquation moved = apply_rigid_motion(original, rep.rotation, rep.translation);
    const std::array<Scalar, 10> mv{moved.a, moved.b, moved.c, moved.d, moved.e,
                                    moved.f, moved.g, moved.h, moved.i, moved.j};
    const std::array<Scalar, 10> cv{rep.canonical.a, rep.canonical.b, rep.canonical.c,
                                    rep.canonical.d, rep.canonical.e, rep.canonical.f,
                                    rep.canonical.g, rep.canonical.h, rep.canonical.i,
                                    rep.canonical.j};
    Scalar mm = 0.0, mc = 0.0;
    for (int k = 0; k < 10; ++k) {
        mm += mv[k] * mv[k];
        mc += mv[k] * cv[k];
    }
    const Scalar s = mc / std::max(mm, 1e-300);
    Scalar worst = 0.0;
    for (int k = 0; k < 10; ++k) worst = std::max(worst, std::abs(s * mv[k] - cv[k]));
    return worst / std::max(coeff_norm(rep.canonical), 1e-300);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Conic classifier

inline ConicReport classify_conic(const ConicEquation& eq, const ClassifyOptions& opts = {}) {
    using namespace detail;
    for (Scalar v : {eq.a, eq.b, eq.c, eq.d, eq.e, eq.f}) require_finite(v, "coefficient");
    const Scalar full = coeff_norm(eq);
    const Scalar quad = std::max({std::abs(eq.a), std::abs(eq.b), std::abs(eq.c)});
    if (full == 0.0 || quad <= opts.zero_tol * full) throw NotSecondOrder();

    ConicEquation work = eq;
    Mover2 mv;

    // rotate so the cross term vanishes
    if (std::abs(work.b) > opts.zero_tol * quad) {
        const Scalar phi =
            std::numbers::pi / 4.0 - 0.5 * std::atan((work.a - work.c) / (2.0 * work.b));
        mv.stage(work, Mat2::rotation(-phi), Vec2{});
    }
    work.b = 0.0;

    const Scalar axis_scale = std::max(std::abs(work.a), std::abs(work.c));
    const bool zero_a = std::abs(work.a) <= opts.zero_tol * axis_scale;
    const bool zero_c = std::abs(work.c) <= opts.zero_tol * axis_scale;

    ConicReport rep;
    if (!zero_a && !zero_c) {
        // central types: kill both linear terms
        const bool elliptic = (work.a > 0.0) == (work.c > 0.0);
        if (work.a < 0.0) scale_coeffs(work, -1.0);  // A > 0 without loss of generality
        mv.stage(work, Mat2::identity(), Vec2{work.d / work.a, work.e / work.c});
        work.d = 0.0;
        work.e = 0.0;
        const Scalar f_tilde = work.f;
        const Scalar tol_f = opts.zero_tol * std::max({std::abs(work.a), std::abs(work.c), std::abs(f_tilde)});
        if (elliptic) {
            if (std::abs(f_tilde) <= tol_f) {
                rep.cls = ConicClass::point;
                work.f = 0.0;
                scale_coeffs(work, 1.0 / work.a);
            } else if (f_tilde < 0.0) {
                rep.cls = ConicClass::ellipse;
                scale_coeffs(work, -1.0 / f_tilde);
            } else {
                rep.cls = ConicClass::imaginary_ellipse;
                scale_coeffs(work, 1.0 / f_tilde);
            }
            if (work.a > work.c) {  // semimajor axis first
                mv.stage(work, Mat2::rotation(std::numbers::pi / 2.0), Vec2{});
            }
        } else {
            if (std::abs(f_tilde) <= tol_f) {
                rep.cls = ConicClass::intersecting_lines;
                work.f = 0.0;
                scale_coeffs(work, 1.0 / work.a);
            } else {
                rep.cls = ConicClass::hyperbola;
                if (f_tilde > 0.0) {
                    // swap axes so the constant lands on the negative side
                    mv.stage(work, Mat2::rotation(std::numbers::pi / 2.0), Vec2{});
                    scale_coeffs(work, -1.0);
                }
                scale_coeffs(work, -1.0 / work.f);
            }
        }
        work.d = 0.0;
        work.e = 0.0;
        work.b = 0.0;
    } else {
        // parabolic type: move the quadratic term onto y
        if (zero_c) {
            mv.stage(work, Mat2::rotation(-std::numbers::pi / 2.0), Vec2{});
        }
        work.a = 0.0;
        work.b = 0.0;
        if (work.c < 0.0) scale_coeffs(work, -1.0);
        scale_coeffs(work, 1.0 / work.c);
        // displacement along y absorbs the linear y term
        mv.stage(work, Mat2::identity(), Vec2{0.0, work.e});
        work.e = 0.0;
        const Scalar lin_tol = opts.zero_tol * std::max({1.0, std::abs(work.d), std::abs(work.f)});
        if (std::abs(work.d) > lin_tol) {
            rep.cls = ConicClass::parabola;
            // shift along x so the vertex sits at the origin
            mv.stage(work, Mat2::identity(), Vec2{work.f / (2.0 * work.d), 0.0});
            work.f = 0.0;
            if (work.d > 0.0) {
                mv.stage(work, Mat2::rotation(std::numbers::pi), Vec2{});
            }
            work.a = 0.0;
            work.b = 0.0;
            work.e = 0.0;
            work.f = 0.0;
            work.c = 1.0;
            work.d = -std::abs(work.d);
        } else {
            work.d = 0.0;
            const Scalar f_tilde = work.f;
            const Scalar tol_f = opts.zero_tol * std::max(1.0, std::abs(f_tilde));
            if (std::abs(f_tilde) <= tol_f) {
                rep.cls = ConicClass::coinciding_lines;
                work.f = 0.0;
            } else if (f_tilde < 0.0) {
                rep.cls = ConicClass::parallel_lines;
            } else {
                rep.cls = ConicClass::imaginary_parallel_lines;
            }
        }
    }

    rep.canonical = work;
    rep.rotation = mv.r;
    rep.translation = mv.t;
    rep.residual = report_residual(eq, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Quadric classifier

namespace detail {

inline QuadricClass lift_conic_class(ConicClass c) {
    switch (c) {
        case ConicClass::ellipse: return QuadricClass::elliptic_cylinder;
        case ConicClass::imaginary_ellipse: return QuadricClass::imaginary_elliptic_cylinder;
        case ConicClass::point: return QuadricClass::straight_line;
        case ConicClass::hyperbola: return QuadricClass::hyperbolic_cylinder;
        case ConicClass::intersecting_lines: return QuadricClass::intersecting_planes;
        case ConicClass::parabola: return QuadricClass::parabolic_cylinder;
        case ConicClass::parallel_lines: return QuadricClass::parallel_planes;
        case ConicClass::coinciding_lines: return QuadricClass::coinciding_planes;
        case ConicClass::imaginary_parallel_lines: return QuadricClass::imaginary_parallel_planes;
    }
    throw KernelError("unreachable conic class");
}

// Proper rotation sending old axis order to the given new order.
inline Mat3 axis_permutation(const std::array<int, 3>& source_axis) {
    Mat3 p;
    p.m = {{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
    for (int k = 0; k < 3; ++k) p(k, source_axis[k]) = 1.0;
    if (p.det() < 0.0) {
        for (int c = 0; c < 3; ++c) p(2, c) = -p(2, c);
    }
    return p;
}

}  // namespace detail

inline QuadricReport classify_quadric(const QuadricEquation& eq, const ClassifyOptions& opts = {}) {
    using namespace detail;
    for (Scalar v : {eq.a, eq.b, eq.c, eq.d, eq.e, eq.f, eq.g, eq.h, eq.i, eq.j})
        require_finite(v, "coefficient");
    const Scalar full = coeff_norm(eq);
    const Scalar quad = std::max({std::abs(eq.a), std::abs(eq.b), std::abs(eq.c), std::abs(eq.d),
                                  std::abs(eq.e), std::abs(eq.f)});
    if (full == 0.0 || quad <= opts.zero_tol * full) throw NotSecondOrder();

    QuadricEquation work = eq;
    Mover3 mv;

    // diagonalize the quadratic part by an orthogonal similarity
    const SymMat3 f3{work.a, work.b, work.d, work.c, work.e, work.f};
    const EigenSym3 eig = eigen_sym3(f3);
    mv.stage(work, eig.vectors.transposed(), Vec3{});
    work.b = 0.0;
    work.d = 0.0;
    work.e = 0.0;

    std::array<Scalar, 3> lam{work.a, work.c, work.f};
    const Scalar lam_max = std::max({std::abs(lam[0]), std::abs(lam[1]), std::abs(lam[2])});
    const Scalar lam_tol = opts.zero_tol * lam_max;
    auto is_zero = [&](Scalar l) { return std::abs(l) <= lam_tol; };

    int n_pos = 0, n_neg = 0;
    for (Scalar l : lam) {
        if (is_zero(l)) continue;
        (l > 0.0 ? n_pos : n_neg)++;
    }
    const int rank = n_pos + n_neg;
    if (rank == 0) throw NotSecondOrder();
    if (n_neg > n_pos) {
        // more negative axes than positive ones: flip the whole equation
        scale_coeffs(work, -1.0);
        lam = {work.a, work.c, work.f};
        n_pos = 0;
        n_neg = 0;
        for (Scalar l : lam) {
            if (is_zero(l)) continue;
            (l > 0.0 ? n_pos : n_neg)++;
        }
    }

    // order axes: positives ascending, then negatives ascending in magnitude,
    // zeros at the end -- except that a single nonzero axis goes to y, which
    // is where the degenerate planar canonical forms keep their quadratic
    // variable
    std::array<int, 3> order{};
    {
        std::array<int, 3> pos{}, neg{}, zer{};
        int np = 0, nn = 0, nz = 0;
        for (int i = 0; i < 3; ++i) {
            if (is_zero(lam[i]))
                zer[nz++] = i;
            else if (lam[i] > 0.0)
                pos[np++] = i;
            else
                neg[nn++] = i;
        }
        auto by_abs = [&](std::array<int, 3>& idx, int count) {
            for (int i = 0; i < count; ++i)
                for (int j = i + 1; j < count; ++j)
                    if (std::abs(lam[idx[j]]) < std::abs(lam[idx[i]])) std::swap(idx[i], idx[j]);
        };
        by_abs(pos, np);
        by_abs(neg, nn);
        int k = 0;
        if (rank == 1) {
            const int main_axis = np == 1 ? pos[0] : neg[0];
            order = {zer[0], main_axis, zer[1]};
            (void)k;
        } else {
            for (int i = 0; i < np; ++i) order[k++] = pos[i];
            for (int i = 0; i < nn; ++i) order[k++] = neg[i];
            for (int i = 0; i < nz; ++i) order[k++] = zer[i];
        }
    }
    {
        const Mat3 p = axis_permutation(order);
        bool nontrivial = false;
        for (int k = 0; k < 3; ++k)
            if (order[k] != k) nontrivial = true;
        if (nontrivial) mv.stage(work, p, Vec3{});
        work.b = 0.0;
        work.d = 0.0;
        work.e = 0.0;
    }

    // kill linear terms along the full-rank axes
    {
        Vec3 shift{};
        if (!is_zero(work.a)) shift.x = work.g / work.a;
        if (!is_zero(work.c)) shift.y = work.h / work.c;
        if (!is_zero(work.f)) shift.z = work.i / work.f;
        mv.stage(work, Mat3::identity(), shift);
        if (!is_zero(work.a)) work.g = 0.0;
        if (!is_zero(work.c)) work.h = 0.0;
        if (!is_zero(work.f)) work.i = 0.0;
        work.b = 0.0;
        work.d = 0.0;
        work.e = 0.0;
    }

    QuadricReport rep;

    if (rank == 3) {
        const bool elliptic = n_pos == 3;
        const Scalar tol_j =
            opts.zero_tol * std::max({std::abs(work.a), std::abs(work.c), std::abs(work.f),
                                      std::abs(work.j)});
        if (std::abs(work.j) <= tol_j) {
            work.j = 0.0;
            scale_coeffs(work, 1.0 / work.a);
            rep.cls = elliptic ? QuadricClass::point : QuadricClass::cone;
        } else if (work.j < 0.0) {
            scale_coeffs(work, -1.0 / work.j);
            rep.cls = elliptic ? QuadricClass::ellipsoid : QuadricClass::hyperboloid_one_sheet;
        } else {
            scale_coeffs(work, 1.0 / work.j);
            rep.cls = elliptic ? QuadricClass::imaginary_ellipsoid
                               : QuadricClass::hyperboloid_two_sheets;
        }
        work.g = 0.0;
        work.h = 0.0;
        work.i = 0.0;
    } else if (rank == 2 && std::abs(work.i) > opts.zero_tol * coeff_norm(work)) {
        // paraboloid: displace along z to absorb the constant
        mv.stage(work, Mat3::identity(), Vec3{0.0, 0.0, work.j / (2.0 * work.i)});
        work.j = 0.0;
        scale_coeffs(work, 1.0 / std::abs(work.i));
        if (work.i > 0.0) {
            // half turn about x flips the z direction
            Mat3 flip;
            flip.m = {{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
            mv.stage(work, flip, Vec3{});
        }
        work.i = -1.0;
        work.g = 0.0;
        work.h = 0.0;
        work.b = 0.0;
        work.d = 0.0;
        work.e = 0.0;
        rep.cls = (work.a > 0.0) == (work.c > 0.0) ? QuadricClass::elliptic_paraboloid
                                                   : QuadricClass::hyperbolic_paraboloid;
    } else {
        // cylindrical: one variable drops out after at most one extra
        // rotation, and the classification reduces to the planar one
        if (rank == 1) {
            const Scalar lin = std::sqrt(work.g * work.g + work.i * work.i);
            if (lin > opts.zero_tol * coeff_norm(work) &&
                std::abs(work.i) > opts.zero_tol * lin) {
                // rotate about y so the residual linear term lies along x
                const Scalar ca = work.g / lin, sa = work.i / lin;
                Mat3 r;
                r.m = {{{ca, 0, sa}, {0, 1, 0}, {-sa, 0, ca}}};
                mv.stage(work, r, Vec3{});
                work.i = 0.0;
            }
        }
        ConicEquation conic{work.a, 0.0, work.c, work.g, work.h, work.j};
        const ConicReport planar = classify_conic(conic, opts);
        Mat3 lift;
        lift.m = {{{planar.rotation(0, 0), planar.rotation(0, 1), 0.0},
                   {planar.rotation(1, 0), planar.rotation(1, 1), 0.0},
                   {0.0, 0.0, 1.0}}};
        mv.stage(work, lift, Vec3{planar.translation.x, planar.translation.y, 0.0});
        rep.cls = lift_conic_class(planar.cls);
        work = QuadricEquation{planar.canonical.a, planar.canonical.b, planar.canonical.c,
                               0.0,               0.0,               0.0,
                               planar.canonical.d, planar.canonical.e, 0.0,
                               planar.canonical.f};
    }

    rep.canonical = work;
    rep.rotation = mv.r;
    rep.translation = mv.t;
    rep.residual = report_residual(eq, rep);
    return rep;
}

}  // namespace skewgeom
