#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace skewgeom;
using testsupport::Rng;

namespace {

// Membership check shared by the conversion tests: points sampled from the
// source's parametric realization must satisfy the target's own equation.
template <typename Form, typename Residual, typename PointAt>
void check_same_point_set(const Form& src, const Form& dst, Residual residual, PointAt point_at,
                          Scalar scale = 1.0) {
    for (int k = 0; k < 20; ++k) {
        const Scalar t = -3.0 + 6.0 * k / 19.0;
        const auto p = point_at(src, t);
        CAPTURE(k, t);
        CHECK(std::abs(residual(dst, p)) <= 1e-9 * scale);
    }
}

}  // namespace

TEST_CASE("line on a plane: conversion soundness across all form pairs") {
    const Metric2 m = Metric2::euclidean();
    const std::vector<line2d::Form> sources = {
        line2d::Parametric{{0.5, -1.0}, {2.0, 1.0}},
        line2d::Normal{{1.0, 2.0}, 3.0},
        line2d::Canonical{1.0, 2.0, -1.0, 3.0},
        line2d::TwoPoint{{0.0, 1.0}, {2.0, 2.0}},
        line2d::General{2.0, -1.0, 4.0},
        line2d::Intercept{2.0, 5.0},
    };
    const std::vector<line2d::Tag> targets = {
        line2d::Tag::parametric, line2d::Tag::normal,  line2d::Tag::canonical,
        line2d::Tag::two_point,  line2d::Tag::general, line2d::Tag::intercept,
    };
    for (const auto& src : sources) {
        for (line2d::Tag to : targets) {
            const line2d::Form dst = line2d::convert(src, to, m);
            check_same_point_set(
                src, dst,
                [&](const line2d::Form& f, const Vec2& p) {
                    return line2d::implicit_residual(f, p, m);
                },
                [&](const line2d::Form& f, Scalar t) { return line2d::point_at(f, t, m); }, 10.0);
        }
    }
}

TEST_CASE("line on a plane: specific conversions") {
    SECTION("parametric to general, normalized leading coefficient") {
        const auto g = std::get<line2d::General>(line2d::convert(
            line2d::Parametric{{0, 0}, {1, 1}}, line2d::Tag::general));
        CHECK(g.a == Catch::Approx(1.0));
        CHECK(g.b == Catch::Approx(-1.0));
        CHECK(g.d == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("general to intercept") {
        const auto i = std::get<line2d::Intercept>(line2d::convert(
            line2d::General{1.0, 1.0, 1.0}, line2d::Tag::intercept));
        CHECK(i.a == Catch::Approx(1.0));
        CHECK(i.b == Catch::Approx(1.0));
    }
    SECTION("lines through the origin or parallel to an axis have no intercept form") {
        CHECK_THROWS_AS(
            line2d::convert(line2d::General{1.0, 0.0, 0.0}, line2d::Tag::intercept),
            NotRepresentable);
        CHECK_THROWS_AS(
            line2d::convert(line2d::General{1.0, 0.0, 2.0}, line2d::Tag::intercept),
            NotRepresentable);
        CHECK_THROWS_AS(
            line2d::convert(line2d::General{1.0, 2.0, 0.0}, line2d::Tag::intercept),
            NotRepresentable);
    }
    SECTION("degenerate canonical cases keep an exact zero component") {
        const auto vertical = std::get<line2d::Canonical>(line2d::convert(
            line2d::Parametric{{2.0, 1.0}, {0.0, 3.0}}, line2d::Tag::canonical));
        CHECK(vertical.ax == 0.0);
        CHECK(vertical.x0 == Catch::Approx(2.0));
        CHECK(line2d::implicit_residual(line2d::Canonical{vertical}, {2.0, 77.0}) == 0.0);

        const auto horizontal = std::get<line2d::Canonical>(line2d::convert(
            line2d::Parametric{{2.0, 1.0}, {3.0, 0.0}}, line2d::Tag::canonical));
        CHECK(horizontal.ay == 0.0);
        CHECK(horizontal.y0 == Catch::Approx(1.0));
    }
    SECTION("skew metric: normal form round trip preserves the point set") {
        const Frame f = frame_from_vectors({1, 0, 0}, {1, 1, 0}, {0, 0, 1});
        const Metric2 m = Metric2::from_frame(f);
        const line2d::Parametric src{{1.0, 2.0}, {3.0, -1.0}};
        const line2d::Form n = line2d::convert(line2d::Form{src}, line2d::Tag::normal, m);
        for (int k = 0; k < 20; ++k) {
            const Vec2 p = line2d::point_at(line2d::Form{src}, -2.0 + 0.2 * k, m);
            CHECK(std::abs(line2d::implicit_residual(n, p, m)) <= 1e-9 * 10.0);
        }
        // and back to general
        const line2d::Form g = line2d::convert(n, line2d::Tag::general, m);
        for (int k = 0; k < 20; ++k) {
            const Vec2 p = line2d::point_at(line2d::Form{src}, -2.0 + 0.2 * k, m);
            CHECK(std::abs(line2d::implicit_residual(g, p, m)) <= 1e-9 * 10.0);
        }
    }
    SECTION("invalid forms are rejected") {
        CHECK_THROWS_AS(line2d::convert(line2d::Parametric{{0, 0}, {0, 0}},
                                        line2d::Tag::general),
                        InvalidForm);
        CHECK_THROWS_AS(line2d::convert(line2d::TwoPoint{{1, 1}, {1, 1}}, line2d::Tag::general),
                        InvalidForm);
        CHECK_THROWS_AS(line2d::convert(line2d::Intercept{0.0, 1.0}, line2d::Tag::general),
                        InvalidForm);
    }
}

TEST_CASE("plane in space: conversion soundness across all form pairs") {
    const std::vector<plane::Form> sources = {
        plane::Parametric{{1, 0, -1}, {1, 2, 0}, {0, 1, 1}},
        plane::Normal{{1, 2, 2}, 3.0},
        plane::Canonical{{0, 1, 0}, {2, 0, 1}, {1, 1, 0}},
        plane::ThreePoint{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}},
        plane::General{1.0, 2.0, 4.0, 4.0},
        plane::Intercept{2.0, 3.0, 5.0},
    };
    const std::vector<plane::Tag> targets = {
        plane::Tag::parametric, plane::Tag::normal,  plane::Tag::canonical,
        plane::Tag::three_point, plane::Tag::general, plane::Tag::intercept,
    };
    Rng rng(70);
    for (const auto& src : sources) {
        for (plane::Tag to : targets) {
            const plane::Form dst = plane::convert(src, to);
            for (int k = 0; k < 20; ++k) {
                const Vec3 p =
                    plane::point_at(src, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
                CHECK(std::abs(plane::implicit_residual(dst, p)) <= 1e-9 * 30.0);
            }
        }
    }
}

TEST_CASE("plane in space: specific conversions") {
    SECTION("three points give the expected general form") {
        const auto g = std::get<plane::General>(plane::convert(
            plane::ThreePoint{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, plane::Tag::general));
        CHECK(g.a == Catch::Approx(1.0));
        CHECK(g.b == Catch::Approx(1.0));
        CHECK(g.c == Catch::Approx(1.0));
        CHECK(g.d == Catch::Approx(1.0));
    }
    SECTION("coordinate plane has normal e3 and D = 0") {
        const auto n = std::get<plane::Normal>(plane::convert(
            plane::Parametric{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, plane::Tag::normal));
        CHECK(n.n.x == Catch::Approx(0.0).margin(1e-15));
        CHECK(n.n.y == Catch::Approx(0.0).margin(1e-15));
        CHECK(n.n.z == Catch::Approx(1.0));
        CHECK(n.d == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("general to intercept uses a = D/A, b = D/B, c = D/C") {
        const auto i = std::get<plane::Intercept>(plane::convert(
            plane::General{1.0, 2.0, 4.0, 4.0}, plane::Tag::intercept));
        CHECK(i.a == Catch::Approx(4.0));
        CHECK(i.b == Catch::Approx(2.0));
        CHECK(i.c == Catch::Approx(1.0));
    }
    SECTION("intercept failures") {
        CHECK_THROWS_AS(
            plane::convert(plane::General{1.0, 1.0, 1.0, 0.0}, plane::Tag::intercept),
            NotRepresentable);
        CHECK_THROWS_AS(
            plane::convert(plane::General{1.0, 0.0, 1.0, 5.0}, plane::Tag::intercept),
            NotRepresentable);
    }
    SECTION("normal form in a skew frame stays on the plane") {
        const Frame f = frame_from_vectors({1, 0.1, 0}, {0, 1, 0.2}, {0.3, 0, 1});
        const plane::Parametric src{{1, 1, 0}, {1, 0, 2}, {0, 1, -1}};
        const plane::Form n = plane::convert(plane::Form{src}, plane::Tag::normal, f);
        Rng rng(71);
        for (int k = 0; k < 20; ++k) {
            const Vec3 p = plane::point_at(plane::Form{src}, rng.uniform(-2, 2),
                                           rng.uniform(-2, 2), f);
            CHECK(std::abs(plane::implicit_residual(n, p, f)) <= 1e-9 * 30.0);
        }
        // the produced normal is metric-perpendicular to both directions
        const auto& nn = std::get<plane::Normal>(n);
        CHECK(std::abs(scalar_product(nn.n, src.a, f)) <= 1e-9 * 10.0);
        CHECK(std::abs(scalar_product(nn.n, src.b, f)) <= 1e-9 * 10.0);
    }
    SECTION("proportional directions are rejected") {
        CHECK_THROWS_AS(plane::convert(plane::Parametric{{0, 0, 0}, {1, 1, 0}, {2, 2, 0}},
                                       plane::Tag::general),
                        InvalidForm);
        CHECK_THROWS_AS(plane::convert(plane::ThreePoint{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}},
                                       plane::Tag::general),
                        InvalidForm);
    }
}

TEST_CASE("line in space: conversion soundness across all form pairs") {
    const std::vector<line3d::Form> sources = {
        line3d::Parametric{{1, 0, -1}, {2, 1, 1}},
        line3d::Vectorial{{0, 0, 1}, {0, -1, 0}},  // x = -1 ... check: [r,a]=b
        line3d::Canonical{{0, 1, 2}, {1, 2, 3}, line3d::CanonicalCase::all_free},
        line3d::TwoPoint{{0, 0, 0}, {1, 1, 1}},
        line3d::TwoPlanes{plane::General{0, 0, 1, 0}, plane::General{0, 1, 0, 0}},
    };
    const std::vector<line3d::Tag> targets = {
        line3d::Tag::parametric, line3d::Tag::vectorial, line3d::Tag::canonical,
        line3d::Tag::two_point,  line3d::Tag::two_planes,
    };
    for (const auto& src : sources) {
        for (line3d::Tag to : targets) {
            const line3d::Form dst = line3d::convert(src, to);
            for (int k = 0; k < 20; ++k) {
                const Scalar t = -3.0 + 6.0 * k / 19.0;
                const Vec3 p = line3d::point_at(src, t);
                CHECK(std::abs(line3d::implicit_residual(dst, p)) <= 1e-9 * 30.0);
            }
        }
    }
}

TEST_CASE("line in space: specific conversions") {
    SECTION("two coordinate planes intersect in the x axis") {
        const auto par = std::get<line3d::Parametric>(line3d::convert(
            line3d::TwoPlanes{plane::General{0, 0, 1, 0}, plane::General{0, 1, 0, 0}},
            line3d::Tag::parametric));
        CHECK(std::abs(par.r0.norm()) <= 1e-12);
        CHECK(std::abs(par.a.y) <= 1e-12);
        CHECK(std::abs(par.a.z) <= 1e-12);
        CHECK(std::abs(par.a.x) > 0.0);
    }
    SECTION("parametric to vectorial has a metric-perpendicular moment") {
        const line3d::Parametric src{{1, 0, 0}, {0, 0, 1}};
        const auto v = std::get<line3d::Vectorial>(
            line3d::convert(line3d::Form{src}, line3d::Tag::vectorial));
        CHECK(std::abs(scalar_product(v.a, v.b, Frame::reference())) == 0.0);
        // b = [r0, a] for this input is (0,-1,0)
        CHECK(v.b.x == Catch::Approx(0.0).margin(1e-15));
        CHECK(v.b.y == Catch::Approx(-1.0));
        CHECK(v.b.z == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("two points on the diagonal give the expected canonical form") {
        const auto c = std::get<line3d::Canonical>(line3d::convert(
            line3d::TwoPoint{{0, 0, 0}, {1, 1, 1}}, line3d::Tag::canonical));
        CHECK(c.degeneracy == line3d::CanonicalCase::all_free);
        CHECK(c.a.x == Catch::Approx(c.a.y));
        CHECK(c.a.y == Catch::Approx(c.a.z));
    }
    SECTION("each degenerate canonical case is tagged and exact") {
        using CC = line3d::CanonicalCase;
        const std::vector<std::pair<Vec3, CC>> cases = {
            {{0.0, 1.0, 1.0}, CC::x_fixed},  {{1.0, 0.0, 1.0}, CC::y_fixed},
            {{1.0, 1.0, 0.0}, CC::z_fixed},  {{0.0, 0.0, 1.0}, CC::xy_fixed},
            {{0.0, 1.0, 0.0}, CC::xz_fixed}, {{1.0, 0.0, 0.0}, CC::yz_fixed},
        };
        for (const auto& [dir, expected] : cases) {
            const line3d::Parametric src{{1.0, 2.0, 3.0}, dir};
            const auto c = std::get<line3d::Canonical>(
                line3d::convert(line3d::Form{src}, line3d::Tag::canonical));
            CHECK(c.degeneracy == expected);
            // membership through the case equations
            for (int k = 0; k < 20; ++k) {
                const Vec3 p = src.r0 + src.a * (-2.0 + 0.2 * k);
                CHECK(line3d::implicit_residual(line3d::Form{c}, p) <= 1e-9 * 10.0);
            }
        }
    }
    SECTION("parallel planes cannot define a line") {
        CHECK_THROWS_AS(
            line3d::convert(line3d::TwoPlanes{plane::General{1, 1, 0, 0},
                                              plane::General{2, 2, 0, 5}},
                            line3d::Tag::parametric),
            ParallelPlanes);
    }
    SECTION("vectorial form requires b perpendicular to a") {
        CHECK_THROWS_AS(line3d::convert(line3d::Vectorial{{0, 0, 1}, {0, 0, 1}},
                                        line3d::Tag::parametric),
                        InvalidForm);
    }
}

TEST_CASE("coordinate system changes") {
    Rng rng(72);
    SECTION("identity") {
        const CoordinateSystem cs{rng.vec3(), rng.frame()};
        const Vec3 p = rng.vec3();
        CHECK((change_coordinate_system(p, cs, cs) - p).norm() <= 1e-9);
    }
    SECTION("pure translation subtracts the displacement components") {
        const Frame f = Frame::reference();
        const Vec3 shift{1.0, -2.0, 0.5};
        const CoordinateSystem from{{0, 0, 0}, f}, to{shift, f};
        const Vec3 p{4.0, 4.0, 4.0};
        const Vec3 moved = change_coordinate_system(p, from, to);
        CHECK((moved - (p - shift)).norm() <= 1e-12);
    }
    SECTION("rotation about e3 with a common origin") {
        const Scalar phi = 0.9;
        const Frame rotated = frame_from_vectors({std::cos(phi), std::sin(phi), 0},
                                                 {-std::sin(phi), std::cos(phi), 0}, {0, 0, 1});
        const CoordinateSystem from{{0, 0, 0}, Frame::reference()}, to{{0, 0, 0}, rotated};
        const Vec3 p{1.0, 2.0, 3.0};
        const Vec3 moved = change_coordinate_system(p, from, to);
        CHECK(moved.x == Catch::Approx(std::cos(phi) * 1.0 + std::sin(phi) * 2.0));
        CHECK(moved.y == Catch::Approx(-std::sin(phi) * 1.0 + std::cos(phi) * 2.0));
        CHECK(moved.z == Catch::Approx(3.0));
    }
    SECTION("round trip and ambient-position preservation") {
        for (int iter = 0; iter < 100; ++iter) {
            const CoordinateSystem a{rng.vec3(), rng.frame(100.0)};
            const CoordinateSystem b{rng.vec3(), rng.frame(100.0)};
            const Vec3 p = rng.vec3();
            const Vec3 there = change_coordinate_system(p, a, b);
            const Vec3 back = change_coordinate_system(there, b, a);
            CHECK((back - p).norm() <= 1e-9 * std::max(1.0, p.norm()));

            const Vec3 pos_a = a.origin + reconstruct(p, a.frame);
            const Vec3 pos_b = b.origin + reconstruct(there, b.frame);
            CHECK((pos_a - pos_b).norm() <= 1e-9 * std::max(1.0, pos_a.norm()));
        }
    }
    SECTION("composition through a middle system") {
        for (int iter = 0; iter < 50; ++iter) {
            const CoordinateSystem a{rng.vec3(), rng.frame(100.0)};
            const CoordinateSystem mid{rng.vec3(), rng.frame(100.0)};
            const CoordinateSystem b{rng.vec3(), rng.frame(100.0)};
            const Vec3 p = rng.vec3();
            const Vec3 two_hops =
                change_coordinate_system(change_coordinate_system(p, a, mid), mid, b);
            const Vec3 direct = change_coordinate_system(p, a, b);
            CHECK((two_hops - direct).norm() <= 1e-9 * std::max(1.0, direct.norm()));
        }
    }
    SECTION("origin displacement vectors satisfy a~ = -T a") {
        for (int iter = 0; iter < 50; ++iter) {
            const CoordinateSystem a{rng.vec3(), rng.frame(100.0)};
            const CoordinateSystem b{rng.vec3(), rng.frame(100.0)};
            const OriginDisplacement d = origin_displacement(a, b);
            const TransitionPair pair = transition_between(a.frame, b.frame);
            const Vec3 expected = -(pair.t * d.a);
            CHECK((d.a_tilde - expected).norm() <= 1e-9 * std::max(1.0, expected.norm()));
        }
    }
}

TEST_CASE("covariant coordinates round trip") {
    Rng rng(73);
    for (int iter = 0; iter < 50; ++iter) {
        const Frame f = rng.frame();
        const Vec3 n = rng.vec3();
        const CovariantNormal lowered = lower_index(n, f);
        const Vec3 raised = raise_index(lowered, f);
        CHECK((raised - n).norm() <= 1e-9 * std::max(1.0, n.norm()));
    }
}
