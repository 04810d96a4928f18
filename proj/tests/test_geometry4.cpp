#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "tetraproj/geometry4.hpp"

using namespace tetraproj;
using namespace testsupport;

TEST_CASE("hyperplane_through spans the 3-space of four points") {
    SUBCASE("w = 0") {
        const auto h = hyperplane_through({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {-1, 0, 0, 0}}});
        CHECK(h.normal() == Point4{0, 0, 0, 1});
        CHECK(std::abs(h.offset()) < 1e-15);
    }
    SUBCASE("w = 1") {
        const auto h = hyperplane_through({{{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {-1, 0, 0, 1}}});
        CHECK(h.normal() == Point4{0, 0, 0, 1});
        CHECK(h.offset() == doctest::Approx(1));
    }
    SUBCASE("coplanar points are rejected") {
        try {
            hyperplane_through({{{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, -1, 0, 0}}});
            FAIL("expected DegenerateInput");
        } catch (const GeometryError& e) {
            CHECK(e.code() == ErrorCode::DegenerateInput);
        }
    }
    SUBCASE("nearly coplanar beyond the conditioning limit") {
        CHECK_THROWS_AS(hyperplane_through({{{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, -1, 1e-10, 0}}}),
                        GeometryError);
    }
}

TEST_CASE("hyperplane_through contains its points and ignores their order") {
    for (int trial = 0; trial < 200; ++trial) {
        std::array<Point4, 4> pts;
        for (auto& p : pts) p = 3.0 * gaussian4();
        const auto h = hyperplane_through(pts);
        CHECK(std::abs(norm(h.normal()) - 1) < 1e-12);
        for (const auto& p : pts) CHECK(std::abs(h.signed_distance(p)) < 1e-9);

        std::array<int, 4> perm{0, 1, 2, 3};
        while (std::next_permutation(perm.begin(), perm.end())) {
            const auto g = hyperplane_through({pts[perm[0]], pts[perm[1]], pts[perm[2]], pts[perm[3]]});
            CHECK(distance(g.normal(), h.normal()) < 1e-9);
            CHECK(std::abs(g.offset() - h.offset()) < 1e-9);
        }
    }
}

TEST_CASE("hyperplane normal sign is canonical") {
    const Hyperplane3 h({0, -2, 1, 0}, -4);
    CHECK(h.normal().y > 0);
    CHECK(h.offset() == doctest::Approx(4 / std::sqrt(5.0)));
    CHECK_THROWS_AS(Hyperplane3({0, 0, 0, 0}, 1), GeometryError);
}

TEST_CASE("ray_sphere_intersect") {
    const Sphere3 unit({0, 0, 0, 0}, 1);
    SUBCASE("axis-aligned secant") {
        const auto hits = ray_sphere_intersect({0, 0, 0, 2}, {0, 0, 0, -1}, unit);
        REQUIRE(hits.size() == 2);
        CHECK(hits[0].t == doctest::Approx(1));
        CHECK(hits[1].t == doctest::Approx(3));
        CHECK(distance(hits[0].point, {0, 0, 0, 1}) < 1e-15);
        CHECK(distance(hits[1].point, {0, 0, 0, -1}) < 1e-15);
    }
    SUBCASE("miss") { CHECK(ray_sphere_intersect({2, 0, 0, 0}, {0, 1, 0, 0}, unit).empty()); }
    SUBCASE("tangent") {
        const auto hits = ray_sphere_intersect({1, 0, 0, 0}, {0, 0, 0, 1}, unit);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0].t == 0);
        CHECK(hits[0].point == Point4{1, 0, 0, 0});
    }
    SUBCASE("random secants have small quadratic residual") {
        for (int trial = 0; trial < 1000; ++trial) {
            const Sphere3 s = random_sphere();
            const Point4 origin = s.center + uniform(0, 2 * s.radius) * unit4();
            const Point4 dir = unit4();
            const auto hits = ray_sphere_intersect(origin, dir, s);
            CHECK(std::is_sorted(hits.begin(), hits.end(), [](auto& a, auto& b) { return a.t < b.t; }));
            for (const auto& h : hits) {
                const Point4 d = origin + h.t * dir - s.center;
                CHECK(std::abs(dot(d, d) - s.radius * s.radius) < 1e-9);
            }
        }
    }
}

TEST_CASE("section_sphere") {
    const Sphere3 unit({0, 0, 0, 0}, 1);
    SUBCASE("equator") {
        const auto s = std::get<Sphere2in4>(section_sphere(unit, Hyperplane3({0, 0, 0, 1}, 0)));
        CHECK(s.center == Point4{0, 0, 0, 0});
        CHECK(s.radius == doctest::Approx(1));
    }
    SUBCASE("parallel section at w = 0.5") {
        const auto s = std::get<Sphere2in4>(section_sphere(unit, Hyperplane3({0, 0, 0, 1}, 0.5)));
        CHECK(distance(s.center, {0, 0, 0, 0.5}) < 1e-15);
        // Oracle: sampled points of the section lie at distance 1 from the origin.
        CHECK(s.radius == doctest::Approx(0.8660254037844386).epsilon(1e-15));
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j < 8; ++j) CHECK(std::abs(norm(s.sample(M_PI * i / 8, M_PI * j / 4)) - 1) < 1e-12);
    }
    SUBCASE("miss") { CHECK(std::holds_alternative<EmptySection>(section_sphere(unit, Hyperplane3({0, 0, 0, 1}, 2)))); }
    SUBCASE("tangent hyperplane gives a point") {
        const auto p = std::get<Point4>(section_sphere(unit, Hyperplane3({0, 0, 0, 1}, -1)));
        CHECK(p == Point4{0, 0, 0, -1});
    }
    SUBCASE("random sections lie on sphere and cut") {
        for (int trial = 0; trial < 300; ++trial) {
            const Sphere3 s = random_sphere();
            const Hyperplane3 cut = Hyperplane3::through(s.center + uniform(-0.99, 0.99) * s.radius * unit4(), unit4());
            const auto sec = section_sphere(s, cut);
            if (!std::holds_alternative<Sphere2in4>(sec)) continue;
            const auto& s2 = std::get<Sphere2in4>(sec);
            for (int k = 0; k < 20; ++k) {
                const Point4 p = s2.sample(uniform(0, M_PI), uniform(0, 2 * M_PI));
                CHECK(s.contains(p, 1e-9));
                CHECK(cut.contains(p, 1e-9));
            }
        }
    }
}

TEST_CASE("orthogonal_complement") {
    const auto axes = orthogonal_complement({0, 0, 0, -2});
    CHECK(axes[0] == Point4{1, 0, 0, 0});
    CHECK(axes[1] == Point4{0, 1, 0, 0});
    CHECK(axes[2] == Point4{0, 0, 1, 0});
    for (int trial = 0; trial < 100; ++trial) {
        const Point4 d = unit4();
        const auto b = orthogonal_complement(d);
        const auto c = orthogonal_complement(-1.0 * d);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(dot(b[i], d)) < 1e-14);
            CHECK(distance(b[i], c[i]) < 1e-14);
            for (int j = 0; j < 3; ++j) CHECK(std::abs(dot(b[i], b[j]) - (i == j)) < 1e-14);
        }
    }
}

TEST_CASE("value types validate their invariants") {
    CHECK_THROWS_AS(Sphere3({0, 0, 0, 0}, 0), GeometryError);
    CHECK_THROWS_AS(Sphere3({0, 0, 0, 0}, -1), GeometryError);
    CHECK_THROWS_AS(Sphere2in4({0, 0, 0, 1}, 1, Hyperplane3({0, 0, 0, 1}, 0)), GeometryError);
    CHECK(ExtendedPoint3::infinity().is_infinite());
    CHECK(ExtendedPoint3(Point3{1, 2, 3}).point() == Point3{1, 2, 3});
}
