#include "doctest.h"
#include "support.hpp"
#include "tetraproj/fit.hpp"

using namespace tetraproj;
using namespace testsupport;

TEST_CASE("circle fit recovers a sampled circle") {
    for (int k = 0; k < 100; ++k) {
        const Point3 c{uniform(-50, 50), uniform(-50, 50), uniform(-50, 50)};
        const double r = std::exp(uniform(-3, 4));
        const Point3 n = unit3();
        Point3 e1 = normalized(cross(n, unit3()));
        const Point3 e2 = cross(n, e1);
        std::vector<Point3> pts;
        // Only a short arc, which stresses the algebraic fit.
        for (int i = 0; i < 20; ++i) {
            const double a = 0.3 * i / 19;
            pts.push_back(c + r * (std::cos(a) * e1 + std::sin(a) * e2));
        }
        const auto f = fit::circle(pts);
        CHECK(f.residual < 1e-8 * std::max(1.0, r));
        CHECK(distance(f.center, c) < 1e-6 * std::max(1.0, r));
        CHECK(f.radius == doctest::Approx(r).epsilon(1e-8));
        CHECK(std::abs(std::abs(dot(f.normal, n)) - 1) < 1e-10);
    }
}

TEST_CASE("fits report deviations") {
    std::vector<Point3> square{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {1, 1, 0}};
    CHECK(fit::circle(square).residual > 0.1);
    CHECK(fit::plane(square).residual < 1e-15);
    CHECK(fit::line(square).residual > 0.5);

    std::vector<Point3> line{{0, 0, 0}, {1, 2, 3}, {2, 4, 6}, {-3, -6, -9}};
    const auto l = fit::line(line);
    CHECK(l.residual < 1e-14);
    CHECK(std::abs(std::abs(dot(l.direction, normalized(Point3{1, 2, 3}))) - 1) < 1e-14);

    std::vector<Point3> ball;
    for (int i = 0; i < 50; ++i) ball.push_back(Point3{1, 2, 3} + 2.5 * unit3());
    const auto s = fit::sphere(ball);
    CHECK(s.residual < 1e-12);
    CHECK(distance(s.center, {1, 2, 3}) < 1e-12);
    CHECK(s.radius == doctest::Approx(2.5));

    CHECK_THROWS_AS(fit::circle(std::vector<Point3>{{0, 0, 0}, {1, 0, 0}}), GeometryError);
    CHECK_THROWS_AS(fit::line(std::vector<Point3>{{0, 0, 0}}), GeometryError);
    CHECK_THROWS_AS(fit::sphere(std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), GeometryError);
    CHECK_THROWS_AS(fit::plane(std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {NAN, 1, 0}}), GeometryError);
}

TEST_CASE("2-plane residual") {
    std::vector<Point4> pts;
    for (int i = 0; i < 16; ++i) {
        const double a = 2 * M_PI * i / 16;
        pts.push_back(Point4{1, 1, 1, 1} + std::cos(a) * Point4{1, 0, 0, 0} + std::sin(a) * normalized(Point4{0, 1, 1, 0}));
    }
    CHECK(fit::plane2_through_residual(pts, {1, 1, 1, 1}) < 1e-14);
    pts.push_back({1, 1, 1, 1.5});
    CHECK(fit::plane2_through_residual(pts, {1, 1, 1, 1}) == doctest::Approx(0.5).epsilon(0.05));
}
