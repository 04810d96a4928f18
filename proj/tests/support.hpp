#pragma once

#include <cmath>
#include <random>

#include "tetraproj/geometry4.hpp"

// Shared generators and independent oracles for the test suites.
namespace testsupport {

using tetraproj::Point3;
using tetraproj::Point4;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20201016);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Point4 gaussian4() {
    std::normal_distribution<double> g;
    return {g(rng()), g(rng()), g(rng()), g(rng())};
}

inline Point4 unit4() {
    Point4 p;
    do p = gaussian4();
    while (tetraproj::norm(p) < 1e-3);
    return p / tetraproj::norm(p);
}

inline Point3 unit3() {
    std::normal_distribution<double> g;
    Point3 p;
    do p = {g(rng()), g(rng()), g(rng())};
    while (tetraproj::norm(p) < 1e-3);
    return p / tetraproj::norm(p);
}

inline tetraproj::Sphere3 random_sphere() {
    return {Point4{uniform(-3, 3), uniform(-3, 3), uniform(-3, 3), uniform(-3, 3)}, uniform(0.5, 3)};
}

inline Point4 on_sphere(const tetraproj::Sphere3& s) { return s.center + s.radius * unit4(); }

// Unit vector orthogonal to `d` (unit).
inline Point4 tangent_at(Point4 d) {
    Point4 t = gaussian4();
    t = t - tetraproj::dot(t, d) * d;
    return t / tetraproj::norm(t);
}

// Parameter where the line origin + t dir crosses the hyperplane, found by
// bisection of the signed distance on [lo, hi]. Independent of any closed form.
template <class SignedDistance>
double bisect_crossing(SignedDistance f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double angle_between(Point3 a, Point3 b) {
    return std::atan2(tetraproj::norm(tetraproj::cross(a, b)), tetraproj::dot(a, b));
}

inline double angle_between(Point4 a, Point4 b) {
    const double c = tetraproj::dot(a, b) / (tetraproj::norm(a) * tetraproj::norm(b));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace testsupport
