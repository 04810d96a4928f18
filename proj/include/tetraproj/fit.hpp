#pragma once

#include <span>

#include "tetraproj/geometry4.hpp"

// Least-squares fits used to validate that images of circles stay circles.
// Every fit reports the largest geometric deviation of its input from the
// fitted shape.
namespace tetraproj::fit {

struct PlaneFit {
    Point3 centroid;
    Point3 normal;
    double residual = 0;
};

struct LineFit {
    Point3 point;
    Point3 direction;
    double residual = 0;
};

struct CircleFit {
    Point3 center;
    Point3 normal;
    double radius = 0;
    /// Max of the off-plane distance and the radial deviation.
    double residual = 0;
};

struct SphereFit {
    Point3 center;
    double radius = 0;
    double residual = 0;
};

/// Fits need 2 points for a line, 3 for a plane or circle and 4 for a sphere,
/// and throw DegenerateInput otherwise.
PlaneFit plane(std::span<const Point3> points);
LineFit line(std::span<const Point3> points);
CircleFit circle(std::span<const Point3> points);
SphereFit sphere(std::span<const Point3> points);

/// Largest distance of the points from the best 2-plane through `origin`.
double plane2_through_residual(std::span<const Point4> points, Point4 origin);

}  // namespace tetraproj::fit
