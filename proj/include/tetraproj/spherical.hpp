#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "tetraproj/geometry4.hpp"
#include "tetraproj/projections.hpp"

namespace tetraproj {

/// Minor arc of a great circle of a 3-sphere.
struct GreatCircleArc {
    Sphere3 sphere;
    Point4 start;
    Point4 end;
    /// Orthonormal pair spanning the circle's plane through the center;
    /// `u` points from the center to `start`.
    Point4 u;
    Point4 v;
    double sweep = 0;

    Point4 at_angle(double angle) const {
        return sphere.center + sphere.radius * (std::cos(angle) * u + std::sin(angle) * v);
    }
    /// Point at fraction `s` in [0, 1] of the sweep; endpoints are returned exactly.
    Point4 at(double s) const;
    /// `n` uniform-angle segments, n + 1 points.
    std::vector<Point4> sample(int n) const;
};

/// Hyperspherical chart angles: psi, theta in [0, pi], phi in [0, 2 pi).
struct HypersphericalCoords {
    double psi = 0;
    double theta = 0;
    double phi = 0;
};

/// A 2-sphere of the modeling 3-space.
struct Ball3 {
    Point3 center;
    double radius = 0;

    friend bool operator==(const Ball3&, const Ball3&) = default;
};

Point4 antipode(const Sphere3& sphere, Point4 a);

/// Z + r (sin psi sin theta cos phi, sin psi sin theta sin phi, sin psi cos theta, cos psi).
Point4 hyperspherical_point(const Sphere3& sphere, const HypersphericalCoords& c);

GreatCircleArc great_arc(const Sphere3& sphere, Point4 a, Point4 b);

struct Tetrahedron {
    std::array<Point4, 4> vertices;
    std::array<GreatCircleArc, 6> edges;

    /// Vertex indices of each edge, in edge order.
    static constexpr std::array<std::pair<int, int>, 6> kEdgeVertices{
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
};

Tetrahedron tetrahedron(const Sphere3& sphere, const std::array<Point4, 4>& vertices);

/// The section of the sphere by the 3-space through four of its points.
Sphere2in4 circumsphere2(const Sphere3& sphere, const std::array<Point4, 4>& points);

struct AngleRange {
    double lo = 0;
    double hi = 0;
};

struct HexEdge {
    /// Varying coordinate: 0 psi, 1 theta, 2 phi.
    int varying = 0;
    HypersphericalCoords fixed;
    AngleRange range;
};

struct HexFace {
    /// Fixed coordinate: 0 psi, 1 theta, 2 phi.
    int fixed_coord = 0;
    double value = 0;
    /// Ranges of the two free coordinates in increasing coordinate order.
    AngleRange first;
    AngleRange second;
};

/// Cell of the hyperspherical chart bounded by coordinate surfaces.
struct Hexahedron {
    Sphere3 sphere;
    std::array<AngleRange, 3> ranges;
    /// Corner i takes the upper bound of coordinate k when bit k of i is set.
    std::array<Point4, 8> corners;
    std::array<HexEdge, 12> edges;
    std::array<HexFace, 6> faces;

    std::vector<Point4> sample_edge(int edge, int n) const;
    /// Row-major (nu + 1) x (nv + 1) grid over the face's free coordinates.
    std::vector<Point4> sample_face(int face, int nu, int nv) const;
};

/// Throws EmptyRange for a range without interior, DegenerateInput for a range
/// outside the coordinate's domain.
Hexahedron hexahedron(const Sphere3& sphere, AngleRange psi, AngleRange theta, AngleRange phi);

/// Coordinates in the 3-space through the center perpendicular to the pole
/// axis (origin at the center, axes `cfg.basis()`).
Point4 sigma_to_4d(const StereoConfig& cfg, Point3 a);
Point3 sigma_from_4d(const StereoConfig& cfg, Point4 p);

/// Inversion of the center's perpendicular 3-space (plus infinity) in the
/// equatorial 2-sphere, computed as the stereographic lift from the pole
/// followed by the stereographic projection from the antipode.
ExtendedPoint3 spherical_inversion(const StereoConfig& cfg, const ExtendedPoint3& a);

/// Sphere through four non-coplanar points of 3-space.
Ball3 circumsphere3(const std::array<Point3, 4>& points);

/// Image of a sphere under inversion in the sphere (center, r); nullopt when the
/// sphere passes through the center and its image is a plane.
std::optional<Ball3> invert_ball(const Ball3& ball, Point3 center, double r);

struct InvertedEdge {
    int a = 0;
    int b = 0;
    /// Inverted samples of the straight edge; two pieces when the edge passes
    /// through the center of inversion.
    std::vector<std::vector<Point3>> pieces;
    bool through_center = false;
};

struct InversionDemo {
    std::array<Point3, 4> vertices;
    std::array<Point3, 4> images;
    std::array<InvertedEdge, 6> edges;
    Ball3 circumsphere;
    /// Inverted (nu + 1) x (nv + 1) samples of the circumscribed sphere.
    std::vector<ExtendedPoint3> circumsphere_image_samples;
    std::optional<Ball3> circumsphere_image;
};

InversionDemo invert_tetrahedron_demo(const StereoConfig& cfg, const std::array<Point3, 4>& vertices,
                                      int edge_samples = 64, int sphere_rows = 16, int sphere_cols = 32);

}  // namespace tetraproj
