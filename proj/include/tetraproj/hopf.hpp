#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tetraproj/geometry4.hpp"
#include "tetraproj/projections.hpp"

namespace tetraproj::hopf {

/// Spherical coordinates of a point of the unit 2-sphere:
/// (sin psi cos phi, sin psi sin phi, cos psi).
struct BasePoint {
    double psi = 0;
    double phi = 0;

    Point3 to_point() const;
};

struct FiberPoint {
    BasePoint base;
    double beta = 0;
};

/// Clelia curve k(psi) = (sin(s psi) cos psi, sin(s psi) sin psi + 1, cos(s psi))
/// on the 2-sphere of radius 1 centered at (0,1,0).
struct CleliaSpec {
    double s = 1;
    double psi_lo = 0;
    double psi_hi = 2 * M_PI;
    int resolution = 256;

    /// Throws DegenerateInput for an inverted interval or resolution < 2.
    void validate() const;
};

/// Center of the 2-sphere carrying the Clelia curves.
inline constexpr Point3 kCurveCenter{0, 1, 0};

/// Hopf map of the unit 3-sphere onto the unit 2-sphere:
/// (2(xz + yw), 2(yz - xw), x^2 + y^2 - z^2 - w^2). Throws NotUnit.
Point3 hopf_map(Point4 p);

/// Point of the fiber over `fp.base` at parameter `fp.beta`.
Point4 hopf_fiber(const FiberPoint& fp);

/// Samples of a whole fiber, `n` points over beta in [0, 2 pi).
std::vector<Point4> fiber_circle(const BasePoint& base, int n);

/// Point of the Clelia curve (display coordinates).
Point3 clelia(const CleliaSpec& spec, double psi);

/// Spherical angles of a unit vector; phi = 0 at the poles. Throws NotUnit.
BasePoint base_to_angles(Point3 p);

/// True when the curve's endpoints over the spec's interval coincide.
bool is_closed(const CleliaSpec& spec);

/// Smallest 2 pi m (m <= 16) over which the curve from psi = 0 closes; 2 pi
/// when none does.
double closing_span(double s);

/// Parameter of row `i` of a torus grid with `rows` rows.
double row_parameter(const CleliaSpec& spec, int i, int rows, bool closed);

/// Grid of Hopf fibers over a Clelia curve, in the canonical (unit, origin)
/// frame. Vertex (i, j) sits at `vertices[i * cols + j]`; rows follow psi,
/// columns follow beta. Columns always wrap; rows wrap when `closed_psi`.
struct TorusMesh {
    int rows = 0;
    int cols = 0;
    bool closed_psi = false;
    std::vector<Point4> vertices;
    std::vector<double> psi;
    std::vector<double> beta;
    /// Untranslated curve point of each row.
    std::vector<Point3> base;

    const Point4& at(int i, int j) const { return vertices[static_cast<std::size_t>(i) * cols + j]; }
    /// Two triangles per grid quad, honoring the wrap flags.
    std::vector<std::uint32_t> triangles() const;
};

/// Throws DegenerateInput when either resolution is < 2.
TorusMesh hopf_torus(const CleliaSpec& spec, int beta_resolution);

/// Display placement: swap the y and z axes, then translate by (0,1,0,1).
struct HopfPlacement {
    std::array<Axis, 4> source_of{Axis::X, Axis::Z, Axis::Y, Axis::W};
    Point4 translation{0, 1, 0, 1};

    Point4 place(Point4 canonical) const;
    Point4 unplace(Point4 display) const;
};

inline Point4 place_display(const HopfPlacement& placement, Point4 canonical) {
    return placement.place(canonical);
}

/// Canonical point that the display placement sends to the stereographic pole
/// (0,2,0,1).
inline constexpr Point4 kCanonicalPole{0, 0, 1, 0};

struct SelfIntersection {
    double psi1 = 0;
    double psi2 = 0;
    Point3 point;
};

/// Parameter pairs psi1 < psi2 at which the curve meets itself, found by
/// segment-pair screening of a dense sampling followed by Gauss-Newton
/// polishing of k(psi1) - k(psi2). The closing point of a closed curve is not
/// reported.
std::vector<SelfIntersection> self_intersection_fibers(const CleliaSpec& spec);

}  // namespace tetraproj::hopf
