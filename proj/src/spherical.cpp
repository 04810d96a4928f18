#include "tetraproj/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

namespace tetraproj {

namespace {

constexpr double kOnSphereEps = 1e-6;
constexpr double kTwoPi = 2 * M_PI;

void require_on_sphere(const Sphere3& sphere, Point4 p) {
    if (!is_finite(p) || std::abs(distance(p, sphere.center) - sphere.radius) > kOnSphereEps)
        throw GeometryError(ErrorCode::NotOnSphere, "point is not on the 3-sphere");
}

void set_coord(HypersphericalCoords& c, int k, double value) {
    (k == 0 ? c.psi : k == 1 ? c.theta : c.phi) = value;
}

double lerp(const AngleRange& r, double s) { return r.lo + s * (r.hi - r.lo); }

}  // namespace

Point4 GreatCircleArc::at(double s) const {
    if (s == 0) return start;
    if (s == 1) return end;
    return at_angle(s * sweep);
}

std::vector<Point4> GreatCircleArc::sample(int n) const {
    if (n < 1) throw GeometryError(ErrorCode::DegenerateInput, "arc sampling needs n >= 1");
    std::vector<Point4> out;
    out.reserve(n + 1);
    for (int i = 0; i <= n; ++i) out.push_back(i == n ? end : at(static_cast<double>(i) / n));
    return out;
}

Point4 antipode(const Sphere3& sphere, Point4 a) {
    require_on_sphere(sphere, a);
    return 2.0 * sphere.center - a;
}

Point4 hyperspherical_point(const Sphere3& sphere, const HypersphericalCoords& c) {
    const double sp = std::sin(c.psi);
    const double st = std::sin(c.theta);
    return sphere.center + sphere.radius * Point4{sp * st * std::cos(c.phi), sp * st * std::sin(c.phi),
                                                  sp * std::cos(c.theta), std::cos(c.psi)};
}

GreatCircleArc great_arc(const Sphere3& sphere, Point4 a, Point4 b) {
    require_on_sphere(sphere, a);
    require_on_sphere(sphere, b);
    if (distance(a, b) <= kGeomEps)
        throw GeometryError(ErrorCode::CoincidentPoints, "arc endpoints coincide");
    const Point4 da = a - sphere.center;
    const Point4 db = b - sphere.center;
    if (norm(da + db) <= kGeomEps)
        throw GeometryError(ErrorCode::AntipodalPair, "antipodal endpoints span no unique great circle");

    GreatCircleArc arc;
    arc.sphere = sphere;
    arc.start = a;
    arc.end = b;
    arc.u = normalized(da);
    const Point4 perp = db - dot(db, arc.u) * arc.u;
    arc.v = normalized(perp);
    arc.sweep = std::atan2(norm(perp), dot(db, arc.u));
    return arc;
}

Tetrahedron tetrahedron(const Sphere3& sphere, const std::array<Point4, 4>& vertices) {
    Tetrahedron out;
    out.vertices = vertices;
    for (std::size_t e = 0; e < 6; ++e) {
        const auto [i, j] = Tetrahedron::kEdgeVertices[e];
        out.edges[e] = great_arc(sphere, vertices[i], vertices[j]);
    }
    hyperplane_through(vertices);
    return out;
}

Sphere2in4 circumsphere2(const Sphere3& sphere, const std::array<Point4, 4>& points) {
    for (const auto& p : points) require_on_sphere(sphere, p);
    const Section s = section_sphere(sphere, hyperplane_through(points));
    if (const auto* s2 = std::get_if<Sphere2in4>(&s)) return *s2;
    throw GeometryError(ErrorCode::DegenerateInput, "points do not span a 2-sphere of the 3-sphere");
}

Hexahedron hexahedron(const Sphere3& sphere, AngleRange psi, AngleRange theta, AngleRange phi) {
    const std::array<AngleRange, 3> ranges{psi, theta, phi};
    const std::array<double, 3> domain_hi{M_PI, M_PI, kTwoPi};
    for (int k = 0; k < 3; ++k) {
        if (!(ranges[k].hi > ranges[k].lo))
            throw GeometryError(ErrorCode::EmptyRange, "coordinate range has no interior");
        if (ranges[k].lo < 0 || ranges[k].hi > domain_hi[k])
            throw GeometryError(ErrorCode::DegenerateInput, "coordinate range leaves the chart's domain");
    }

    Hexahedron hex;
    hex.sphere = sphere;
    hex.ranges = ranges;
    for (int i = 0; i < 8; ++i) {
        HypersphericalCoords c;
        for (int k = 0; k < 3; ++k) set_coord(c, k, (i >> k) & 1 ? ranges[k].hi : ranges[k].lo);
        hex.corners[i] = hyperspherical_point(sphere, c);
    }
    int e = 0;
    for (int k = 0; k < 3; ++k) {
        const int a = (k + 1) % 3;
        const int b = (k + 2) % 3;
        for (int bits = 0; bits < 4; ++bits) {
            HexEdge edge;
            edge.varying = k;
            edge.range = ranges[k];
            set_coord(edge.fixed, a, bits & 1 ? ranges[a].hi : ranges[a].lo);
            set_coord(edge.fixed, b, bits & 2 ? ranges[b].hi : ranges[b].lo);
            hex.edges[e++] = edge;
        }
    }
    for (int k = 0; k < 3; ++k) {
        const int a = std::min((k + 1) % 3, (k + 2) % 3);
        const int b = std::max((k + 1) % 3, (k + 2) % 3);
        for (int side = 0; side < 2; ++side)
            hex.faces[2 * k + side] = {k, side ? ranges[k].hi : ranges[k].lo, ranges[a], ranges[b]};
    }
    return hex;
}

std::vector<Point4> Hexahedron::sample_edge(int edge, int n) const {
    if (n < 1) throw GeometryError(ErrorCode::DegenerateInput, "edge sampling needs n >= 1");
    const HexEdge& e = edges.at(edge);
    std::vector<Point4> out;
    out.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        HypersphericalCoords c = e.fixed;
        set_coord(c, e.varying, lerp(e.range, static_cast<double>(i) / n));
        out.push_back(hyperspherical_point(sphere, c));
    }
    return out;
}

std::vector<Point4> Hexahedron::sample_face(int face, int nu, int nv) const {
    if (nu < 1 || nv < 1) throw GeometryError(ErrorCode::DegenerateInput, "face sampling needs n >= 1");
    const HexFace& f = faces.at(face);
    const int a = std::min((f.fixed_coord + 1) % 3, (f.fixed_coord + 2) % 3);
    const int b = std::max((f.fixed_coord + 1) % 3, (f.fixed_coord + 2) % 3);
    std::vector<Point4> out;
    out.reserve(static_cast<std::size_t>(nu + 1) * (nv + 1));
    for (int i = 0; i <= nu; ++i) {
        for (int j = 0; j <= nv; ++j) {
            HypersphericalCoords c;
            set_coord(c, f.fixed_coord, f.value);
            set_coord(c, a, lerp(f.first, static_cast<double>(i) / nu));
            set_coord(c, b, lerp(f.second, static_cast<double>(j) / nv));
            out.push_back(hyperspherical_point(sphere, c));
        }
    }
    return out;
}

Point4 sigma_to_4d(const StereoConfig& cfg, Point3 a) {
    const auto& b = cfg.basis();
    return cfg.sphere().center + a.u * b[0] + a.v * b[1] + a.t * b[2];
}

Point3 sigma_from_4d(const StereoConfig& cfg, Point4 p) {
    const auto& b = cfg.basis();
    const Point4 d = p - cfg.sphere().center;
    return {dot(b[0], d) + 0.0, dot(b[1], d) + 0.0, dot(b[2], d) + 0.0};
}

ExtendedPoint3 spherical_inversion(const StereoConfig& cfg, const ExtendedPoint3& a) {
    // The tangent target at the antipode is twice as far from the pole as the
    // central 3-space, so target coordinates are twice the central ones.
    if (a.is_infinite()) return Point3{};
    if (a.point() == Point3{}) return ExtendedPoint3::infinity();
    const Point4 on_sphere = stereo_unproject(cfg, ExtendedPoint3(2.0 * a.point()));
    const StereoConfig from_antipode(cfg.sphere(), cfg.antipode());
    const ExtendedPoint3 image = stereo_project(from_antipode, on_sphere);
    if (image.is_infinite()) return image;
    return ExtendedPoint3(0.5 * image.point());
}

Ball3 circumsphere3(const std::array<Point3, 4>& points) {
    Eigen::Matrix3d m;
    Eigen::Vector3d rhs;
    for (int i = 1; i < 4; ++i) {
        const Point3 d = points[i] - points[0];
        m.row(i - 1) << 2 * d.u, 2 * d.v, 2 * d.t;
        rhs(i - 1) = dot(points[i], points[i]) - dot(points[0], points[0]);
    }
    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0 || sv(2) * 1e8 < sv(0))
        throw GeometryError(ErrorCode::DegenerateInput, "points are coplanar");
    const Eigen::Vector3d c = svd.solve(rhs);
    const Point3 center{c(0), c(1), c(2)};
    double radius = 0;
    for (const auto& p : points) radius += distance(center, p);
    return {center, radius / 4};
}

std::optional<Ball3> invert_ball(const Ball3& ball, Point3 center, double r) {
    const Point3 d = ball.center - center;
    const double power = dot(d, d) - ball.radius * ball.radius;
    if (std::abs(power) <= kNormEps * std::max(1.0, dot(d, d))) return std::nullopt;
    return Ball3{center + (r * r / power) * d, r * r * ball.radius / std::abs(power)};
}

InversionDemo invert_tetrahedron_demo(const StereoConfig& cfg, const std::array<Point3, 4>& vertices,
                                      int edge_samples, int sphere_rows, int sphere_cols) {
    if (edge_samples < 1 || sphere_rows < 1 || sphere_cols < 1)
        throw GeometryError(ErrorCode::DegenerateInput, "sampling resolutions must be >= 1");
    for (std::size_t i = 0; i < 4; ++i) {
        if (!is_finite(vertices[i]) || norm(vertices[i]) <= kGeomEps)
            throw GeometryError(ErrorCode::DegenerateInput, "vertices must be finite and differ from the center");
        for (std::size_t j = 0; j < i; ++j)
            if (distance(vertices[i], vertices[j]) <= kGeomEps)
                throw GeometryError(ErrorCode::CoincidentPoints, "tetrahedron vertices coincide");
    }

    InversionDemo demo;
    demo.vertices = vertices;
    demo.circumsphere = circumsphere3(vertices);
    for (int i = 0; i < 4; ++i) demo.images[i] = spherical_inversion(cfg, vertices[i]).point();

    for (std::size_t e = 0; e < 6; ++e) {
        const auto [i, j] = Tetrahedron::kEdgeVertices[e];
        InvertedEdge edge{i, j, {}, false};
        const Point3 a = vertices[i];
        const Point3 ab = vertices[j] - a;
        const double closest = std::clamp(-dot(a, ab) / dot(ab, ab), 0.0, 1.0);
        edge.through_center = norm(a + closest * ab) <= kGeomEps;

        std::vector<Point3> piece;
        for (int k = 0; k <= edge_samples; ++k) {
            const double s = static_cast<double>(k) / edge_samples;
            const Point3 p = a + s * ab;
            const ExtendedPoint3 img = spherical_inversion(cfg, p);
            const bool crosses = edge.through_center && s > closest && !piece.empty() &&
                                 static_cast<double>(k - 1) / edge_samples < closest;
            if (img.is_infinite() || crosses) {
                if (piece.size() >= 2) edge.pieces.push_back(piece);
                piece.clear();
                if (img.is_infinite()) continue;
            }
            piece.push_back(img.point());
        }
        if (piece.size() >= 2) edge.pieces.push_back(piece);
        demo.edges[e] = std::move(edge);
    }

    const Ball3& ball = demo.circumsphere;
    for (int i = 0; i <= sphere_rows; ++i) {
        const double theta = M_PI * i / sphere_rows;
        for (int j = 0; j <= sphere_cols; ++j) {
            const double phi = kTwoPi * j / sphere_cols;
            const Point3 p = ball.center + ball.radius * Point3{std::sin(theta) * std::cos(phi),
                                                                std::sin(theta) * std::sin(phi),
                                                                std::cos(theta)};
            demo.circumsphere_image_samples.push_back(spherical_inversion(cfg, p));
        }
    }
    demo.circumsphere_image = invert_ball(ball, {0, 0, 0}, cfg.sphere().radius);
    return demo;
}

}  // namespace tetraproj
