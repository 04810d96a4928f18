#include "tetraproj/geometry4.hpp"

#include <algorithm>
#include <Eigen/Dense>

namespace tetraproj {

namespace {

// Largest acceptable ratio of extreme singular values of the edge matrix
// spanned by four points before they count as cospatial.
constexpr double kMaxConditioning = 1e8;

double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Generalized cross product: the vector orthogonal to a, b and c whose
// components are the signed 3x3 minors.
Point4 cross4(Point4 a, Point4 b, Point4 c) {
    Point4 out;
    for (int col = 0; col < 4; ++col) {
        std::array<std::array<double, 3>, 3> minor{};
        for (int k = 0, j = 0; k < 4; ++k) {
            if (k == col) continue;
            minor[0][j] = a[k];
            minor[1][j] = b[k];
            minor[2][j] = c[k];
            ++j;
        }
        out[col] = (col % 2 == 0 ? 1.0 : -1.0) * det3(minor);
    }
    return out;
}

}  // namespace

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::NotOnSphere: return "NotOnSphere";
        case ErrorCode::AntipodalPair: return "AntipodalPair";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::EmptyRange: return "EmptyRange";
        case ErrorCode::NotUnit: return "NotUnit";
        case ErrorCode::UnsupportedConfiguration: return "UnsupportedConfiguration";
    }
    return "Unknown";
}

Point4 normalized(Point4 a) {
    const double n = norm(a);
    if (n == 0 || !std::isfinite(n))
        throw GeometryError(ErrorCode::DegenerateInput, "cannot normalize a zero vector");
    return a / n;
}

Point3 normalized(Point3 a) {
    const double n = norm(a);
    if (n == 0 || !std::isfinite(n))
        throw GeometryError(ErrorCode::DegenerateInput, "cannot normalize a zero vector");
    return a / n;
}

Point3 cross(Point3 a, Point3 b) {
    return {a.v * b.t - a.t * b.v, a.t * b.u - a.u * b.t, a.u * b.v - a.v * b.u};
}

bool is_finite(Point4 a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z) && std::isfinite(a.w);
}

bool is_finite(Point3 a) {
    return std::isfinite(a.u) && std::isfinite(a.v) && std::isfinite(a.t);
}

Hyperplane3::Hyperplane3(Point4 normal, double offset) {
    const double n = norm(normal);
    if (n == 0 || !std::isfinite(n) || !std::isfinite(offset))
        throw GeometryError(ErrorCode::DegenerateInput, "hyperplane needs a nonzero finite normal");
    normal_ = normal / n;
    offset_ = offset / n;
    for (int i = 0; i < 4; ++i) {
        if (normal_[i] == 0) continue;
        if (normal_[i] < 0) {
            normal_ = -normal_;
            offset_ = -offset_;
        }
        break;
    }
    // Avoid -0 so equal planes compare and serialize identically.
    for (int i = 0; i < 4; ++i) normal_[i] += 0.0;
    offset_ += 0.0;
}

Hyperplane3 Hyperplane3::through(Point4 point, Point4 normal) {
    const Point4 unit = normalized(normal);
    return Hyperplane3(unit, dot(unit, point));
}

Sphere3::Sphere3(Point4 c, double r) : center(c), radius(r) {
    if (!(r > 0) || !std::isfinite(r) || !is_finite(c))
        throw GeometryError(ErrorCode::DegenerateInput, "3-sphere needs a finite center and radius > 0");
}

Sphere2in4::Sphere2in4(Point4 c, double r, Hyperplane3 plane)
    : center(c), radius(r), carrier(plane) {
    if (!(r >= 0) || !std::isfinite(r))
        throw GeometryError(ErrorCode::DegenerateInput, "2-sphere radius must be >= 0");
    if (!carrier.contains(center))
        throw GeometryError(ErrorCode::DegenerateInput, "2-sphere center is not on its carrier");
}

std::array<Point4, 3> Sphere2in4::basis() const { return orthogonal_complement(carrier.normal()); }

Point4 Sphere2in4::sample(double theta, double phi) const {
    const auto b = basis();
    return center + radius * (std::sin(theta) * std::cos(phi) * b[0] +
                              std::sin(theta) * std::sin(phi) * b[1] + std::cos(theta) * b[2]);
}

std::array<Point4, 3> orthogonal_complement(Point4 direction) {
    const Point4 d = normalized(direction);
    int dominant = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(d[i]) > std::abs(d[dominant])) dominant = i;

    std::array<Point4, 3> out;
    int filled = 0;
    for (int k = 0; k < 4; ++k) {
        if (k == dominant) continue;
        Point4 e;
        e[k] = 1;
        e = e - dot(e, d) * d;
        for (int j = 0; j < filled; ++j) e = e - dot(e, out[j]) * out[j];
        e = normalized(e);
        out[filled++] = e;
    }
    return out;
}

Hyperplane3 hyperplane_through(const std::array<Point4, 4>& points) {
    for (const auto& p : points)
        if (!is_finite(p)) throw GeometryError(ErrorCode::DegenerateInput, "non-finite point");

    const Point4 a = points[1] - points[0];
    const Point4 b = points[2] - points[0];
    const Point4 c = points[3] - points[0];

    Eigen::Matrix<double, 3, 4> edges;
    for (int i = 0; i < 4; ++i) {
        edges(0, i) = a[i];
        edges(1, i) = b[i];
        edges(2, i) = c[i];
    }
    const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>>(edges).singularValues();
    if (sv(0) == 0 || sv(2) * kMaxConditioning < sv(0))
        throw GeometryError(ErrorCode::DegenerateInput, "points are cospatial: they span no unique 3-space");

    const Point4 normal = normalized(cross4(a, b, c));
    double offset = 0;
    for (const auto& p : points) offset += dot(normal, p);
    return Hyperplane3(normal, offset / 4);
}

std::vector<RayHit> ray_sphere_intersect(Point4 origin, Point4 direction, const Sphere3& sphere) {
    const Point4 o = origin - sphere.center;
    const double r2 = sphere.radius * sphere.radius;
    const double b = dot(o, direction);
    const double c = dot(o, o) - r2;
    double disc = b * b - c;
    const double tol = kNormEps * std::max(1.0, r2);
    if (disc < -tol) return {};
    if (disc <= tol) {
        const double t = -b;
        return {{t, origin + t * direction}};
    }
    // Numerically stable pair of roots of t^2 + 2 b t + c = 0.
    const double q = -(b + std::copysign(std::sqrt(disc), b));
    double t1 = q;
    double t2 = c / q;
    if (t1 > t2) std::swap(t1, t2);
    return {{t1, origin + t1 * direction}, {t2, origin + t2 * direction}};
}

Section section_sphere(const Sphere3& sphere, const Hyperplane3& cut) {
    const Point4& n = cut.normal();
    const double signed_d = cut.offset() - dot(n, sphere.center);
    const double d = std::abs(signed_d);
    const Point4 foot = sphere.center + signed_d * n;
    if (d - sphere.radius > kNormEps) return EmptySection{};
    if (std::abs(d - sphere.radius) <= kNormEps) return foot;
    return Sphere2in4(foot, std::sqrt((sphere.radius - d) * (sphere.radius + d)), cut);
}

}  // namespace tetraproj
