#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tetraproj {

/// Tolerance for geometric predicates (incidence, coincidence).
inline constexpr double kGeomEps = 1e-9;
/// Tolerance for unit-length checks.
inline constexpr double kNormEps = 1e-12;

enum class ErrorCode {
    DegenerateInput,
    NotOnSphere,
    AntipodalPair,
    CoincidentPoints,
    EmptyRange,
    NotUnit,
    UnsupportedConfiguration,
};

const char* to_string(ErrorCode code);

class GeometryError : public std::runtime_error {
  public:
    GeometryError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

struct Point4 {
    double x = 0, y = 0, z = 0, w = 0;

    constexpr double operator[](int i) const {
        return i == 0 ? x : i == 1 ? y : i == 2 ? z : w;
    }
    constexpr double& operator[](int i) {
        return i == 0 ? x : i == 1 ? y : i == 2 ? z : w;
    }

    friend constexpr Point4 operator+(Point4 a, Point4 b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z, a.w + b.w};
    }
    friend constexpr Point4 operator-(Point4 a, Point4 b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z, a.w - b.w};
    }
    friend constexpr Point4 operator-(Point4 a) { return {-a.x, -a.y, -a.z, -a.w}; }
    friend constexpr Point4 operator*(double s, Point4 a) {
        return {s * a.x, s * a.y, s * a.z, s * a.w};
    }
    friend constexpr Point4 operator*(Point4 a, double s) { return s * a; }
    friend constexpr Point4 operator/(Point4 a, double s) {
        return {a.x / s, a.y / s, a.z / s, a.w / s};
    }
    friend constexpr bool operator==(const Point4&, const Point4&) = default;
};

struct Point3 {
    double u = 0, v = 0, t = 0;

    constexpr double operator[](int i) const { return i == 0 ? u : i == 1 ? v : t; }
    constexpr double& operator[](int i) { return i == 0 ? u : i == 1 ? v : t; }

    friend constexpr Point3 operator+(Point3 a, Point3 b) {
        return {a.u + b.u, a.v + b.v, a.t + b.t};
    }
    friend constexpr Point3 operator-(Point3 a, Point3 b) {
        return {a.u - b.u, a.v - b.v, a.t - b.t};
    }
    friend constexpr Point3 operator*(double s, Point3 a) {
        return {s * a.u, s * a.v, s * a.t};
    }
    friend constexpr Point3 operator*(Point3 a, double s) { return s * a; }
    friend constexpr Point3 operator/(Point3 a, double s) {
        return {a.u / s, a.v / s, a.t / s};
    }
    friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

constexpr double dot(Point4 a, Point4 b) {
    return a.x * b.x + a.y * b.y + a.z * b.z + a.w * b.w;
}
constexpr double dot(Point3 a, Point3 b) { return a.u * b.u + a.v * b.v + a.t * b.t; }
inline double norm(Point4 a) { return std::sqrt(dot(a, a)); }
inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }
inline double distance(Point4 a, Point4 b) { return norm(a - b); }
inline double distance(Point3 a, Point3 b) { return norm(a - b); }
Point4 normalized(Point4 a);
Point3 normalized(Point3 a);
Point3 cross(Point3 a, Point3 b);
bool is_finite(Point4 a);
bool is_finite(Point3 a);

/// A point of the modeling 3-space extended with the point at infinity.
class ExtendedPoint3 {
  public:
    ExtendedPoint3() = default;
    ExtendedPoint3(Point3 p) : point_(p) {}

    static ExtendedPoint3 infinity() { return ExtendedPoint3(); }

    bool is_infinite() const { return !point_.has_value(); }
    bool is_finite() const { return point_.has_value(); }
    /// Throws std::bad_optional_access at infinity.
    const Point3& point() const { return point_.value(); }

    friend bool operator==(const ExtendedPoint3&, const ExtendedPoint3&) = default;

  private:
    std::optional<Point3> point_;
};

/// The 3-space { X : normal . X = offset } with unit normal in canonical sign.
class Hyperplane3 {
  public:
    /// Normalizes `normal` and flips the sign so its first nonzero component is
    /// positive. Throws DegenerateInput for a zero normal.
    Hyperplane3(Point4 normal, double offset);

    /// Hyperplane through `point` with the given normal direction.
    static Hyperplane3 through(Point4 point, Point4 normal);

    const Point4& normal() const { return normal_; }
    double offset() const { return offset_; }

    double signed_distance(Point4 p) const { return dot(normal_, p) - offset_; }
    bool contains(Point4 p, double eps = kGeomEps) const {
        return std::abs(signed_distance(p)) <= eps;
    }
    Point4 project(Point4 p) const { return p - signed_distance(p) * normal_; }

    friend bool operator==(const Hyperplane3&, const Hyperplane3&) = default;

  private:
    Point4 normal_;
    double offset_;
};

struct Sphere3 {
    Point4 center;
    double radius = 1;

    Sphere3() = default;
    /// Throws DegenerateInput unless radius > 0 and the center is finite.
    Sphere3(Point4 center, double radius);

    bool contains(Point4 p, double eps = kGeomEps) const {
        return std::abs(distance(p, center) - radius) <= eps;
    }

    friend bool operator==(const Sphere3&, const Sphere3&) = default;
};

/// A 2-sphere lying in a hyperplane of 4-space.
struct Sphere2in4 {
    Point4 center;
    double radius = 0;
    Hyperplane3 carrier;

    Sphere2in4(Point4 center, double radius, Hyperplane3 carrier);

    /// Orthonormal basis of the carrier's direction space.
    std::array<Point4, 3> basis() const;
    /// Point at polar angle `theta` and azimuth `phi` in the carrier basis.
    Point4 sample(double theta, double phi) const;

    friend bool operator==(const Sphere2in4&, const Sphere2in4&) = default;
};

/// Completes `direction` to an orthonormal frame and returns the three vectors
/// orthogonal to it. For an axis-aligned direction these are the remaining
/// coordinate axes in ascending order. The result depends only on the line
/// spanned by `direction`, not on its sign.
std::array<Point4, 3> orthogonal_complement(Point4 direction);

/// The hyperplane containing four affinely independent points.
Hyperplane3 hyperplane_through(const std::array<Point4, 4>& points);

struct RayHit {
    double t;
    Point4 point;
};

/// Sorted roots of |origin + t direction - Z|^2 = r^2. A tangent line yields one
/// (double) root.
std::vector<RayHit> ray_sphere_intersect(Point4 origin, Point4 direction, const Sphere3& sphere);

struct EmptySection {};
using Section = std::variant<EmptySection, Point4, Sphere2in4>;

/// Intersection of a 3-sphere with a hyperplane.
Section section_sphere(const Sphere3& sphere, const Hyperplane3& cut);

}  // namespace tetraproj
