#include "tetraproj/fit.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

namespace tetraproj::fit {

namespace {

Eigen::Vector3d vec(Point3 p) { return {p.u, p.v, p.t}; }
Point3 pt(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

Eigen::Vector3d centroid_of(std::span<const Point3> points) {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (const auto& p : points) c += vec(p);
    return c / static_cast<double>(points.size());
}

// Right singular vectors of the centered point matrix, largest first.
Eigen::Matrix3d principal_axes(std::span<const Point3> points, const Eigen::Vector3d& c) {
    Eigen::MatrixXd m(points.size(), 3);
    for (std::size_t i = 0; i < points.size(); ++i) m.row(i) = (vec(points[i]) - c).transpose();
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m, Eigen::ComputeThinV).matrixV();
}

void require(std::span<const Point3> points, std::size_t n) {
    if (points.size() < n) throw GeometryError(ErrorCode::DegenerateInput, "too few points to fit");
    for (const auto& p : points)
        if (!is_finite(p)) throw GeometryError(ErrorCode::DegenerateInput, "cannot fit non-finite points");
}

}  // namespace

PlaneFit plane(std::span<const Point3> points) {
    require(points, 3);
    const Eigen::Vector3d c = centroid_of(points);
    const Eigen::Vector3d n = principal_axes(points, c).col(2);
    PlaneFit out{pt(c), pt(n), 0};
    for (const auto& p : points) out.residual = std::max(out.residual, std::abs(n.dot(vec(p) - c)));
    return out;
}

LineFit line(std::span<const Point3> points) {
    require(points, 2);
    const Eigen::Vector3d c = centroid_of(points);
    const Eigen::Vector3d d = principal_axes(points, c).col(0);
    LineFit out{pt(c), pt(d), 0};
    for (const auto& p : points) {
        const Eigen::Vector3d r = vec(p) - c;
        out.residual = std::max(out.residual, (r - r.dot(d) * d).norm());
    }
    return out;
}

CircleFit circle(std::span<const Point3> points) {
    require(points, 3);
    const Eigen::Vector3d c = centroid_of(points);
    const Eigen::Matrix3d axes = principal_axes(points, c);
    const Eigen::Vector3d e1 = axes.col(0), e2 = axes.col(1), n = axes.col(2);

    // Algebraic fit in the plane: x^2 + y^2 = 2 a x + 2 b y + k.
    Eigen::MatrixXd a(points.size(), 3);
    Eigen::VectorXd rhs(points.size());
    double scale = 0;
    for (const auto& p : points) scale = std::max(scale, (vec(p) - c).norm());
    if (scale == 0) throw GeometryError(ErrorCode::DegenerateInput, "cannot fit a circle to one point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Eigen::Vector3d r = (vec(points[i]) - c) / scale;
        const double x = r.dot(e1), y = r.dot(e2);
        a.row(i) << 2 * x, 2 * y, 1;
        rhs(i) = x * x + y * y;
    }
    const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(rhs);
    const Eigen::Vector3d center = c + scale * (sol(0) * e1 + sol(1) * e2);
    const double radius = scale * std::sqrt(std::max(0.0, sol(2) + sol(0) * sol(0) + sol(1) * sol(1)));

    CircleFit out{pt(center), pt(n), radius, 0};
    for (const auto& p : points) {
        const Eigen::Vector3d r = vec(p) - center;
        const double off_plane = std::abs(n.dot(r));
        const double radial = std::abs((r - n.dot(r) * n).norm() - radius);
        out.residual = std::max({out.residual, off_plane, radial});
    }
    return out;
}

SphereFit sphere(std::span<const Point3> points) {
    require(points, 4);
    const Eigen::Vector3d c = centroid_of(points);
    double scale = 0;
    for (const auto& p : points) scale = std::max(scale, (vec(p) - c).norm());
    if (scale == 0) throw GeometryError(ErrorCode::DegenerateInput, "cannot fit a sphere to one point");
    Eigen::MatrixXd a(points.size(), 4);
    Eigen::VectorXd rhs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Eigen::Vector3d r = (vec(points[i]) - c) / scale;
        a.row(i) << 2 * r(0), 2 * r(1), 2 * r(2), 1;
        rhs(i) = r.squaredNorm();
    }
    const Eigen::Vector4d sol = a.colPivHouseholderQr().solve(rhs);
    const Eigen::Vector3d off = sol.head<3>();
    const Eigen::Vector3d center = c + scale * off;
    SphereFit out{pt(center), scale * std::sqrt(std::max(0.0, sol(3) + off.squaredNorm())), 0};
    for (const auto& p : points)
        out.residual = std::max(out.residual, std::abs((vec(p) - center).norm() - out.radius));
    return out;
}

double plane2_through_residual(std::span<const Point4> points, Point4 origin) {
    if (points.size() < 2) throw GeometryError(ErrorCode::DegenerateInput, "too few points to fit");
    Eigen::MatrixXd m(points.size(), 4);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point4 d = points[i] - origin;
        m.row(i) << d.x, d.y, d.z, d.w;
    }
    const Eigen::MatrixXd v = Eigen::JacobiSVD<Eigen::MatrixXd>(m, Eigen::ComputeFullV).matrixV();
    double residual = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Eigen::RowVector4d r = m.row(i);
        residual = std::max(residual, std::hypot(r.dot(v.col(2)), r.dot(v.col(3))));
    }
    return residual;
}

}  // namespace tetraproj::fit
