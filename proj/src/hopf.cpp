#include "tetraproj/hopf.hpp"

#include <algorithm>
#include <cmath>

namespace tetraproj::hopf {

namespace {

constexpr double kTwoPi = 2 * M_PI;

Point3 clelia_unit(double s, double psi) {
    const double ss = std::sin(s * psi);
    return {ss * std::cos(psi), ss * std::sin(psi), std::cos(s * psi)};
}

Point3 clelia_derivative(double s, double psi) {
    const double ss = std::sin(s * psi);
    const double cs = std::cos(s * psi);
    return {s * cs * std::cos(psi) - ss * std::sin(psi), s * cs * std::sin(psi) + ss * std::cos(psi),
            -s * ss};
}

// Closest distance between segments p0-p1 and q0-q1.
double segment_distance(Point3 p0, Point3 p1, Point3 q0, Point3 q1) {
    const Point3 d1 = p1 - p0;
    const Point3 d2 = q1 - q0;
    const Point3 r = p0 - q0;
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    const double c = dot(d1, r);
    const double b = dot(d1, d2);
    const double denom = a * e - b * b;
    double s = denom > 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
    double t = e > 0 ? (b * s + f) / e : 0.0;
    if (t < 0) {
        t = 0;
        s = a > 0 ? std::clamp(-c / a, 0.0, 1.0) : 0.0;
    } else if (t > 1) {
        t = 1;
        s = a > 0 ? std::clamp((b - c) / a, 0.0, 1.0) : 0.0;
    }
    return distance(p0 + s * d1, q0 + t * d2);
}

struct Polished {
    bool ok = false;
    double a = 0;
    double b = 0;
};

// Levenberg-Marquardt on F(a, b) = k(a) - k(b). Damping keeps it moving at
// tangential crossings, where the Jacobian is singular.
Polished polish(double s, double a, double b) {
    const auto residual = [s](double x, double y) { return norm(clelia_unit(s, x) - clelia_unit(s, y)); };
    double r = residual(a, b);
    double lambda = 1e-3;
    for (int iter = 0; iter < 200 && r >= 1e-15; ++iter) {
        const Point3 f = clelia_unit(s, a) - clelia_unit(s, b);
        const Point3 ja = clelia_derivative(s, a);
        const Point3 jb = -1.0 * clelia_derivative(s, b);
        const double m00 = dot(ja, ja), m01 = dot(ja, jb), m11 = dot(jb, jb);
        const double g0 = -dot(ja, f), g1 = -dot(jb, f);
        const double d00 = m00 + lambda * std::max(m00, 1e-12), d11 = m11 + lambda * std::max(m11, 1e-12);
        const double det = d00 * d11 - m01 * m01;
        if (!(det > 0)) break;
        const double da = (d11 * g0 - m01 * g1) / det;
        const double db = (d00 * g1 - m01 * g0) / det;
        const double trial = residual(a + da, b + db);
        if (trial < r) {
            a += da;
            b += db;
            r = trial;
            lambda = std::max(lambda / 10, 1e-15);
        } else {
            lambda *= 10;
            if (lambda > 1e12) break;
        }
    }
    return {r < 1e-9, a, b};
}

// True when the curve runs along itself near the pair, so the crossing is
// not isolated.
bool overlapping(double s, double a, double b) {
    const double h = 1e-3;
    const auto same = [s](double x, double y) { return norm(clelia_unit(s, x) - clelia_unit(s, y)) < 1e-7; };
    return (same(a + h, b + h) && same(a - h, b - h)) || (same(a + h, b - h) && same(a - h, b + h));
}

}  // namespace

Point3 BasePoint::to_point() const {
    return {std::sin(psi) * std::cos(phi), std::sin(psi) * std::sin(phi), std::cos(psi)};
}

void CleliaSpec::validate() const {
    if (!std::isfinite(s) || !std::isfinite(psi_lo) || !std::isfinite(psi_hi))
        throw GeometryError(ErrorCode::DegenerateInput, "Clelia parameters must be finite");
    if (psi_hi < psi_lo) throw GeometryError(ErrorCode::DegenerateInput, "Clelia interval is inverted");
    if (resolution < 2) throw GeometryError(ErrorCode::DegenerateInput, "Clelia resolution must be >= 2");
}

Point3 hopf_map(Point4 p) {
    if (!is_finite(p) || std::abs(norm(p) - 1) > kGeomEps)
        throw GeometryError(ErrorCode::NotUnit, "Hopf map needs a point of the unit 3-sphere");
    const auto [x, y, z, w] = p;
    return {2 * (x * z + y * w), 2 * (y * z - x * w), x * x + y * y - z * z - w * w};
}

Point4 hopf_fiber(const FiberPoint& fp) {
    const double c = std::cos(fp.base.psi / 2);
    const double s = std::sin(fp.base.psi / 2);
    const double lon = fp.base.phi + fp.beta;
    return {c * std::cos(lon), c * std::sin(lon), s * std::cos(fp.beta), s * std::sin(fp.beta)};
}

std::vector<Point4> fiber_circle(const BasePoint& base, int n) {
    if (n < 2) throw GeometryError(ErrorCode::DegenerateInput, "fiber sampling needs n >= 2");
    std::vector<Point4> out;
    out.reserve(n);
    for (int j = 0; j < n; ++j) out.push_back(hopf_fiber({base, kTwoPi * j / n}));
    return out;
}

Point3 clelia(const CleliaSpec& spec, double psi) { return clelia_unit(spec.s, psi) + kCurveCenter; }

BasePoint base_to_angles(Point3 p) {
    if (!is_finite(p) || std::abs(norm(p) - 1) > kGeomEps)
        throw GeometryError(ErrorCode::NotUnit, "base point must lie on the unit 2-sphere");
    const double planar = std::hypot(p.u, p.v);
    BasePoint out;
    out.psi = std::atan2(planar, p.t);
    if (planar <= kNormEps) {
        out.psi = p.t > 0 ? 0.0 : M_PI;
        return out;
    }
    out.phi = std::atan2(p.v, p.u);
    if (out.phi < 0) out.phi += kTwoPi;
    if (out.phi >= kTwoPi) out.phi = 0;
    return out;
}

bool is_closed(const CleliaSpec& spec) {
    return distance(clelia(spec, spec.psi_lo), clelia(spec, spec.psi_hi)) < kGeomEps;
}

double closing_span(double s) {
    for (int m = 1; m <= 16; ++m) {
        const CleliaSpec spec{s, 0, kTwoPi * m, 2};
        if (is_closed(spec)) return spec.psi_hi;
    }
    return kTwoPi;
}

double row_parameter(const CleliaSpec& spec, int i, int rows, bool closed) {
    const double span = spec.psi_hi - spec.psi_lo;
    return spec.psi_lo + span * i / (closed ? rows : rows - 1);
}

std::vector<std::uint32_t> TorusMesh::triangles() const {
    std::vector<std::uint32_t> out;
    const int row_quads = closed_psi ? rows : rows - 1;
    out.reserve(static_cast<std::size_t>(row_quads) * cols * 6);
    auto id = [&](int i, int j) { return static_cast<std::uint32_t>((i % rows) * cols + (j % cols)); };
    for (int i = 0; i < row_quads; ++i) {
        for (int j = 0; j < cols; ++j) {
            const auto a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            out.insert(out.end(), {a, b, c, a, c, d});
        }
    }
    return out;
}

TorusMesh hopf_torus(const CleliaSpec& spec, int beta_resolution) {
    spec.validate();
    if (beta_resolution < 2) throw GeometryError(ErrorCode::DegenerateInput, "beta resolution must be >= 2");
    TorusMesh mesh;
    mesh.rows = spec.resolution;
    mesh.cols = beta_resolution;
    mesh.closed_psi = is_closed(spec);
    for (int j = 0; j < mesh.cols; ++j) mesh.beta.push_back(kTwoPi * j / mesh.cols);
    mesh.vertices.reserve(static_cast<std::size_t>(mesh.rows) * mesh.cols);
    for (int i = 0; i < mesh.rows; ++i) {
        const double psi = row_parameter(spec, i, mesh.rows, mesh.closed_psi);
        const Point3 base = clelia(spec, psi) - kCurveCenter;
        const BasePoint angles = base_to_angles(base);
        mesh.psi.push_back(psi);
        mesh.base.push_back(base);
        for (double beta : mesh.beta) mesh.vertices.push_back(hopf_fiber({angles, beta}));
    }
    return mesh;
}

Point4 HopfPlacement::place(Point4 canonical) const {
    Point4 out;
    for (int k = 0; k < 4; ++k) out[k] = canonical[static_cast<int>(source_of[k])] + translation[k];
    return out;
}

Point4 HopfPlacement::unplace(Point4 display) const {
    Point4 out;
    for (int k = 0; k < 4; ++k) out[static_cast<int>(source_of[k])] = display[k] - translation[k];
    return out;
}

std::vector<SelfIntersection> self_intersection_fibers(const CleliaSpec& spec) {
    spec.validate();
    std::vector<SelfIntersection> out;
    const double lo = spec.psi_lo, hi = spec.psi_hi;
    if (hi - lo <= 0) return out;
    const int m = std::max(spec.resolution, 512);
    std::vector<Point3> pts(m + 1);
    std::vector<double> par(m + 1);
    for (int i = 0; i <= m; ++i) {
        par[i] = lo + (hi - lo) * i / m;
        pts[i] = clelia_unit(spec.s, par[i]);
    }
    const bool closed = is_closed(spec);
    const double slack = 1e-9 * std::max(1.0, hi - lo);

    for (int i = 0; i < m; ++i) {
        const double len_i = distance(pts[i], pts[i + 1]);
        for (int j = i + 2; j < m; ++j) {
            const double len_j = distance(pts[j], pts[j + 1]);
            if (segment_distance(pts[i], pts[i + 1], pts[j], pts[j + 1]) > 2 * std::max(len_i, len_j))
                continue;
            const Polished p = polish(spec.s, 0.5 * (par[i] + par[i + 1]), 0.5 * (par[j] + par[j + 1]));
            if (!p.ok) continue;
            double a = std::min(p.a, p.b), b = std::max(p.a, p.b);
            if (a < lo - slack || b > hi + slack || b - a < 1e-6) continue;
            a = std::max(a, lo);
            b = std::min(b, hi);
            if (closed && std::abs(a - lo) < 1e-4 && std::abs(b - hi) < 1e-4) continue;
            if (overlapping(spec.s, a, b)) continue;
            const bool seen = std::any_of(out.begin(), out.end(), [&](const SelfIntersection& x) {
                return std::abs(x.psi1 - a) < 1e-4 && std::abs(x.psi2 - b) < 1e-4;
            });
            if (!seen) out.push_back({a, b, clelia(spec, a)});
        }
    }
    std::sort(out.begin(), out.end(), [](const SelfIntersection& x, const SelfIntersection& y) {
        return x.psi1 != y.psi1 ? x.psi1 < y.psi1 : x.psi2 < y.psi2;
    });
    return out;
}

}  // namespace tetraproj::hopf
