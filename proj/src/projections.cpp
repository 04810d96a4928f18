#include "tetraproj/projections.hpp"

#include <algorithm>
#include <cmath>

namespace tetraproj {

namespace {

constexpr double kOnSphereEps = 1e-6;

int idx(Axis a) { return static_cast<int>(a); }

bool contains(const std::array<Axis, 3>& axes, Axis a) {
    return std::find(axes.begin(), axes.end(), a) != axes.end();
}

void require_on_sphere(const Sphere3& sphere, Point4 p) {
    if (!is_finite(p) || std::abs(distance(p, sphere.center) - sphere.radius) > kOnSphereEps)
        throw GeometryError(ErrorCode::NotOnSphere, "point is not on the 3-sphere");
}

// Index of the coordinate axis parallel to `direction`, or -1.
int aligned_axis(Point4 direction) {
    for (int i = 0; i < 4; ++i)
        if (std::abs(std::abs(direction[i]) - 1) <= kGeomEps) return i;
    return -1;
}

}  // namespace

char axis_name(Axis a) { return "xyzw"[idx(a)]; }

Axis axis_from_name(char name) {
    switch (name) {
        case 'x': return Axis::X;
        case 'y': return Axis::Y;
        case 'z': return Axis::Z;
        case 'w': return Axis::W;
    }
    throw GeometryError(ErrorCode::DegenerateInput, std::string("unknown axis '") + name + "'");
}

ProjectionFrame::ProjectionFrame(std::array<Axis, 3> xi, std::array<Axis, 3> omega, Axis negated)
    : xi_(xi), omega_(omega), negated_(negated) {
    for (const auto& axes : {xi, omega})
        if (axes[0] == axes[1] || axes[0] == axes[2] || axes[1] == axes[2])
            throw GeometryError(ErrorCode::DegenerateInput, "3-space of projection repeats an axis");
    int n_shared = 0;
    for (Axis a : xi) {
        if (contains(omega, a)) {
            if (n_shared < 2) shared_[n_shared] = a;
            ++n_shared;
        } else {
            xi_only_ = a;
        }
    }
    if (n_shared != 2)
        throw GeometryError(ErrorCode::DegenerateInput, "Xi and Omega must share exactly two axes");
    for (Axis a : omega)
        if (!contains(xi, a)) omega_only_ = a;
    if (negated != xi_only_ && negated != omega_only_)
        throw GeometryError(ErrorCode::DegenerateInput, "the folded axis must be a non-shared axis");
}

ProjectionFrame ProjectionFrame::standard() {
    return {{Axis::X, Axis::Y, Axis::Z}, {Axis::X, Axis::Y, Axis::W}, Axis::Z};
}

ProjectionFrame ProjectionFrame::hopf() {
    return {{Axis::X, Axis::Y, Axis::Z}, {Axis::X, Axis::Z, Axis::W}, Axis::Y};
}

ConjugatedImages project_double(const ProjectionFrame& frame, Point4 a) {
    const double s0 = a[idx(frame.shared_axes()[0])];
    const double s1 = a[idx(frame.shared_axes()[1])];
    // +0.0 folds -0 into 0 so the two images compare equal on the plane.
    return {
        {s0, s1, frame.xi_fold_sign() * a[idx(frame.xi_only())] + 0.0},
        {s0, s1, frame.omega_fold_sign() * a[idx(frame.omega_only())] + 0.0},
    };
}

namespace {

Point4 checked_pole(const Sphere3& sphere, Point4 pole) {
    if (!is_finite(pole) ||
        std::abs(distance(pole, sphere.center) - sphere.radius) > kGeomEps * std::max(1.0, sphere.radius))
        throw GeometryError(ErrorCode::NotOnSphere, "stereographic pole is not on the sphere");
    return pole;
}

}  // namespace

StereoConfig::StereoConfig(Sphere3 sphere, Point4 pole)
    : sphere_(sphere),
      pole_(checked_pole(sphere, pole)),
      antipode_(2.0 * sphere.center - pole),
      axis_(pole - sphere.center),
      target_(Hyperplane3::through(antipode_, axis_)),
      basis_(orthogonal_complement(axis_)) {
    axis_ = normalized(axis_);
}

StereoConfig StereoConfig::standard() { return {Sphere3({0, 0, 0, 0}, 1), {0, 0, 0, 1}}; }

StereoConfig StereoConfig::hopf_display() { return {Sphere3({0, 1, 0, 1}, 1), {0, 2, 0, 1}}; }

Point4 StereoConfig::to_target(Point3 q) const {
    return antipode_ + q.u * basis_[0] + q.v * basis_[1] + q.t * basis_[2];
}

Point3 StereoConfig::from_target(Point4 p) const {
    const Point4 d = p - antipode_;
    return {dot(basis_[0], d) + 0.0, dot(basis_[1], d) + 0.0, dot(basis_[2], d) + 0.0};
}

std::optional<Point4> stereo_project_4d(const StereoConfig& cfg, Point4 p) {
    require_on_sphere(cfg.sphere(), p);
    const Point4& n = cfg.pole();
    if (distance(p, n) <= kGeomEps) return std::nullopt;
    // Pole and antipode are 2r apart along the axis.
    const double along = dot(cfg.pole_direction(), p - n);
    const double t = -2.0 * cfg.sphere().radius / along;
    return n + t * (p - n);
}

ExtendedPoint3 stereo_project(const StereoConfig& cfg, Point4 p) {
    const auto hit = stereo_project_4d(cfg, p);
    if (!hit) return ExtendedPoint3::infinity();
    return cfg.from_target(*hit);
}

Point4 stereo_unproject(const StereoConfig& cfg, const ExtendedPoint3& q) {
    if (q.is_infinite()) return cfg.pole();
    const Point4 dir = normalized(cfg.to_target(q.point()) - cfg.pole());
    const auto hits = ray_sphere_intersect(cfg.pole(), dir, cfg.sphere());
    // The pole itself is the root nearest t = 0.
    const auto far = std::max_element(hits.begin(), hits.end(), [](const RayHit& a, const RayHit& b) {
        return std::abs(a.t) < std::abs(b.t);
    });
    if (far == hits.end()) return cfg.pole();
    return far->point;
}

StereoConstruction stereo_point_construction(const ProjectionFrame& frame, const StereoConfig& cfg,
                                             Point4 a) {
    require_on_sphere(cfg.sphere(), a);
    const int pole_axis = aligned_axis(cfg.pole_direction());
    if (pole_axis < 0 || (pole_axis != idx(frame.xi_only()) && pole_axis != idx(frame.omega_only())))
        throw GeometryError(ErrorCode::UnsupportedConfiguration,
                            "the pole axis must be one of the frame's non-shared axes");

    StereoConstruction out;
    out.point = project_double(frame, a);
    out.pole = project_double(frame, cfg.pole());
    out.pole_in_omega = pole_axis == idx(frame.omega_only());

    auto pole_image = [&](const ConjugatedImages& c) {
        return out.pole_in_omega ? c.omega_image : c.xi_image;
    };
    auto parallel_image = [&](const ConjugatedImages& c) {
        return out.pole_in_omega ? c.xi_image : c.omega_image;
    };

    if (distance(a, cfg.pole()) <= kGeomEps) {
        out.stereo = ExtendedPoint3::infinity();
        return out;
    }

    // Line N-A in the pole image meets the plane of the target at A0.
    const Point3 n_p = pole_image(out.pole);
    const Point3 a_p = pole_image(out.point);
    const double level = pole_image(project_double(frame, cfg.antipode())).t;
    const double u = (level - n_p.t) / (a_p.t - n_p.t);
    const Point3 aux = n_p + u * (a_p - n_p);
    out.auxiliary = aux;

    // A_s lies on line N-A in the parallel image, above A0.
    const Point3 n_q = parallel_image(out.pole);
    const Point3 a_q = parallel_image(out.point);
    const Point3 dir = a_q - n_q;
    Point3 stereo_q = n_q;
    const int k = std::abs(dir.u) >= std::abs(dir.v) ? 0 : 1;
    if (std::abs(dir[k]) > 0) {
        const double lambda = (aux[k] - n_q[k]) / dir[k];
        stereo_q = n_q + lambda * dir;
    }
    stereo_q.u = aux.u;
    stereo_q.v = aux.v;
    out.stereo_modeling = stereo_q;

    // Lift back to 4-D: the target point has the pole coordinate of the antipode.
    const Axis other = out.pole_in_omega ? frame.xi_only() : frame.omega_only();
    const double other_sign = out.pole_in_omega ? frame.xi_fold_sign() : frame.omega_fold_sign();
    Point4 target = cfg.antipode();
    target[idx(frame.shared_axes()[0])] = stereo_q.u;
    target[idx(frame.shared_axes()[1])] = stereo_q.v;
    target[idx(other)] = other_sign * stereo_q.t;
    out.stereo = cfg.from_target(target);
    return out;
}

std::vector<ConcentricPair> concentric_sections_demo(const StereoConfig& cfg, int count) {
    if (count < 1) throw GeometryError(ErrorCode::DegenerateInput, "count must be >= 1");
    const Sphere3& sphere = cfg.sphere();
    const double r = sphere.radius;
    const Point4& axis = cfg.pole_direction();
    const Point4 image_center = cfg.antipode();

    std::vector<ConcentricPair> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double h = count == 1 ? 0.0 : -r * k / (count - 1);
        const Hyperplane3 cut = Hyperplane3::through(sphere.center + h * axis, axis);
        const Section section = section_sphere(sphere, cut);
        Sphere2in4 s2 = std::holds_alternative<Sphere2in4>(section)
                            ? std::get<Sphere2in4>(section)
                            : Sphere2in4(std::get<Point4>(section), 0.0, cut);
        double image_radius = 0;
        if (s2.radius > 0) {
            const Point4 sample = s2.sample(M_PI / 2, 0);
            image_radius = distance(*stereo_project_4d(cfg, sample), image_center);
        }
        out.push_back({s2, Sphere2in4(image_center, image_radius, cfg.target())});
    }
    return out;
}

}  // namespace tetraproj
