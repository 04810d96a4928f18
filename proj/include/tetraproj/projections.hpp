#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tetraproj/geometry4.hpp"

namespace tetraproj {

enum class Axis { X = 0, Y = 1, Z = 2, W = 3 };

char axis_name(Axis a);
Axis axis_from_name(char name);

/// Conventions of the double orthogonal projection. The two 3-spaces of
/// projection share a plane (two axes). Folded into the modeling space, the
/// images use coordinates (shared[0], shared[1], fold), where the fold
/// coordinate is the image's own non-shared axis, negated for the axis named
/// by `negated_axis()`.
class ProjectionFrame {
  public:
    /// Throws DegenerateInput unless the spaces share exactly two axes and
    /// `negated` is one of the two non-shared axes.
    ProjectionFrame(std::array<Axis, 3> xi, std::array<Axis, 3> omega, Axis negated);

    /// Xi(x,y,z), Omega(x,y,w), z folded negative.
    static ProjectionFrame standard();
    /// Xi(x,y,z), Omega(x,z,w), y folded negative.
    static ProjectionFrame hopf();

    const std::array<Axis, 3>& xi_axes() const { return xi_; }
    const std::array<Axis, 3>& omega_axes() const { return omega_; }
    const std::array<Axis, 2>& shared_axes() const { return shared_; }
    Axis xi_only() const { return xi_only_; }
    Axis omega_only() const { return omega_only_; }
    Axis negated_axis() const { return negated_; }
    double xi_fold_sign() const { return negated_ == xi_only_ ? -1.0 : 1.0; }
    double omega_fold_sign() const { return negated_ == omega_only_ ? -1.0 : 1.0; }

    friend bool operator==(const ProjectionFrame&, const ProjectionFrame&) = default;

  private:
    std::array<Axis, 3> xi_;
    std::array<Axis, 3> omega_;
    std::array<Axis, 2> shared_;
    Axis xi_only_;
    Axis omega_only_;
    Axis negated_;
};

/// The pair of images of a 4-D point in the modeling 3-space.
struct ConjugatedImages {
    Point3 xi_image;
    Point3 omega_image;

    friend bool operator==(const ConjugatedImages&, const ConjugatedImages&) = default;
};

ConjugatedImages project_double(const ProjectionFrame& frame, Point4 a);

/// Stereographic projection of a 3-sphere from `pole` onto the hyperplane
/// tangent at the antipode of the pole. Points of the target are addressed by
/// intrinsic coordinates: origin at the antipode, axes from
/// `orthogonal_complement(pole - center)`.
class StereoConfig {
  public:
    /// Throws NotOnSphere if the pole is not on the sphere (1e-9 relative to r).
    StereoConfig(Sphere3 sphere, Point4 pole);

    /// Unit sphere at the origin, pole (0,0,0,1).
    static StereoConfig standard();
    /// Unit sphere centered at (0,1,0,1) with pole (0,2,0,1).
    static StereoConfig hopf_display();

    const Sphere3& sphere() const { return sphere_; }
    const Point4& pole() const { return pole_; }
    const Point4& antipode() const { return antipode_; }
    /// Unit vector from the center toward the pole.
    const Point4& pole_direction() const { return axis_; }
    const Hyperplane3& target() const { return target_; }
    const std::array<Point4, 3>& basis() const { return basis_; }

    Point4 to_target(Point3 q) const;
    Point3 from_target(Point4 p) const;

  private:
    Sphere3 sphere_;
    Point4 pole_;
    Point4 antipode_;
    Point4 axis_;
    Hyperplane3 target_;
    std::array<Point4, 3> basis_;
};

/// Intersection of line pole->p with the target hyperplane, in 4-D; nullopt for
/// the pole itself. Throws NotOnSphere if p is off the sphere by more than 1e-6.
std::optional<Point4> stereo_project_4d(const StereoConfig& cfg, Point4 p);

ExtendedPoint3 stereo_project(const StereoConfig& cfg, Point4 p);
Point4 stereo_unproject(const StereoConfig& cfg, const ExtendedPoint3& q);

/// Data of the synthetic construction of a stereographic image from the
/// conjugated images. The "pole image" is the one containing the pole axis
/// as its fold axis; the other image is parallel to the target.
struct StereoConstruction {
    ConjugatedImages point;
    ConjugatedImages pole;
    bool pole_in_omega = true;
    /// Intersection of line N-A in the pole image with the target's plane in
    /// that image, in modeling coordinates; nullopt when A is the pole.
    std::optional<Point3> auxiliary;
    /// Stereographic image in target coordinates, derived from the auxiliary
    /// point and the line N-A in the parallel image.
    ExtendedPoint3 stereo;
    /// The stereographic image placed in the parallel image.
    std::optional<Point3> stereo_modeling;
};

/// Throws UnsupportedConfiguration unless the pole axis is one of the frame's
/// two non-shared axes; propagates NotOnSphere.
StereoConstruction stereo_point_construction(const ProjectionFrame& frame, const StereoConfig& cfg,
                                             Point4 a);

struct ConcentricPair {
    Sphere2in4 section;
    /// The stereographic image, a 2-sphere inside the target hyperplane.
    Sphere2in4 image;
};

/// `count` sections perpendicular to the pole axis, evenly spaced from the
/// equator (through the center) to the antipode, each with its image.
std::vector<ConcentricPair> concentric_sections_demo(const StereoConfig& cfg, int count);

}  // namespace tetraproj
