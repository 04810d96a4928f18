#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tetraproj/hopf.hpp"
#include "tetraproj/projections.hpp"
#include "tetraproj/scene.hpp"
#include "tetraproj/spherical.hpp"

// Scene builders for the figure commands. Entity ids are stable: a 4-D object
// named "edge-AB" appears as "edge-AB-xi", "edge-AB-omega" and
// "edge-AB-stereo".
namespace tetraproj::figures {

struct Setup {
    ProjectionFrame frame;
    StereoConfig cfg;

    /// Standard frame with the unit sphere, or the hopf frame with the display sphere.
    static Setup standard();
    static Setup hopf();
    /// "standard" or "hopf"; throws std::invalid_argument otherwise.
    static Setup named(const std::string& name);

    double clip() const { return scene::kDefaultClipRadii * cfg.sphere().radius; }
};

scene::Style group_style(scene::ImageGroup group);

/// Images of a 4-D entity in the xi, omega and stereo groups, the last
/// clipped at the setup's radius.
std::vector<scene::SceneEntity> images(const Setup& setup, const scene::Entity4& entity);

/// Conjugated ball images of the setup's 3-sphere.
std::vector<scene::SceneEntity> sphere_images(const Setup& setup);

scene::SceneDocument point_scene(const Setup& setup, Point4 a);

scene::SceneDocument tetra_scene(const Setup& setup, const std::array<Point4, 4>& vertices, bool circumsphere,
                                 int edge_samples = 64);

/// `points` are coordinates of the central 3-space (see sigma_to_4d);
/// `selected` picks the point whose two stereographic legs are drawn.
scene::SceneDocument invert_scene(const Setup& setup, const std::vector<Point3>& points, std::size_t selected = 0);

struct HopfOptions {
    hopf::CleliaSpec spec;
    int beta_resolution = 64;
    /// Curve parameter of the highlighted fiber; psi_lo when empty.
    std::optional<double> psi;
};

/// Default interval [0, closing_span(s)] for a Clelia parameter.
hopf::CleliaSpec default_spec(double s, int resolution = 256);

std::vector<scene::SceneEntity> torus_entities(const hopf::CleliaSpec& spec, int beta_resolution);
/// Fiber over a canonical base point, in the display placement.
std::vector<scene::SceneEntity> fiber_entities(const hopf::BasePoint& base, int samples, const std::string& name);

scene::SceneDocument hopf_scene(const HopfOptions& options);

struct Lift {
    std::vector<Point3> curve;
    std::vector<Point4> lifted;
    bool closed = false;
};

/// Lifts a polyline of target coordinates to the sphere, after inserting
/// `subdivide - 1` evenly spaced points into every segment. Throws
/// GeometryError(DegenerateInput) for fewer than 2 vertices or subdivide < 1.
Lift lift_curve(const Setup& setup, std::vector<Point3> curve, bool closed, int subdivide = 1);

scene::SceneDocument lift_scene(const Setup& setup, const Lift& lift);

struct HexaOptions {
    AngleRange psi{M_PI / 4, M_PI / 2};
    AngleRange theta{M_PI / 4, M_PI / 2};
    AngleRange phi{0, M_PI / 4};
    int edge_samples = 32;
    bool faces = false;
};

scene::SceneDocument hexa_scene(const Setup& setup, const HexaOptions& options);

scene::SceneDocument concentric_scene(const Setup& setup, int count);

}  // namespace tetraproj::figures
