#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tetraproj/geometry4.hpp"
#include "tetraproj/projections.hpp"
#include "tetraproj/spherical.hpp"

namespace tetraproj::scene {

inline constexpr const char* kFormatVersion = "tetraproj-scene/1";

/// A 4-D vertex within this distance of the pole is a pole hit.
inline constexpr double kPoleTolerance = 1e-7;
/// Default clipping radius of stereographic images, in sphere radii.
inline constexpr double kDefaultClipRadii = 100;

enum class EntityKind { Point, Polyline, Mesh, AnalyticSphere, Label };
enum class ImageGroup { Xi, Omega, Stereo, Source3d };

const char* to_string(EntityKind kind);
const char* to_string(ImageGroup group);
EntityKind kind_from_string(const std::string& name);
ImageGroup group_from_string(const std::string& name);

struct Style {
    std::string color = "#000000";
    double opacity = 1;
    double line_width = 1;

    friend bool operator==(const Style&, const Style&) = default;
};

struct Flags {
    /// A point entity sits at the point at infinity.
    bool at_infinity = false;
    /// A polyline or mesh lost vertices at the pole.
    bool split_at_infinity = false;
    /// Vertices were removed by radius clipping.
    bool clipped = false;

    friend bool operator==(const Flags&, const Flags&) = default;
};

/// Point geometry; empty at infinity or when clipped away.
struct PointGeometry {
    std::optional<Point3> position;

    friend bool operator==(const PointGeometry&, const PointGeometry&) = default;
};

struct PolylineGeometry {
    bool closed = false;
    std::vector<std::vector<Point3>> pieces;

    friend bool operator==(const PolylineGeometry&, const PolylineGeometry&) = default;
};

/// Triangle mesh with flat xyz vertex coordinates.
struct MeshGeometry {
    std::vector<double> vertices;
    std::vector<std::uint32_t> indices;
    std::optional<int> rows;
    std::optional<int> cols;

    std::size_t vertex_count() const { return vertices.size() / 3; }
    Point3 vertex(std::size_t i) const { return {vertices[3 * i], vertices[3 * i + 1], vertices[3 * i + 2]}; }

    friend bool operator==(const MeshGeometry&, const MeshGeometry&) = default;
};

struct SphereGeometry {
    Point3 center;
    double radius = 0;

    friend bool operator==(const SphereGeometry&, const SphereGeometry&) = default;
};

struct LabelGeometry {
    std::string text;
    std::optional<Point3> position;

    friend bool operator==(const LabelGeometry&, const LabelGeometry&) = default;
};

using Geometry = std::variant<PointGeometry, PolylineGeometry, MeshGeometry, SphereGeometry, LabelGeometry>;

struct SceneEntity {
    std::string id;
    ImageGroup group = ImageGroup::Source3d;
    Geometry geometry;
    Style style;
    Flags flags;

    EntityKind kind() const { return static_cast<EntityKind>(geometry.index()); }

    friend bool operator==(const SceneEntity&, const SceneEntity&) = default;
};

struct FrameDescriptor {
    std::string xi = "xyz";
    std::string omega = "xyw";
    std::string shared = "xy";
    std::string negated = "z";

    static FrameDescriptor from(const ProjectionFrame& frame);

    friend bool operator==(const FrameDescriptor&, const FrameDescriptor&) = default;
};

struct Camera {
    Point3 target;
    double distance = 0;

    friend bool operator==(const Camera&, const Camera&) = default;
};

struct SceneDocument {
    std::string version = kFormatVersion;
    FrameDescriptor frame;
    std::optional<Camera> camera;
    std::vector<SceneEntity> entities;

    /// Throws std::invalid_argument on duplicate ids, short polyline pieces or
    /// out-of-range mesh indices.
    void validate() const;
    const SceneEntity* find(const std::string& id) const;

    friend bool operator==(const SceneDocument&, const SceneDocument&) = default;
};

/// Input to projection: an entity still living in 4-space.
struct Curve4 {
    std::vector<Point4> vertices;
    bool closed = false;
};

struct Mesh4 {
    std::vector<Point4> vertices;
    std::vector<std::uint32_t> indices;
    std::optional<int> rows;
    std::optional<int> cols;
};

struct Entity4 {
    std::string id;
    std::variant<Point4, Curve4, Mesh4> geometry;
    Style style;
};

/// n + 1 uniform-angle samples of the arc. Throws DegenerateInput for n < 1.
std::vector<Point4> tessellate_arc(const GreatCircleArc& arc, int n);

/// Triangle mesh of a 2-sphere of 4-space, `cols` x `rows` in azimuth/polar
/// angle with single pole vertices.
Mesh4 tessellate_sphere2(const Sphere2in4& sphere, int cols = 32, int rows = 16);
MeshGeometry tessellate_ball(const Ball3& ball, int cols = 32, int rows = 16);

/// Per-vertex image of a 4-D entity in one of the projected groups. Vertices
/// within kPoleTolerance of the pole split polylines and drop mesh triangles;
/// the split is recorded in the flags. Throws std::invalid_argument for the
/// source3d group.
SceneEntity project_entity(const ProjectionFrame& frame, const StereoConfig& cfg, const Entity4& entity,
                           ImageGroup group);

/// Removes vertices farther than `r_max` from the stereographic origin.
SceneEntity clip_radius(const SceneEntity& entity, double r_max);

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, int line, std::string field)
        : std::runtime_error(what), line_(line), field_(std::move(field)) {}

    /// 1-based line of the offending text, 0 when unknown.
    int line() const { return line_; }
    /// Path of the offending field, e.g. "entities[2].geometry.pieces".
    const std::string& field() const { return field_; }

  private:
    int line_;
    std::string field_;
};

/// UTF-8 JSON text; numbers carry 17 significant digits. Throws
/// std::invalid_argument for non-finite coordinates.
std::string serialize(const SceneDocument& doc);
SceneDocument parse(const std::string& text);

/// Wavefront OBJ of the mesh, polyline and sphere entities whose group passes
/// the filter (all groups when empty).
std::string export_obj(const SceneDocument& doc, const std::vector<ImageGroup>& groups = {});

}  // namespace tetraproj::scene
