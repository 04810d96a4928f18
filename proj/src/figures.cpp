#include "tetraproj/figures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tetraproj::figures {

using namespace scene;

namespace {

const char* const kVertexNames[4] = {"A", "B", "C", "D"};

const char* suffix(ImageGroup g) {
    switch (g) {
        case ImageGroup::Xi: return "-xi";
        case ImageGroup::Omega: return "-omega";
        case ImageGroup::Stereo: return "-stereo";
        case ImageGroup::Source3d: return "";
    }
    return "";
}

Style highlight(double line_width = 2) { return {"#ff7f0e", 1, line_width}; }

SceneEntity point_entity(const std::string& id, ImageGroup group, std::optional<Point3> p, Style style) {
    SceneEntity e{id, group, PointGeometry{p}, std::move(style), {}};
    e.flags.at_infinity = !p.has_value();
    return e;
}

SceneEntity segment(const std::string& id, ImageGroup group, Point3 a, Point3 b, Style style) {
    return {id, group, PolylineGeometry{false, {{a, b}}}, std::move(style), {}};
}

SceneEntity label(const std::string& id, ImageGroup group, const std::string& text, std::optional<Point3> p) {
    return {id, group, LabelGeometry{text, p}, group_style(group), {}};
}

Point3 image_of(const Setup& setup, ImageGroup group, Point4 p) {
    const auto c = project_double(setup.frame, p);
    return group == ImageGroup::Xi ? c.xi_image : c.omega_image;
}

SceneDocument new_document(const Setup& setup) {
    SceneDocument doc;
    doc.frame = FrameDescriptor::from(setup.frame);
    doc.camera = Camera{{0, 0, 0}, 6 * setup.cfg.sphere().radius};
    return doc;
}

void append(std::vector<SceneEntity>& out, std::vector<SceneEntity> more) {
    for (auto& e : more) out.push_back(std::move(e));
}

// Images of a 4-D point, with labels in the two conjugated images.
void add_point(std::vector<SceneEntity>& out, const Setup& setup, const std::string& name, Point4 p, Style style) {
    for (auto g : {ImageGroup::Xi, ImageGroup::Omega}) {
        const Point3 q = image_of(setup, g, p);
        out.push_back(point_entity(name + suffix(g), g, q, style));
        out.push_back(label(name + suffix(g) + "-label", g, name, q));
    }
    const ExtendedPoint3 s = stereo_project(setup.cfg, p);
    out.push_back(point_entity(name + "-stereo", ImageGroup::Stereo, s.is_infinite() ? std::nullopt : std::optional(s.point()),
                               style));
    if (!s.is_infinite() && norm(s.point()) > setup.clip()) {
        auto& last = out.back();
        std::get<PointGeometry>(last.geometry).position.reset();
        last.flags.clipped = true;
    }
}

Curve4 curve_of(std::vector<Point4> vertices, bool closed) { return Curve4{std::move(vertices), closed}; }

}  // namespace

Setup Setup::standard() { return {ProjectionFrame::standard(), StereoConfig::standard()}; }
Setup Setup::hopf() { return {ProjectionFrame::hopf(), StereoConfig::hopf_display()}; }

Setup Setup::named(const std::string& name) {
    if (name == "standard") return standard();
    if (name == "hopf") return hopf();
    throw std::invalid_argument("unknown frame '" + name + "' (expected standard or hopf)");
}

Style group_style(ImageGroup group) {
    switch (group) {
        case ImageGroup::Xi: return {"#1f77b4", 1, 1};
        case ImageGroup::Omega: return {"#d62728", 1, 1};
        case ImageGroup::Stereo: return {"#2ca02c", 1, 1};
        case ImageGroup::Source3d: return {"#555555", 1, 1};
    }
    return {};
}

std::vector<SceneEntity> images(const Setup& setup, const Entity4& entity) {
    std::vector<SceneEntity> out;
    for (auto g : {ImageGroup::Xi, ImageGroup::Omega, ImageGroup::Stereo}) {
        Entity4 named = entity;
        named.id += suffix(g);
        SceneEntity e = project_entity(setup.frame, setup.cfg, named, g);
        if (g == ImageGroup::Stereo) e = clip_radius(e, setup.clip());
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SceneEntity> sphere_images(const Setup& setup) {
    const Sphere3& s = setup.cfg.sphere();
    const auto c = project_double(setup.frame, s.center);
    Style style{"#888888", 0.15, 1};
    return {{"sphere-xi", ImageGroup::Xi, SphereGeometry{c.xi_image, s.radius}, style, {}},
            {"sphere-omega", ImageGroup::Omega, SphereGeometry{c.omega_image, s.radius}, style, {}}};
}

SceneDocument point_scene(const Setup& setup, Point4 a) {
    const StereoConstruction c = stereo_point_construction(setup.frame, setup.cfg, a);
    const ImageGroup pole_group = c.pole_in_omega ? ImageGroup::Omega : ImageGroup::Xi;
    const ImageGroup parallel_group = c.pole_in_omega ? ImageGroup::Xi : ImageGroup::Omega;
    const auto in = [](const ConjugatedImages& im, ImageGroup g) { return g == ImageGroup::Xi ? im.xi_image : im.omega_image; };

    SceneDocument doc = new_document(setup);
    auto& out = doc.entities;
    append(out, sphere_images(setup));
    add_point(out, setup, "A", a, highlight(4));
    add_point(out, setup, "N", setup.cfg.pole(), group_style(ImageGroup::Source3d));
    add_point(out, setup, "S", setup.cfg.antipode(), group_style(ImageGroup::Source3d));
    out.push_back(segment("ordinal-A", ImageGroup::Source3d, c.point.xi_image, c.point.omega_image,
                          group_style(ImageGroup::Source3d)));

    if (c.auxiliary) {
        const Point3 aux = *c.auxiliary;
        const Point3 as = *c.stereo_modeling;
        out.push_back(point_entity("A0", pole_group, aux, highlight(4)));
        out.push_back(label("A0-label", pole_group, "A0", aux));
        out.push_back(segment("line-NA" + std::string(suffix(pole_group)), pole_group, in(c.pole, pole_group), aux,
                              group_style(pole_group)));
        out.push_back(segment("line-NA" + std::string(suffix(parallel_group)), parallel_group,
                              in(c.pole, parallel_group), as, group_style(parallel_group)));
        out.push_back(segment("ordinal-A0", ImageGroup::Source3d, aux, as, group_style(ImageGroup::Source3d)));
        out.push_back(point_entity("As" + std::string(suffix(parallel_group)), parallel_group, as, highlight(4)));
        out.push_back(label("As-label", parallel_group, "As", as));
    }
    // Intrinsic target coordinates.
    out.push_back(point_entity("As", ImageGroup::Stereo,
                               c.stereo.is_infinite() ? std::nullopt : std::optional(c.stereo.point()), highlight(4)));
    return doc;
}

SceneDocument tetra_scene(const Setup& setup, const std::array<Point4, 4>& vertices, bool circumsphere,
                          int edge_samples) {
    const Sphere3& sphere = setup.cfg.sphere();
    const Tetrahedron t = tetrahedron(sphere, vertices);
    SceneDocument doc = new_document(setup);
    auto& out = doc.entities;
    append(out, sphere_images(setup));
    for (int i = 0; i < 4; ++i) {
        add_point(out, setup, kVertexNames[i], vertices[i], highlight(4));
        add_point(out, setup, std::string(kVertexNames[i]) + "'", antipode(sphere, vertices[i]),
                  group_style(ImageGroup::Source3d));
    }
    for (std::size_t e = 0; e < 6; ++e) {
        const auto [i, j] = Tetrahedron::kEdgeVertices[e];
        const std::string id = std::string("edge-") + kVertexNames[i] + kVertexNames[j];
        append(out, images(setup, {id, curve_of(tessellate_arc(t.edges[e], edge_samples), false), highlight()}));
    }
    if (circumsphere) {
        const Sphere2in4 c = circumsphere2(sphere, vertices);
        append(out, images(setup, {"circumsphere", tessellate_sphere2(c), {"#9467bd", 0.35, 1}}));
    }
    return doc;
}

SceneDocument invert_scene(const Setup& setup, const std::vector<Point3>& points, std::size_t selected) {
    if (points.empty()) throw GeometryError(ErrorCode::DegenerateInput, "no points to invert");
    if (selected >= points.size()) throw GeometryError(ErrorCode::DegenerateInput, "selected point out of range");
    const StereoConfig& cfg = setup.cfg;
    const double r = cfg.sphere().radius;

    SceneDocument doc = new_document(setup);
    auto& out = doc.entities;
    append(out, sphere_images(setup));
    out.push_back({"gamma", ImageGroup::Source3d, SphereGeometry{{0, 0, 0}, r}, {"#888888", 0.2, 1}, {}});

    std::vector<ExtendedPoint3> inverted;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!is_finite(points[i])) throw GeometryError(ErrorCode::DegenerateInput, "point is not finite");
        const ExtendedPoint3 img = spherical_inversion(cfg, points[i]);
        inverted.push_back(img);
        const std::string name = "P" + std::to_string(i);
        out.push_back(point_entity(name, ImageGroup::Source3d, points[i], group_style(ImageGroup::Source3d)));
        out.push_back(point_entity(name + "'", ImageGroup::Source3d,
                                   img.is_infinite() ? std::nullopt : std::optional(img.point()), highlight(4)));
    }

    // The two stereographic legs of the selected point, drawn in 4-space:
    // N through A to its lift, then S through the lift to the image.
    const Point4 a = sigma_to_4d(cfg, points[selected]);
    const Point4 on_sphere = stereo_unproject(cfg, ExtendedPoint3(2.0 * points[selected]));
    const auto farther = [](Point4 from, Point4 p, Point4 q) { return distance(from, p) > distance(from, q) ? p : q; };
    add_point(out, setup, "lifted", on_sphere, highlight(3));
    for (auto g : {ImageGroup::Xi, ImageGroup::Omega}) {
        out.push_back(segment(std::string("leg-N") + suffix(g), g, image_of(setup, g, cfg.pole()),
                              image_of(setup, g, farther(cfg.pole(), a, on_sphere)), highlight()));
        if (!inverted[selected].is_infinite()) {
            const Point4 b = sigma_to_4d(cfg, inverted[selected].point());
            out.push_back(segment(std::string("leg-S") + suffix(g), g, image_of(setup, g, cfg.antipode()),
                                  image_of(setup, g, farther(cfg.antipode(), b, on_sphere)), highlight()));
        }
    }

    // Four points also get their tetrahedron, unless they do not form one.
    std::optional<InversionDemo> tetra;
    const std::array<Point3, 4> v = points.size() == 4 ? std::array<Point3, 4>{points[0], points[1], points[2], points[3]}
                                                       : std::array<Point3, 4>{};
    if (points.size() == 4) {
        try {
            tetra = invert_tetrahedron_demo(cfg, v);
        } catch (const GeometryError&) {
        }
    }
    if (tetra) {
        const InversionDemo& demo = *tetra;
        for (const auto& e : demo.edges) {
            const std::string id = std::string("tetra-edge-") + kVertexNames[e.a] + kVertexNames[e.b];
            out.push_back(segment(id, ImageGroup::Source3d, v[e.a], v[e.b], group_style(ImageGroup::Source3d)));
            SceneEntity img{"image-" + id, ImageGroup::Source3d, PolylineGeometry{false, e.pieces}, highlight(), {}};
            img.flags.split_at_infinity = e.through_center;
            out.push_back(clip_radius(img, setup.clip()));
        }
        const Ball3& ball = demo.circumsphere;
        out.push_back({"circumsphere", ImageGroup::Source3d, SphereGeometry{ball.center, ball.radius},
                       {"#9467bd", 0.25, 1}, {}});
        if (demo.circumsphere_image) {
            out.push_back({"circumsphere-image", ImageGroup::Source3d,
                           SphereGeometry{demo.circumsphere_image->center, demo.circumsphere_image->radius},
                           {"#ff7f0e", 0.25, 1}, {}});
        } else {
            // The image is a plane: keep the sampled grid.
            const int rows = 16, cols = 32;
            MeshGeometry m;
            std::vector<bool> at_inf;
            for (const auto& q : demo.circumsphere_image_samples) {
                const Point3 p = q.is_infinite() ? Point3{} : q.point();
                m.vertices.insert(m.vertices.end(), {p.u, p.v, p.t});
                at_inf.push_back(q.is_infinite());
            }
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) {
                    const auto id = [&](int a, int b) { return static_cast<std::uint32_t>(a * (cols + 1) + b); };
                    const std::array<std::uint32_t, 4> q{id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)};
                    if (std::any_of(q.begin(), q.end(), [&](auto k) { return at_inf[k]; })) continue;
                    m.indices.insert(m.indices.end(), {q[0], q[1], q[2], q[0], q[2], q[3]});
                }
            SceneEntity plane{"circumsphere-image", ImageGroup::Source3d, m, {"#ff7f0e", 0.25, 1}, {}};
            plane.flags.split_at_infinity = std::find(at_inf.begin(), at_inf.end(), true) != at_inf.end();
            out.push_back(clip_radius(plane, setup.clip()));
        }
    }
    return doc;
}

hopf::CleliaSpec default_spec(double s, int resolution) { return {s, 0, hopf::closing_span(s), resolution}; }

std::vector<SceneEntity> torus_entities(const hopf::CleliaSpec& spec, int beta_resolution) {
    const hopf::TorusMesh mesh = hopf::hopf_torus(spec, beta_resolution);
    const hopf::HopfPlacement placement;
    Mesh4 m;
    m.vertices.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices) m.vertices.push_back(placement.place(v));
    m.indices = mesh.triangles();
    m.rows = mesh.rows;
    m.cols = mesh.cols;
    return images(Setup::hopf(), {"torus", std::move(m), {"#17becf", 0.6, 1}});
}

std::vector<SceneEntity> fiber_entities(const hopf::BasePoint& base, int samples, const std::string& name) {
    const hopf::HopfPlacement placement;
    std::vector<Point4> verts;
    for (const auto& p : hopf::fiber_circle(base, samples)) verts.push_back(placement.place(p));
    return images(Setup::hopf(), {name, curve_of(std::move(verts), true), highlight(3)});
}

SceneDocument hopf_scene(const HopfOptions& options) {
    const hopf::CleliaSpec& spec = options.spec;
    spec.validate();
    const Setup setup = Setup::hopf();
    SceneDocument doc = new_document(setup);
    doc.camera = Camera{{0, 1, 0}, 8};
    auto& out = doc.entities;
    append(out, sphere_images(setup));

    out.push_back({"base-sphere", ImageGroup::Source3d, SphereGeometry{hopf::kCurveCenter, 1}, {"#888888", 0.15, 1}, {}});
    const bool closed = hopf::is_closed(spec);
    std::vector<Point3> curve;
    for (int i = 0; i < spec.resolution; ++i)
        curve.push_back(hopf::clelia(spec, hopf::row_parameter(spec, i, spec.resolution, closed)));
    out.push_back({"clelia", ImageGroup::Source3d, PolylineGeometry{closed, {curve}}, {"#000000", 1, 2}, {}});

    append(out, torus_entities(spec, options.beta_resolution));

    const double psi = options.psi.value_or(spec.psi_lo);
    const Point3 p = hopf::clelia(spec, psi);
    out.push_back(point_entity("base-point", ImageGroup::Source3d, p, highlight(4)));
    append(out, fiber_entities(hopf::base_to_angles(p - hopf::kCurveCenter), 256, "fiber"));

    const auto crossings = hopf::self_intersection_fibers(spec);
    for (std::size_t k = 0; k < crossings.size(); ++k)
        out.push_back(point_entity("crossing-" + std::to_string(k), ImageGroup::Source3d, crossings[k].point,
                                   {"#e377c2", 1, 4}));
    return doc;
}

Lift lift_curve(const Setup& setup, std::vector<Point3> curve, bool closed, int subdivide) {
    if (curve.size() < 2) throw GeometryError(ErrorCode::DegenerateInput, "a curve needs at least 2 vertices");
    if (subdivide < 1) throw GeometryError(ErrorCode::DegenerateInput, "subdivision must be >= 1");
    for (const auto& p : curve)
        if (!is_finite(p)) throw GeometryError(ErrorCode::DegenerateInput, "curve vertex is not finite");
    if (curve.size() > 2 && curve.front() == curve.back()) {
        curve.pop_back();
        closed = true;
    }
    Lift out;
    out.closed = closed;
    const std::size_t n = curve.size();
    const std::size_t segments = closed ? n : n - 1;
    for (std::size_t i = 0; i < segments; ++i) {
        const Point3 a = curve[i], b = curve[(i + 1) % n];
        for (int k = 0; k < subdivide; ++k) out.curve.push_back(a + (static_cast<double>(k) / subdivide) * (b - a));
    }
    if (!closed) out.curve.push_back(curve.back());
    for (const auto& q : out.curve) out.lifted.push_back(stereo_unproject(setup.cfg, q));
    return out;
}

SceneDocument lift_scene(const Setup& setup, const Lift& lift) {
    SceneDocument doc = new_document(setup);
    auto& out = doc.entities;
    append(out, sphere_images(setup));
    out.push_back({"curve-stereo", ImageGroup::Stereo, PolylineGeometry{lift.closed, {lift.curve}}, highlight(), {}});
    for (auto g : {ImageGroup::Xi, ImageGroup::Omega}) {
        Entity4 e{"curve", curve_of(lift.lifted, lift.closed), highlight()};
        e.id += suffix(g);
        out.push_back(project_entity(setup.frame, setup.cfg, e, g));
    }
    return doc;
}

SceneDocument hexa_scene(const Setup& setup, const HexaOptions& options) {
    const Hexahedron hex = hexahedron(setup.cfg.sphere(), options.psi, options.theta, options.phi);
    // The chart puts its pole at maximal w; rotate it onto the configured pole.
    const Sphere3& sphere = setup.cfg.sphere();
    const auto place = [&](Point4 p) {
        const Point4 d = (p - sphere.center) / sphere.radius;
        const auto& b = setup.cfg.basis();
        return sphere.center + sphere.radius * (d.x * b[0] + d.y * b[1] + d.z * b[2] + d.w * setup.cfg.pole_direction());
    };
    const auto placed = [&](std::vector<Point4> pts) {
        for (auto& p : pts) p = place(p);
        return pts;
    };

    SceneDocument doc = new_document(setup);
    auto& out = doc.entities;
    append(out, sphere_images(setup));
    for (int i = 0; i < 8; ++i) add_point(out, setup, "corner-" + std::to_string(i), place(hex.corners[i]), highlight(3));
    for (int e = 0; e < 12; ++e)
        append(out, images(setup, {"hexa-edge-" + std::to_string(e),
                                   curve_of(placed(hex.sample_edge(e, options.edge_samples)), false), highlight()}));
    if (options.faces) {
        const int n = 16;
        for (int f = 0; f < 6; ++f) {
            Mesh4 m;
            m.vertices = placed(hex.sample_face(f, n, n));
            m.rows = n + 1;
            m.cols = n + 1;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const auto id = [&](int a, int b) { return static_cast<std::uint32_t>(a * (n + 1) + b); };
                    m.indices.insert(m.indices.end(), {id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j), id(i + 1, j + 1), id(i, j + 1)});
                }
            append(out, images(setup, {"hexa-face-" + std::to_string(f), std::move(m), {"#bcbd22", 0.4, 1}}));
        }
    }
    return doc;
}

SceneDocument concentric_scene(const Setup& setup, int count) {
    const auto pairs = concentric_sections_demo(setup.cfg, count);
    SceneDocument doc = new_document(setup);
    auto& out = doc.entities;
    append(out, sphere_images(setup));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const std::string n = std::to_string(k);
        const Style style{"#1f77b4", 0.3, 1};
        for (auto g : {ImageGroup::Xi, ImageGroup::Omega}) {
            Entity4 e{"section-" + n + suffix(g), tessellate_sphere2(pairs[k].section), style};
            out.push_back(project_entity(setup.frame, setup.cfg, e, g));
        }
        out.push_back({"image-" + n, ImageGroup::Stereo,
                       SphereGeometry{setup.cfg.from_target(pairs[k].image.center), pairs[k].image.radius},
                       {"#2ca02c", 0.25, 1}, {}});
    }
    return doc;
}

}  // namespace tetraproj::figures
