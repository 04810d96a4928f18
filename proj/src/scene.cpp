#include "tetraproj/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json_text.hpp"

namespace tetraproj::scene {

using json = nlohmann::ordered_json;
using detail::to_json;
using detail::geometry_json;

namespace {

constexpr std::array<const char*, 5> kKindNames{"point", "polyline", "mesh", "analytic-sphere", "label"};
constexpr std::array<const char*, 4> kGroupNames{"xi", "omega", "stereo", "source3d"};

// Splits a vertex sequence at missing vertices. For a closed sequence the
// pieces are rotated so that a gap never falls inside a piece.
std::vector<std::vector<Point3>> split_pieces(const std::vector<std::optional<Point3>>& vs, bool closed) {
    std::vector<std::vector<Point3>> pieces;
    const std::size_t n = vs.size();
    std::size_t start = 0;
    if (closed) {
        while (start < n && vs[start].has_value()) ++start;
        if (start == n) start = 0;
    }
    std::vector<Point3> piece;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& v = vs[(start + k) % n];
        if (v) {
            piece.push_back(*v);
        } else {
            if (piece.size() >= 2) pieces.push_back(std::move(piece));
            piece.clear();
        }
    }
    if (piece.size() >= 2) pieces.push_back(std::move(piece));
    return pieces;
}

// Keeps triangles whose three vertices survive and compacts the vertex list.
MeshGeometry compact_mesh(const std::vector<std::optional<Point3>>& vs, const std::vector<std::uint32_t>& indices,
                          std::optional<int> rows, std::optional<int> cols, bool& removed) {
    removed = std::any_of(vs.begin(), vs.end(), [](const auto& v) { return !v.has_value(); });
    MeshGeometry out;
    std::vector<std::int64_t> remap(vs.size(), -1);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!vs[i]) continue;
        remap[i] = next++;
        out.vertices.insert(out.vertices.end(), {vs[i]->u, vs[i]->v, vs[i]->t});
    }
    for (std::size_t f = 0; f + 2 < indices.size(); f += 3) {
        const auto a = remap.at(indices[f]), b = remap.at(indices[f + 1]), c = remap.at(indices[f + 2]);
        if (a < 0 || b < 0 || c < 0) continue;
        out.indices.insert(out.indices.end(), {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                               static_cast<std::uint32_t>(c)});
    }
    if (!removed) {
        out.rows = rows;
        out.cols = cols;
    }
    return out;
}

}  // namespace

json detail::geometry_json(const Geometry& g) {
    struct Visitor {
        json operator()(const PointGeometry& p) const { return p.position ? to_json(*p.position) : json(nullptr); }
        json operator()(const PolylineGeometry& p) const {
            json pieces = json::array();
            for (const auto& piece : p.pieces) {
                json verts = json::array();
                for (const auto& v : piece) verts.push_back(to_json(v));
                pieces.push_back(std::move(verts));
            }
            return {{"closed", p.closed}, {"pieces", std::move(pieces)}};
        }
        json operator()(const MeshGeometry& m) const {
            json out{{"vertices", m.vertices}, {"indices", m.indices}};
            if (m.rows) out["rows"] = *m.rows;
            if (m.cols) out["cols"] = *m.cols;
            return out;
        }
        json operator()(const SphereGeometry& s) const {
            return {{"center", to_json(s.center)}, {"radius", s.radius}};
        }
        json operator()(const LabelGeometry& l) const {
            return {{"text", l.text}, {"position", l.position ? to_json(*l.position) : json(nullptr)}};
        }
    };
    return std::visit(Visitor{}, g);
}

json detail::entity_json(const SceneEntity& e) {
    return {
        {"id", e.id},
        {"kind", to_string(e.kind())},
        {"group", to_string(e.group)},
        {"style", {{"color", e.style.color}, {"opacity", e.style.opacity}, {"line_width", e.style.line_width}}},
        {"flags",
         {{"at_infinity", e.flags.at_infinity},
          {"split_at_infinity", e.flags.split_at_infinity},
          {"clipped", e.flags.clipped}}},
        {"geometry", geometry_json(e.geometry)},
    };
}

namespace {

// ---- JSON input -----------------------------------------------------------

class Reader {
  public:
    explicit Reader(std::string path) : path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("invalid scene at " + path_ + ": " + msg, 0, path_);
    }

    Reader operator[](const std::string& key) const { return Reader(path_ + (path_.empty() ? "" : ".") + key); }
    Reader operator[](std::size_t i) const { return Reader(path_ + "[" + std::to_string(i) + "]"); }

    const json& field(const json& obj, const std::string& key) const {
        if (!obj.is_object()) fail("expected an object");
        const auto it = obj.find(key);
        if (it == obj.end()) (*this)[key].fail("missing field");
        return *it;
    }
    double number(const json& j) const {
        if (!j.is_number()) fail("expected a number");
        return j.get<double>();
    }
    bool boolean(const json& j) const {
        if (!j.is_boolean()) fail("expected a boolean");
        return j.get<bool>();
    }
    std::string string(const json& j) const {
        if (!j.is_string()) fail("expected a string");
        return j.get<std::string>();
    }
    const json& array(const json& j) const {
        if (!j.is_array()) fail("expected an array");
        return j;
    }
    Point3 point(const json& j) const {
        if (!j.is_array() || j.size() != 3) fail("expected a coordinate triple");
        return {(*this)[0].number(j[0]), (*this)[1].number(j[1]), (*this)[2].number(j[2])};
    }
    std::optional<Point3> optional_point(const json& j) const {
        if (j.is_null()) return std::nullopt;
        return point(j);
    }
    std::optional<int> optional_int(const json& obj, const std::string& key) const {
        const auto it = obj.find(key);
        if (it == obj.end()) return std::nullopt;
        if (!it->is_number_integer()) (*this)[key].fail("expected an integer");
        return it->get<int>();
    }

  private:
    std::string path_;
};

Geometry read_geometry(const Reader& r, EntityKind kind, const json& g) {
    switch (kind) {
        case EntityKind::Point: return PointGeometry{r.optional_point(g)};
        case EntityKind::Polyline: {
            PolylineGeometry p;
            p.closed = r["closed"].boolean(r.field(g, "closed"));
            const Reader rp = r["pieces"];
            const json& pieces = rp.array(r.field(g, "pieces"));
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                std::vector<Point3> piece;
                const json& verts = rp[i].array(pieces[i]);
                for (std::size_t k = 0; k < verts.size(); ++k) piece.push_back(rp[i][k].point(verts[k]));
                p.pieces.push_back(std::move(piece));
            }
            return p;
        }
        case EntityKind::Mesh: {
            MeshGeometry m;
            const Reader rv = r["vertices"];
            const json& verts = rv.array(r.field(g, "vertices"));
            for (std::size_t i = 0; i < verts.size(); ++i) m.vertices.push_back(rv[i].number(verts[i]));
            const Reader ri = r["indices"];
            const json& idx = ri.array(r.field(g, "indices"));
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (!idx[i].is_number_unsigned()) ri[i].fail("expected a non-negative integer");
                m.indices.push_back(idx[i].get<std::uint32_t>());
            }
            m.rows = r.optional_int(g, "rows");
            m.cols = r.optional_int(g, "cols");
            return m;
        }
        case EntityKind::AnalyticSphere:
            return SphereGeometry{r["center"].point(r.field(g, "center")), r["radius"].number(r.field(g, "radius"))};
        case EntityKind::Label: {
            LabelGeometry l;
            l.text = r["text"].string(r.field(g, "text"));
            const auto it = g.find("position");
            if (it != g.end()) l.position = r["position"].optional_point(*it);
            return l;
        }
    }
    r.fail("unknown kind");
}

int line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

const char* to_string(EntityKind kind) { return kKindNames[static_cast<int>(kind)]; }
const char* to_string(ImageGroup group) { return kGroupNames[static_cast<int>(group)]; }

EntityKind kind_from_string(const std::string& name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (name == kKindNames[i]) return static_cast<EntityKind>(i);
    throw std::invalid_argument("unknown entity kind '" + name + "'");
}

ImageGroup group_from_string(const std::string& name) {
    for (std::size_t i = 0; i < kGroupNames.size(); ++i)
        if (name == kGroupNames[i]) return static_cast<ImageGroup>(i);
    throw std::invalid_argument("unknown image group '" + name + "'");
}

FrameDescriptor FrameDescriptor::from(const ProjectionFrame& frame) {
    FrameDescriptor d;
    d.xi.clear();
    d.omega.clear();
    d.shared.clear();
    for (Axis a : frame.xi_axes()) d.xi += axis_name(a);
    for (Axis a : frame.omega_axes()) d.omega += axis_name(a);
    for (Axis a : frame.shared_axes()) d.shared += axis_name(a);
    d.negated = std::string(1, axis_name(frame.negated_axis()));
    return d;
}

void SceneDocument::validate() const {
    std::set<std::string> ids;
    for (const auto& e : entities) {
        if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate entity id '" + e.id + "'");
        if (const auto* p = std::get_if<PolylineGeometry>(&e.geometry)) {
            for (const auto& piece : p->pieces)
                if (piece.size() < 2) throw std::invalid_argument("polyline '" + e.id + "' has a piece with < 2 vertices");
        } else if (const auto* m = std::get_if<MeshGeometry>(&e.geometry)) {
            if (m->vertices.size() % 3 != 0 || m->indices.size() % 3 != 0)
                throw std::invalid_argument("mesh '" + e.id + "' arrays are not triples");
            for (auto i : m->indices)
                if (i >= m->vertex_count()) throw std::invalid_argument("mesh '" + e.id + "' index out of range");
        }
    }
}

const SceneEntity* SceneDocument::find(const std::string& id) const {
    const auto it = std::find_if(entities.begin(), entities.end(), [&](const auto& e) { return e.id == id; });
    return it == entities.end() ? nullptr : &*it;
}

std::vector<Point4> tessellate_arc(const GreatCircleArc& arc, int n) { return arc.sample(n); }

Mesh4 tessellate_sphere2(const Sphere2in4& sphere, int cols, int rows) {
    if (cols < 3 || rows < 2) throw GeometryError(ErrorCode::DegenerateInput, "sphere tessellation too coarse");
    Mesh4 mesh;
    mesh.vertices.push_back(sphere.sample(0, 0));
    for (int i = 1; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            mesh.vertices.push_back(sphere.sample(M_PI * i / rows, 2 * M_PI * j / cols));
    mesh.vertices.push_back(sphere.sample(M_PI, 0));
    const auto south = static_cast<std::uint32_t>(mesh.vertices.size() - 1);
    auto ring = [&](int i, int j) { return static_cast<std::uint32_t>(1 + (i - 1) * cols + (j % cols)); };
    for (int j = 0; j < cols; ++j) mesh.indices.insert(mesh.indices.end(), {0u, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i + 1 < rows; ++i)
        for (int j = 0; j < cols; ++j)
            mesh.indices.insert(mesh.indices.end(),
                                {ring(i, j), ring(i + 1, j), ring(i + 1, j + 1), ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    for (int j = 0; j < cols; ++j) mesh.indices.insert(mesh.indices.end(), {ring(rows - 1, j), south, ring(rows - 1, j + 1)});
    return mesh;
}

MeshGeometry tessellate_ball(const Ball3& ball, int cols, int rows) {
    // A 2-sphere of the hyperplane w = 0 with the same parametrization.
    const Sphere2in4 s({ball.center.u, ball.center.v, ball.center.t, 0}, ball.radius, Hyperplane3({0, 0, 0, 1}, 0));
    const Mesh4 m = tessellate_sphere2(s, cols, rows);
    MeshGeometry out;
    for (const auto& v : m.vertices) out.vertices.insert(out.vertices.end(), {v.x, v.y, v.z});
    out.indices = m.indices;
    return out;
}

SceneEntity project_entity(const ProjectionFrame& frame, const StereoConfig& cfg, const Entity4& entity,
                           ImageGroup group) {
    if (group == ImageGroup::Source3d) throw std::invalid_argument("source3d is not a projected image group");

    auto image = [&](Point4 p) -> std::optional<Point3> {
        if (group == ImageGroup::Xi) return project_double(frame, p).xi_image;
        if (group == ImageGroup::Omega) return project_double(frame, p).omega_image;
        if (distance(p, cfg.pole()) <= kPoleTolerance) return std::nullopt;
        return stereo_project(cfg, p).point();
    };
    auto images = [&](const std::vector<Point4>& vs) {
        std::vector<std::optional<Point3>> out;
        out.reserve(vs.size());
        for (const auto& v : vs) out.push_back(image(v));
        return out;
    };

    SceneEntity out;
    out.id = entity.id;
    out.group = group;
    out.style = entity.style;
    if (const auto* p = std::get_if<Point4>(&entity.geometry)) {
        const auto img = image(*p);
        out.geometry = PointGeometry{img};
        out.flags.at_infinity = !img.has_value();
    } else if (const auto* c = std::get_if<Curve4>(&entity.geometry)) {
        const auto vs = images(c->vertices);
        const bool hit = std::any_of(vs.begin(), vs.end(), [](const auto& v) { return !v.has_value(); });
        out.geometry = PolylineGeometry{c->closed && !hit, split_pieces(vs, c->closed)};
        out.flags.split_at_infinity = hit;
    } else {
        const auto& m = std::get<Mesh4>(entity.geometry);
        bool removed = false;
        out.geometry = compact_mesh(images(m.vertices), m.indices, m.rows, m.cols, removed);
        out.flags.split_at_infinity = removed;
    }
    return out;
}

SceneEntity clip_radius(const SceneEntity& entity, double r_max) {
    if (!(r_max > 0)) throw std::invalid_argument("clip radius must be > 0");
    SceneEntity out = entity;
    auto keep = [&](const Point3& p) -> std::optional<Point3> {
        if (norm(p) > r_max) return std::nullopt;
        return p;
    };
    if (auto* p = std::get_if<PointGeometry>(&out.geometry)) {
        if (p->position && !keep(*p->position)) {
            p->position.reset();
            out.flags.clipped = true;
        }
    } else if (auto* l = std::get_if<LabelGeometry>(&out.geometry)) {
        if (l->position && !keep(*l->position)) {
            l->position.reset();
            out.flags.clipped = true;
        }
    } else if (auto* poly = std::get_if<PolylineGeometry>(&out.geometry)) {
        std::vector<std::vector<Point3>> pieces;
        bool removed = false;
        for (const auto& piece : poly->pieces) {
            std::vector<std::optional<Point3>> vs;
            for (const auto& v : piece) {
                vs.push_back(keep(v));
                removed |= !vs.back().has_value();
            }
            const bool cyclic = poly->closed && poly->pieces.size() == 1;
            for (auto& q : split_pieces(vs, cyclic)) pieces.push_back(std::move(q));
        }
        if (removed) {
            poly->pieces = std::move(pieces);
            poly->closed = false;
            out.flags.clipped = true;
        }
    } else if (auto* m = std::get_if<MeshGeometry>(&out.geometry)) {
        std::vector<std::optional<Point3>> vs;
        for (std::size_t i = 0; i < m->vertex_count(); ++i) vs.push_back(keep(m->vertex(i)));
        bool removed = false;
        MeshGeometry clipped = compact_mesh(vs, m->indices, m->rows, m->cols, removed);
        if (removed) {
            *m = std::move(clipped);
            out.flags.clipped = true;
        }
    }
    return out;
}

std::string serialize(const SceneDocument& doc) {
    json root;
    root["version"] = doc.version;
    root["frame"] = {{"xi", doc.frame.xi}, {"omega", doc.frame.omega}, {"shared", doc.frame.shared},
                     {"negated", doc.frame.negated}};
    if (doc.camera) root["camera"] = {{"target", to_json(doc.camera->target)}, {"distance", doc.camera->distance}};
    json entities = json::array();
    for (const auto& e : doc.entities) entities.push_back(detail::entity_json(e));
    root["entities"] = std::move(entities);
    return detail::format_json(root, true) + "\n";
}

SceneDocument parse(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), line_of(text, e.byte), "");
    }
    const Reader r("");
    SceneDocument doc;
    doc.version = r["version"].string(r.field(root, "version"));
    if (doc.version != kFormatVersion)
        throw ParseError("unsupported scene version '" + doc.version + "'", 0, "version");

    const Reader rf = r["frame"];
    const json& frame = r.field(root, "frame");
    doc.frame.xi = rf["xi"].string(rf.field(frame, "xi"));
    doc.frame.omega = rf["omega"].string(rf.field(frame, "omega"));
    doc.frame.shared = rf["shared"].string(rf.field(frame, "shared"));
    doc.frame.negated = rf["negated"].string(rf.field(frame, "negated"));

    if (const auto it = root.find("camera"); it != root.end() && !it->is_null()) {
        const Reader rc = r["camera"];
        doc.camera = Camera{rc["target"].point(rc.field(*it, "target")),
                            rc["distance"].number(rc.field(*it, "distance"))};
    }

    const Reader re = r["entities"];
    const json& entities = re.array(r.field(root, "entities"));
    for (std::size_t i = 0; i < entities.size(); ++i) {
        const Reader ri = re[i];
        const json& e = entities[i];
        SceneEntity ent;
        ent.id = ri["id"].string(ri.field(e, "id"));
        EntityKind kind{};
        try {
            kind = kind_from_string(ri["kind"].string(ri.field(e, "kind")));
            ent.group = group_from_string(ri["group"].string(ri.field(e, "group")));
        } catch (const std::invalid_argument& err) {
            ri.fail(err.what());
        }
        const Reader rs = ri["style"];
        const json& style = ri.field(e, "style");
        ent.style.color = rs["color"].string(rs.field(style, "color"));
        ent.style.opacity = rs["opacity"].number(rs.field(style, "opacity"));
        ent.style.line_width = rs["line_width"].number(rs.field(style, "line_width"));
        if (const auto it = e.find("flags"); it != e.end()) {
            const Reader rl = ri["flags"];
            ent.flags.at_infinity = rl["at_infinity"].boolean(rl.field(*it, "at_infinity"));
            ent.flags.split_at_infinity = rl["split_at_infinity"].boolean(rl.field(*it, "split_at_infinity"));
            ent.flags.clipped = rl["clipped"].boolean(rl.field(*it, "clipped"));
        }
        ent.geometry = read_geometry(ri["geometry"], kind, ri.field(e, "geometry"));
        doc.entities.push_back(std::move(ent));
    }
    try {
        doc.validate();
    } catch (const std::invalid_argument& err) {
        throw ParseError(err.what(), 0, "entities");
    }
    return doc;
}

std::string export_obj(const SceneDocument& doc, const std::vector<ImageGroup>& groups) {
    std::ostringstream out;
    out << "# tetraproj OBJ export (" << doc.version << ")\n";
    std::size_t base = 1;
    char buf[96];
    auto vertex = [&](Point3 p) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.u + 0.0, p.v + 0.0, p.t + 0.0);
        out << buf;
    };
    auto mesh_records = [&](const MeshGeometry& m) {
        for (std::size_t i = 0; i < m.vertex_count(); ++i) vertex(m.vertex(i));
        for (std::size_t f = 0; f + 2 < m.indices.size(); f += 3)
            out << "f " << base + m.indices[f] << ' ' << base + m.indices[f + 1] << ' ' << base + m.indices[f + 2]
                << '\n';
        base += m.vertex_count();
    };
    for (const auto& e : doc.entities) {
        if (!groups.empty() && std::find(groups.begin(), groups.end(), e.group) == groups.end()) continue;
        if (const auto* m = std::get_if<MeshGeometry>(&e.geometry)) {
            out << "o " << e.id << '\n';
            mesh_records(*m);
        } else if (const auto* s = std::get_if<SphereGeometry>(&e.geometry)) {
            out << "o " << e.id << '\n';
            mesh_records(tessellate_ball({s->center, s->radius}, 32, 16));
        } else if (const auto* p = std::get_if<PolylineGeometry>(&e.geometry)) {
            out << "o " << e.id << '\n';
            for (const auto& piece : p->pieces) {
                for (const auto& v : piece) vertex(v);
                out << 'l';
                for (std::size_t i = 0; i < piece.size(); ++i) out << ' ' << base + i;
                if (p->closed && p->pieces.size() == 1) out << ' ' << base;
                out << '\n';
                base += piece.size();
            }
        }
    }
    return out.str();
}

}  // namespace tetraproj::scene
