#include <cstring>

#include "doctest.h"
#include "support.hpp"
#include "tetraproj/hopf.hpp"
#include "tetraproj/scene.hpp"

using namespace tetraproj;
using namespace tetraproj::scene;
using namespace testsupport;

namespace {

std::size_t count_lines(const std::string& text, const std::string& prefix) {
    std::size_t n = 0, pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    return n;
}

bool all_finite(const SceneEntity& e) {
    if (const auto* p = std::get_if<PointGeometry>(&e.geometry)) return !p->position || is_finite(*p->position);
    if (const auto* l = std::get_if<PolylineGeometry>(&e.geometry)) {
        for (const auto& piece : l->pieces)
            for (const auto& v : piece)
                if (!is_finite(v)) return false;
        return true;
    }
    if (const auto* m = std::get_if<MeshGeometry>(&e.geometry))
        return std::all_of(m->vertices.begin(), m->vertices.end(), [](double x) { return std::isfinite(x); });
    return true;
}

double random_double() {
    // Mixed magnitudes, including awkward decimal expansions.
    switch (std::uniform_int_distribution<int>(0, 3)(rng())) {
        case 0: return uniform(-1, 1);
        case 1: return uniform(-1, 1) * std::pow(10.0, uniform(-300, 300));
        case 2: return std::nextafter(uniform(-5, 5), 0.0);
        default: return static_cast<double>(std::uniform_int_distribution<int>(-1000, 1000)(rng()));
    }
}

Point3 random_point() { return {random_double(), random_double(), random_double()}; }

SceneDocument random_document() {
    SceneDocument doc;
    doc.frame = FrameDescriptor::from(uniform(0, 1) < 0.5 ? ProjectionFrame::standard() : ProjectionFrame::hopf());
    if (uniform(0, 1) < 0.5) doc.camera = Camera{random_point(), uniform(0, 10)};
    const int n = std::uniform_int_distribution<int>(0, 8)(rng());
    for (int i = 0; i < n; ++i) {
        SceneEntity e;
        e.id = "e" + std::to_string(i) + "\"\\/é";
        e.group = static_cast<ImageGroup>(i % 4);
        e.style = {"#12ab" + std::to_string(i % 10) + "f", uniform(0, 1), uniform(0.5, 3)};
        e.flags = {i % 2 == 0, i % 3 == 0, i % 5 == 0};
        switch (i % 5) {
            case 0: e.geometry = PointGeometry{i % 2 ? std::optional<Point3>{} : random_point()}; break;
            case 1: {
                PolylineGeometry p{uniform(0, 1) < 0.5, {}};
                for (int k = 0; k < 2; ++k) p.pieces.push_back({random_point(), random_point(), random_point()});
                e.geometry = p;
                break;
            }
            case 2: {
                MeshGeometry m;
                for (int k = 0; k < 12; ++k) m.vertices.push_back(random_double());
                m.indices = {0, 1, 2, 1, 2, 3};
                if (i % 2) {
                    m.rows = 2;
                    m.cols = 2;
                }
                e.geometry = m;
                break;
            }
            case 3: e.geometry = SphereGeometry{random_point(), uniform(0, 4)}; break;
            default: e.geometry = LabelGeometry{"A_s ∞", random_point()};
        }
        doc.entities.push_back(std::move(e));
    }
    return doc;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("tessellate_arc") {
    const Sphere3 unit;
    const auto arc = great_arc(unit, {1, 0, 0, 0}, {0, 1, 0, 0});
    const auto three = tessellate_arc(arc, 2);
    REQUIRE(three.size() == 3);
    CHECK(three[0] == arc.start);
    CHECK(three[2] == arc.end);
    CHECK(distance(three[1], {std::sqrt(0.5), std::sqrt(0.5), 0, 0}) < 1e-15);
    const auto two = tessellate_arc(arc, 1);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == arc.start);
    CHECK(two[1] == arc.end);
    CHECK_THROWS_AS(tessellate_arc(arc, 0), GeometryError);

    // Chord midpoints approach the sphere quadratically.
    for (int k = 0; k < 50; ++k) {
        const Sphere3 s = random_sphere();
        const auto g = great_arc(s, on_sphere(s), on_sphere(s));
        const auto gap = [&](int n) {
            const auto pts = tessellate_arc(g, n);
            double worst = 0;
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                CHECK(s.contains(pts[i], 1e-9));
                worst = std::max(worst, s.radius - distance(0.5 * (pts[i] + pts[i + 1]), s.center));
            }
            return worst;
        };
        for (int n = 2; n <= 64; n *= 2) CHECK(gap(n) / gap(2 * n) >= 3);
    }
}

TEST_CASE("tessellate_sphere2") {
    const Sphere2in4 s({0, 0, 0, 0.5}, std::sqrt(0.75), Hyperplane3({0, 0, 0, 1}, 0.5));
    const auto m = tessellate_sphere2(s, 32, 16);
    CHECK(m.vertices.size() == 2u + 15u * 32u);
    CHECK(m.indices.size() == 3u * (2u * 32u + 14u * 32u * 2u));
    for (const auto& v : m.vertices) {
        CHECK(std::abs(norm(v) - 1) < 1e-12);
        CHECK(std::abs(v.w - 0.5) < 1e-15);
    }
    for (auto i : m.indices) CHECK(i < m.vertices.size());
    CHECK_THROWS_AS(tessellate_sphere2(s, 2, 16), GeometryError);
}

TEST_CASE("project_entity") {
    const auto frame = ProjectionFrame::standard();
    const auto cfg = StereoConfig::standard();
    const Sphere3 unit;

    SUBCASE("polyline through the pole splits") {
        Curve4 c;
        const auto arc1 = great_arc(unit, {1, 0, 0, 0}, {0, 0, 0, 1});
        const auto arc2 = great_arc(unit, {0, 0, 0, 1}, {0, 1, 0, 0});
        c.vertices = tessellate_arc(arc1, 16);
        const auto rest = tessellate_arc(arc2, 16);
        c.vertices.insert(c.vertices.end(), rest.begin() + 1, rest.end());
        const auto e = project_entity(frame, cfg, {"c", c, {}}, ImageGroup::Stereo);
        const auto& poly = std::get<PolylineGeometry>(e.geometry);
        CHECK(poly.pieces.size() >= 2);
        CHECK(e.flags.split_at_infinity);
        CHECK_FALSE(poly.closed);
        CHECK(all_finite(e));
    }
    SUBCASE("closed curve through the pole stays one piece across the wrap") {
        Curve4 c{{}, true};
        for (int i = 0; i < 32; ++i) {
            const double a = 2 * M_PI * i / 32;
            c.vertices.push_back({std::sin(a), 0, 0, std::cos(a)});
        }
        const auto e = project_entity(frame, cfg, {"loop", c, {}}, ImageGroup::Stereo);
        const auto& poly = std::get<PolylineGeometry>(e.geometry);
        REQUIRE(poly.pieces.size() == 1);
        CHECK(poly.pieces[0].size() == 31);
        CHECK(e.flags.split_at_infinity);
    }
    SUBCASE("point images share pi coordinates") {
        for (int k = 0; k < 100; ++k) {
            const Point4 p = 5.0 * gaussian4();
            const auto xi = project_entity(frame, cfg, {"p", p, {}}, ImageGroup::Xi);
            const auto om = project_entity(frame, cfg, {"p", p, {}}, ImageGroup::Omega);
            const Point3 a = *std::get<PointGeometry>(xi.geometry).position;
            const Point3 b = *std::get<PointGeometry>(om.geometry).position;
            CHECK(a.u == b.u);
            CHECK(a.v == b.v);
            CHECK(xi.kind() == EntityKind::Point);
        }
        const auto pole = project_entity(frame, cfg, {"n", cfg.pole(), {}}, ImageGroup::Stereo);
        CHECK(pole.flags.at_infinity);
        CHECK_FALSE(std::get<PointGeometry>(pole.geometry).position.has_value());
    }
    SUBCASE("fiber away from the pole projects to one closed piece") {
        const hopf::HopfPlacement placement;
        const auto display = StereoConfig::hopf_display();
        Curve4 c{{}, true};
        for (const auto& p : hopf::fiber_circle({1.0, 0.4}, 128)) c.vertices.push_back(placement.place(p));
        const auto e = project_entity(ProjectionFrame::hopf(), display, {"f", c, {}}, ImageGroup::Stereo);
        const auto& poly = std::get<PolylineGeometry>(e.geometry);
        CHECK(poly.closed);
        REQUIRE(poly.pieces.size() == 1);
        CHECK(poly.pieces[0].size() == 128);
        CHECK_FALSE(e.flags.split_at_infinity);
    }
    SUBCASE("meshes drop triangles at the pole") {
        const auto sec = std::get<Sphere2in4>(section_sphere(unit, Hyperplane3({1, 0, 0, 0}, 0)));
        Mesh4 m = tessellate_sphere2(sec);
        const auto e = project_entity(frame, cfg, {"m", m, {}}, ImageGroup::Stereo);
        const auto& g = std::get<MeshGeometry>(e.geometry);
        // The section passes through N, which is one of the two single pole vertices.
        CHECK(e.flags.split_at_infinity);
        CHECK(g.vertex_count() == m.vertices.size() - 1);
        CHECK(g.indices.size() == m.indices.size() - 3 * 32);
        CHECK(all_finite(e));
        const auto xi = project_entity(frame, cfg, {"m", m, {}}, ImageGroup::Xi);
        CHECK(std::get<MeshGeometry>(xi.geometry).indices == m.indices);
    }
    SUBCASE("random entities never produce non-finite coordinates") {
        for (int k = 0; k < 200; ++k) {
            Curve4 c{{}, k % 2 == 0};
            for (int i = 0; i < 20; ++i) c.vertices.push_back(i % 7 == 3 ? cfg.pole() : on_sphere(unit));
            for (auto g : {ImageGroup::Xi, ImageGroup::Omega, ImageGroup::Stereo})
                CHECK(all_finite(project_entity(frame, cfg, {"c", c, {}}, g)));
        }
    }
    CHECK_THROWS_AS(project_entity(frame, cfg, {"p", Point4{}, {}}, ImageGroup::Source3d), std::invalid_argument);
}

TEST_CASE("clip_radius") {
    SceneEntity inside{"a", ImageGroup::Stereo, PolylineGeometry{true, {{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}}}}, {}, {}};
    CHECK(clip_radius(inside, 10) == inside);

    // Line image of the fiber through the display pole.
    const hopf::HopfPlacement placement;
    const auto cfg = StereoConfig::hopf_display();
    Curve4 c{{}, true};
    for (const auto& p : hopf::fiber_circle(hopf::base_to_angles(hopf::hopf_map(hopf::kCanonicalPole)), 256))
        c.vertices.push_back(placement.place(p));
    const auto line = project_entity(ProjectionFrame::hopf(), cfg, {"pole-fiber", c, {}}, ImageGroup::Stereo);
    std::size_t beyond = 0, total = 0;
    for (const auto& piece : std::get<PolylineGeometry>(line.geometry).pieces)
        for (const auto& v : piece) {
            ++total;
            if (norm(v) > 50) ++beyond;
        }
    REQUIRE(beyond > 0);
    const auto clipped = clip_radius(line, 50);
    CHECK(clipped.flags.clipped);
    std::size_t kept = 0;
    for (const auto& piece : std::get<PolylineGeometry>(clipped.geometry).pieces)
        for (const auto& v : piece) {
            ++kept;
            CHECK(norm(v) <= 50);
        }
    CHECK(kept == total - beyond);

    const auto empty = clip_radius(inside, 1e-12);
    CHECK(empty.flags.clipped);
    CHECK(std::get<PolylineGeometry>(empty.geometry).pieces.empty());

    SceneEntity mesh{"m", ImageGroup::Stereo, MeshGeometry{{0, 0, 0, 1, 0, 0, 0, 200, 0}, {0, 1, 2}, 1, 3}, {}, {}};
    const auto m = clip_radius(mesh, 100);
    CHECK(m.flags.clipped);
    CHECK(std::get<MeshGeometry>(m.geometry).indices.empty());
    CHECK(std::get<MeshGeometry>(m.geometry).vertex_count() == 2);
    CHECK_THROWS_AS(clip_radius(inside, 0), std::invalid_argument);
}

TEST_CASE("serialize and parse") {
    SUBCASE("empty document") {
        const std::string text = serialize(SceneDocument{});
        CHECK(text.find("\"version\": \"tetraproj-scene/1\"") != std::string::npos);
        CHECK(parse(text) == SceneDocument{});
    }
    SUBCASE("one polyline") {
        SceneDocument doc;
        doc.entities.push_back({"edge", ImageGroup::Xi, PolylineGeometry{false, {{{0.1, 0.2, 0.3}, {1.0 / 3, 2, 3}}}},
                                {"#ff0000", 0.5, 2}, {}});
        CHECK(parse(serialize(doc)) == doc);
    }
    SUBCASE("unknown version") {
        try {
            parse(R"({"version": "tetraproj-scene/2", "frame": {}, "entities": []})");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.field() == "version");
        }
    }
    SUBCASE("syntax error reports its line") {
        try {
            parse("{\n  \"version\": \"tetraproj-scene/1\",\n  \"frame\": {\n}}}\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
        }
    }
    SUBCASE("schema error reports its field") {
        SceneDocument doc;
        doc.entities.push_back({"p", ImageGroup::Xi, PointGeometry{Point3{1, 2, 3}}, {}, {}});
        std::string text = serialize(doc);
        text.replace(text.find("[1, 2, 3]"), 9, "[1, \"x\", 3]");
        try {
            parse(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.field() == "entities[0].geometry[1]");
        }
        CHECK_THROWS_AS(parse(R"({"version": "tetraproj-scene/1"})"), ParseError);
    }
    SUBCASE("invalid documents are rejected") {
        SceneDocument doc;
        doc.entities.push_back({"x", ImageGroup::Xi, PointGeometry{}, {}, {}});
        doc.entities.push_back({"x", ImageGroup::Xi, PointGeometry{}, {}, {}});
        CHECK_THROWS_AS(doc.validate(), std::invalid_argument);
        CHECK_THROWS_AS(parse(serialize(doc)), ParseError);
        doc.entities.pop_back();
        doc.entities.push_back({"m", ImageGroup::Xi, MeshGeometry{{0, 0, 0}, {0, 0, 1}}, {}, {}});
        CHECK_THROWS_AS(doc.validate(), std::invalid_argument);
        SceneDocument bad;
        bad.entities.push_back({"p", ImageGroup::Xi, PointGeometry{Point3{NAN, 0, 0}}, {}, {}});
        CHECK_THROWS_AS(serialize(bad), std::invalid_argument);
    }
    SUBCASE("numbers carry 17 significant digits and -0 is normalized") {
        SceneDocument doc;
        doc.entities.push_back({"p", ImageGroup::Xi, PointGeometry{Point3{0.1, -0.0, 1e-300}}, {}, {}});
        const std::string text = serialize(doc);
        CHECK(text.find("0.10000000000000001") != std::string::npos);
        CHECK(text.find("-0,") == std::string::npos);
        const auto back = std::get<PointGeometry>(parse(text).entities[0].geometry).position;
        CHECK(bit_equal(back->v, 0.0));
    }
    SUBCASE("random documents round-trip bit-identically") {
        for (int k = 0; k < 300; ++k) {
            const SceneDocument doc = random_document();
            const std::string text = serialize(doc);
            const SceneDocument back = parse(text);
            CHECK(back == doc);
            CHECK(serialize(back) == text);
            for (std::size_t i = 0; i < doc.entities.size(); ++i)
                if (const auto* m = std::get_if<MeshGeometry>(&doc.entities[i].geometry)) {
                    const auto& n = std::get<MeshGeometry>(back.entities[i].geometry);
                    for (std::size_t j = 0; j < m->vertices.size(); ++j) CHECK(bit_equal(m->vertices[j], n.vertices[j]));
                }
        }
    }
}

TEST_CASE("export_obj") {
    SceneDocument doc;
    doc.entities.push_back({"tri", ImageGroup::Stereo, MeshGeometry{{0, 0, 0, 1, 0, 0, 0, 1, 0}, {0, 1, 2}}, {}, {}});
    std::string obj = export_obj(doc);
    CHECK(count_lines(obj, "v ") == 3);
    CHECK(count_lines(obj, "f ") == 1);
    CHECK(obj.find("f 1 2 3\n") != std::string::npos);

    doc.entities.push_back(
        {"poly", ImageGroup::Xi, PolylineGeometry{false, {{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}}}, {}, {}});
    obj = export_obj(doc);
    CHECK(obj.find("l 4 5 6 7\n") != std::string::npos);
    CHECK(count_lines(obj, "o ") == 2);

    doc.entities.push_back({"ball", ImageGroup::Omega, SphereGeometry{{0, 0, 0}, 1}, {}, {}});
    const std::string balls = export_obj(doc, {ImageGroup::Omega});
    CHECK(count_lines(balls, "v ") == 2 + 15 * 32);
    CHECK(count_lines(balls, "f ") == 2 * 32 + 14 * 32 * 2);

    const std::string none = export_obj(doc, {ImageGroup::Source3d});
    CHECK(count_lines(none, "#") == 1);
    CHECK(count_lines(none, "v ") == 0);
    CHECK(count_lines(none, "o ") == 0);
}
