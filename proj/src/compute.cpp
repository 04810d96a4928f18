#include "tetraproj/compute.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "json_text.hpp"
#include "tetraproj/figures.hpp"

namespace tetraproj::compute {

namespace {

using json = nlohmann::ordered_json;
using scene::detail::to_json;

// Malformed request parameters.
class BadRequest : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Params {
  public:
    explicit Params(const json& j) : j_(j) {
        if (!j_.is_object()) throw BadRequest("params must be an object");
    }

    bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
    const json& raw(const char* key) const {
        if (!j_.contains(key)) throw BadRequest(std::string("missing parameter '") + key + "'");
        return j_.at(key);
    }

    double number(const char* key) const {
        const json& v = raw(key);
        if (!v.is_number()) throw BadRequest(std::string("parameter '") + key + "' must be a number");
        return v.get<double>();
    }
    double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

    int integer(const char* key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number_integer()) throw BadRequest(std::string("parameter '") + key + "' must be an integer");
        return v.get<int>();
    }

    bool boolean(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) throw BadRequest(std::string("parameter '") + key + "' must be a boolean");
        return v.get<bool>();
    }

    std::string string(const char* key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_string()) throw BadRequest(std::string("parameter '") + key + "' must be a string");
        return v.get<std::string>();
    }

    template <std::size_t N>
    std::array<double, N> vec(const json& v, const std::string& what) const {
        if (!v.is_array() || v.size() != N)
            throw BadRequest(what + " must be an array of " + std::to_string(N) + " numbers");
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) {
            if (!v[i].is_number()) throw BadRequest(what + " must be an array of " + std::to_string(N) + " numbers");
            out[i] = v[i].get<double>();
        }
        return out;
    }
    Point4 point4(const json& v, const std::string& what) const {
        const auto a = vec<4>(v, what);
        return {a[0], a[1], a[2], a[3]};
    }
    Point3 point3(const json& v, const std::string& what) const {
        const auto a = vec<3>(v, what);
        return {a[0], a[1], a[2]};
    }
    Point4 point4(const char* key) const { return point4(raw(key), std::string("parameter '") + key + "'"); }
    Point3 point3(const char* key) const { return point3(raw(key), std::string("parameter '") + key + "'"); }

    ExtendedPoint3 extended3(const char* key) const {
        const json& v = raw(key);
        if (v.is_null()) return ExtendedPoint3::infinity();
        return point3(key);
    }

    figures::Setup setup() const {
        figures::Setup s = frame_setup();
        if (!has("config")) return s;
        const json& c = raw("config");
        if (c.is_string()) {
            s.cfg = figures::Setup::named(c.get<std::string>()).cfg;
            return s;
        }
        if (!c.is_object()) throw BadRequest("config must be a preset name or an object");
        const Params p(c);
        s.cfg = StereoConfig(Sphere3(p.point4("center"), p.number("radius")), p.point4("pole"));
        return s;
    }

  private:
    figures::Setup frame_setup() const {
        const std::string name = string("frame", "standard");
        try {
            return figures::Setup::named(name);
        } catch (const std::invalid_argument& e) {
            throw BadRequest(e.what());
        }
    }

    const json& j_;
};

json optional3(const ExtendedPoint3& p) { return p.is_infinite() ? json(nullptr) : to_json(p.point()); }
json optional3(const std::optional<Point3>& p) { return p ? to_json(*p) : json(nullptr); }

json entities_json(const std::vector<scene::SceneEntity>& entities) {
    json out = json::array();
    for (const auto& e : entities) out.push_back(scene::detail::entity_json(e));
    return out;
}

hopf::CleliaSpec clelia_spec(const Params& p, const char* resolution_key, int resolution) {
    const double s = p.number("s");
    hopf::CleliaSpec spec = figures::default_spec(s, p.integer(resolution_key, resolution));
    if (p.has("psi_range")) {
        const auto r = p.vec<2>(p.raw("psi_range"), "parameter 'psi_range'");
        spec.psi_lo = r[0];
        spec.psi_hi = r[1];
    }
    spec.validate();
    return spec;
}

json op_stereo_project(const Params& p) {
    const auto q = stereo_project(p.setup().cfg, p.point4("point"));
    return {{"point", optional3(q)}, {"at_infinity", q.is_infinite()}};
}

json op_stereo_unproject(const Params& p) {
    return {{"point", to_json(stereo_unproject(p.setup().cfg, p.extended3("point")))}};
}

json op_project_double(const Params& p) {
    const auto c = project_double(p.setup().frame, p.point4("point"));
    return {{"xi", to_json(c.xi_image)}, {"omega", to_json(c.omega_image)}};
}

json op_point_construction(const Params& p) {
    const figures::Setup s = p.setup();
    const Point4 a = p.has("point") ? p.point4("point") : stereo_unproject(s.cfg, p.extended3("stereo"));
    const auto c = stereo_point_construction(s.frame, s.cfg, a);
    return {
        {"point", to_json(a)},
        {"xi", to_json(c.point.xi_image)},
        {"omega", to_json(c.point.omega_image)},
        {"pole_xi", to_json(c.pole.xi_image)},
        {"pole_omega", to_json(c.pole.omega_image)},
        {"pole_image", c.pole_in_omega ? "omega" : "xi"},
        {"auxiliary", optional3(c.auxiliary)},
        {"stereo", optional3(c.stereo)},
        {"stereo_modeling", optional3(c.stereo_modeling)},
        {"at_infinity", c.stereo.is_infinite()},
    };
}

json op_inversion(const Params& p) {
    const auto img = spherical_inversion(p.setup().cfg, p.extended3("point"));
    return {{"point", optional3(img)}, {"at_infinity", img.is_infinite()}};
}

json op_hopf_map(const Params& p) {
    const Point3 b = hopf::hopf_map(p.point4("point"));
    const auto angles = hopf::base_to_angles(b);
    return {{"base", to_json(b)}, {"psi", angles.psi}, {"phi", angles.phi}};
}

json op_fiber(const Params& p) {
    Point3 base;
    if (p.has("base")) {
        base = p.point3("base");
    } else {
        const hopf::CleliaSpec spec{p.number("s")};
        base = hopf::clelia(spec, p.number("psi")) - hopf::kCurveCenter;
    }
    const auto angles = hopf::base_to_angles(base);
    const int samples = p.integer("samples", 128);
    const hopf::HopfPlacement placement;
    json canonical = json::array(), display = json::array();
    for (const auto& v : hopf::fiber_circle(angles, samples)) {
        canonical.push_back(to_json(v));
        display.push_back(to_json(placement.place(v)));
    }
    return {
        {"base", to_json(base)},
        {"psi", angles.psi},
        {"phi", angles.phi},
        {"canonical", std::move(canonical)},
        {"display", std::move(display)},
        {"entities", entities_json(figures::fiber_entities(angles, samples, "fiber"))},
    };
}

json op_torus(const Params& p) {
    const hopf::CleliaSpec spec = clelia_spec(p, "rows", 256);
    const int cols = p.integer("cols", 64);
    return {
        {"rows", spec.resolution},
        {"cols", cols},
        {"psi_range", json::array({spec.psi_lo, spec.psi_hi})},
        {"closed_psi", hopf::is_closed(spec)},
        {"entities", entities_json(figures::torus_entities(spec, cols))},
    };
}

json op_self_intersections(const Params& p) {
    const hopf::CleliaSpec spec = clelia_spec(p, "resolution", 512);
    json pairs = json::array();
    for (const auto& x : hopf::self_intersection_fibers(spec))
        pairs.push_back({{"psi1", x.psi1}, {"psi2", x.psi2}, {"point", to_json(x.point)}});
    return {{"pairs", std::move(pairs)}};
}

json op_lift(const Params& p) {
    const figures::Setup s = p.setup();
    const json& raw = p.raw("curve");
    if (!raw.is_array()) throw BadRequest("parameter 'curve' must be an array of points");
    std::vector<Point3> curve;
    for (std::size_t i = 0; i < raw.size(); ++i)
        curve.push_back(p.point3(raw[i], "curve[" + std::to_string(i) + "]"));
    const figures::Lift lift = figures::lift_curve(s, curve, p.boolean("closed", false), p.integer("subdivide", 1));
    json lifted = json::array();
    for (const auto& v : lift.lifted) lifted.push_back(to_json(v));
    const auto doc = figures::lift_scene(s, lift);
    std::vector<scene::SceneEntity> curves;
    for (const auto& e : doc.entities)
        if (e.id.rfind("curve-", 0) == 0) curves.push_back(e);
    return {{"closed", lift.closed}, {"vertices", std::move(lifted)}, {"entities", entities_json(curves)}};
}

const std::map<std::string, std::function<json(const Params&)>>& ops() {
    static const std::map<std::string, std::function<json(const Params&)>> table{
        {"stereo_project", op_stereo_project},
        {"stereo_unproject", op_stereo_unproject},
        {"project_double", op_project_double},
        {"point_construction", op_point_construction},
        {"inversion", op_inversion},
        {"hopf_map", op_hopf_map},
        {"fiber", op_fiber},
        {"torus", op_torus},
        {"self_intersections", op_self_intersections},
        {"lift", op_lift},
    };
    return table;
}

json error(const std::string& code, const std::string& message) {
    return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

std::vector<std::string> op_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : ops()) out.push_back(name);
    return out;
}

std::string handle(const std::string& request) {
    json reply;
    json id;
    try {
        const json req = json::parse(request);
        if (!req.is_object()) throw BadRequest("request must be an object");
        if (req.contains("id")) id = req.at("id");
        if (!req.contains("op") || !req.at("op").is_string()) throw BadRequest("request needs a string 'op'");
        const std::string op = req.at("op").get<std::string>();
        const auto it = ops().find(op);
        if (it == ops().end()) {
            reply = error("UnknownOp", "unknown op '" + op + "'");
        } else {
            static const json empty = json::object();
            reply = {{"result", it->second(Params(req.contains("params") ? req.at("params") : empty))}};
        }
    } catch (const json::parse_error& e) {
        reply = error("BadRequest", std::string("malformed JSON: ") + e.what());
    } catch (const BadRequest& e) {
        reply = error("BadRequest", e.what());
    } catch (const GeometryError& e) {
        reply = error(to_string(e.code()), e.what());
    } catch (const std::exception& e) {
        reply = error("BadRequest", e.what());
    }
    if (!id.is_null()) {
        json with_id{{"id", id}};
        for (auto& [k, v] : reply.items()) with_id[k] = v;
        reply = std::move(with_id);
    }
    try {
        return scene::detail::format_json(reply, false);
    } catch (const std::exception& e) {
        return scene::detail::format_json(error("Internal", e.what()), false);
    }
}

}  // namespace tetraproj::compute
