#include "tetraproj/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "tetraproj/compute.hpp"
#include "tetraproj/figures.hpp"

namespace tetraproj::cli {

namespace {

using json = nlohmann::json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || !std::isfinite(x))
            throw InputError(what + ": '" + item + "' is not a number");
        out.push_back(x);
    }
    if (out.size() != count)
        throw InputError(what + ": expected " + std::to_string(count) + " comma-separated numbers, got '" + text + "'");
    return out;
}

Point4 parse_point4(const std::string& text, const std::string& what) {
    const auto v = parse_numbers(text, 4, what);
    return {v[0], v[1], v[2], v[3]};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("cannot read '" + path + "'");
    return ss.str();
}

// A JSON array of coordinate triples.
std::vector<Point3> read_points3(const std::string& path) {
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
    if (!j.is_array()) throw InputError(path + ": expected an array of [x, y, z] points");
    std::vector<Point3> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& p = j[i];
        if (!p.is_array() || p.size() != 3 || !std::all_of(p.begin(), p.end(), [](const json& x) { return x.is_number(); }))
            throw InputError(path + ": entry " + std::to_string(i) + " is not an [x, y, z] point");
        out.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return out;
}

class Output {
  public:
    Output(std::string path, std::ostream& fallback) : path_(std::move(path)), fallback_(fallback) {}

    void write(const std::string& text) const {
        if (path_.empty() || path_ == "-") {
            fallback_ << text;
            fallback_.flush();
            return;
        }
        std::ofstream f(path_, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write '" + path_ + "'");
        f << text;
        f.close();
        if (!f) throw IoError("cannot write '" + path_ + "'");
    }

  private:
    std::string path_;
    std::ostream& fallback_;
};

void add_out(CLI::App* cmd, std::string& out) {
    cmd->add_option("--out,-o", out, "output file (stdout when omitted or -)");
}

void add_frame(CLI::App* cmd, std::string& frame) {
    cmd->add_option("--frame", frame, "projection frame and sphere placement")
        ->check(CLI::IsMember({"standard", "hopf"}))
        ->capture_default_str();
}

int serve(const std::string& host, int port, std::ostream& err) {
    httplib::Server server;
    const auto cors = [](httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    };
    server.Post("/compute", [&](const httplib::Request& req, httplib::Response& res) {
        cors(res);
        res.set_content(compute::handle(req.body), "application/json");
    });
    server.Options("/compute", [&](const httplib::Request&, httplib::Response& res) { cors(res); });
    server.Get("/ops", [&](const httplib::Request&, httplib::Response& res) {
        cors(res);
        res.set_content(json(compute::op_names()).dump(), "application/json");
    });
    if (!server.bind_to_port(host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
    err << "serving on http://" << host << ":" << port << "/compute\n";
    server.listen_after_bind();
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Double orthogonal and stereographic projections of the 3-sphere", "tetraproj"};
    app.require_subcommand(1);

    std::string out_path, frame = "standard";

    auto* point = app.add_subcommand("point", "stereographic image of a point and its construction");
    std::string coords;
    point->add_option("--coords", coords, "x,y,z,w")->required();
    add_frame(point, frame);
    add_out(point, out_path);

    auto* tetra = app.add_subcommand("tetra", "hyperspherical tetrahedron");
    std::vector<std::string> vertices;
    bool circumsphere = false;
    int edge_samples = 64;
    tetra->add_option("--vertices", vertices, "four points x,y,z,w")->expected(4);
    tetra->add_flag("--circumsphere", circumsphere, "add the circumscribed 2-sphere");
    tetra->add_option("--samples", edge_samples, "segments per edge")->check(CLI::PositiveNumber)->capture_default_str();
    add_frame(tetra, frame);
    add_out(tetra, out_path);

    auto* invert = app.add_subcommand("invert", "spherical inversion of points of the central 3-space");
    std::string points_path;
    std::size_t selected = 0;
    invert->add_option("--points", points_path, "JSON array of [x, y, z]")->required();
    invert->add_option("--select", selected, "index of the point whose stereographic legs are drawn")
        ->capture_default_str();
    add_frame(invert, frame);
    add_out(invert, out_path);

    auto* hopf_cmd = app.add_subcommand("hopf", "Hopf torus over a Clelia curve");
    double s = 1;
    std::string psi_range, res = "256x64";
    std::optional<double> psi;
    hopf_cmd->add_option("--s", s, "Clelia parameter")->capture_default_str();
    hopf_cmd->add_option("--psi-range", psi_range, "a,b (default: the closing interval)");
    hopf_cmd->add_option("--res", res, "RxB rows along the curve and samples along each fiber")->capture_default_str();
    hopf_cmd->add_option("--psi", psi, "curve parameter of the highlighted fiber");
    add_out(hopf_cmd, out_path);

    auto* lift = app.add_subcommand("lift", "lift a polyline of the stereographic image to the sphere");
    std::string curve_path;
    bool closed = false;
    int subdivide = 1;
    lift->add_option("--curve", curve_path, "JSON array of [x, y, z] target coordinates")->required();
    lift->add_flag("--closed", closed, "treat the polyline as closed");
    lift->add_option("--subdivide", subdivide, "segments per input segment")->capture_default_str();
    add_frame(lift, frame);
    add_out(lift, out_path);

    auto* hexa = app.add_subcommand("hexa", "hyperspherical hexahedron");
    std::string ranges;
    bool faces = false;
    int hexa_samples = 32;
    hexa->add_option("--ranges", ranges, "psi_lo,psi_hi,theta_lo,theta_hi,phi_lo,phi_hi");
    hexa->add_flag("--faces", faces, "add face meshes");
    hexa->add_option("--samples", hexa_samples, "segments per edge")->check(CLI::PositiveNumber)->capture_default_str();
    add_frame(hexa, frame);
    add_out(hexa, out_path);

    auto* concentric = app.add_subcommand("concentric", "parallel sections and their concentric images");
    int count = 5;
    concentric->add_option("--count", count, "number of sections")->capture_default_str();
    add_frame(concentric, frame);
    add_out(concentric, out_path);

    auto* obj = app.add_subcommand("export-obj", "convert a scene to Wavefront OBJ");
    std::string in_path;
    std::vector<std::string> groups;
    obj->add_option("--in", in_path, "scene file")->required();
    obj->add_option("--group", groups, "image groups to keep (default: all)")
        ->check(CLI::IsMember({"xi", "omega", "stereo", "source3d"}));
    add_out(obj, out_path);

    auto* compute_cmd = app.add_subcommand("compute", "answer JSON requests, one per line of stdin");
    std::string request;
    compute_cmd->add_option("--request", request, "answer a single request instead");

    auto* serve_cmd = app.add_subcommand("serve", "answer JSON requests over HTTP (POST /compute)");
    std::string host = "127.0.0.1";
    int port = 8765;
    serve_cmd->add_option("--host", host)->capture_default_str();
    serve_cmd->add_option("--port", port)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const Output output(out_path, out);
        if (*point) {
            output.write(scene::serialize(figures::point_scene(figures::Setup::named(frame), parse_point4(coords, "--coords"))));
        } else if (*tetra) {
            const auto setup = figures::Setup::named(frame);
            std::array<Point4, 4> v{};
            if (vertices.empty()) {
                const std::array<Point4, 4> regular{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}};
                const Sphere3& sph = setup.cfg.sphere();
                for (int i = 0; i < 4; ++i) v[i] = sph.center + sph.radius * regular[i];
            } else {
                for (int i = 0; i < 4; ++i) v[i] = parse_point4(vertices[i], "--vertices");
            }
            output.write(scene::serialize(figures::tetra_scene(setup, v, circumsphere, edge_samples)));
        } else if (*invert) {
            const auto pts = read_points3(points_path);
            output.write(scene::serialize(figures::invert_scene(figures::Setup::named(frame), pts, selected)));
        } else if (*hopf_cmd) {
            int rows = 0, cols = 0;
            char x = 0, extra = 0;
            if (std::sscanf(res.c_str(), "%d%c%d%c", &rows, &x, &cols, &extra) != 3 || x != 'x')
                throw InputError("--res: expected RxB, got '" + res + "'");
            if (rows < 2 || cols < 2) throw InputError("--res: both resolutions must be >= 2");
            figures::HopfOptions options{figures::default_spec(s, rows), cols, psi};
            if (!psi_range.empty()) {
                const auto r = parse_numbers(psi_range, 2, "--psi-range");
                options.spec.psi_lo = r[0];
                options.spec.psi_hi = r[1];
            }
            output.write(scene::serialize(figures::hopf_scene(options)));
        } else if (*lift) {
            const auto setup = figures::Setup::named(frame);
            const auto lifted = figures::lift_curve(setup, read_points3(curve_path), closed, subdivide);
            output.write(scene::serialize(figures::lift_scene(setup, lifted)));
        } else if (*hexa) {
            figures::HexaOptions options;
            options.faces = faces;
            options.edge_samples = hexa_samples;
            if (!ranges.empty()) {
                const auto r = parse_numbers(ranges, 6, "--ranges");
                options.psi = {r[0], r[1]};
                options.theta = {r[2], r[3]};
                options.phi = {r[4], r[5]};
            }
            output.write(scene::serialize(figures::hexa_scene(figures::Setup::named(frame), options)));
        } else if (*concentric) {
            output.write(scene::serialize(figures::concentric_scene(figures::Setup::named(frame), count)));
        } else if (*obj) {
            const auto doc = scene::parse(read_file(in_path));
            std::vector<scene::ImageGroup> filter;
            for (const auto& g : groups) filter.push_back(scene::group_from_string(g));
            output.write(scene::export_obj(doc, filter));
        } else if (*compute_cmd) {
            if (!request.empty()) {
                out << compute::handle(request) << '\n';
            } else {
                std::string line;
                while (std::getline(in, line)) {
                    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                    out << compute::handle(line) << '\n' << std::flush;
                }
            }
        } else if (*serve_cmd) {
            return serve(host, port, err);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const scene::ParseError& e) {
        err << "error: " << e.what();
        if (e.line() > 0) err << " (line " << e.line() << ")";
        err << '\n';
        return kExitInput;
    } catch (const GeometryError& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}

}  // namespace tetraproj::cli
