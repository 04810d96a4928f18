#include "json_text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tetraproj::scene::detail {

namespace {

using json = nlohmann::ordered_json;

void write_number(std::string& out, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("JSON output contains a non-finite number");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
    out += buf;
}

bool is_scalar_array(const json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
}

void write_json(std::string& out, const json& j, int indent, bool pretty) {
    const std::string pad = pretty ? "\n" + std::string(2 * (indent + 1), ' ') : "";
    const std::string close_pad = pretty ? "\n" + std::string(2 * indent, ' ') : "";
    switch (j.type()) {
        case json::value_t::number_float: write_number(out, j.get<double>()); return;
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += pretty ? "," : ", ";
                first = false;
                out += pad + json(key).dump() + ": ";
                write_json(out, value, indent + 1, pretty);
            }
            out += close_pad + "}";
            return;
        }
        case json::value_t::array: {
            const bool flat = !pretty || j.empty() || is_scalar_array(j);
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += flat ? ", " : ",";
                if (!flat) out += pad;
                write_json(out, j[i], indent + 1, pretty);
            }
            if (!flat) out += close_pad;
            out += "]";
            return;
        }
        default: out += j.dump(); return;
    }
}

}  // namespace

std::string format_json(const nlohmann::ordered_json& j, bool pretty) {
    std::string out;
    write_json(out, j, 0, pretty);
    return out;
}

}  // namespace tetraproj::scene::detail
