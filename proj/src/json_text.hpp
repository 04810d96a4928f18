#pragma once

// Internal JSON helpers shared by the scene writer and the compute boundary.

#include <string>

#include "json.hpp"
#include "tetraproj/scene.hpp"

namespace tetraproj::scene::detail {

/// Numbers as %.17g with -0 written as 0; throws std::invalid_argument on
/// non-finite numbers. `pretty` indents by two spaces and keeps arrays of
/// scalars on one line; otherwise the text is a single line.
std::string format_json(const nlohmann::ordered_json& j, bool pretty);

inline nlohmann::ordered_json to_json(Point3 p) { return nlohmann::ordered_json::array({p.u, p.v, p.t}); }
inline nlohmann::ordered_json to_json(Point4 p) { return nlohmann::ordered_json::array({p.x, p.y, p.z, p.w}); }

nlohmann::ordered_json geometry_json(const Geometry& g);
nlohmann::ordered_json entity_json(const SceneEntity& e);

}  // namespace tetraproj::scene::detail
