#pragma once

#include <string>
#include <vector>

// Request/response boundary for interactive clients. A request is a JSON
// object {"op": ..., "params": {...}, "id"?: ...}; the reply is
// {"result": ...} or {"error": {"code": ..., "message": ...}}, echoing "id"
// when present. Numbers follow the scene format (17 significant digits).
//
// Ops:
//   stereo_project      {config?, point: [x,y,z,w]}      -> {point: [u,v,t] | null, at_infinity}
//   stereo_unproject    {config?, point: [u,v,t] | null} -> {point: [x,y,z,w]}
//   project_double      {frame?, point}                  -> {xi, omega}
//   point_construction  {frame?, config?, point | stereo} -> construction trace
//   inversion           {config?, point: [u,v,t] | null} -> {point | null, at_infinity}
//   hopf_map            {point}                          -> {base, psi, phi}
//   fiber               {base | (s, psi), samples?, display?} -> fiber and its images
//   torus               {s, psi_range?, rows?, cols?}    -> torus image meshes
//   self_intersections  {s, psi_range?, resolution?}     -> {pairs}
//   lift                {config?, frame?, curve, closed?} -> lifted curve and images
//
// "frame" is "standard" (default) or "hopf". "config" is "standard", "hopf"
// or {center, radius, pole}; it defaults to the frame's own configuration.
namespace tetraproj::compute {

/// Handles one request given as JSON text; never throws.
std::string handle(const std::string& request);

/// Names of all supported ops.
std::vector<std::string> op_names();

}  // namespace tetraproj::compute
