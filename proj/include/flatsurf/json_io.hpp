#pragma once

#include <string>

#include "flatsurf/core.hpp"

namespace flatsurf {

/// Surface description format:
/// { "polygons": [{"id": int, "vertices": [[x,y],...]}],
///   "gluings":  [{"a":[pid,edge],"b":[pid,edge]}],
///   "tolerance": real }
/// Edge k of a polygon joins vertex k to vertex k+1 (mod n).
std::string surface_to_json(const ConeSurface& surface);
ConeSurface surface_from_json(const std::string& text);
ConeSurface load_surface(const std::string& path);
void save_surface(const ConeSurface& surface, const std::string& path);

}  // namespace flatsurf
