#pragma once

#include <string>

#include "coresurf/tiled_surface.hpp"
#include "coresurf/word.hpp"

namespace coresurf {

// Renumbers cells breadth-first from the least vertex of each component,
// scanning slots clockwise, so equal complexes always serialize identically.
// The maps send old ids to new ids.
struct CanonicalResult {
  TiledSurface surface;
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> face_map;
};
CanonicalResult canonicalize(const TiledSurface& Y);

// JSON with fields genus, vertices, edges, faces. Output is canonicalized,
// so serializing is idempotent on its own output.
std::string to_json(const TiledSurface& Y);

// Throws ParseError on malformed documents. Semantic problems (port
// collisions, faces that do not read the relator) are left for validate().
TiledSurface from_json(const std::string& text);

std::string to_dot(const TiledSurface& Y);

}  // namespace coresurf
