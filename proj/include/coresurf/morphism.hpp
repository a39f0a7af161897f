#pragma once

#include <optional>
#include <utility>

#include "coresurf/tiled_surface.hpp"

namespace coresurf {

// Label- and incidence-preserving map of complexes. Because every vertex has
// at most one edge end per slot, such a map is determined by the image of one
// vertex per component and is automatically injective on each vertex star.
struct Morphism {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> face_map;
};

// Throws InvariantError if m is not a morphism src -> dst.
void verify_morphism(const TiledSurface& src, const TiledSurface& dst, const Morphism& m);

// The unique extension of the seed assignments, or nullopt if none exists.
// Seeds must cover every component of src; faces of src must land on faces
// of dst.
std::optional<Morphism> find_morphism(const TiledSurface& src, const TiledSurface& dst,
                                      const std::vector<std::pair<int, int>>& seeds);

std::optional<Morphism> isomorphic(const TiledSurface& a, const TiledSurface& b);

}  // namespace coresurf
