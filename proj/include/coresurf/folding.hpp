#pragma once

#include "coresurf/tiled_surface.hpp"

namespace coresurf {

// fold() always reaches the same complex; randomize only permutes the order
// in which collisions are processed, which the confluence tests exercise.
struct FoldOptions {
  bool randomize = false;
  unsigned seed = 0;
};

// Mutable complex that tolerates port collisions until fold() clears them.
// Vertices live in a union-find; superseded edges point at their survivor.
class PreComplex {
 public:
  explicit PreComplex(const Presentation& p) : pres_(p) {}
  static PreComplex from_surface(const TiledSurface& Y);

  const Presentation& pres() const { return pres_; }
  int add_vertex();
  int add_edge(int src, int dst, int label);
  void add_face(Face steps);
  void merge_vertices(int a, int b);

  int vertex_rep(int v) const;
  int edge_rep(int e) const;

  // Merges same-slot edge ends until none remain. Deterministic; with
  // opt.randomize the processing order is shuffled instead.
  void fold(const FoldOptions& opt = {});

  // Densely renumbered complex with faces canonically rotated and
  // deduplicated. vertex_image maps every PreComplex vertex id to its final
  // id. Requires a prior fold (port collisions are an InvariantError here).
  TiledSurface freeze(std::vector<int>* vertex_image = nullptr) const;

 private:
  struct PEdge {
    int src;
    int dst;
    int label;
  };
  Presentation pres_;
  mutable std::vector<int> vparent_;
  mutable std::vector<int> ereplaced_;  // -1 for live edges, else the successor
  std::vector<PEdge> edges_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> ends_;  // per root vertex, encoded edge ends

  bool end_live_at(int enc, int v) const;
  int end_slot(int enc) const;
};

enum class SegmentKind { long_block, long_chain, half_block, half_chain };

// Names a verified structure inside one boundary cycle of a complex, by its
// position in that cycle's block decomposition.
struct BoundarySegment {
  int cycle = 0;
  int first_block = 0;
  int block_count = 1;
};

// Glues one fresh relator face per block of the segment along it and folds.
// Verifies that the segment really has the stated kind (invalid_argument if
// not) and asserts the boundary-length and potential effects:
//   long block of length b: boundary shrinks by 2(b - 2g)
//   long chain:             boundary shrinks by 2
//   half-block, half-chain: boundary lengths preserved, potential grows by
//                           8g(g-1) per attached face
TiledSurface attach_along(const TiledSurface& Y, const BoundarySegment& seg, SegmentKind kind,
                          const FoldOptions& opt = {});

// Attaches along long blocks, then long chains, until none remain. The
// boundary length strictly decreases with every attachment. tracked_vertex,
// when given, is followed through all vertex merges.
TiledSurface boundary_reduce(TiledSurface Y, const FoldOptions& opt = {},
                             int* tracked_vertex = nullptr);

// Additionally attaches along half-blocks and half-chains until none remain.
// Boundary lengths stay fixed while the potential strictly increases, which
// bounds the number of steps.
TiledSurface strong_boundary_reduce(TiledSurface Y, const FoldOptions& opt = {},
                                    int* tracked_vertex = nullptr);

// 4g V - 2E, the number of unoccupied half-edge slots.
long long hanging_potential(const TiledSurface& Y);

struct PointedCoreSurface {
  TiledSurface surface;
  int basepoint = 0;
  // The complex is the core for the conjugated subgroup s J s'; membership
  // of w in J reads off by tracing s w s' from the basepoint.
  Word conjugator;
};

PointedCoreSurface core_surface_from_generators(const std::vector<Word>& gens,
                                                const Presentation& p,
                                                const FoldOptions& opt = {});

}  // namespace coresurf
