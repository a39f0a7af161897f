#pragma once

#include <optional>
#include <string>

#include "coresurf/word_calculus.hpp"

namespace coresurf {

// Directed edge labeled by a generator (1..2g).
struct EdgeRec {
  int src = 0;
  int dst = 0;
  int label = 1;
  bool operator==(const EdgeRec&) const = default;
};

// One step of a face boundary: edge traversed along (+1) or against (-1) its
// direction.
struct FaceStep {
  int edge = 0;
  int dir = +1;
  auto operator<=>(const FaceStep&) const = default;
};
using Face = std::vector<FaceStep>;

// "a1", "b1", "a2", ... for generator indices 1..2g.
std::string generator_token(int label);
int parse_generator_token(const std::string& token, const Presentation& p);

// A CW-complex with directed labeled edges and 4g-gon faces reading the
// relator. Faces are stored rotated to their unique a1-forward step (the
// step reading relator position 0), which makes face equality a plain
// sequence comparison.
struct TiledSurface {
  Presentation pres;
  int num_vertices = 0;
  std::vector<EdgeRec> edges;
  std::vector<Face> faces;

  explicit TiledSurface(const Presentation& p) : pres(p) {}

  Letter step_letter(const FaceStep& s) const {
    return Letter::make(edges[s.edge].label, s.dir < 0);
  }
  int step_from(const FaceStep& s) const {
    return s.dir > 0 ? edges[s.edge].src : edges[s.edge].dst;
  }
  int step_to(const FaceStep& s) const {
    return s.dir > 0 ? edges[s.edge].dst : edges[s.edge].src;
  }
};

TiledSurface single_vertex_surface(const Presentation& p);

inline bool operator==(const TiledSurface& a, const TiledSurface& b) {
  return a.pres.genus() == b.pres.genus() && a.num_vertices == b.num_vertices &&
         a.edges == b.edges && a.faces == b.faces;
}

// Rotates a relator-reading face to start at its a1-forward step. The
// optional flavor reports faces that read no rotation of the relator; the
// plain one treats that as an InvariantError.
std::optional<Face> try_canonical_face_rotation(const TiledSurface& Y, Face f);
Face canonical_face_rotation(const TiledSurface& Y, Face f);

// Occupancy of the 4g half-edge slots at every vertex. Encoded entry:
// edge*2 for the source end, edge*2+1 for the target end, -1 for empty.
// When P1 is violated, all claimants beyond the first are listed separately.
struct SlotTable {
  int slots = 0;
  std::vector<int> at;  // vertex * slots + slot -> encoded end or -1
  std::vector<std::string> collisions;

  int get(int v, int s) const { return at[v * slots + s]; }
};
SlotTable build_slot_table(const TiledSurface& Y);

struct Diagnostics {
  std::vector<std::string> violations;
  bool boundary_reduced = false;
  bool p2_certified = false;  // boundary reduced implies full tiled-surface-hood
  bool ok() const { return violations.empty(); }
};
Diagnostics validate(const TiledSurface& Y);

// One oriented boundary component of the thick version. Steps traverse free
// directed edges (no face on the left); empty cycles mark isolated vertices.
struct BoundaryStep {
  int edge = 0;
  int dir = +1;
  int gap_to_next = 0;
};
struct BoundaryCycle {
  std::vector<BoundaryStep> steps;
  Word word;
  int base_vertex = 0;  // meaningful for empty cycles; else steps[0]'s source
  int length() const { return static_cast<int>(steps.size()); }
};
std::vector<BoundaryCycle> boundary_cycles(const TiledSurface& Y);

// Cyclic block structure of a boundary cycle: maximal gap-0 runs, split into
// pieces of at most 4g letters, with the slot gap following each block.
struct BlockDecomposition {
  struct Block {
    int start = 0;  // index into cycle.steps
    int len = 0;
    int pos = 0;  // relator position of the first letter
    int following_gap = 0;
  };
  std::vector<Block> blocks;
  bool has_long_block = false;
  bool has_long_chain = false;
  bool has_half_block = false;
  bool is_half_chain = false;
};
BlockDecomposition block_decomposition(const BoundaryCycle& c, const Presentation& p);

bool is_boundary_reduced(const TiledSurface& Y);
bool is_strongly_boundary_reduced(const TiledSurface& Y);

struct ComponentStats {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int chi = 0;
  int boundary_cycles = 0;
  int genus = 0;
};
struct Stats {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int chi = 0;
  int boundary_edges = 0;             // equals 2e - 4g f
  std::vector<int> boundary_lengths;  // sorted ascending
  std::vector<ComponentStats> components;
};
Stats stats(const TiledSurface& Y);

// Component id per vertex, numbered by least contained vertex.
std::vector<int> vertex_components(const TiledSurface& Y);

struct TraceResult {
  bool ok = false;
  int vertex = -1;    // endpoint when ok
  int fail_pos = -1;  // first letter with no edge to follow, when !ok
};
TraceResult trace_word(const TiledSurface& Y, int v0, const Word& w);
TraceResult trace_word(const TiledSurface& Y, const SlotTable& t, int v0, const Word& w);

}  // namespace coresurf
