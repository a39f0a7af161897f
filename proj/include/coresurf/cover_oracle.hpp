#pragma once

#include <cstdint>
#include <optional>

#include "coresurf/morphism.hpp"
#include "coresurf/tiled_surface.hpp"

namespace coresurf {

inline constexpr long kDefaultSbrBudget = 1'000;

// Ball in the cover determined by a seed complex (the universal cover when
// the seed is a single vertex). Construction walks shells outward from the
// basepoint: every vertex within the radius gets the missing relator face at
// each of its uncovered corners, with closing walks merging cells that the
// cover identifies. Cells that end up farther than radius+1 from the
// basepoint are discarded at the end; with boundary_reduce set, rim faces
// are then absorbed until the boundary of the retained region is reduced.
//
// Guarantee: vertices within the radius are saturated, meaning all 4g slots
// are occupied and every corner carries its relator face. A word traced from
// the basepoint therefore walks existing edges for radius+1 steps, its
// endpoint is invariant under relator rewriting of the word, and the
// endpoint's recorded distance is its exact cover distance. In particular
// the trace of a word of length <= radius+1 ends at the basepoint exactly
// when the word closes in the cover.
class CoverBall {
 public:
  CoverBall(const TiledSurface& seed, int basepoint, int radius, bool boundary_reduce = true);

  const Presentation& pres() const { return pres_; }
  std::int64_t basepoint() const { return base_; }
  int radius() const { return radius_; }
  std::int64_t vertex_count() const { return static_cast<std::int64_t>(nbr_.size()) / slots_; }
  std::int64_t face_count() const { return faces_; }

  // nullopt when the walk needs a slot that the ball does not carry; cannot
  // happen while the walk stays within the saturated radius.
  std::optional<std::int64_t> trace(std::int64_t v, const Word& w) const;
  std::optional<std::int64_t> trace(const Word& w) const { return trace(base_, w); }

  // Graph distance from the basepoint; exact at basepoint-trace endpoints.
  int distance(std::int64_t v) const { return dist_[v]; }

  std::optional<std::int64_t> neighbor(std::int64_t v, int slot) const {
    const std::uint32_t w = nbr_[v * slots_ + slot];
    if (w == kNone) return std::nullopt;
    return static_cast<std::int64_t>(w);
  }

  // Materializes the ball, faces recovered as closed relator walks.
  TiledSurface to_surface() const;

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  Presentation pres_;
  int slots_;
  int radius_;
  std::int64_t base_ = 0;
  std::int64_t faces_ = 0;
  std::vector<std::uint32_t> nbr_;      // vertex * slots_ + slot -> vertex
  std::vector<std::uint32_t> corners_;  // bit s: face corner over (s, s+1) present
  std::vector<std::uint8_t> dist_;

  struct Builder;
};

// Decides u = v in the surface group by tracing the freely reduced word
// u v^-1 in a one-vertex cover ball saturated to its length minus one: the
// trace returns to the basepoint exactly when the word is trivial. Uses only
// free reduction, no relator rewriting.
bool words_equal_oracle(const Word& u, const Word& v, const Presentation& p);

// Geodesic length of the element of w, read off as the ball distance of the
// endpoint of w's trace.
int element_length_oracle(const Word& w, const Presentation& p);

// Adds a face for every closed relator path that does not already bound one.
TiledSurface complete_faces(TiledSurface Y);

// Subcomplex of an ambient complex, by cell ids (kept sorted and unique).
struct SubComplex {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<int> faces;
};

SubComplex subcomplex_of_image(const TiledSurface& sub, const TiledSurface& ambient,
                               const Morphism& m);

enum class ClosureMode { boundary_reduce, strong };

struct ClosureResult {
  SubComplex sub;
  bool completed = false;
  long steps = 0;               // annexation steps actually performed
  std::vector<long long> boundary_totals;  // |boundary| before each step and at the end
};

// Smallest (strongly) boundary-reduced subcomplex of Z containing sub, grown
// bottom-up: each step annexes the Z-faces across one long block, long
// chain, half-block, or half-chain of the current boundary. Z itself must be
// boundary reduced (strongly, in strong mode) for this to exist. In strong
// mode each step counts against the budget; on exhaustion the partial
// closure is returned with completed = false.
ClosureResult closure_within(const TiledSurface& Z, SubComplex sub, ClosureMode mode,
                             long budget = kDefaultSbrBudget);

}  // namespace coresurf
