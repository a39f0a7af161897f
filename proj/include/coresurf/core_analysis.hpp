#pragma once

#include <string>

#include "coresurf/folding.hpp"
#include "coresurf/morphism.hpp"

namespace coresurf {

// Outcome of the core-surface test; empty reasons means the complex is one.
struct CoreCheck {
  std::vector<std::string> reasons;
  bool ok() const { return reasons.empty(); }
};

// A complex is a core surface when it is valid, connected and nonempty, its
// boundary is strongly reduced, every boundary word is cyclically reduced
// and carries no long block or long chain in either reading direction, and
// no boundary word is trivial in the group. The single vertex qualifies;
// closed components have nothing to check.
CoreCheck check_core_surface(const TiledSurface& Y);
bool is_core_surface(const TiledSurface& Y);

// Membership of w in the subgroup a pointed core stands for. With conjugator
// s, the complex is the core of s J s^-1, so w lies in J exactly when the
// geodesic path of s w s^-1 from the basepoint stays on the complex and
// closes.
bool is_member(const PointedCoreSurface& core, const Word& w);

// Whether some conjugate of w lies in the subgroup: some cyclically shortest
// representative of w's class must trace a closed path somewhere on the
// complex. The budget caps the representative enumeration.
bool is_conjugate_into(const PointedCoreSurface& core, const Word& w,
                       long budget = kDefaultWordBudget);

// First label-preserving morphism between complexes (components seeded on
// their least vertex, targets tried in vertex order), or nullopt.
std::optional<Morphism> morphism_between_cores(const TiledSurface& from,
                                               const TiledSurface& to);

}  // namespace coresurf
