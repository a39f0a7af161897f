#include "coresurf/presentation.hpp"

namespace coresurf {

Presentation::Presentation(int genus) : genus_(genus) {
  if (genus < 2) throw std::invalid_argument("genus must be at least 2");
  const int n = 4 * genus_;
  relator_.reserve(n);
  for (int i = 0; i < genus_; ++i) {
    const int a = 2 * i + 1, b = 2 * i + 2;
    relator_.push_back(Letter::make(a, false));
    relator_.push_back(Letter::make(b, false));
    relator_.push_back(Letter::make(a, true));
    relator_.push_back(Letter::make(b, true));
  }

  relator_pos_.assign(n, -1);
  for (int pos = 0; pos < n; ++pos) {
    if (relator_pos_[relator_[pos].code] != -1)
      throw InvariantError("relator letter repeated");
    relator_pos_[relator_[pos].code] = pos;
  }

  // Clockwise slot order around a vertex, per commutator pair i:
  //   4i: a-out, 4i+1: b-in, 4i+2: a-in, 4i+3: b-out.
  arr_slot_.assign(n, -1);
  dep_slot_.assign(n, -1);
  for (int i = 0; i < genus_; ++i) {
    const Letter ap = Letter::make(2 * i + 1, false), am = ap.inverse();
    const Letter bp = Letter::make(2 * i + 2, false), bm = bp.inverse();
    dep_slot_[ap.code] = 4 * i + 0;  // leave forward through a-out
    arr_slot_[am.code] = 4 * i + 0;  // arrive backward through a-out
    arr_slot_[bp.code] = 4 * i + 1;
    dep_slot_[bm.code] = 4 * i + 1;
    arr_slot_[ap.code] = 4 * i + 2;
    dep_slot_[am.code] = 4 * i + 2;
    dep_slot_[bp.code] = 4 * i + 3;
    arr_slot_[bm.code] = 4 * i + 3;
  }

  // Consecutive relator letters must always be gap-0; this is what makes
  // blocks the same thing as relator arcs.
  for (int pos = 0; pos < n; ++pos) {
    if (gap(relator_[pos], relator_[(pos + 1) % n]) != 0)
      throw InvariantError("slot order inconsistent with relator");
  }
  // The relator has no rotational symmetry, so arcs determine their position.
  for (int k = 1; k < n; ++k) {
    bool same = true;
    for (int pos = 0; pos < n && same; ++pos)
      same = relator_[pos] == relator_[(pos + k) % n];
    if (same) throw InvariantError("relator has a nontrivial rotation symmetry");
  }
}

Word Presentation::arc(int pos, int len) const {
  Word out;
  out.reserve(len);
  for (int k = 0; k < len; ++k) out.push_back(relator_[mod(pos + k)]);
  return out;
}

}  // namespace coresurf
