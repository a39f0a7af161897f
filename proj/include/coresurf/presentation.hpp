#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coresurf {

// Thrown when an operation would enumerate past its configured budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure. Seeing one of these means a bug, not bad input.
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// Signed generator letter. code = 2*(generator-1) + (inverse ? 1 : 0), so the
// natural order of codes is a1 < a1' < b1 < b1' < a2 < ... which is the
// canonical letter order used for cyclic-word canonicalization.
struct Letter {
  std::uint8_t code = 0;

  static Letter make(int generator, bool inverse) {
    return Letter{static_cast<std::uint8_t>(2 * (generator - 1) + (inverse ? 1 : 0))};
  }
  int generator() const { return code / 2 + 1; }
  bool is_inverse() const { return (code & 1) != 0; }
  Letter inverse() const { return Letter{static_cast<std::uint8_t>(code ^ 1)}; }
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// The fixed one-relator presentation of the genus-g surface group:
// generators a1,b1,...,ag,bg (odd generator indices are the a-family),
// relator [a1,b1]...[ag,bg] of length 4g, and the clockwise slot order of
// the 4g half-edge positions around every vertex:
//   slot 4i+0: a_{i+1} outgoing    slot 4i+1: b_{i+1} incoming
//   slot 4i+2: a_{i+1} incoming    slot 4i+3: b_{i+1} outgoing
class Presentation {
 public:
  explicit Presentation(int genus);

  int genus() const { return genus_; }
  int generator_count() const { return 2 * genus_; }
  int slot_count() const { return 4 * genus_; }
  int relator_length() const { return 4 * genus_; }

  const Word& relator() const { return relator_; }
  Letter relator_at(int pos) const { return relator_[mod(pos)]; }
  // Position of the unique relator occurrence of l (each signed letter
  // appears exactly once).
  int relator_pos(Letter l) const { return relator_pos_[l.code]; }

  // Slot of the half-edge by which a traversal step reading `l` enters or
  // leaves a vertex.
  int arrival_slot(Letter l) const { return arr_slot_[l.code]; }
  int departure_slot(Letter l) const { return dep_slot_[l.code]; }

  // Slots occupied by the two ends of an edge labeled `gen` (1..2g).
  int source_slot(int gen) const { return dep_slot_[Letter::make(gen, false).code]; }
  int target_slot(int gen) const { return arr_slot_[Letter::make(gen, false).code]; }

  // Number of slots strictly between the arriving and the departing step,
  // clockwise. 0 means relator-consecutive, 1 chain-consecutive.
  int gap(Letter arrival, Letter departure) const {
    return mod(dep_slot_[departure.code] - arr_slot_[arrival.code] - 1);
  }

  // The relator arc of length `len` starting at cyclic position `pos`.
  Word arc(int pos, int len) const;

  int mod(int x) const {
    int m = x % (4 * genus_);
    return m < 0 ? m + 4 * genus_ : m;
  }

 private:
  int genus_;
  Word relator_;
  std::vector<int> relator_pos_;
  std::vector<int> arr_slot_;
  std::vector<int> dep_slot_;
};

inline int slot_gap(Letter arrival, Letter departure, const Presentation& p) {
  return p.gap(arrival, departure);
}

}  // namespace coresurf
