#pragma once

#include "coresurf/presentation.hpp"

namespace coresurf {

// Thrown by parse_word on malformed input; `pos` is a byte offset into the
// offending string.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what), pos(pos) {}
};

// Accepted syntax, for any genus: tokens a<i> / b<i> with 1 <= i <= genus,
// each optionally followed by ' for the inverse, separated by optional
// whitespace. For genus 2 the single letters a,b,c,d (and A,B,C,D for their
// inverses) name a1,b1,a2,b2 and may be run together: "abAB". The string "1"
// is the empty word.
Word parse_word(const std::string& text, const Presentation& p);

// Inverse of parse_word. Genus 2 uses the compact abcd/ABCD alphabet with no
// separators; higher genus uses space-separated indexed tokens. The empty
// word prints as "1".
std::string format_word(const Word& w, const Presentation& p);

Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);

// Delete adjacent x x^-1 pairs until none remain.
Word free_reduce(Word w);
bool is_freely_reduced(const Word& w);

// Cyclic free reduction: free-reduce, then strip matching first/last letters.
Word cyclic_free_reduce(Word w);
bool is_cyclically_reduced(const Word& w);

Word rotate(const Word& w, int k);

// A cyclically reduced word up to rotation, stored as its lexicographically
// least rotation (letter order = Letter::code order).
class CyclicWord {
 public:
  explicit CyclicWord(const Word& w);

  const Word& rep() const { return rep_; }
  // Rotation amount r such that rotate(original, r) == rep().
  int rotation() const { return rotation_; }

  bool operator==(const CyclicWord& o) const { return rep_ == o.rep_; }
  bool operator<(const CyclicWord& o) const { return rep_ < o.rep_; }

 private:
  Word rep_;
  int rotation_ = 0;
};

}  // namespace coresurf
