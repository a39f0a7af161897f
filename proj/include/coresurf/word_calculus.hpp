#pragma once

#include <optional>
#include <set>
#include <utility>

#include "coresurf/word.hpp"

namespace coresurf {

// Raised by operations whose precondition excludes trivial elements.
struct TrivialWordError : std::invalid_argument {
  explicit TrivialWordError(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr long kDefaultWordBudget = 1'000'000;

// A maximal gap-0 run inside a word: w[start .. start+len) reads the relator
// arc of length `len` starting at cyclic relator position `pos`. Runs are
// always reported for the forward reading; structure in the reverse reading
// is found by scanning the inverse word.
struct Run {
  int start = 0;
  int len = 0;
  int pos = 0;
};

// Partition of a word into maximal gap-0 runs, in order. Empty for the empty
// word. The word need not be freely reduced (backtracks simply break runs).
std::vector<Run> linear_runs(const Word& w, const Presentation& p);

// Cyclic run partition of a nonempty cyclically reduced word. gap_after[i]
// is the slot gap at the junction following runs[i] (cyclically). When every
// cyclic gap is 0 the word is a rotation of a relator power; that case is
// reported as a single run of full length with gap_after = {0}.
struct CyclicRuns {
  std::vector<Run> runs;
  std::vector<int> gap_after;
};
CyclicRuns cyclic_runs(const Word& w, const Presentation& p);

// A long-chain occurrence: run_count >= 2 consecutive runs with lengths
// 2g, 2g-1, ..., 2g-1, 2g and gap-1 junctions in between.
struct ChainOcc {
  int first_run = 0;
  int run_count = 0;
};
std::optional<ChainOcc> find_long_chain(const std::vector<Run>& runs,
                                        const std::vector<int>& junction_gaps,
                                        bool cyclic, const Presentation& p);
// Every long-chain occurrence, ordered by first run. Each run starts at most
// one chain (the walk ends at the first length-2g run it meets).
std::vector<ChainOcc> all_long_chains(const std::vector<Run>& runs,
                                      const std::vector<int>& junction_gaps,
                                      bool cyclic, const Presentation& p);

// Complement words: each replaces the structure it names without changing
// the group element. Block complements shorten length-b long blocks to
// 4g-b; chain complements shorten by exactly 2; half-chain complements
// preserve length.
Word block_complement(int pos, int len, const Presentation& p);
Word chain_complement(const std::vector<Run>& chain_runs, const Presentation& p);
Word half_chain_complement(const std::vector<Run>& cyclic_runs, const Presentation& p);

// Dehn's algorithm: free-reduce, then repeatedly replace the leftmost long
// block (length >= 2g+1, in the word or its inverse), else the leftmost long
// chain, until none remain. Output length <= input length.
Word dehn_reduce(Word w, const Presentation& p);
bool is_trivial(const Word& w, const Presentation& p);

// Conjugates w to a cyclically shortest representative. Returns (c, s) with
// c == s w s^-1 in the group; c and c* contain no long block or long chain
// as cyclic words, and c is stored in canonical rotation.
// Throws TrivialWordError when w represents the identity.
std::pair<CyclicWord, Word> cyclic_shorten(const Word& w, const Presentation& p);

// All geodesic words equal to w: closure of dehn_reduce(w) under half-block
// switches (replace a length-2g relator+- arc by the inverse of its
// complementary arc). Throws BudgetExceeded past `budget` words.
std::set<Word> geodesic_class(const Word& w, const Presentation& p,
                              long budget = kDefaultWordBudget);

// All cyclically shortest representatives of w's conjugacy class: closure of
// cyclic_shorten(w) under cyclic half-block switches and, when the whole
// cyclic word (or its inverse) is a half-chain, the half-chain switch.
std::set<CyclicWord> shortest_cyclic_reps(const Word& w, const Presentation& p,
                                          long budget = kDefaultWordBudget);

bool are_conjugate(const Word& u, const Word& v, const Presentation& p,
                   long budget = kDefaultWordBudget);

}  // namespace coresurf
