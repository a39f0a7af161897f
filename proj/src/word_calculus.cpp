#include "coresurf/word_calculus.hpp"

#include <algorithm>
#include <deque>

namespace coresurf {

namespace {

// A pending replacement: substitute `repl` for w[start .. start+len).
struct Patch {
  int start = 0;
  int len = 0;
  Word repl;
};

Word apply_patch(const Word& w, const Patch& patch) {
  Word out(w.begin(), w.begin() + patch.start);
  out.insert(out.end(), patch.repl.begin(), patch.repl.end());
  out.insert(out.end(), w.begin() + patch.start + patch.len, w.end());
  return out;
}

// Maps a range [start, start+len) of the inverse word back to the range it
// occupies in the original length-n word.
int reverse_range_start(int n, int start, int len) { return n - start - len; }

// Leftmost long block across both reading directions. Returns a patch for w.
std::optional<Patch> find_long_block_patch(const Word& w, const Word& winv,
                                           const std::vector<Run>& fwd,
                                           const std::vector<Run>& rev,
                                           const Presentation& p) {
  const int n = static_cast<int>(w.size());
  const int half = 2 * p.genus();
  const int full = 4 * p.genus();
  int best_start = -1;
  bool best_fwd = true;
  Run best{};

  for (const Run& r : fwd) {
    if (r.len >= half + 1 && (best_start < 0 || r.start < best_start)) {
      best_start = r.start;
      best_fwd = true;
      best = r;
    }
  }
  for (const Run& r : rev) {
    if (r.len < half + 1) continue;
    const int ws = reverse_range_start(n, r.start, r.len);
    if (best_start < 0 || ws < best_start) {
      best_start = ws;
      best_fwd = false;
      best = r;
    }
  }
  if (best_start < 0) return std::nullopt;

  const int b = std::min(best.len, full);
  if (best_fwd) {
    return Patch{best.start, b, block_complement(best.pos, b, p)};
  }
  // The first b letters of the inverse-word run are the last b letters of
  // the run's range in w; the segment equals inv(arc(pos, b)) and is
  // replaced by the complementary arc read forward.
  (void)winv;
  return Patch{reverse_range_start(n, best.start, b), b,
               p.arc(p.mod(best.pos + b), full - b)};
}

std::vector<int> linear_junction_gaps(const Word& w, const std::vector<Run>& runs,
                                      const Presentation& p) {
  std::vector<int> gaps;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    const Letter a = w[runs[i].start + runs[i].len - 1];
    const Letter d = w[runs[i + 1].start];
    gaps.push_back(p.gap(a, d));
  }
  return gaps;
}

std::optional<Patch> find_long_chain_patch(const Word& w, const Word& winv,
                                           const std::vector<Run>& fwd,
                                           const std::vector<Run>& rev,
                                           const Presentation& p) {
  const int n = static_cast<int>(w.size());
  std::optional<Patch> best;

  auto consider = [&](const std::vector<Run>& runs, const std::vector<int>& gaps,
                      bool forward) {
    auto occ = find_long_chain(runs, gaps, /*cyclic=*/false, p);
    if (!occ) return;
    std::vector<Run> chain(runs.begin() + occ->first_run,
                           runs.begin() + occ->first_run + occ->run_count);
    const int span_start = chain.front().start;
    const int span_len = chain.back().start + chain.back().len - span_start;
    Word repl = chain_complement(chain, p);
    int ws = forward ? span_start : reverse_range_start(n, span_start, span_len);
    if (!forward) repl = inverse(repl);
    if (!best || ws < best->start) best = Patch{ws, span_len, std::move(repl)};
  };

  // Forward considered first, so a tie at the same index keeps the forward
  // read (the reverse candidate only wins strictly to the left).
  consider(fwd, linear_junction_gaps(w, fwd, p), true);
  consider(rev, linear_junction_gaps(winv, rev, p), false);
  return best;
}

// One rewriting pass used by both dehn_reduce and the cyclic variant's
// linear segments. Returns false when no long block or long chain exists.
bool dehn_step(Word& w, const Presentation& p) {
  const Word winv = inverse(w);
  const std::vector<Run> fwd = linear_runs(w, p);
  const std::vector<Run> rev = linear_runs(winv, p);
  if (auto patch = find_long_block_patch(w, winv, fwd, rev, p)) {
    w = apply_patch(w, *patch);
    return true;
  }
  if (auto patch = find_long_chain_patch(w, winv, fwd, rev, p)) {
    w = apply_patch(w, *patch);
    return true;
  }
  return false;
}

// Cyclic occurrence of a long block or long chain, described by its start
// index in the current rotation, its letter span, and the replacement to
// substitute once the word has been rotated so the occurrence is a prefix.
struct CyclicPatch {
  int start = 0;
  int len = 0;
  Word repl;
};

std::optional<CyclicPatch> find_cyclic_block_patch(const Word& w,
                                                   const CyclicRuns& fwd,
                                                   const CyclicRuns& rev,
                                                   const Presentation& p) {
  const int n = static_cast<int>(w.size());
  const int half = 2 * p.genus();
  const int full = 4 * p.genus();
  std::optional<CyclicPatch> best;
  auto consider = [&](const Run& r, bool forward) {
    if (r.len < half + 1) return;
    const int b = std::min(r.len, full);
    int ws = forward ? r.start : ((n - r.start - b) % n + n) % n;
    Word repl = forward ? block_complement(r.pos, b, p)
                        : p.arc(p.mod(r.pos + b), full - b);
    if (!best || ws < best->start) best = CyclicPatch{ws, b, std::move(repl)};
  };
  for (const Run& r : fwd.runs) consider(r, true);
  for (const Run& r : rev.runs) consider(r, false);
  return best;
}

std::optional<CyclicPatch> find_cyclic_chain_patch(const Word& w,
                                                   const CyclicRuns& fwd,
                                                   const CyclicRuns& rev,
                                                   const Presentation& p) {
  const int n = static_cast<int>(w.size());
  std::optional<CyclicPatch> best;
  auto consider = [&](const CyclicRuns& cr, bool forward) {
    auto occ = find_long_chain(cr.runs, cr.gap_after, /*cyclic=*/true, p);
    if (!occ) return;
    const int m = static_cast<int>(cr.runs.size());
    std::vector<Run> chain;
    int span = 0;
    for (int t = 0; t < occ->run_count; ++t) {
      const Run& r = cr.runs[(occ->first_run + t) % m];
      chain.push_back(r);
      span += r.len;
    }
    if (span > n) return;  // cannot occupy more letters than the cycle has
    Word repl = chain_complement(chain, p);
    int ws = forward ? chain.front().start
                     : ((n - chain.front().start - span) % n + n) % n;
    if (!forward) repl = inverse(repl);
    if (!best || ws < best->start) best = CyclicPatch{ws, span, std::move(repl)};
  };
  consider(fwd, true);
  consider(rev, false);
  return best;
}

CyclicRuns cyclic_runs_of_inverse(const Word& w, const Presentation& p) {
  return cyclic_runs(inverse(w), p);
}

}  // namespace

std::vector<Run> linear_runs(const Word& w, const Presentation& p) {
  std::vector<Run> runs;
  const int n = static_cast<int>(w.size());
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && p.gap(w[j], w[j + 1]) == 0) ++j;
    runs.push_back(Run{i, j - i + 1, p.relator_pos(w[i])});
    i = j + 1;
  }
  return runs;
}

CyclicRuns cyclic_runs(const Word& w, const Presentation& p) {
  if (w.empty() || !is_cyclically_reduced(w))
    throw std::invalid_argument("cyclic_runs needs a nonempty cyclically reduced word");
  const int n = static_cast<int>(w.size());
  std::vector<int> gap(n);
  int first_break = -1;
  for (int k = 0; k < n; ++k) {
    gap[k] = p.gap(w[k], w[(k + 1) % n]);
    if (gap[k] != 0 && first_break < 0) first_break = k;
  }
  CyclicRuns out;
  if (first_break < 0) {
    // Rotation of a relator power; report as one full-length run.
    out.runs.push_back(Run{0, n, p.relator_pos(w[0])});
    out.gap_after.push_back(0);
    return out;
  }
  int start = (first_break + 1) % n;
  int i = start;
  do {
    int len = 1;
    while (gap[(i + len - 1) % n] == 0) ++len;
    out.runs.push_back(Run{i, len, p.relator_pos(w[i])});
    out.gap_after.push_back(gap[(i + len - 1) % n]);
    i = (i + len) % n;
  } while (i != start);
  return out;
}

std::vector<ChainOcc> all_long_chains(const std::vector<Run>& runs,
                                      const std::vector<int>& junction_gaps,
                                      bool cyclic, const Presentation& p) {
  const int half = 2 * p.genus();
  const int m = static_cast<int>(runs.size());
  // junction_gaps[i] follows runs[i]; in the linear case it has m-1 entries.
  auto gap_at = [&](int i) {
    return junction_gaps[cyclic ? i % m : i];
  };
  std::vector<ChainOcc> out;
  for (int i = 0; i < m; ++i) {
    if (runs[i].len != half) continue;
    const int max_steps = cyclic ? m - 1 : m - 1 - i;
    for (int t = 1; t <= max_steps; ++t) {
      const int prev = cyclic ? (i + t - 1) % m : i + t - 1;
      const int curr = cyclic ? (i + t) % m : i + t;
      if (gap_at(prev) != 1) break;
      if (runs[curr].len == half) {
        out.push_back({i, t + 1});
        break;
      }
      if (runs[curr].len != half - 1) break;
    }
  }
  return out;
}

std::optional<ChainOcc> find_long_chain(const std::vector<Run>& runs,
                                        const std::vector<int>& junction_gaps,
                                        bool cyclic, const Presentation& p) {
  std::vector<ChainOcc> all = all_long_chains(runs, junction_gaps, cyclic, p);
  if (all.empty()) return std::nullopt;
  return all.front();
}

Word block_complement(int pos, int len, const Presentation& p) {
  return inverse(p.arc(p.mod(pos + len), 4 * p.genus() - len));
}

Word chain_complement(const std::vector<Run>& chain_runs, const Presentation& p) {
  const int half = 2 * p.genus();
  Word out;
  for (std::size_t i = 0; i < chain_runs.size(); ++i) {
    const int q = p.mod(chain_runs[i].pos + half + (i == 0 ? 1 : 0));
    Word piece = inverse(p.arc(q, half - 1));
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

Word half_chain_complement(const std::vector<Run>& cyclic_runs, const Presentation& p) {
  const int half = 2 * p.genus();
  Word out;
  for (const Run& r : cyclic_runs) {
    Word piece = inverse(p.arc(p.mod(r.pos + half), half - 1));
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

Word dehn_reduce(Word w, const Presentation& p) {
  w = free_reduce(std::move(w));
  while (!w.empty() && dehn_step(w, p)) w = free_reduce(std::move(w));
  return w;
}

bool is_trivial(const Word& w, const Presentation& p) {
  return dehn_reduce(w, p).empty();
}

std::pair<CyclicWord, Word> cyclic_shorten(const Word& w, const Presentation& p) {
  Word cur = w;
  Word s;
  auto apply_rotation = [&](int k) {
    if (k == 0) return;
    Word x(cur.begin(), cur.begin() + k);
    s = free_reduce(concat(inverse(x), s));
    cur = rotate(cur, k);
  };

  const int full = 4 * p.genus();
  while (true) {
    cur = free_reduce(std::move(cur));
    while (cur.size() >= 2 && cur.front() == cur.back().inverse()) {
      Word f{cur.front()};
      s = free_reduce(concat(inverse(f), s));
      cur = Word(cur.begin() + 1, cur.end() - 1);
    }
    if (cur.empty()) throw TrivialWordError("word represents the identity");

    const CyclicRuns fwd = cyclic_runs(cur, p);
    if (fwd.runs.size() == 1 && fwd.gap_after[0] == 0) {
      // Rotation of a relator power: peel one full relator and go around.
      if (static_cast<int>(cur.size()) % full != 0)
        throw InvariantError("gap-0 cycle of non-relator length");
      cur = Word(cur.begin() + full, cur.end());
      if (cur.empty()) throw TrivialWordError("word represents the identity");
      continue;
    }
    const CyclicRuns rev = cyclic_runs_of_inverse(cur, p);

    if (auto patch = find_cyclic_block_patch(cur, fwd, rev, p)) {
      apply_rotation(patch->start);
      Word rest(cur.begin() + patch->len, cur.end());
      cur = concat(patch->repl, rest);
      continue;
    }
    if (auto patch = find_cyclic_chain_patch(cur, fwd, rev, p)) {
      apply_rotation(patch->start);
      Word rest(cur.begin() + patch->len, cur.end());
      cur = concat(patch->repl, rest);
      continue;
    }
    break;
  }

  CyclicWord canon(cur);
  apply_rotation(canon.rotation());
  return {CyclicWord(cur), free_reduce(s)};
}

std::set<Word> geodesic_class(const Word& w, const Presentation& p, long budget) {
  const int half = 2 * p.genus();
  std::set<Word> seen;
  std::deque<Word> queue;
  auto push = [&](Word u) {
    if (!is_freely_reduced(u))
      throw InvariantError("half-block switch produced a reducible word");
    if (seen.insert(u).second) {
      if (static_cast<long>(seen.size()) > budget)
        throw BudgetExceeded("geodesic_class budget exceeded");
      queue.push_back(std::move(u));
    }
  };
  push(dehn_reduce(w, p));
  while (!queue.empty()) {
    Word u = std::move(queue.front());
    queue.pop_front();
    const int n = static_cast<int>(u.size());
    for (const Run& r : linear_runs(u, p)) {
      if (r.len != half) continue;
      push(apply_patch(u, Patch{r.start, half, block_complement(r.pos, half, p)}));
    }
    const Word uinv = inverse(u);
    for (const Run& r : linear_runs(uinv, p)) {
      if (r.len != half) continue;
      push(apply_patch(
          u, Patch{reverse_range_start(n, r.start, half), half,
                   p.arc(p.mod(r.pos + half), half)}));
    }
  }
  return seen;
}

std::set<CyclicWord> shortest_cyclic_reps(const Word& w, const Presentation& p,
                                          long budget) {
  if (is_trivial(w, p)) throw TrivialWordError("trivial element has no cyclic representative");
  const int half = 2 * p.genus();
  std::set<CyclicWord> seen;
  std::deque<CyclicWord> queue;
  auto push = [&](const Word& raw) {
    if (!is_cyclically_reduced(raw))
      throw InvariantError("cyclic switch produced a reducible word");
    CyclicWord c(raw);
    if (seen.insert(c).second) {
      if (static_cast<long>(seen.size()) > budget)
        throw BudgetExceeded("shortest_cyclic_reps budget exceeded");
      queue.push_back(std::move(c));
    }
  };
  push(cyclic_shorten(w, p).first.rep());

  auto half_blocks = [&](const Word& u, bool forward, std::vector<Word>& out) {
    // Cyclic half-block switches applied to u (forward) or found through u*
    // and mapped back onto u (reverse).
    const Word scan = forward ? u : inverse(u);
    const int n = static_cast<int>(u.size());
    for (const Run& r : cyclic_runs(scan, p).runs) {
      if (r.len != half) continue;
      const int start_in_u = forward ? r.start : ((n - r.start - half) % n + n) % n;
      Word rotated = rotate(u, start_in_u);
      Word rest(rotated.begin() + half, rotated.end());
      const Word repl = forward ? block_complement(r.pos, half, p)
                                : p.arc(p.mod(r.pos + half), half);
      out.push_back(concat(repl, rest));
    }
  };

  while (!queue.empty()) {
    const Word u = queue.front().rep();
    queue.pop_front();
    std::vector<Word> next;
    half_blocks(u, true, next);
    half_blocks(u, false, next);

    const CyclicRuns fwd = cyclic_runs(u, p);
    const bool fwd_half_chain =
        std::all_of(fwd.runs.begin(), fwd.runs.end(),
                    [&](const Run& r) { return r.len == half - 1; }) &&
        std::all_of(fwd.gap_after.begin(), fwd.gap_after.end(),
                    [](int g) { return g == 1; });
    if (fwd_half_chain) next.push_back(half_chain_complement(fwd.runs, p));

    const Word uinv = inverse(u);
    const CyclicRuns rev = cyclic_runs(uinv, p);
    const bool rev_half_chain =
        std::all_of(rev.runs.begin(), rev.runs.end(),
                    [&](const Run& r) { return r.len == half - 1; }) &&
        std::all_of(rev.gap_after.begin(), rev.gap_after.end(),
                    [](int g) { return g == 1; });
    if (rev_half_chain) next.push_back(inverse(half_chain_complement(rev.runs, p)));

    for (Word& v : next) push(v);
  }
  return seen;
}

bool are_conjugate(const Word& u, const Word& v, const Presentation& p, long budget) {
  const bool tu = is_trivial(u, p), tv = is_trivial(v, p);
  if (tu || tv) return tu && tv;
  const std::set<CyclicWord> su = shortest_cyclic_reps(u, p, budget);
  const std::set<CyclicWord> sv = shortest_cyclic_reps(v, p, budget);
  return std::any_of(su.begin(), su.end(),
                     [&](const CyclicWord& c) { return sv.count(c) > 0; });
}

}  // namespace coresurf
