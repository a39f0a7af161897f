#include "coresurf/folding.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <tuple>

namespace coresurf {

PreComplex PreComplex::from_surface(const TiledSurface& Y) {
  PreComplex pc(Y.pres);
  for (int v = 0; v < Y.num_vertices; ++v) pc.add_vertex();
  for (const EdgeRec& e : Y.edges) pc.add_edge(e.src, e.dst, e.label);
  for (const Face& f : Y.faces) pc.add_face(f);
  return pc;
}

int PreComplex::add_vertex() {
  vparent_.push_back(static_cast<int>(vparent_.size()));
  ends_.emplace_back();
  return static_cast<int>(vparent_.size()) - 1;
}

int PreComplex::add_edge(int src, int dst, int label) {
  const int e = static_cast<int>(edges_.size());
  edges_.push_back({src, dst, label});
  ereplaced_.push_back(-1);
  ends_[vertex_rep(src)].push_back(2 * e);
  ends_[vertex_rep(dst)].push_back(2 * e + 1);
  return e;
}

void PreComplex::add_face(Face steps) { faces_.push_back(std::move(steps)); }

int PreComplex::vertex_rep(int v) const {
  while (vparent_[v] != v) v = vparent_[v] = vparent_[vparent_[v]];
  return v;
}

int PreComplex::edge_rep(int e) const {
  while (ereplaced_[e] != -1) {
    if (ereplaced_[ereplaced_[e]] != -1) ereplaced_[e] = ereplaced_[ereplaced_[e]];
    e = ereplaced_[e];
  }
  return e;
}

void PreComplex::merge_vertices(int a, int b) {
  a = vertex_rep(a);
  b = vertex_rep(b);
  if (a == b) return;
  const int keep = std::min(a, b);
  const int drop = std::max(a, b);
  vparent_[drop] = keep;
  std::vector<int>& into = ends_[keep];
  into.insert(into.end(), ends_[drop].begin(), ends_[drop].end());
  ends_[drop].clear();
  ends_[drop].shrink_to_fit();
}

int PreComplex::end_slot(int enc) const {
  const PEdge& e = edges_[enc / 2];
  return enc % 2 == 0 ? pres_.source_slot(e.label) : pres_.target_slot(e.label);
}

bool PreComplex::end_live_at(int enc, int v) const {
  if (ereplaced_[enc / 2] != -1) return false;
  const PEdge& e = edges_[enc / 2];
  return vertex_rep(enc % 2 == 0 ? e.src : e.dst) == v;
}

void PreComplex::fold(const FoldOptions& opt) {
  std::deque<int> work;
  {
    std::vector<int> initial(vparent_.size());
    for (size_t v = 0; v < vparent_.size(); ++v) initial[v] = static_cast<int>(v);
    if (opt.randomize) {
      std::mt19937 rng(opt.seed);
      std::shuffle(initial.begin(), initial.end(), rng);
    }
    work.assign(initial.begin(), initial.end());
  }

  const int k = pres_.slot_count();
  std::vector<int> first_in_slot(k);
  while (!work.empty()) {
    int v = vertex_rep(work.front());
    work.pop_front();
    for (;;) {
      // Compact the end list and look for two live ends in one slot.
      std::vector<int>& list = ends_[v];
      std::fill(first_in_slot.begin(), first_in_slot.end(), -1);
      int hit_a = -1, hit_b = -1;
      size_t w = 0;
      for (size_t i = 0; i < list.size(); ++i) {
        const int enc = list[i];
        if (!end_live_at(enc, v)) continue;
        list[w++] = enc;
        if (hit_a != -1) continue;
        const int s = end_slot(enc);
        if (first_in_slot[s] == -1) {
          first_in_slot[s] = enc;
        } else {
          hit_a = std::min(first_in_slot[s], enc);
          hit_b = std::max(first_in_slot[s], enc);
        }
      }
      list.resize(w);
      if (hit_a == -1) break;

      const int e_keep = hit_a / 2;
      const int e_drop = hit_b / 2;
      if (edges_[e_keep].label != edges_[e_drop].label || hit_a % 2 != hit_b % 2)
        throw InvariantError("colliding edge ends disagree on label or direction");
      ereplaced_[e_drop] = e_keep;
      const int far_keep = hit_a % 2 == 0 ? edges_[e_keep].dst : edges_[e_keep].src;
      const int far_drop = hit_b % 2 == 0 ? edges_[e_drop].dst : edges_[e_drop].src;
      const int ra = vertex_rep(far_keep);
      const int rb = vertex_rep(far_drop);
      if (ra != rb) {
        merge_vertices(ra, rb);
        work.push_back(std::min(ra, rb));
        v = vertex_rep(v);
      }
    }
  }
}

TiledSurface PreComplex::freeze(std::vector<int>* vertex_image) const {
  const int k = pres_.slot_count();
  std::vector<int> vmap(vparent_.size(), -1);
  int nv = 0;
  for (size_t v = 0; v < vparent_.size(); ++v)
    if (vertex_rep(static_cast<int>(v)) == static_cast<int>(v)) vmap[v] = nv++;

  std::vector<char> slot_seen(k);
  for (size_t v = 0; v < vparent_.size(); ++v) {
    if (vmap[v] == -1) continue;
    std::fill(slot_seen.begin(), slot_seen.end(), 0);
    for (int enc : ends_[v]) {
      if (!end_live_at(enc, static_cast<int>(v))) continue;
      char& seen = slot_seen[end_slot(enc)];
      if (seen) throw InvariantError("freeze called with unresolved port collisions");
      seen = 1;
    }
  }

  TiledSurface Y(pres_);
  Y.num_vertices = nv;
  std::vector<int> emap(edges_.size(), -1);
  for (size_t e = 0; e < edges_.size(); ++e) {
    if (ereplaced_[e] != -1) continue;
    emap[e] = static_cast<int>(Y.edges.size());
    Y.edges.push_back(
        {vmap[vertex_rep(edges_[e].src)], vmap[vertex_rep(edges_[e].dst)], edges_[e].label});
  }

  std::set<Face> seen_faces;
  for (const Face& f : faces_) {
    Face mapped = f;
    for (FaceStep& st : mapped) st.edge = emap[edge_rep(st.edge)];
    mapped = canonical_face_rotation(Y, std::move(mapped));
    if (seen_faces.insert(mapped).second) Y.faces.push_back(std::move(mapped));
  }

  if (vertex_image) {
    vertex_image->resize(vparent_.size());
    for (size_t v = 0; v < vparent_.size(); ++v)
      (*vertex_image)[v] = vmap[vertex_rep(static_cast<int>(v))];
  }
  return Y;
}

long long hanging_potential(const TiledSurface& Y) {
  return 4LL * Y.pres.genus() * Y.num_vertices - 2LL * Y.edges.size();
}

namespace {

long long boundary_total(const TiledSurface& Y) {
  return 2LL * Y.edges.size() - 4LL * Y.pres.genus() * Y.faces.size();
}

// Glues a fresh relator face onto the pre-complex so that the face's arc at
// relator positions pos .. pos+b-1 runs along the given vertex path (b+1
// vertices). The duplicated arc edges disappear in the following fold.
void glue_face_along(PreComplex& pc, const std::vector<int>& path, int pos) {
  const Presentation& p = pc.pres();
  const int n = p.relator_length();
  const int b = static_cast<int>(path.size()) - 1;
  if (b < 1 || b > n) throw InvariantError("glue path has impossible length");

  std::vector<int> at(n, -1);
  for (int j = 0; j <= b; ++j) {
    int& slot = at[p.mod(pos + j)];
    if (slot == -1) {
      slot = path[j];
    } else if (slot != path[j]) {
      // A full-relator arc whose endpoints differ: the face closes them up.
      pc.merge_vertices(slot, path[j]);
    }
  }
  for (int t = 0; t < n; ++t)
    if (at[t] == -1) at[t] = pc.add_vertex();

  Face face;
  for (int t = 0; t < n; ++t) {
    const Letter l = p.relator()[t];
    const int u = at[t];
    const int w = at[(t + 1) % n];
    if (!l.is_inverse())
      face.push_back({pc.add_edge(u, w, l.generator()), +1});
    else
      face.push_back({pc.add_edge(w, u, l.generator()), -1});
  }
  pc.add_face(std::move(face));
}

TiledSurface attach_blocks(const TiledSurface& Y, const BoundaryCycle& cyc,
                           const std::vector<BlockDecomposition::Block>& blocks,
                           const FoldOptions& opt, int* tracked) {
  PreComplex pc = PreComplex::from_surface(Y);
  const int n = cyc.length();
  for (const auto& blk : blocks) {
    std::vector<int> path;
    for (int j = 0; j < blk.len; ++j) {
      const BoundaryStep& st = cyc.steps[(blk.start + j) % n];
      path.push_back(st.dir > 0 ? Y.edges[st.edge].src : Y.edges[st.edge].dst);
    }
    const BoundaryStep& last = cyc.steps[(blk.start + blk.len - 1) % n];
    path.push_back(last.dir > 0 ? Y.edges[last.edge].dst : Y.edges[last.edge].src);
    glue_face_along(pc, path, blk.pos);
  }
  pc.fold(opt);
  std::vector<int> vimage;
  TiledSurface out = pc.freeze(&vimage);
  if (tracked) *tracked = vimage[*tracked];
  return out;
}

struct Candidate {
  int cycle = 0;
  int start = 0;  // step index, for canonical ordering
  int first_block = 0;
  int block_count = 1;
};

std::vector<BlockDecomposition::Block> segment_blocks(const BlockDecomposition& d,
                                                      const Candidate& c) {
  std::vector<BlockDecomposition::Block> out;
  const int nb = static_cast<int>(d.blocks.size());
  for (int i = 0; i < c.block_count; ++i) out.push_back(d.blocks[(c.first_block + i) % nb]);
  return out;
}

size_t pick_index(size_t count, const FoldOptions& opt, std::mt19937& rng) {
  if (!opt.randomize || count == 1) return 0;
  return std::uniform_int_distribution<size_t>(0, count - 1)(rng);
}

}  // namespace

TiledSurface attach_along(const TiledSurface& Y, const BoundarySegment& seg, SegmentKind kind,
                          const FoldOptions& opt) {
  const Presentation& p = Y.pres;
  const int g = p.genus();
  std::vector<BoundaryCycle> cycles = boundary_cycles(Y);
  if (seg.cycle < 0 || seg.cycle >= static_cast<int>(cycles.size()))
    throw std::invalid_argument("attach_along: no such boundary cycle");
  const BoundaryCycle& cyc = cycles[seg.cycle];
  const BlockDecomposition d = block_decomposition(cyc, p);
  const int nb = static_cast<int>(d.blocks.size());
  if (nb == 0 || seg.first_block < 0 || seg.first_block >= nb || seg.block_count < 1 ||
      seg.block_count > nb)
    throw std::invalid_argument("attach_along: segment indices out of range");

  auto blk = [&](int i) -> const BlockDecomposition::Block& {
    return d.blocks[(seg.first_block + i) % nb];
  };
  const int preceding_gap = d.blocks[(seg.first_block + nb - 1) % nb].following_gap;
  const int following_gap = blk(seg.block_count - 1).following_gap;

  switch (kind) {
    case SegmentKind::long_block: {
      const bool whole_gapless_cycle = nb == 1 && following_gap == 0;
      if (seg.block_count != 1 || blk(0).len < 2 * g + 1 ||
          (!whole_gapless_cycle && (preceding_gap == 0 || following_gap == 0)))
        throw std::invalid_argument("attach_along: segment is not a maximal long block");
      break;
    }
    case SegmentKind::long_chain: {
      bool ok = seg.block_count >= 2 && blk(0).len == 2 * g &&
                blk(seg.block_count - 1).len == 2 * g && preceding_gap != 0;
      for (int i = 1; i + 1 < seg.block_count && ok; ++i)
        if (blk(i).len != 2 * g - 1) ok = false;
      for (int i = 0; i + 1 < seg.block_count && ok; ++i)
        if (blk(i).following_gap != 1) ok = false;
      if (!ok) throw std::invalid_argument("attach_along: segment is not a long chain");
      break;
    }
    case SegmentKind::half_block: {
      if (seg.block_count != 1 || blk(0).len != 2 * g || preceding_gap == 0 ||
          following_gap == 0)
        throw std::invalid_argument("attach_along: segment is not a half-block");
      break;
    }
    case SegmentKind::half_chain: {
      if (seg.first_block != 0 || seg.block_count != nb || !d.is_half_chain)
        throw std::invalid_argument("attach_along: cycle is not a half-chain");
      break;
    }
  }

  const long long before = boundary_total(Y);
  const long long pot_before = hanging_potential(Y);
  const long long faces_before = static_cast<long long>(Y.faces.size());
  std::vector<BlockDecomposition::Block> blocks;
  for (int i = 0; i < seg.block_count; ++i) blocks.push_back(blk(i));
  TiledSurface out = attach_blocks(Y, cyc, blocks, opt, nullptr);

  const long long after = boundary_total(out);
  const long long pot_after = hanging_potential(out);
  const long long faces_after = static_cast<long long>(out.faces.size());
  switch (kind) {
    case SegmentKind::long_block:
      if (after != before - 2 * (blk(0).len - 2 * g))
        throw InvariantError("long-block attachment changed the boundary length incorrectly");
      break;
    case SegmentKind::long_chain:
      if (after != before - 2)
        throw InvariantError("long-chain attachment changed the boundary length incorrectly");
      break;
    case SegmentKind::half_block:
    case SegmentKind::half_chain:
      if (after != before)
        throw InvariantError("half attachment changed the boundary length");
      if (faces_after != faces_before + seg.block_count)
        throw InvariantError("half attachment produced a duplicate face");
      if (pot_after != pot_before + 8LL * g * (g - 1) * seg.block_count)
        throw InvariantError("half attachment moved the potential by the wrong amount");
      break;
  }
  return out;
}

TiledSurface boundary_reduce(TiledSurface Y, const FoldOptions& opt, int* tracked_vertex) {
  const Presentation& p = Y.pres;
  const int g = p.genus();
  std::mt19937 rng(opt.seed);
  for (;;) {
    std::vector<BoundaryCycle> cycles = boundary_cycles(Y);
    std::vector<BlockDecomposition> decomps;
    decomps.reserve(cycles.size());
    for (const BoundaryCycle& c : cycles) decomps.push_back(block_decomposition(c, p));

    std::vector<Candidate> cand;
    for (int i = 0; i < static_cast<int>(cycles.size()); ++i)
      for (int j = 0; j < static_cast<int>(decomps[i].blocks.size()); ++j)
        if (decomps[i].blocks[j].len >= 2 * g + 1)
          cand.push_back({i, decomps[i].blocks[j].start, j, 1});

    bool is_chain = false;
    if (cand.empty()) {
      is_chain = true;
      for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
        std::vector<Run> runs;
        std::vector<int> gaps;
        for (const auto& b : decomps[i].blocks) {
          runs.push_back({b.start, b.len, b.pos});
          gaps.push_back(b.following_gap);
        }
        for (const ChainOcc& occ : all_long_chains(runs, gaps, true, p))
          cand.push_back({i, decomps[i].blocks[occ.first_run].start, occ.first_run,
                          occ.run_count});
      }
    }
    if (cand.empty()) return Y;

    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.cycle, a.start) < std::tie(b.cycle, b.start);
    });
    const Candidate chosen = cand[pick_index(cand.size(), opt, rng)];
    const BlockDecomposition& d = decomps[chosen.cycle];
    const int nb = static_cast<int>(d.blocks.size());

    const long long before = boundary_total(Y);
    Y = attach_blocks(Y, cycles[chosen.cycle], segment_blocks(d, chosen), opt, tracked_vertex);
    const long long after = boundary_total(Y);
    if (is_chain) {
      if (after != before - 2)
        throw InvariantError("long-chain reduction changed the boundary length incorrectly");
    } else {
      const auto& b = d.blocks[chosen.first_block];
      const int pre = d.blocks[(chosen.first_block + nb - 1) % nb].following_gap;
      const bool maximal = (pre != 0 && b.following_gap != 0) || (nb == 1 && b.following_gap == 0);
      if (maximal && after != before - 2 * (b.len - 2 * g))
        throw InvariantError("long-block reduction changed the boundary length incorrectly");
      if (after > before - 2)
        throw InvariantError("boundary reduction failed to shrink the boundary");
    }
  }
}

TiledSurface strong_boundary_reduce(TiledSurface Y, const FoldOptions& opt, int* tracked_vertex) {
  const Presentation& p = Y.pres;
  const int g = p.genus();
  std::mt19937 rng(opt.seed);
  Y = boundary_reduce(std::move(Y), opt, tracked_vertex);

  const long long per_face = 8LL * g * (g - 1);
  const long long guard =
      ((4LL * g - 1) * (boundary_total(Y) + 4LL * g) - hanging_potential(Y)) / per_face + 8;
  long long steps = 0;
  for (;;) {
    std::vector<BoundaryCycle> cycles = boundary_cycles(Y);
    std::vector<Candidate> cand;
    std::vector<BlockDecomposition> decomps;
    decomps.reserve(cycles.size());
    for (const BoundaryCycle& c : cycles) decomps.push_back(block_decomposition(c, p));

    for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
      const int nb = static_cast<int>(decomps[i].blocks.size());
      for (int j = 0; j < nb; ++j) {
        const auto& b = decomps[i].blocks[j];
        const int pre = decomps[i].blocks[(j + nb - 1) % nb].following_gap;
        if (b.len == 2 * g && pre != 0 && b.following_gap != 0)
          cand.push_back({i, b.start, j, 1});
      }
    }
    if (cand.empty()) {
      for (int i = 0; i < static_cast<int>(cycles.size()); ++i)
        if (decomps[i].is_half_chain)
          cand.push_back({i, 0, 0, static_cast<int>(decomps[i].blocks.size())});
    }
    if (cand.empty()) return Y;

    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.cycle, a.start) < std::tie(b.cycle, b.start);
    });
    const Candidate chosen = cand[pick_index(cand.size(), opt, rng)];
    const BlockDecomposition& d = decomps[chosen.cycle];

    const long long before = boundary_total(Y);
    const long long pot_before = hanging_potential(Y);
    const long long faces_before = static_cast<long long>(Y.faces.size());
    Y = attach_blocks(Y, cycles[chosen.cycle], segment_blocks(d, chosen), opt, tracked_vertex);
    if (boundary_total(Y) != before)
      throw InvariantError("half attachment changed the boundary length");
    if (static_cast<long long>(Y.faces.size()) != faces_before + chosen.block_count)
      throw InvariantError("half attachment produced a duplicate face");
    if (hanging_potential(Y) != pot_before + per_face * chosen.block_count)
      throw InvariantError("half attachment moved the potential by the wrong amount");

    const long long faces_now = static_cast<long long>(Y.faces.size());
    Y = boundary_reduce(std::move(Y), opt, tracked_vertex);
    if (static_cast<long long>(Y.faces.size()) != faces_now || boundary_total(Y) != before)
      throw InvariantError("half attachment left a long structure behind");

    if (++steps > guard)
      throw InvariantError("half attachments exceeded the potential bound");
  }
}

PointedCoreSurface core_surface_from_generators(const std::vector<Word>& gens,
                                                const Presentation& p, const FoldOptions& opt) {
  std::vector<Word> reduced;
  for (const Word& w : gens) {
    Word r = dehn_reduce(w, p);
    if (!r.empty()) reduced.push_back(std::move(r));
  }
  if (reduced.empty()) return {single_vertex_surface(p), 0, {}};

  auto [shortest, conj] = cyclic_shorten(reduced[0], p);
  std::vector<Word> petals{shortest.rep()};
  for (size_t i = 1; i < reduced.size(); ++i) {
    Word u = dehn_reduce(concat(concat(conj, reduced[i]), inverse(conj)), p);
    if (u.empty()) throw InvariantError("conjugating killed a nontrivial generator");
    petals.push_back(std::move(u));
  }

  PreComplex pc(p);
  const int base = pc.add_vertex();
  for (const Word& u : petals) {
    int prev = base;
    for (size_t j = 0; j < u.size(); ++j) {
      const int nxt = j + 1 == u.size() ? base : pc.add_vertex();
      if (!u[j].is_inverse())
        pc.add_edge(prev, nxt, u[j].generator());
      else
        pc.add_edge(nxt, prev, u[j].generator());
      prev = nxt;
    }
  }
  pc.fold(opt);
  std::vector<int> vimage;
  TiledSurface Y = pc.freeze(&vimage);
  int bp = vimage[base];
  Y = boundary_reduce(std::move(Y), opt, &bp);
  Y = strong_boundary_reduce(std::move(Y), opt, &bp);
  return {std::move(Y), bp, conj};
}

}  // namespace coresurf
