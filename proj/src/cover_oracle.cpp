#include "coresurf/cover_oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coresurf/folding.hpp"
#include "coresurf/word.hpp"
#include "coresurf/word_calculus.hpp"

namespace coresurf {

// Growable folded graph with per-vertex corner masks. Vertices are rows of a
// flat neighbor table; merges go through a union-find whose stale entries are
// resolved lazily on read. Distances here are tentative creation depths, only
// bfs() makes them true graph distances.
struct CoverBall::Builder {
  const Presentation& p;
  int k;
  std::vector<std::uint32_t> nbr;
  std::vector<std::uint32_t> corners;
  std::vector<std::uint8_t> dist;
  std::vector<std::uint32_t> parent;
  std::vector<int> dep_pos;  // slot -> relator position departing through it

  static constexpr std::uint8_t kFar = 0xff;
  // Hard cap on builder rows. Balls grow roughly sevenfold per unit of
  // radius, so a runaway request should fail cleanly instead of exhausting
  // memory.
  static constexpr std::uint32_t kMaxRows = 80'000'000;

  explicit Builder(const Presentation& pres) : p(pres), k(pres.slot_count()) {
    dep_pos.assign(k, 0);
    for (int t = 0; t < p.relator_length(); ++t)
      dep_pos[p.departure_slot(p.relator_at(t))] = t;
  }

  std::uint32_t rows() const { return static_cast<std::uint32_t>(parent.size()); }

  std::uint32_t add_vertex(std::uint8_t d) {
    const std::uint32_t v = rows();
    if (v >= kMaxRows)
      throw BudgetExceeded("cover ball exceeds the vertex budget");
    nbr.insert(nbr.end(), k, kNone);
    corners.push_back(0);
    dist.push_back(d);
    parent.push_back(v);
    return v;
  }

  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  // Resolved neighbor through the given slot; caches the resolution.
  std::uint32_t slot(std::uint32_t v, int s) {
    std::uint32_t x = nbr[std::size_t(v) * k + s];
    if (x == kNone) return kNone;
    x = find(x);
    nbr[std::size_t(v) * k + s] = x;
    return x;
  }

  void link(std::uint32_t u, Letter l, std::uint32_t w) {
    nbr[std::size_t(u) * k + p.departure_slot(l)] = w;
    nbr[std::size_t(w) * k + p.arrival_slot(l)] = u;
  }

  // Folds two vertices together and cascades through every slot conflict the
  // union exposes. All requested identifications are relator-forced, so slot
  // labels always agree.
  void merge(std::uint32_t a, std::uint32_t b) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> todo{{a, b}};
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      parent[y] = x;
      corners[x] |= corners[y];
      dist[x] = std::min(dist[x], dist[y]);
      for (int s = 0; s < k; ++s) {
        const std::uint32_t ye = nbr[std::size_t(y) * k + s];
        if (ye == kNone) continue;
        std::uint32_t& xe = nbr[std::size_t(x) * k + s];
        if (xe == kNone)
          xe = ye;
        else
          todo.emplace_back(xe, ye);
      }
    }
  }

  // Ensures the relator face over the corner sector (s, s+1) at v exists:
  // walks the relator from the position departing through s+1, reusing
  // existing edges, creating cells where missing, and closing the walk back
  // at v (merging whatever the closure identifies).
  void attach(std::uint32_t v, int s) {
    v = find(v);
    if ((corners[v] >> s) & 1u) return;
    const int q = dep_pos[p.mod(s + 1)];
    std::uint32_t u = v;
    for (int t = 0; t < p.relator_length(); ++t) {
      const Letter l = p.relator_at(q + t);
      const int ds = p.departure_slot(l);
      corners[u] |= 1u << p.mod(ds - 1);
      if (t + 1 == p.relator_length()) {
        const std::uint32_t x = slot(u, ds);
        if (x != kNone) {
          if (x != find(v)) merge(x, v);
        } else {
          const std::uint32_t y = slot(v, p.arrival_slot(l));
          if (y != kNone) {
            if (y != u) merge(u, y);
          } else {
            link(u, l, v);
          }
        }
      } else {
        const std::uint32_t x = slot(u, ds);
        if (x != kNone) {
          u = x;
        } else {
          const std::uint32_t w =
              add_vertex(static_cast<std::uint8_t>(std::min<int>(dist[u] + 1, kFar - 1)));
          link(u, l, w);
          u = w;
        }
      }
    }
  }

  void import(const TiledSurface& S) {
    for (int v = 0; v < S.num_vertices; ++v) add_vertex(kFar - 1);
    for (const EdgeRec& e : S.edges)
      link(static_cast<std::uint32_t>(e.src), Letter::make(e.label, false),
           static_cast<std::uint32_t>(e.dst));
    for (const Face& f : S.faces)
      for (const FaceStep& st : f)
        corners[S.step_to(st)] |= 1u << p.arrival_slot(S.step_letter(st));
  }

  void bfs(std::uint32_t base) {
    std::fill(dist.begin(), dist.end(), kFar);
    base = find(base);
    dist[base] = 0;
    std::vector<std::uint32_t> cur{base};
    for (int d = 0; !cur.empty(); ++d) {
      const std::uint8_t next =
          static_cast<std::uint8_t>(std::min<int>(d + 1, kFar - 1));
      std::vector<std::uint32_t> nxt;
      for (const std::uint32_t v : cur)
        for (int s = 0; s < k; ++s) {
          const std::uint32_t w = slot(v, s);
          if (w != kNone && dist[w] == kFar) {
            dist[w] = next;
            nxt.push_back(w);
          }
        }
      cur = std::move(nxt);
    }
  }

  // Compacts live rows with dist <= keep into the ball's final arrays and
  // counts the faces the kept region carries.
  void finalize_into(CoverBall& ball, std::uint32_t base, int keep) {
    const std::uint32_t n = rows();
    std::vector<std::uint32_t> remap(n, kNone);
    std::uint32_t m = 0;
    for (std::uint32_t v = 0; v < n; ++v)
      if (parent[v] == v && dist[v] <= keep) remap[v] = m++;
    base = find(base);
    if (remap[base] == kNone)
      throw InvariantError("cover ball basepoint fell outside the kept region");
    ball.base_ = remap[base];
    ball.nbr_.assign(std::size_t(m) * k, kNone);
    ball.corners_.assign(m, 0);
    ball.dist_.assign(m, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (remap[v] == kNone) continue;
      ball.corners_[remap[v]] = corners[v];
      ball.dist_[remap[v]] = dist[v];
      for (int s = 0; s < k; ++s) {
        const std::uint32_t x = slot(v, s);
        ball.nbr_[std::size_t(remap[v]) * k + s] =
            (x != kNone && remap[x] != kNone) ? remap[x] : kNone;
      }
    }
    ball.faces_ = 0;
    const Word& rel = p.relator();
    const int s0 = p.source_slot(1);
    for (std::uint32_t u = 0; u < m; ++u) {
      if (ball.nbr_[std::size_t(u) * k + s0] == kNone) continue;
      const auto end = ball.trace(static_cast<std::int64_t>(u), rel);
      if (end && *end == static_cast<std::int64_t>(u)) ++ball.faces_;
    }
  }
};

CoverBall::CoverBall(const TiledSurface& seed, int basepoint, int radius, bool reduce_rim)
    : pres_(seed.pres), slots_(seed.pres.slot_count()), radius_(radius) {
  if (pres_.genus() > 7)
    throw std::invalid_argument("cover ball: genus above 7 overflows the corner masks");
  if (radius < 0 || radius > 200)
    throw std::invalid_argument("cover ball: radius out of range");
  if (basepoint < 0 || basepoint >= seed.num_vertices)
    throw std::invalid_argument("cover ball: basepoint out of range");
  if (!validate(seed).ok())
    throw std::invalid_argument("cover ball: seed complex is invalid");

  const std::uint32_t full =
      slots_ == 32 ? 0xffffffffu : ((1u << slots_) - 1u);
  const auto b0 = static_cast<std::uint32_t>(basepoint);

  Builder b(pres_);
  b.import(seed);

  // Saturation sweeps. Attaching near the rim can shorten distances, which
  // pulls new vertices under the radius, so sweep until a fixpoint.
  for (int sweep = 0;; ++sweep) {
    if (sweep > 10000)
      throw InvariantError("cover ball saturation did not stabilize");
    b.bfs(b0);
    std::vector<std::pair<std::uint8_t, std::uint32_t>> todo;
    for (std::uint32_t v = 0; v < b.rows(); ++v)
      if (b.parent[v] == v && b.dist[v] <= radius && b.corners[v] != full)
        todo.emplace_back(b.dist[v], v);
    if (todo.empty()) break;
    std::sort(todo.begin(), todo.end());
    for (const auto& [d, v] : todo)
      for (int s = 0; s < slots_; ++s) b.attach(v, s);
  }

  b.bfs(b0);
  b.finalize_into(*this, b0, radius_ + 1);

  if (reduce_rim) {
    TiledSurface S = to_surface();
    int bp = static_cast<int>(base_);
    S = boundary_reduce(std::move(S), {}, &bp);
    Builder b2(pres_);
    b2.import(S);
    b2.bfs(static_cast<std::uint32_t>(bp));
    b2.finalize_into(*this, static_cast<std::uint32_t>(bp), Builder::kFar - 1);
  }
}

std::optional<std::int64_t> CoverBall::trace(std::int64_t v, const Word& w) const {
  if (v < 0 || v >= vertex_count())
    throw std::invalid_argument("cover ball trace: vertex out of range");
  for (const Letter l : w) {
    const std::uint32_t x = nbr_[v * slots_ + pres_.departure_slot(l)];
    if (x == kNone) return std::nullopt;
    v = static_cast<std::int64_t>(x);
  }
  return v;
}

TiledSurface CoverBall::to_surface() const {
  const std::int64_t n = vertex_count();
  if (n > std::numeric_limits<int>::max())
    throw std::invalid_argument("cover ball too large to materialize");
  TiledSurface S(pres_);
  S.num_vertices = static_cast<int>(n);
  const int gens = pres_.generator_count();
  std::vector<int> eid(static_cast<std::size_t>(n) * gens, -1);
  for (std::int64_t v = 0; v < n; ++v)
    for (int g = 1; g <= gens; ++g) {
      const std::uint32_t w = nbr_[v * slots_ + pres_.source_slot(g)];
      if (w == kNone) continue;
      eid[v * gens + (g - 1)] = static_cast<int>(S.edges.size());
      S.edges.push_back({static_cast<int>(v), static_cast<int>(w), g});
    }
  // Faces are the closed relator walks; each carries a unique a1-forward
  // step, so walking from every a1 source lists each face exactly once.
  for (std::int64_t v = 0; v < n; ++v) {
    if (nbr_[v * slots_ + pres_.source_slot(1)] == kNone) continue;
    Face f;
    std::int64_t u = v;
    bool ok = true;
    for (int t = 0; t < pres_.relator_length(); ++t) {
      const Letter l = pres_.relator_at(t);
      const std::uint32_t next = nbr_[u * slots_ + pres_.departure_slot(l)];
      if (next == kNone) {
        ok = false;
        break;
      }
      const std::int64_t src = l.is_inverse() ? static_cast<std::int64_t>(next) : u;
      const int e = eid[src * gens + (l.generator() - 1)];
      f.push_back({e, l.is_inverse() ? -1 : +1});
      u = static_cast<std::int64_t>(next);
    }
    if (ok && u == v) S.faces.push_back(std::move(f));
  }
  return S;
}

bool words_equal_oracle(const Word& u, const Word& v, const Presentation& p) {
  const Word t = free_reduce(concat(u, inverse(v)));
  if (t.empty()) return true;
  CoverBall ball(single_vertex_surface(p), 0, static_cast<int>(t.size()) - 1,
                 /*boundary_reduce=*/false);
  const auto end = ball.trace(t);
  if (!end) throw InvariantError("equality oracle walked off its saturated ball");
  return *end == ball.basepoint();
}

int element_length_oracle(const Word& w, const Presentation& p) {
  const Word t = free_reduce(w);
  if (t.empty()) return 0;
  CoverBall ball(single_vertex_surface(p), 0, static_cast<int>(t.size()) - 1,
                 /*boundary_reduce=*/false);
  const auto end = ball.trace(t);
  if (!end) throw InvariantError("length oracle walked off its saturated ball");
  return ball.distance(*end);
}

TiledSurface complete_faces(TiledSurface Y) {
  const Presentation& p = Y.pres;
  const SlotTable t = build_slot_table(Y);
  if (!t.collisions.empty())
    throw std::invalid_argument("complete_faces: complex has unfolded ports");
  std::set<Face> have;
  for (const Face& f : Y.faces) have.insert(canonical_face_rotation(Y, f));
  std::vector<Face> added;
  for (int v = 0; v < Y.num_vertices; ++v) {
    if (t.get(v, p.source_slot(1)) < 0) continue;
    Face f;
    int u = v;
    bool ok = true;
    for (int pos = 0; pos < p.relator_length(); ++pos) {
      const Letter l = p.relator_at(pos);
      const int enc = t.get(u, p.departure_slot(l));
      if (enc < 0) {
        ok = false;
        break;
      }
      const int e = enc / 2;
      f.push_back({e, l.is_inverse() ? -1 : +1});
      u = l.is_inverse() ? Y.edges[e].src : Y.edges[e].dst;
    }
    if (ok && u == v && !have.count(f)) {
      have.insert(f);
      added.push_back(std::move(f));
    }
  }
  for (Face& f : added) Y.faces.push_back(std::move(f));
  return Y;
}

SubComplex subcomplex_of_image(const TiledSurface& sub, const TiledSurface& ambient,
                               const Morphism& m) {
  if (m.vertex_map.size() != static_cast<std::size_t>(sub.num_vertices) ||
      m.edge_map.size() != sub.edges.size() || m.face_map.size() != sub.faces.size())
    throw std::invalid_argument("image subcomplex: morphism does not fit the source");
  SubComplex out;
  auto take = [](const std::vector<int>& src, int limit, std::vector<int>& dst) {
    for (const int x : src) {
      if (x < 0 || x >= limit)
        throw std::invalid_argument("image subcomplex: morphism is partial or out of range");
      dst.push_back(x);
    }
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
  };
  take(m.vertex_map, ambient.num_vertices, out.vertices);
  take(m.edge_map, static_cast<int>(ambient.edges.size()), out.edges);
  take(m.face_map, static_cast<int>(ambient.faces.size()), out.faces);
  return out;
}

namespace {

void normalize_ids(std::vector<int>& ids, int limit, const char* what) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (!ids.empty() && (ids.front() < 0 || ids.back() >= limit))
    throw std::invalid_argument(std::string("closure: ") + what + " id out of range");
}

struct MatSub {
  TiledSurface S;
  std::vector<int> edge_of;  // S edge -> ambient edge
};

MatSub materialize(const TiledSurface& Z, const SubComplex& c) {
  MatSub m{TiledSurface(Z.pres), c.edges};
  m.S.num_vertices = static_cast<int>(c.vertices.size());
  std::vector<int> zv(Z.num_vertices, -1);
  for (int i = 0; i < static_cast<int>(c.vertices.size()); ++i) zv[c.vertices[i]] = i;
  std::vector<int> ze(Z.edges.size(), -1);
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    const EdgeRec& r = Z.edges[c.edges[i]];
    if (zv[r.src] < 0 || zv[r.dst] < 0)
      throw std::invalid_argument("closure: subcomplex misses an edge endpoint");
    ze[c.edges[i]] = i;
    m.S.edges.push_back({zv[r.src], zv[r.dst], r.label});
  }
  for (const int fi : c.faces) {
    Face g;
    for (const FaceStep& st : Z.faces[fi]) {
      if (ze[st.edge] < 0)
        throw std::invalid_argument("closure: subcomplex misses a face edge");
      g.push_back({ze[st.edge], st.dir});
    }
    m.S.faces.push_back(std::move(g));
  }
  return m;
}

struct Pick {
  bool half = false;
  int cycle = -1;
  std::vector<BlockDecomposition::Block> blocks;
};

std::optional<Pick> pick_structure(const std::vector<BoundaryCycle>& cycles,
                                   const std::vector<BlockDecomposition>& decs,
                                   ClosureMode mode, const Presentation& p) {
  const int g2 = 2 * p.genus();
  for (int ci = 0; ci < static_cast<int>(cycles.size()); ++ci)
    for (const auto& blk : decs[ci].blocks)
      if (blk.len >= g2 + 1) return Pick{false, ci, {blk}};
  for (int ci = 0; ci < static_cast<int>(cycles.size()); ++ci) {
    const auto& blocks = decs[ci].blocks;
    std::vector<Run> runs;
    std::vector<int> gaps;
    for (const auto& blk : blocks) {
      runs.push_back({blk.start, blk.len, blk.pos});
      gaps.push_back(blk.following_gap);
    }
    const auto chains = all_long_chains(runs, gaps, true, p);
    if (chains.empty()) continue;
    const ChainOcc& c = chains.front();
    Pick out{false, ci, {}};
    const int nb = static_cast<int>(blocks.size());
    for (int j = 0; j < c.run_count; ++j) out.blocks.push_back(blocks[(c.first_run + j) % nb]);
    return out;
  }
  if (mode != ClosureMode::strong) return std::nullopt;
  for (int ci = 0; ci < static_cast<int>(cycles.size()); ++ci) {
    const auto& blocks = decs[ci].blocks;
    const int nb = static_cast<int>(blocks.size());
    for (int i = 0; i < nb; ++i) {
      const int preceding = blocks[(i + nb - 1) % nb].following_gap;
      if (blocks[i].len == g2 && preceding != 0 && blocks[i].following_gap != 0)
        return Pick{true, ci, {blocks[i]}};
    }
  }
  for (int ci = 0; ci < static_cast<int>(cycles.size()); ++ci)
    if (decs[ci].is_half_chain && !decs[ci].blocks.empty())
      return Pick{true, ci, decs[ci].blocks};
  return std::nullopt;
}

}  // namespace

ClosureResult closure_within(const TiledSurface& Z, SubComplex sub, ClosureMode mode,
                             long budget) {
  const Presentation& p = Z.pres;
  if (!validate(Z).ok())
    throw std::invalid_argument("closure: ambient complex is invalid");
  if (!is_boundary_reduced(Z))
    throw std::invalid_argument("closure: ambient complex is not boundary reduced");
  if (mode == ClosureMode::strong && !is_strongly_boundary_reduced(Z))
    throw std::invalid_argument("closure: ambient complex is not strongly boundary reduced");

  normalize_ids(sub.vertices, Z.num_vertices, "vertex");
  normalize_ids(sub.edges, static_cast<int>(Z.edges.size()), "edge");
  normalize_ids(sub.faces, static_cast<int>(Z.faces.size()), "face");

  // Which ambient face covers each directed edge side.
  std::vector<int> across(2 * Z.edges.size(), -1);
  for (int fi = 0; fi < static_cast<int>(Z.faces.size()); ++fi)
    for (const FaceStep& st : Z.faces[fi]) {
      int& slot = across[2 * st.edge + (st.dir < 0 ? 1 : 0)];
      if (slot != -1)
        throw std::invalid_argument("closure: ambient covers an edge side twice");
      slot = fi;
    }

  ClosureResult res;
  res.steps = 0;
  long long prev_tot = -1;
  bool prev_half = false;
  for (;;) {
    const MatSub m = materialize(Z, sub);
    const auto cycles = boundary_cycles(m.S);
    std::vector<BlockDecomposition> decs;
    decs.reserve(cycles.size());
    for (const auto& c : cycles) decs.push_back(block_decomposition(c, p));
    long long tot = 0;
    for (const auto& c : cycles) tot += c.length();
    res.boundary_totals.push_back(tot);
    // A long structure sheds boundary; a half structure swaps arcs of equal
    // length, shrinking only when its complement already sits in the
    // subcomplex.
    if (prev_tot >= 0) {
      if (prev_half && tot > prev_tot)
        throw InvariantError("closure half step grew the boundary");
      if (!prev_half && tot > prev_tot - 2)
        throw InvariantError("closure step failed to shorten the boundary");
    }
    prev_tot = tot;

    const auto pick = pick_structure(cycles, decs, mode, p);
    if (!pick) {
      res.completed = true;
      break;
    }
    if (mode == ClosureMode::strong && res.steps >= budget) break;
    prev_half = pick->half;

    std::vector<int> faces;
    for (const auto& blk : pick->blocks) {
      const BoundaryStep& st = cycles[pick->cycle].steps[blk.start];
      const int side = 2 * m.edge_of[st.edge] + (st.dir < 0 ? 1 : 0);
      const int f = across[side];
      if (f < 0)
        throw InvariantError("closure: no ambient face across a reducible boundary segment");
      if (std::binary_search(sub.faces.begin(), sub.faces.end(), f))
        throw InvariantError("closure annexed a face it already contains");
      faces.push_back(f);
    }
    for (const int f : faces) {
      sub.faces.push_back(f);
      for (const FaceStep& st : Z.faces[f]) {
        sub.edges.push_back(st.edge);
        sub.vertices.push_back(Z.edges[st.edge].src);
        sub.vertices.push_back(Z.edges[st.edge].dst);
      }
    }
    normalize_ids(sub.vertices, Z.num_vertices, "vertex");
    normalize_ids(sub.edges, static_cast<int>(Z.edges.size()), "edge");
    normalize_ids(sub.faces, static_cast<int>(Z.faces.size()), "face");
    ++res.steps;
  }
  res.sub = std::move(sub);
  return res;
}

}  // namespace coresurf
