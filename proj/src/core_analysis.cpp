#include "coresurf/core_analysis.hpp"

#include <algorithm>
#include <string>

#include "coresurf/word.hpp"
#include "coresurf/word_calculus.hpp"

namespace coresurf {

CoreCheck check_core_surface(const TiledSurface& Y) {
  CoreCheck out;
  const Presentation& p = Y.pres;

  const Diagnostics d = validate(Y);
  if (!d.ok()) {
    for (const std::string& v : d.violations) out.reasons.push_back("invalid: " + v);
    return out;
  }
  if (Y.num_vertices == 0) {
    out.reasons.push_back("empty complex");
    return out;
  }
  const std::vector<int> comp = vertex_components(Y);
  if (*std::max_element(comp.begin(), comp.end()) > 0)
    out.reasons.push_back("disconnected complex");

  const int half = 2 * p.genus();
  const auto cycles = boundary_cycles(Y);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const Word& w = cycles[i].word;
    if (w.empty()) continue;  // isolated vertex; connectivity covers the rest
    const std::string tag = "boundary cycle " + std::to_string(i);
    if (!is_cyclically_reduced(w)) {
      out.reasons.push_back(tag + " is not cyclically reduced");
      continue;
    }

    // Long structures disqualify in either reading direction: an arc of the
    // inverse relator is a long block of the reversed cycle.
    for (int side = 0; side < 2; ++side) {
      const Word ww = side == 0 ? w : inverse(w);
      const char* dir = side == 0 ? "" : " reversed";
      const CyclicRuns cr = cyclic_runs(ww, p);
      bool block = false;
      for (const Run& r : cr.runs) block = block || r.len >= half + 1;
      if (block)
        out.reasons.push_back(tag + dir + " carries a long block");
      else if (find_long_chain(cr.runs, cr.gap_after, true, p))
        out.reasons.push_back(tag + dir + " carries a long chain");
    }

    // Half structures count in the walked orientation only, matching what
    // strong boundary reduction removes.
    const CyclicRuns cr = cyclic_runs(w, p);
    const int nr = static_cast<int>(cr.runs.size());
    bool half_block = false;
    for (int j = 0; j < nr; ++j) {
      const int before = cr.gap_after[(j + nr - 1) % nr];
      if (cr.runs[j].len == half && before != 0 && cr.gap_after[j] != 0) half_block = true;
    }
    if (half_block) out.reasons.push_back(tag + " carries a half block");
    bool half_chain = nr > 0;
    for (int j = 0; j < nr; ++j)
      half_chain = half_chain && cr.runs[j].len == half - 1 && cr.gap_after[j] == 1;
    if (half_chain) out.reasons.push_back(tag + " is a half chain");

    if (dehn_reduce(w, p).empty()) out.reasons.push_back(tag + " bounds a disk");
  }
  return out;
}

bool is_core_surface(const TiledSurface& Y) { return check_core_surface(Y).ok(); }

bool is_member(const PointedCoreSurface& core, const Word& w) {
  const Presentation& p = core.surface.pres;
  const Word t =
      dehn_reduce(concat(concat(core.conjugator, w), inverse(core.conjugator)), p);
  const TraceResult r = trace_word(core.surface, core.basepoint, t);
  return r.ok && r.vertex == core.basepoint;
}

bool is_conjugate_into(const PointedCoreSurface& core, const Word& w, long budget) {
  const Presentation& p = core.surface.pres;
  if (is_trivial(w, p)) return true;
  const auto reps = shortest_cyclic_reps(w, p, budget);
  const SlotTable st = build_slot_table(core.surface);
  // A closed trace of any rotation from some vertex yields a closed trace of
  // the canonical rotation from the vertex that rotation starts at, so the
  // canonical representative alone covers the whole class.
  for (const CyclicWord& c : reps)
    for (int v = 0; v < core.surface.num_vertices; ++v) {
      const TraceResult r = trace_word(core.surface, st, v, c.rep());
      if (r.ok && r.vertex == v) return true;
    }
  return false;
}

namespace {

struct CompPiece {
  TiledSurface S;
  std::vector<int> v_orig;
  std::vector<int> e_orig;
  std::vector<int> f_orig;
};

CompPiece component_piece(const TiledSurface& Y, const std::vector<int>& comp, int c) {
  CompPiece out{TiledSurface(Y.pres), {}, {}, {}};
  std::vector<int> vmap(Y.num_vertices, -1);
  for (int v = 0; v < Y.num_vertices; ++v)
    if (comp[v] == c) {
      vmap[v] = static_cast<int>(out.v_orig.size());
      out.v_orig.push_back(v);
    }
  out.S.num_vertices = static_cast<int>(out.v_orig.size());
  std::vector<int> emap(Y.edges.size(), -1);
  for (int e = 0; e < static_cast<int>(Y.edges.size()); ++e) {
    const EdgeRec& r = Y.edges[e];
    if (comp[r.src] != c) continue;
    emap[e] = static_cast<int>(out.e_orig.size());
    out.e_orig.push_back(e);
    out.S.edges.push_back({vmap[r.src], vmap[r.dst], r.label});
  }
  for (int f = 0; f < static_cast<int>(Y.faces.size()); ++f) {
    const Face& face = Y.faces[f];
    if (face.empty() || comp[Y.step_from(face[0])] != c) continue;
    Face g;
    for (const FaceStep& st : face) g.push_back({emap[st.edge], st.dir});
    out.f_orig.push_back(f);
    out.S.faces.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::optional<Morphism> morphism_between_cores(const TiledSurface& from,
                                               const TiledSurface& to) {
  Morphism total{std::vector<int>(from.num_vertices, -1),
                 std::vector<int>(from.edges.size(), -1),
                 std::vector<int>(from.faces.size(), -1)};
  if (from.num_vertices == 0) return total;
  const std::vector<int> comp = vertex_components(from);
  const int nc = *std::max_element(comp.begin(), comp.end()) + 1;
  for (int c = 0; c < nc; ++c) {
    const CompPiece piece = component_piece(from, comp, c);
    bool found = false;
    for (int tv = 0; tv < to.num_vertices && !found; ++tv) {
      const auto m = find_morphism(piece.S, to, {{0, tv}});
      if (!m) continue;
      for (std::size_t i = 0; i < piece.v_orig.size(); ++i)
        total.vertex_map[piece.v_orig[i]] = m->vertex_map[i];
      for (std::size_t i = 0; i < piece.e_orig.size(); ++i)
        total.edge_map[piece.e_orig[i]] = m->edge_map[i];
      for (std::size_t i = 0; i < piece.f_orig.size(); ++i)
        total.face_map[piece.f_orig[i]] = m->face_map[i];
      found = true;
    }
    if (!found) return std::nullopt;
  }
  verify_morphism(from, to, total);
  return total;
}

}  // namespace coresurf
