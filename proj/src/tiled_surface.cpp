#include "coresurf/tiled_surface.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace coresurf {

namespace {

std::string cell_name(const char* kind, int id) {
  std::ostringstream os;
  os << kind << " " << id;
  return os.str();
}

}  // namespace

std::string generator_token(int label) {
  const int pair = (label - 1) / 2 + 1;
  const char kind = (label - 1) % 2 == 0 ? 'a' : 'b';
  return kind + std::to_string(pair);
}

int parse_generator_token(const std::string& token, const Presentation& p) {
  if (token.size() < 2 || (token[0] != 'a' && token[0] != 'b'))
    throw ParseError("bad generator token '" + token + "'", 0);
  int idx = 0;
  for (size_t i = 1; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i])))
      throw ParseError("bad generator token '" + token + "'", i);
    idx = idx * 10 + (token[i] - '0');
  }
  if (idx < 1 || idx > p.genus())
    throw ParseError("generator index out of range in '" + token + "'", 1);
  return 2 * (idx - 1) + (token[0] == 'a' ? 1 : 2);
}

TiledSurface single_vertex_surface(const Presentation& p) {
  TiledSurface Y(p);
  Y.num_vertices = 1;
  return Y;
}

std::optional<Face> try_canonical_face_rotation(const TiledSurface& Y, Face f) {
  const Word& r = Y.pres.relator();
  const int n = static_cast<int>(r.size());
  if (static_cast<int>(f.size()) != n) return std::nullopt;
  for (int rot = 0; rot < n; ++rot) {
    bool match = true;
    for (int t = 0; t < n && match; ++t) {
      const FaceStep& s = f[(rot + t) % n];
      const FaceStep& nxt = f[(rot + t + 1) % n];
      if (Y.step_letter(s) != r[t] || Y.step_to(s) != Y.step_from(nxt)) match = false;
    }
    if (match) {
      std::rotate(f.begin(), f.begin() + rot, f.end());
      return f;
    }
  }
  return std::nullopt;
}

Face canonical_face_rotation(const TiledSurface& Y, Face f) {
  auto rotated = try_canonical_face_rotation(Y, std::move(f));
  if (!rotated) throw InvariantError("face does not trace the relator");
  return *rotated;
}

SlotTable build_slot_table(const TiledSurface& Y) {
  const int k = 4 * Y.pres.genus();
  SlotTable t;
  t.slots = k;
  t.at.assign(static_cast<size_t>(Y.num_vertices) * k, -1);
  auto place = [&](int v, int s, int enc) {
    int& cell = t.at[static_cast<size_t>(v) * k + s];
    if (cell < 0) {
      cell = enc;
    } else {
      std::ostringstream os;
      os << "slot " << s << " at vertex " << v << " claimed by edge ends " << cell << " and "
         << enc;
      t.collisions.push_back(os.str());
    }
  };
  for (int e = 0; e < static_cast<int>(Y.edges.size()); ++e) {
    const EdgeRec& rec = Y.edges[e];
    place(rec.src, Y.pres.source_slot(rec.label), 2 * e);
    place(rec.dst, Y.pres.target_slot(rec.label), 2 * e + 1);
  }
  return t;
}

Diagnostics validate(const TiledSurface& Y) {
  Diagnostics d;
  const Presentation& p = Y.pres;
  const int n = 4 * p.genus();

  if (Y.num_vertices < 0) d.violations.push_back("negative vertex count");
  for (int e = 0; e < static_cast<int>(Y.edges.size()); ++e) {
    const EdgeRec& rec = Y.edges[e];
    if (rec.src < 0 || rec.src >= Y.num_vertices || rec.dst < 0 || rec.dst >= Y.num_vertices)
      d.violations.push_back(cell_name("edge", e) + " has endpoint out of range");
    if (rec.label < 1 || rec.label > 2 * p.genus())
      d.violations.push_back(cell_name("edge", e) + " has label out of range");
  }
  if (!d.violations.empty()) return d;

  for (int f = 0; f < static_cast<int>(Y.faces.size()); ++f) {
    const Face& face = Y.faces[f];
    if (static_cast<int>(face.size()) != n) {
      d.violations.push_back(cell_name("face", f) + " has wrong length");
      continue;
    }
    bool cells_ok = true;
    for (const FaceStep& s : face) {
      if (s.edge < 0 || s.edge >= static_cast<int>(Y.edges.size()) ||
          (s.dir != 1 && s.dir != -1)) {
        d.violations.push_back(cell_name("face", f) + " references a bad edge step");
        cells_ok = false;
        break;
      }
    }
    if (!cells_ok) continue;
    bool reads = true;
    for (int t = 0; t < n; ++t) {
      if (Y.step_letter(face[t]) != p.relator()[t] ||
          Y.step_to(face[t]) != Y.step_from(face[(t + 1) % n]))
        reads = false;
    }
    if (!reads)
      d.violations.push_back(cell_name("face", f) +
                             " does not trace the relator from its first step");
  }

  SlotTable t = build_slot_table(Y);
  for (const std::string& c : t.collisions) d.violations.push_back("port collision: " + c);

  {
    std::set<Face> seen;
    for (int f = 0; f < static_cast<int>(Y.faces.size()); ++f) {
      if (static_cast<int>(Y.faces[f].size()) != n) continue;
      if (!seen.insert(Y.faces[f]).second)
        d.violations.push_back(cell_name("face", f) + " duplicates another face");
    }
  }

  if (d.violations.empty()) {
    d.boundary_reduced = is_boundary_reduced(Y);
    d.p2_certified = d.boundary_reduced;
  }
  return d;
}

std::vector<BoundaryCycle> boundary_cycles(const TiledSurface& Y) {
  const Presentation& p = Y.pres;
  const int n = 4 * p.genus();
  SlotTable t = build_slot_table(Y);
  if (!t.collisions.empty()) throw InvariantError("boundary walk on a complex with port collisions");

  const int de = 2 * static_cast<int>(Y.edges.size());
  std::vector<char> covered(de, 0);
  for (const Face& f : Y.faces)
    for (const FaceStep& s : f) {
      const int idx = 2 * s.edge + (s.dir < 0 ? 1 : 0);
      if (covered[idx]) throw InvariantError("two faces cover one side of an edge");
      covered[idx] = 1;
    }

  auto head = [&](int idx) {
    const EdgeRec& rec = Y.edges[idx / 2];
    return idx % 2 == 0 ? rec.dst : rec.src;
  };
  auto arrival_slot = [&](int idx) {
    const EdgeRec& rec = Y.edges[idx / 2];
    return idx % 2 == 0 ? p.target_slot(rec.label) : p.source_slot(rec.label);
  };
  auto step_word_letter = [&](int idx) {
    return Letter::make(Y.edges[idx / 2].label, idx % 2 != 0);
  };

  std::vector<BoundaryCycle> out;
  std::vector<char> visited(de, 0);
  int traversed = 0;
  for (int start = 0; start < de; ++start) {
    if (covered[start] || visited[start]) continue;
    BoundaryCycle cyc;
    int cur = start;
    do {
      if (visited[cur]) throw InvariantError("boundary walk revisits a directed edge");
      visited[cur] = 1;
      ++traversed;
      const int v = head(cur);
      const int s = arrival_slot(cur);
      int gap = -1;
      int next = -1;
      for (int k = 1; k <= n; ++k) {
        const int enc = t.get(v, (s + k) % n);
        if (enc >= 0) {
          // Departing through a source end reads the label forward, through a
          // target end inverted; either way the end encoding is the directed
          // edge to follow next.
          next = enc;
          gap = k - 1;
          break;
        }
      }
      if (next < 0) throw InvariantError("boundary walk found no departure slot");
      if (covered[next]) throw InvariantError("boundary walk entered a covered edge side");
      cyc.steps.push_back({cur / 2, cur % 2 == 0 ? +1 : -1, gap});
      cyc.word.push_back(step_word_letter(cur));
      cur = next;
    } while (cur != start);
    const EdgeRec& first = Y.edges[cyc.steps[0].edge];
    cyc.base_vertex = cyc.steps[0].dir > 0 ? first.src : first.dst;
    out.push_back(std::move(cyc));
  }
  if (traversed != de - n * static_cast<int>(Y.faces.size()))
    throw InvariantError("boundary length disagrees with cell counts");

  for (int v = 0; v < Y.num_vertices; ++v) {
    bool isolated = true;
    for (int s = 0; s < n && isolated; ++s)
      if (t.get(v, s) >= 0) isolated = false;
    if (isolated) {
      BoundaryCycle cyc;
      cyc.base_vertex = v;
      out.push_back(std::move(cyc));
    }
  }
  return out;
}

BlockDecomposition block_decomposition(const BoundaryCycle& c, const Presentation& p) {
  BlockDecomposition d;
  const int n = c.length();
  if (n == 0) return d;
  const int cap = 4 * p.genus();

  int start = 0;
  bool all_zero = true;
  for (int i = 0; i < n; ++i) {
    if (c.steps[i].gap_to_next != 0) {
      start = (i + 1) % n;
      all_zero = false;
      break;
    }
  }

  auto emit_run = [&](int run_start, int len, int gap_after) {
    int pos = p.relator_pos(c.word[run_start]);
    while (len > cap) {
      d.blocks.push_back({run_start, cap, pos, 0});
      run_start = (run_start + cap) % n;
      len -= cap;
    }
    if (len == 0) throw InvariantError("relator-length block split left no remainder");
    d.blocks.push_back({run_start, len, pos, gap_after});
  };

  if (all_zero) {
    if (n % cap != 0) throw InvariantError("gapless boundary cycle of non-relator length");
    emit_run(0, n, 0);
  } else {
    int i = start;
    int run_start = start;
    int len = 0;
    do {
      ++len;
      const int gap = c.steps[i].gap_to_next;
      if (gap != 0) {
        emit_run(run_start, len, gap);
        run_start = (i + 1) % n;
        len = 0;
      }
      i = (i + 1) % n;
    } while (i != start);
    if (len != 0) throw InvariantError("boundary run partition did not close");
  }

  const int g = p.genus();
  bool all_gap_one = true;
  int even_blocks = 0;
  std::vector<Run> runs;
  std::vector<int> gaps;
  for (const auto& b : d.blocks) {
    d.has_long_block = d.has_long_block || b.len >= 2 * g + 1;
    d.has_half_block = d.has_half_block || b.len == 2 * g;
    if (b.following_gap != 1) all_gap_one = false;
    if (b.len % 2 == 0) ++even_blocks;
    runs.push_back({b.start, b.len, b.pos});
    gaps.push_back(b.following_gap);
  }
  d.is_half_chain = all_gap_one && std::all_of(d.blocks.begin(), d.blocks.end(),
                                               [&](const auto& b) { return b.len == 2 * g - 1; });
  if (all_gap_one && even_blocks % 2 != 0)
    throw InvariantError("cyclic chain with an odd number of even blocks");
  d.has_long_chain = find_long_chain(runs, gaps, true, p).has_value();
  return d;
}

bool is_boundary_reduced(const TiledSurface& Y) {
  for (const BoundaryCycle& c : boundary_cycles(Y)) {
    BlockDecomposition d = block_decomposition(c, Y.pres);
    if (d.has_long_block || d.has_long_chain) return false;
  }
  return true;
}

bool is_strongly_boundary_reduced(const TiledSurface& Y) {
  for (const BoundaryCycle& c : boundary_cycles(Y)) {
    BlockDecomposition d = block_decomposition(c, Y.pres);
    if (d.has_long_block || d.has_long_chain || d.has_half_block || d.is_half_chain) return false;
  }
  return true;
}

std::vector<int> vertex_components(const TiledSurface& Y) {
  std::vector<int> parent(Y.num_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const EdgeRec& e : Y.edges) {
    const int a = find(e.src);
    const int b = find(e.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> comp(Y.num_vertices, -1);
  int next = 0;
  for (int v = 0; v < Y.num_vertices; ++v) {
    const int r = find(v);
    if (comp[r] < 0) comp[r] = next++;
    comp[v] = comp[r];
  }
  return comp;
}

Stats stats(const TiledSurface& Y) {
  Stats s;
  s.vertices = Y.num_vertices;
  s.edges = static_cast<int>(Y.edges.size());
  s.faces = static_cast<int>(Y.faces.size());
  s.chi = s.vertices - s.edges + s.faces;
  s.boundary_edges = 2 * s.edges - 4 * Y.pres.genus() * s.faces;

  std::vector<int> comp = vertex_components(Y);
  int ncomp = 0;
  for (int c : comp) ncomp = std::max(ncomp, c + 1);
  s.components.resize(ncomp);
  for (int v = 0; v < Y.num_vertices; ++v) ++s.components[comp[v]].vertices;
  for (const EdgeRec& e : Y.edges) ++s.components[comp[e.src]].edges;
  for (const Face& f : Y.faces) ++s.components[comp[Y.step_from(f[0])]].faces;

  for (const BoundaryCycle& c : boundary_cycles(Y)) {
    s.boundary_lengths.push_back(c.length());
    ++s.components[comp[c.base_vertex]].boundary_cycles;
  }
  std::sort(s.boundary_lengths.begin(), s.boundary_lengths.end());

  for (ComponentStats& c : s.components) {
    c.chi = c.vertices - c.edges + c.faces;
    const int twice = 2 - c.chi - c.boundary_cycles;
    if (twice < 0 || twice % 2 != 0)
      throw InvariantError("component Euler data is not that of a compact surface");
    c.genus = twice / 2;
  }
  return s;
}

TraceResult trace_word(const TiledSurface& Y, const SlotTable& t, int v0, const Word& w) {
  const Presentation& p = Y.pres;
  int v = v0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    const int enc = t.get(v, p.departure_slot(w[i]));
    if (enc < 0) return {false, -1, i};
    const EdgeRec& rec = Y.edges[enc / 2];
    // Departing through the source end must read the letter forward; the
    // slot tables make label and direction agree automatically.
    v = enc % 2 == 0 ? rec.dst : rec.src;
  }
  return {true, v, -1};
}

TraceResult trace_word(const TiledSurface& Y, int v0, const Word& w) {
  SlotTable t = build_slot_table(Y);
  if (!t.collisions.empty()) throw InvariantError("tracing in a complex with port collisions");
  return trace_word(Y, t, v0, w);
}

}  // namespace coresurf
