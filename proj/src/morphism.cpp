#include "coresurf/morphism.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace coresurf {

namespace {

struct Mapper {
  const TiledSurface& src;
  const TiledSurface& dst;
  SlotTable src_slots;
  SlotTable dst_slots;
  std::map<Face, int> dst_faces;

  Mapper(const TiledSurface& s, const TiledSurface& d)
      : src(s), dst(d), src_slots(build_slot_table(s)), dst_slots(build_slot_table(d)) {
    if (!src_slots.collisions.empty() || !dst_slots.collisions.empty())
      throw InvariantError("morphism search requires port-collision-free complexes");
    for (int f = 0; f < static_cast<int>(dst.faces.size()); ++f) dst_faces[dst.faces[f]] = f;
  }

  // Propagates seed assignments across edges; fails on any mismatch. Cells
  // in components not reached from a seed are left at -1.
  std::optional<Morphism> extend(const std::vector<std::pair<int, int>>& seeds) const {
    Morphism m;
    m.vertex_map.assign(src.num_vertices, -1);
    m.edge_map.assign(src.edges.size(), -1);
    m.face_map.assign(src.faces.size(), -1);

    std::deque<int> queue;
    for (auto [u, v] : seeds) {
      if (m.vertex_map[u] == -1) {
        m.vertex_map[u] = v;
        queue.push_back(u);
      } else if (m.vertex_map[u] != v) {
        return std::nullopt;
      }
    }
    const int k = src_slots.slots;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      const int v = m.vertex_map[u];
      for (int s = 0; s < k; ++s) {
        const int enc = src_slots.get(u, s);
        if (enc < 0) continue;
        const int enc_img = dst_slots.get(v, s);
        if (enc_img < 0) return std::nullopt;
        const int e = enc / 2;
        const int e_img = enc_img / 2;
        if (m.edge_map[e] != -1 && m.edge_map[e] != e_img) return std::nullopt;
        m.edge_map[e] = e_img;
        // Both ends sit in label-specific slots, so labels and end kinds
        // already agree; only the far endpoints still need reconciling.
        const int far = enc % 2 == 0 ? src.edges[e].dst : src.edges[e].src;
        const int far_img = enc_img % 2 == 0 ? dst.edges[e_img].dst : dst.edges[e_img].src;
        if (m.vertex_map[far] == -1) {
          m.vertex_map[far] = far_img;
          queue.push_back(far);
        } else if (m.vertex_map[far] != far_img) {
          return std::nullopt;
        }
      }
    }

    for (int f = 0; f < static_cast<int>(src.faces.size()); ++f) {
      if (m.vertex_map[src.step_from(src.faces[f][0])] == -1) continue;
      Face img = src.faces[f];
      for (FaceStep& st : img) st.edge = m.edge_map[st.edge];
      auto it = dst_faces.find(img);
      if (it == dst_faces.end()) return std::nullopt;
      m.face_map[f] = it->second;
    }
    return m;
  }
};

}  // namespace

void verify_morphism(const TiledSurface& src, const TiledSurface& dst, const Morphism& m) {
  auto fail = [](const std::string& why) { throw InvariantError("broken morphism: " + why); };
  if (static_cast<int>(m.vertex_map.size()) != src.num_vertices ||
      m.edge_map.size() != src.edges.size() || m.face_map.size() != src.faces.size())
    fail("map sizes");
  for (int e = 0; e < static_cast<int>(src.edges.size()); ++e) {
    const EdgeRec& a = src.edges[e];
    if (m.edge_map[e] < 0 || m.edge_map[e] >= static_cast<int>(dst.edges.size()))
      fail("edge image out of range");
    const EdgeRec& b = dst.edges[m.edge_map[e]];
    if (b.label != a.label || b.src != m.vertex_map[a.src] || b.dst != m.vertex_map[a.dst])
      fail("edge incidence");
  }
  for (int f = 0; f < static_cast<int>(src.faces.size()); ++f) {
    Face img = src.faces[f];
    for (FaceStep& st : img) st.edge = m.edge_map[st.edge];
    if (m.face_map[f] < 0 || m.face_map[f] >= static_cast<int>(dst.faces.size()) ||
        dst.faces[m.face_map[f]] != img)
      fail("face image");
  }
  // Immersion: distinct edges at a vertex stay distinct (their slots differ).
  SlotTable t = build_slot_table(src);
  for (int u = 0; u < src.num_vertices; ++u) {
    std::set<int> images;
    for (int s = 0; s < t.slots; ++s)
      if (int enc = t.get(u, s); enc >= 0)
        if (!images.insert(2 * m.edge_map[enc / 2] + enc % 2).second)
          fail("vertex star not embedded");
  }
}

std::optional<Morphism> find_morphism(const TiledSurface& src, const TiledSurface& dst,
                                      const std::vector<std::pair<int, int>>& seeds) {
  for (auto [u, v] : seeds)
    if (u < 0 || u >= src.num_vertices || v < 0 || v >= dst.num_vertices)
      throw InvariantError("morphism seed out of range");
  Mapper mapper(src, dst);
  auto m = mapper.extend(seeds);
  if (!m) return std::nullopt;
  for (int u = 0; u < src.num_vertices; ++u)
    if (m->vertex_map[u] == -1) return std::nullopt;
  return m;
}

std::optional<Morphism> isomorphic(const TiledSurface& a, const TiledSurface& b) {
  if (a.pres.genus() != b.pres.genus()) return std::nullopt;
  if (a.num_vertices != b.num_vertices || a.edges.size() != b.edges.size() ||
      a.faces.size() != b.faces.size())
    return std::nullopt;
  if (a.num_vertices == 0) return Morphism{};

  const std::vector<int> comp_a = vertex_components(a);
  const std::vector<int> comp_b = vertex_components(b);
  const int ncomp = *std::max_element(comp_a.begin(), comp_a.end()) + 1;
  if (*std::max_element(comp_b.begin(), comp_b.end()) + 1 != ncomp) return std::nullopt;

  std::vector<int> rep_a(ncomp, -1);
  for (int v = a.num_vertices - 1; v >= 0; --v) rep_a[comp_a[v]] = v;

  Mapper mapper(a, b);
  Morphism total;
  total.vertex_map.assign(a.num_vertices, -1);
  total.edge_map.assign(a.edges.size(), -1);
  total.face_map.assign(a.faces.size(), -1);
  std::vector<char> comp_b_used(ncomp, 0);

  // Isomorphism of components is transitive, so greedy matching is safe:
  // if a component fits two b-components, those are interchangeable.
  for (int c = 0; c < ncomp; ++c) {
    bool matched = false;
    for (int v0 = 0; v0 < b.num_vertices && !matched; ++v0) {
      if (comp_b_used[comp_b[v0]]) continue;
      auto m = mapper.extend({{rep_a[c], v0}});
      if (!m) continue;
      // extend() maps all of `a`; restrict attention to component c and make
      // sure the image is injective there.
      std::set<int> vimg;
      bool inj = true;
      for (int v = 0; v < a.num_vertices && inj; ++v)
        if (comp_a[v] == c && !vimg.insert(m->vertex_map[v]).second) inj = false;
      if (!inj) continue;
      std::set<int> eimg;
      int comp_edges_a = 0;
      for (int e = 0; e < static_cast<int>(a.edges.size()) && inj; ++e)
        if (comp_a[a.edges[e].src] == c) {
          ++comp_edges_a;
          if (!eimg.insert(m->edge_map[e]).second) inj = false;
        }
      if (!inj) continue;
      const int cb = comp_b[v0];
      int comp_vertices_b = 0;
      for (int v = 0; v < b.num_vertices; ++v)
        if (comp_b[v] == cb) ++comp_vertices_b;
      int comp_edges_b = 0;
      for (const EdgeRec& e : b.edges)
        if (comp_b[e.src] == cb) ++comp_edges_b;
      if (static_cast<int>(vimg.size()) != comp_vertices_b || comp_edges_a != comp_edges_b)
        continue;
      int comp_faces_a = 0;
      for (int f = 0; f < static_cast<int>(a.faces.size()); ++f)
        if (comp_a[a.step_from(a.faces[f][0])] == c) ++comp_faces_a;
      int comp_faces_b = 0;
      for (const Face& f : b.faces)
        if (comp_b[b.step_from(f[0])] == cb) ++comp_faces_b;
      if (comp_faces_a != comp_faces_b) continue;

      for (int v = 0; v < a.num_vertices; ++v)
        if (comp_a[v] == c) total.vertex_map[v] = m->vertex_map[v];
      for (int e = 0; e < static_cast<int>(a.edges.size()); ++e)
        if (comp_a[a.edges[e].src] == c) total.edge_map[e] = m->edge_map[e];
      for (int f = 0; f < static_cast<int>(a.faces.size()); ++f)
        if (comp_a[a.step_from(a.faces[f][0])] == c) total.face_map[f] = m->face_map[f];
      comp_b_used[cb] = 1;
      matched = true;
    }
    if (!matched) return std::nullopt;
  }
  verify_morphism(a, b, total);
  return total;
}

}  // namespace coresurf
