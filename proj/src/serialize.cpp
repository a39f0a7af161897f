#include "coresurf/serialize.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <json.hpp>

namespace coresurf {

using json = nlohmann::ordered_json;

CanonicalResult canonicalize(const TiledSurface& Y) {
  const int k = 4 * Y.pres.genus();
  SlotTable t = build_slot_table(Y);
  if (!t.collisions.empty())
    throw InvariantError("canonical numbering needs a port-collision-free complex");

  CanonicalResult r{TiledSurface(Y.pres), std::vector<int>(Y.num_vertices, -1),
                    std::vector<int>(Y.edges.size(), -1), std::vector<int>(Y.faces.size(), -1)};
  int next_vertex = 0;
  int next_edge = 0;
  std::deque<int> queue;
  for (int v0 = 0; v0 < Y.num_vertices; ++v0) {
    if (r.vertex_map[v0] != -1) continue;
    r.vertex_map[v0] = next_vertex++;
    queue.push_back(v0);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int s = 0; s < k; ++s) {
        const int enc = t.get(u, s);
        if (enc < 0) continue;
        const int e = enc / 2;
        if (r.edge_map[e] == -1) r.edge_map[e] = next_edge++;
        const int far = enc % 2 == 0 ? Y.edges[e].dst : Y.edges[e].src;
        if (r.vertex_map[far] == -1) {
          r.vertex_map[far] = next_vertex++;
          queue.push_back(far);
        }
      }
    }
  }

  r.surface.num_vertices = Y.num_vertices;
  r.surface.edges.resize(Y.edges.size());
  for (int e = 0; e < static_cast<int>(Y.edges.size()); ++e)
    r.surface.edges[r.edge_map[e]] = {r.vertex_map[Y.edges[e].src], r.vertex_map[Y.edges[e].dst],
                                      Y.edges[e].label};

  // Renaming edges keeps each face's a1-forward starting step, so mapped
  // faces stay canonically rotated; only their relative order can change.
  std::vector<std::pair<Face, int>> faces;
  for (int f = 0; f < static_cast<int>(Y.faces.size()); ++f) {
    Face img = Y.faces[f];
    for (FaceStep& st : img) st.edge = r.edge_map[st.edge];
    faces.emplace_back(std::move(img), f);
  }
  std::sort(faces.begin(), faces.end());
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    r.surface.faces.push_back(faces[f].first);
    r.face_map[faces[f].second] = f;
  }
  return r;
}

std::string to_json(const TiledSurface& Y) {
  const TiledSurface C = canonicalize(Y).surface;
  json doc;
  doc["genus"] = C.pres.genus();
  doc["vertices"] = json::array();
  for (int v = 0; v < C.num_vertices; ++v) doc["vertices"].push_back(v);
  doc["edges"] = json::array();
  for (int e = 0; e < static_cast<int>(C.edges.size()); ++e)
    doc["edges"].push_back({{"id", e},
                            {"src", C.edges[e].src},
                            {"dst", C.edges[e].dst},
                            {"label", generator_token(C.edges[e].label)}});
  doc["faces"] = json::array();
  for (const Face& f : C.faces) {
    json steps = json::array();
    for (const FaceStep& s : f) steps.push_back({s.edge, s.dir});
    doc["faces"].push_back(std::move(steps));
  }
  return doc.dump(2) + "\n";
}

TiledSurface from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  auto bad = [](const std::string& why) { return ParseError("bad complex document: " + why, 0); };
  if (!doc.is_object()) throw bad("top level is not an object");
  for (const char* field : {"genus", "vertices", "edges", "faces"})
    if (!doc.contains(field)) throw bad(std::string("missing field '") + field + "'");

  if (!doc["genus"].is_number_integer() || doc["genus"].get<int>() < 2)
    throw bad("genus must be an integer >= 2");
  Presentation p(doc["genus"].get<int>());
  TiledSurface Y(p);

  if (!doc["vertices"].is_array()) throw bad("vertices must be an array");
  Y.num_vertices = static_cast<int>(doc["vertices"].size());
  for (int v = 0; v < Y.num_vertices; ++v)
    if (!doc["vertices"][v].is_number_integer() || doc["vertices"][v].get<int>() != v)
      throw bad("vertices must be exactly 0..n-1 in order");

  if (!doc["edges"].is_array()) throw bad("edges must be an array");
  for (int e = 0; e < static_cast<int>(doc["edges"].size()); ++e) {
    const json& rec = doc["edges"][e];
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("src") || !rec.contains("dst") ||
        !rec.contains("label"))
      throw bad("edge records need id, src, dst, label");
    if (!rec["id"].is_number_integer() || rec["id"].get<int>() != e)
      throw bad("edge ids must be exactly 0..m-1 in order");
    if (!rec["src"].is_number_integer() || !rec["dst"].is_number_integer() ||
        !rec["label"].is_string())
      throw bad("edge fields have wrong types");
    const int src = rec["src"].get<int>();
    const int dst = rec["dst"].get<int>();
    if (src < 0 || src >= Y.num_vertices || dst < 0 || dst >= Y.num_vertices)
      throw bad("edge endpoint out of range");
    Y.edges.push_back({src, dst, parse_generator_token(rec["label"].get<std::string>(), p)});
  }

  if (!doc["faces"].is_array()) throw bad("faces must be an array");
  for (const json& face : doc["faces"]) {
    if (!face.is_array()) throw bad("each face must be an array of steps");
    Face f;
    for (const json& step : face) {
      if (!step.is_array() || step.size() != 2 || !step[0].is_number_integer() ||
          !step[1].is_number_integer())
        throw bad("each face step must be [edgeId, +-1]");
      const int e = step[0].get<int>();
      const int dir = step[1].get<int>();
      if (e < 0 || e >= static_cast<int>(Y.edges.size())) throw bad("face step edge out of range");
      if (dir != 1 && dir != -1) throw bad("face step direction must be +-1");
      f.push_back({e, dir});
    }
    // Store rotated when the face is well-formed; validate() flags the rest.
    if (auto canon = try_canonical_face_rotation(Y, f)) f = std::move(*canon);
    Y.faces.push_back(std::move(f));
  }
  return Y;
}

std::string to_dot(const TiledSurface& Y) {
  const TiledSurface C = canonicalize(Y).surface;
  std::ostringstream os;
  os << "digraph tiled_surface {\n";
  os << "  node [shape=circle];\n";
  for (int v = 0; v < C.num_vertices; ++v) os << "  " << v << ";\n";
  for (const EdgeRec& e : C.edges)
    os << "  " << e.src << " -> " << e.dst << " [label=\"" << generator_token(e.label) << "\"];\n";
  os << "}\n";
  for (int f = 0; f < static_cast<int>(C.faces.size()); ++f) {
    os << "// face " << f << ":";
    for (const FaceStep& s : C.faces[f]) os << " " << s.edge << (s.dir > 0 ? "+" : "-");
    os << "\n";
  }
  return os.str();
}

}  // namespace coresurf
