#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "coresurf/cover_oracle.hpp"
#include "coresurf/folding.hpp"
#include "coresurf/serialize.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace coresurf;
using namespace testutil;

TEST_CASE("universal cover balls match the hyperbolic ball census") {
  const auto& p = g2();
  // A genus-2 octagon complex has girth 8, so small balls around a vertex
  // are 8-regular trees: 1 + 8 + 8*7 = 65 vertices two steps out, 457 three
  // steps out. Raw balls keep everything up to radius + 1.
  {
    CoverBall b(single_vertex_surface(p), 0, 1, false);
    CHECK(b.vertex_count() == 65);
    CHECK(b.face_count() == 0);
    auto st = stats(b.to_surface());
    CHECK(st.edges == 64);
    CHECK(st.chi == 1);
  }
  {
    CoverBall b(single_vertex_surface(p), 0, 2, false);
    CHECK(b.vertex_count() == 457);
    CHECK(b.face_count() == 0);
  }
  // Rim reduction absorbs cells until the retained boundary is reduced. At
  // radius 2 that completes exactly the eight octagons at the basepoint.
  {
    CoverBall b(single_vertex_surface(p), 0, 2, true);
    auto S = b.to_surface();
    auto st = stats(S);
    CHECK(st.vertices == 465);
    CHECK(st.edges == 472);
    CHECK(st.faces == 8);
    CHECK(st.chi == 1);
    CHECK(st.boundary_lengths.size() == 1);
    CHECK(st.boundary_edges == 880);
    CHECK(is_boundary_reduced(S));
    CHECK(structure_violations(S).empty());

    Word rel(p.relator().begin(), p.relator().end());
    int closing = 0;
    for (int k = 0; k < 8; ++k) {
      Word rot;
      for (int i = 0; i < 8; ++i) rot.push_back(rel[(k + i) % 8]);
      auto t = b.trace(rot);
      if (t && *t == b.basepoint()) ++closing;
    }
    CHECK(closing == 8);
  }
}

TEST_CASE("ball distances along the relator walk out and back") {
  const auto& p = g2();
  CoverBall b(single_vertex_surface(p), 0, 3, false);
  Word rel(p.relator().begin(), p.relator().end());
  const int expected[8] = {1, 2, 3, 4, 3, 2, 1, 0};
  for (int n = 1; n <= 8; ++n) {
    Word prefix(rel.begin(), rel.begin() + n);
    auto t = b.trace(prefix);
    REQUIRE(t.has_value());
    CHECK(b.distance(*t) == expected[n - 1]);
  }
  CHECK(b.distance(b.basepoint()) == 0);
}

TEST_CASE("balls over a proper subgroup answer membership at the basepoint") {
  const auto& p = g2();
  auto core = core_surface_from_generators({W("abAB")}, p);
  CoverBall b(core.surface, core.basepoint, 3, true);

  auto in = b.trace(W("abAB"));
  REQUIRE(in.has_value());
  CHECK(*in == b.basepoint());

  // The relator makes the two commutators inverse to each other, so the
  // second one also lies in the subgroup.
  auto other = b.trace(W("cdCD"));
  REQUIRE(other.has_value());
  CHECK(*other == b.basepoint());

  auto out = b.trace(W("ab"));
  CHECK((!out.has_value() || *out != b.basepoint()));
}

TEST_CASE("a shared tree ball reproduces word-calculus verdicts exhaustively") {
  const auto& p = g2();
  CoverBall b(single_vertex_surface(p), 0, 5, false);
  // No freely reduced word of length 1..5 is trivial (the shortest relation
  // has length 8), so none of their traces may return to the basepoint, and
  // the word calculus must agree on every one of them.
  long traced = 0;
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= 5; ++len) {
    std::vector<Word> next;
    next.reserve(frontier.size() * 7 + 8);
    for (const auto& w : frontier)
      for (int gi = 1; gi <= 2 * p.genus(); ++gi)
        for (bool inv : {false, true}) {
          Letter l = Letter::make(gi, inv);
          if (!w.empty() && w.back() == l.inverse()) continue;
          Word u = w;
          u.push_back(l);
          auto t = b.trace(u);
          REQUIRE(t.has_value());
          CHECK(*t != b.basepoint());
          CHECK_FALSE(is_trivial(u, p));
          ++traced;
          next.push_back(std::move(u));
        }
    frontier = std::move(next);
  }
  CHECK(traced == 8 + 8 * 7 + 8 * 7 * 7 + 8 * 7 * 7 * 7 + 8L * 7 * 7 * 7 * 7);
}

TEST_CASE("oracles and word calculus agree on short words") {
  const auto& p = g2();
  // Exhaustive up to length 3: the oracle length must match the reduction
  // length, and pair equality must match triviality of the quotient word.
  std::vector<Word> words{Word{}};
  for (int len = 1; len <= 3; ++len) {
    size_t start = words.size();
    for (size_t i = 0; i < start; ++i) {
      if ((int)words[i].size() != len - 1) continue;
      for (int gi = 1; gi <= 4; ++gi)
        for (bool inv : {false, true}) {
          Letter l = Letter::make(gi, inv);
          if (!words[i].empty() && words[i].back() == l.inverse()) continue;
          Word u = words[i];
          u.push_back(l);
          words.push_back(std::move(u));
        }
    }
  }
  for (const auto& w : words)
    CHECK(element_length_oracle(w, p) == (int)dehn_reduce(w, p).size());

  std::mt19937 rng(20260814);
  for (int t = 0; t < 40; ++t) {
    const Word& u = words[rng() % words.size()];
    const Word& v = words[rng() % words.size()];
    Word uv = u;
    for (auto it = v.rbegin(); it != v.rend(); ++it) uv.push_back(it->inverse());
    CHECK(words_equal_oracle(u, v, p) == is_trivial(uv, p));
  }
}

TEST_CASE("face completion fills every closed relator walk once") {
  const auto& p = g2();
  auto R = ring(Word(p.relator().begin(), p.relator().end()), p);
  CHECK(stats(R).faces == 0);
  auto once = complete_faces(R);
  CHECK(stats(once).faces == 1);
  CHECK(validate(once).ok());
  auto twice = complete_faces(once);
  CHECK(stats(twice).faces == 1);
  CHECK(structure_violations(once).empty());
}

TEST_CASE("closures annex exactly what reduction demands") {
  const auto& p = g2();
  auto c = core_surface_from_generators({W("a"), W("b")}, p);
  SubComplex sk;
  for (int v = 0; v < c.surface.num_vertices; ++v) sk.vertices.push_back(v);
  for (int e = 0; e < (int)c.surface.edges.size(); ++e) sk.edges.push_back(e);

  SUBCASE("the skeleton of a one-face core closes in a single annexation") {
    auto res = closure_within(c.surface, sk, ClosureMode::boundary_reduce, 50);
    CHECK(res.completed);
    CHECK(res.steps == 1);
    REQUIRE(res.boundary_totals.size() == 2);
    CHECK(res.boundary_totals[0] == 12);
    CHECK(res.boundary_totals[1] == 4);
    CHECK(res.sub.faces.size() == 1);
  }

  SUBCASE("an already reduced subcomplex needs no steps") {
    SubComplex whole = sk;
    whole.faces.push_back(0);
    auto res = closure_within(c.surface, whole, ClosureMode::boundary_reduce, 50);
    CHECK(res.completed);
    CHECK(res.steps == 0);
  }
}

TEST_CASE("strong closures sweep a closed periodic cover") {
  const auto& p = g2();
  auto Z = periodic_double_cover(16, p);
  CHECK(validate(Z).ok());
  CHECK(boundary_cycles(Z).empty());
  CHECK(is_strongly_boundary_reduced(Z));
  CHECK(structure_violations(Z).empty());
  auto st = stats(Z);
  CHECK(st.vertices == 16);
  CHECK(st.edges == 64);
  CHECK(st.faces == 16);
  CHECK(st.chi == -32);

  auto core = core_surface_from_generators({W("abAB")}, p);
  auto m = find_morphism(core.surface, Z, {{core.basepoint, 0}});
  REQUIRE(m.has_value());
  auto sub = subcomplex_of_image(core.surface, Z, *m);
  CHECK(sub.vertices.size() == 3);
  CHECK(sub.edges.size() == 8);
  CHECK(sub.faces.size() == 1);
  CHECK(std::is_sorted(sub.edges.begin(), sub.edges.end()));
  CHECK(std::adjacent_find(sub.edges.begin(), sub.edges.end()) == sub.edges.end());

  SUBCASE("a tight budget runs out with the boundary still open") {
    auto res = closure_within(Z, sub, ClosureMode::strong, 5);
    CHECK_FALSE(res.completed);
    CHECK(res.steps == 5);
    for (auto t : res.boundary_totals) CHECK(t == 8);
  }

  SUBCASE("an ample budget annexes every remaining octagon") {
    auto res = closure_within(Z, sub, ClosureMode::strong, 1000);
    CHECK(res.completed);
    CHECK(res.steps == 15);
    CHECK(res.boundary_totals.back() == 0);
    CHECK(res.sub.faces.size() == 16);
  }

  SUBCASE("morphisms exist from every deck position") {
    auto m1 = find_morphism(core.surface, Z, {{core.basepoint, 1}});
    CHECK(m1.has_value());
  }
}

TEST_CASE("closure ambients must be reduced up front") {
  const auto& p = g2();
  auto longy = ring(W("abABcd"), p);
  SubComplex sub{{0}, {}, {}};
  CHECK_THROWS_AS(closure_within(longy, sub, ClosureMode::boundary_reduce, 10),
                  std::invalid_argument);
  // A commutator ring is boundary reduced but carries a half block, so only
  // the strong mode rejects it.
  auto half = ring(W("abAB"), p);
  CHECK_THROWS_AS(closure_within(half, sub, ClosureMode::strong, 10),
                  std::invalid_argument);
  auto ok = closure_within(half, SubComplex{{0, 1, 2, 3}, {0, 1, 2, 3}, {}},
                           ClosureMode::boundary_reduce, 10);
  CHECK(ok.completed);
  CHECK(ok.steps == 0);
}

TEST_CASE("ball construction rejects nonsense") {
  const auto& p = g2();
  auto seed = single_vertex_surface(p);
  CHECK_THROWS_AS(CoverBall(seed, 0, 300, false), std::invalid_argument);
  CHECK_THROWS_AS(CoverBall(seed, 5, 2, false), std::invalid_argument);
  TiledSurface bad(p);
  bad.num_vertices = 3;
  bad.edges = {{0, 1, 1}, {0, 2, 1}};
  CHECK_THROWS_AS(CoverBall(bad, 0, 1, false), std::invalid_argument);
}

TEST_CASE("ball construction is deterministic") {
  const auto& p = g2();
  auto core = core_surface_from_generators({W("ab"), W("cd")}, p);
  CoverBall b1(core.surface, core.basepoint, 3, true);
  CoverBall b2(core.surface, core.basepoint, 3, true);
  CHECK(to_json(b1.to_surface()) == to_json(b2.to_surface()));
}
