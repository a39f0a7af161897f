#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace coresurf;
using testutil::g2;
using testutil::W;

namespace {

bool words_equal(const Word& u, const Word& v) {
  return testutil::reduces_to_empty_by_blocks(concat(u, inverse(v)));
}

bool has_long_structure(const Word& w, const Presentation& p) {
  // reuse the library's run scan on a fake one-cycle boundary? No: scan
  // directly for the patterns dehn_reduce must have exhausted, on the word
  // and on its inverse.
  for (const Word& side : {w, inverse(w)}) {
    int run = 1;
    for (std::size_t i = 1; i < side.size(); ++i) {
      const int gap = p.mod(p.departure_slot(side[i]) -
                            p.arrival_slot(side[i - 1]) - 1);
      run = (gap == 0) ? run + 1 : 1;
      if (run >= 2 * p.genus() + 1) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("dehn reduction fixtures") {
  const Presentation& p = g2();
  CHECK(format_word(dehn_reduce(W("abABc"), p), p) == "dcD");
  CHECK(dehn_reduce(W("abABcdCD"), p).empty());
  CHECK(dehn_reduce(W("cdCDabAB"), p).empty());
  CHECK(dehn_reduce(concat(W("abABcdCD"), W("abABcdCD")), p).empty());
  CHECK(dehn_reduce(W("ab"), p) == W("ab"));
  CHECK(format_word(dehn_reduce(W("abAABc"), p), p) == "abAABc");
  CHECK(is_trivial(Word{}, p));
  CHECK_FALSE(is_trivial(W("a"), p));
  // relator conjugates are trivial
  CHECK(is_trivial(
      free_reduce(concat(concat(W("ca"), W("abABcdCD")), inverse(W("ca")))),
      p));
}

TEST_CASE("dehn reduction properties") {
  const Presentation& p = g2();
  std::mt19937 rng(101);
  for (int t = 0; t < 1500; ++t) {
    const Word w = testutil::random_reduced_word(rng, int(rng() % 13));
    const Word r = dehn_reduce(w, p);
    CHECK(is_freely_reduced(r));
    CHECK(r.size() <= w.size());
    CHECK(dehn_reduce(r, p) == r);
    CHECK_FALSE(has_long_structure(r, p));
    // same element
    CHECK(words_equal(w, r));
    // triviality agrees with the independent block-only route
    CHECK(is_trivial(w, p) == testutil::reduces_to_empty_by_blocks(w));
    CHECK(is_trivial(w, p) == r.empty());
  }
}

TEST_CASE("triviality on crafted trivial words") {
  const Presentation& p = g2();
  std::mt19937 rng(59);
  const Word rel = p.relator();
  for (int t = 0; t < 200; ++t) {
    // product of two random conjugates of relator rotations
    Word w;
    for (int part = 0; part < 2; ++part) {
      const Word c = testutil::random_reduced_word(rng, int(rng() % 4));
      const Word rr = rotate(rel, int(rng() % 8));
      w = concat(w, concat(concat(c, part ? inverse(rr) : rr), inverse(c)));
    }
    CHECK(is_trivial(w, p));
    CHECK(dehn_reduce(w, p).empty());
  }
}

TEST_CASE("geodesic classes") {
  const Presentation& p = g2();
  const auto cls = geodesic_class(W("abABa"), p);
  CHECK(cls.count(W("abABa")) == 1);
  CHECK(cls.count(W("dcDCa")) == 1);
  for (const Word& g : cls) {
    CHECK(g.size() == 5);
    CHECK(is_freely_reduced(g));
    CHECK(words_equal(g, W("abABa")));
  }

  // a geodesic with no half-blocks is alone in its class
  const auto alone = geodesic_class(W("ab"), p);
  CHECK(alone.size() == 1);
}

TEST_CASE("cyclic shortening") {
  const Presentation& p = g2();
  const auto [cyc, conj] = cyclic_shorten(W("BabAABcb"), p);
  CHECK(format_word(cyc.rep(), p) == "abAABc");
  // the returned conjugator transports the input onto the cyclic word
  CHECK(words_equal(cyc.rep(),
                    free_reduce(concat(concat(conj, W("BabAABcb")), inverse(conj)))));

  std::mt19937 rng(31);
  for (int t = 0; t < 250; ++t) {
    const Word w = testutil::random_reduced_word(rng, 1 + int(rng() % 9));
    const auto [c, s] = cyclic_shorten(w, p);
    CHECK(is_cyclically_reduced(c.rep()));
    CHECK(words_equal(c.rep(), free_reduce(concat(concat(s, w), inverse(s)))));
    // conjugating by one letter never beats it
    for (int code = 0; code < 8; ++code) {
      const Word x{Letter{static_cast<std::uint8_t>(code)}};
      const Word y = free_reduce(concat(concat(x, c.rep()), inverse(x)));
      CHECK(dehn_reduce(y, p).size() >= c.rep().size());
    }
  }
}

TEST_CASE("shortest cyclic representatives") {
  const Presentation& p = g2();
  const auto reps = shortest_cyclic_reps(W("abAABc"), p);
  CHECK(reps.size() == 2);
  CHECK(reps.count(CyclicWord(W("abAABc"))) == 1);
  CHECK(reps.count(CyclicWord(W("cDCAdc"))) == 1);

  // the commutator and the complementary commutator name conjugate elements
  const auto creps = shortest_cyclic_reps(W("abAB"), p);
  CHECK(creps.count(CyclicWord(W("abAB"))) == 1);
  CHECK(creps.count(CyclicWord(W("dcDC"))) == 1);
  for (const auto& r : creps) CHECK(r.rep().size() == 4);
}

TEST_CASE("budget exhaustion") {
  const Presentation& p = g2();
  // two independently switchable half blocks give a four-element class
  const Word w = W("abABabAB");
  CHECK(geodesic_class(w, p, 4).size() == 4);
  CHECK_THROWS_AS(geodesic_class(w, p, 2), BudgetExceeded);
  CHECK_THROWS_AS(are_conjugate(w, W("a"), p, 1), BudgetExceeded);

  // a trivial word collapses before any switching can start, so even a
  // minimal budget survives
  Word t;
  std::mt19937 rng(3);
  for (int i = 0; i < 6; ++i) {
    const Word c = testutil::random_reduced_word(rng, 3);
    t = concat(t, concat(concat(c, p.relator()), inverse(c)));
  }
  CHECK(is_trivial(t, p));
  CHECK(geodesic_class(free_reduce(t), p, 1) == std::set<Word>{Word{}});
}
