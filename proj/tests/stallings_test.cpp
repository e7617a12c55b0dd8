#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fdl/family.hpp"
#include "fdl/stallings.hpp"
#include "test_support.hpp"

using namespace fdl;
using testsupport::all_reduced_words;
using testsupport::enumerate_subgroup;
using testsupport::random_reduced_word;

namespace {
Word W(const char* s) { return parse_word(s); }

const std::vector<Letter> kF{Letter::A, Letter::B};

// Membership of all short words must agree with brute-force enumeration of
// products of generators.
void check_against_enumeration(const LabeledGraph& g, const std::vector<Word>& gens,
                               int word_len, int factors) {
  std::set<Word> subgroup = enumerate_subgroup(gens, factors);
  for (const Word& w : all_reduced_words(kF, word_len)) {
    if (g.contains(w))
      CHECK(subgroup.count(w) == 1);
    else
      CHECK(subgroup.count(w) == 0);
  }
}
}  // namespace

TEST_CASE("from_generators basics") {
  LabeledGraph g = LabeledGraph::from_generators({W("a")});
  CHECK(g.num_vertices() == 1);
  CHECK(g.edges().size() == 1);

  LabeledGraph g2 = LabeledGraph::from_generators({W("a"), W("a")});
  CHECK(g2 == g);

  LabeledGraph g3 = LabeledGraph::from_generators({W("a^2"), W("ba^2B")});
  CHECK(g3.contains(W("a^2")));
  CHECK(g3.contains(W("ba^2B")));
  CHECK(!g3.contains(W("a")));
  check_against_enumeration(g3, {W("a^2"), W("ba^2B")}, 6, 5);
}

TEST_CASE("folding") {
  LabeledGraph folded = LabeledGraph::from_generators({W("ab")});
  CHECK(folded.fold() == folded);

  // two a-loops at the base collapse to one
  LabeledGraph loops(1, 0, {{0, 0, Letter::A}, {0, 0, Letter::A}});
  LabeledGraph lf = loops.fold();
  CHECK(lf.num_vertices() == 1);
  CHECK(lf.edges().size() == 1);

  // base's two outgoing a-edges merge, leaving base <-> v joined by two
  // b-edges and one a-edge
  LabeledGraph wedge = LabeledGraph::from_generators({W("ab"), W("aB")});
  CHECK(wedge.num_vertices() == 2);
  CHECK(wedge.edges().size() == 3);
  check_against_enumeration(wedge, {W("ab"), W("aB")}, 6, 7);
}

TEST_CASE("fold confluence over random orders") {
  std::mt19937 rng(101);
  for (int it = 0; it < 60; ++it) {
    std::vector<Word> gens;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i)
      gens.push_back(random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 5)));
    LabeledGraph ref = LabeledGraph::from_generators(gens);
    // same wedge, edges inserted in shuffled order
    std::vector<Word> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(LabeledGraph::from_generators(shuffled) == ref);

    std::vector<Edge> edges = ref.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    CHECK(LabeledGraph(ref.num_vertices(), ref.base(), edges).fold() == ref);
  }
}

TEST_CASE("trace outcomes") {
  LabeledGraph g = LabeledGraph::from_generators({W("a^2")});
  CHECK(g.trace(W("a^2")).outcome == TraceResult::Outcome::Closed);
  TraceResult open = g.trace(W("a"));
  CHECK(open.outcome == TraceResult::Outcome::Open);
  CHECK(open.end_vertex != g.base());

  LabeledGraph h = LabeledGraph::from_generators({W("a^2"), W("baB")});
  CHECK(h.trace(W("baBa^2")).closed());
  std::set<Word> sub = enumerate_subgroup({W("a^2"), W("baB")}, 5);
  CHECK(sub.count(W("baBa^2")) == 1);

  TraceResult blocked = g.trace(W("b"));
  CHECK(blocked.outcome == TraceResult::Outcome::Blocked);
  CHECK(blocked.position == 0);
}

TEST_CASE("core deletes hanging trees") {
  LabeledGraph g = LabeledGraph::from_generators({W("a")});
  CHECK(g.core() == g);

  // an a-loop with a dangling b-edge off the base
  LabeledGraph dangling(2, 0, {{0, 0, Letter::A}, {0, 1, Letter::B}});
  LabeledGraph c = dangling.fold().core();
  CHECK(c.num_vertices() == 1);
  CHECK(c.edges().size() == 1);

  // trace in a tail: closed loops survive coring
  LabeledGraph g2(4, 0,
                  {{0, 1, Letter::A}, {1, 0, Letter::A}, {0, 2, Letter::B}, {2, 3, Letter::A}});
  LabeledGraph cored = g2.fold().core();
  CHECK(cored.contains(W("a^2")));
  CHECK(cored.num_vertices() == 2);
}

TEST_CASE("pullback computes intersections") {
  LabeledGraph ga = LabeledGraph::from_generators({W("a")});
  LabeledGraph gb = LabeledGraph::from_generators({W("b")});
  LabeledGraph triv = LabeledGraph::pullback(ga, gb);
  CHECK(triv.num_vertices() == 1);
  CHECK(triv.edges().empty());

  LabeledGraph g2 = LabeledGraph::from_generators({W("a^2")});
  LabeledGraph g3 = LabeledGraph::from_generators({W("a^3")});
  LabeledGraph g6 = LabeledGraph::pullback(g2, g3);
  for (int e = -12; e <= 12; ++e)
    CHECK(g6.contains(Word::letter(Letter::A, e)) == (e % 6 == 0));

  LabeledGraph g = LabeledGraph::from_generators({W("a^2"), W("baB")});
  CHECK(LabeledGraph::pullback(g, g).core() == g.core());
}

TEST_CASE("pullback membership property") {
  std::mt19937 rng(103);
  for (int it = 0; it < 20; ++it) {
    std::vector<Word> gens1{random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 4)),
                            random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 4))};
    std::vector<Word> gens2{random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 4))};
    LabeledGraph g1 = LabeledGraph::from_generators(gens1);
    LabeledGraph g2 = LabeledGraph::from_generators(gens2);
    LabeledGraph pb = LabeledGraph::pullback(g1, g2);
    for (const Word& w : all_reduced_words(kF, 6))
      CHECK(pb.contains(w) == (g1.contains(w) && g2.contains(w)));
  }
}

TEST_CASE("basis from the spanning tree") {
  CHECK(LabeledGraph::from_generators({W("a^2")}).basis() == std::vector<Word>{W("a^2")});

  auto rose = LabeledGraph::from_generators({W("a"), W("b")}).basis();
  CHECK((rose == std::vector<Word>{W("a"), W("b")}));

  // truncated H_s core: basis words are h_n = b^n a^{s_n} b^{-n} in depth order
  auto seq = MultiplyingSequence::validate(2, {}, {2});
  LabeledGraph hs = materialize(ImplicitCore::hs(seq), 3);
  auto basis = hs.basis();
  REQUIRE(basis.size() == 4);
  for (int n = 0; n < 4; ++n)
    CHECK(basis[n] == Word::letter(Letter::B, n) * Word::letter(Letter::A, seq.value(n)) *
                          Word::letter(Letter::B, -n));
}

TEST_CASE("express round-trips through the basis") {
  LabeledGraph g = LabeledGraph::from_generators({W("a^2")});
  auto e1 = g.express(W("a^4"));
  CHECK((e1 == std::vector<std::pair<int, int>>{{0, 1}, {0, 1}}));
  auto e2 = g.express(W("A^2"));
  CHECK((e2 == std::vector<std::pair<int, int>>{{0, -1}}));
  CHECK_THROWS_AS((void)g.express(W("a")), Error);

  auto seq = MultiplyingSequence::validate(2, {}, {2});
  LabeledGraph hs = materialize(ImplicitCore::hs(seq), 2);
  auto e3 = hs.express(W("ba^4Ba^2"));
  CHECK((e3 == std::vector<std::pair<int, int>>{{1, 1}, {0, 1}}));

  std::mt19937 rng(107);
  for (int it = 0; it < 30; ++it) {
    std::vector<Word> gens{random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 4)),
                           random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 4))};
    LabeledGraph g2 = LabeledGraph::from_generators(gens);
    std::vector<Word> basis = g2.basis();
    for (const Word& w : all_reduced_words(kF, 5)) {
      if (!g2.contains(w)) continue;
      Word rebuilt;
      for (auto [idx, sign] : g2.express(w))
        rebuilt = rebuilt * (sign > 0 ? basis[idx] : basis[idx].inverse());
      CHECK(rebuilt == w);
    }
  }
}

TEST_CASE("hall completion separates words from subgroups") {
  auto check_cover = [](const std::vector<Word>& gens, const Word& avoid) {
    LabeledGraph g = LabeledGraph::from_generators(gens).core();
    REQUIRE(!g.contains(avoid));
    PermRep rep = g.hall_complete(avoid);
    CHECK(rep.valid());
    for (const Word& gen : gens) CHECK(rep.act(0, gen) == 0);
    CHECK(rep.act(0, avoid) != 0);
    return rep;
  };

  PermRep r1 = check_cover({W("a")}, W("b"));
  CHECK(r1.degree == 2);
  PermRep r2 = check_cover({}, W("a"));
  CHECK(r2.degree == 2);
  PermRep r3 = check_cover({W("a^2")}, W("a"));
  CHECK(r3.degree == 2);
  CHECK(r3.perm_a[0] == 1);  // the a-cycle of length 2 is the cover

  CHECK_THROWS_AS((void)LabeledGraph::from_generators({W("a")}).hall_complete(W("a")), Error);

  std::mt19937 rng(109);
  for (int it = 0; it < 50; ++it) {
    std::vector<Word> gens;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i)
      gens.push_back(random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 5)));
    LabeledGraph g = LabeledGraph::from_generators(gens).core();
    Word avoid = random_reduced_word(rng, kF, 1 + static_cast<int>(rng() % 5));
    if (g.contains(avoid)) continue;
    check_cover(gens, avoid);
  }
}

TEST_CASE("dot export") {
  LabeledGraph loop = LabeledGraph::from_generators({W("a")});
  std::string dot = loop.to_dot();
  CHECK(dot.find("0 -> 0") != std::string::npos);
  CHECK(dot.find("label=\"a\"") != std::string::npos);

  auto seq = MultiplyingSequence::validate(2, {}, {2});
  LabeledGraph s3 = materialize(ImplicitCore::sk(seq, 3));
  CHECK(s3.num_vertices() == 3 + 1 + 3 + 7);
  CHECK(s3.to_dot().find("label=\"b\"") != std::string::npos);

  CHECK_THROWS_AS(LabeledGraph(0, 0, {}), Error);
}
