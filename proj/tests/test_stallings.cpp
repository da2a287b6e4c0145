#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "freegroup/core_graph.hpp"
#include "freegroup/errors.hpp"
#include "freegroup/growth.hpp"
#include "oracles.hpp"

using namespace freegroup;

namespace {

  Word w2(char const* s) {
    return parse_reduce(s, 2);
  }

  CoreGraph sample_core() {
    return fold(std::vector<Word>{w2("a1 a2 a1^-1"),
                                  w2("a1 a1 a1 a2 a2 a1^-1 a1^-1")},
                2);
  }

  CoreGraph fold_words(std::initializer_list<char const*> ws, int d) {
    std::vector<Word> gens;
    for (auto const* w : ws) {
      gens.push_back(parse_reduce(w, d));
    }
    return fold(gens, d);
  }

}  // namespace

TEST_CASE("fold") {
  SUBCASE("sample core") {
    auto g = sample_core();
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 6);
    // root->B (a1), a2-loop at B, B->C (a1), C->D (a1), D->E (a2), E->C (a2)
    std::vector<Edge> want{{0, 1, 1}, {1, 1, 2}, {1, 2, 1},
                           {2, 1, 3}, {3, 2, 4}, {4, 2, 2}};
    CHECK(g.edges() == want);
    CHECK(rank(g) == 2);
    CHECK(radius(g) == 3);
    CHECK(satisfies_invariants(g));
  }
  SUBCASE("cyclic generator") {
    auto g = fold_words({"a1"}, 2);
    CHECK(g.vertex_count() == 1);
    CHECK(g.edges() == std::vector<Edge>{{0, 1, 0}});
    CHECK(rank(g) == 1);
  }
  SUBCASE("two generators sharing a prefix") {
    auto g = fold_words({"a1 a2", "a1 a2^-1"}, 2);
    CHECK(g.edges() == std::vector<Edge>{{0, 1, 1}, {0, 2, 1}, {1, 2, 0}});
    CHECK(rank(g) == 2);
  }
  SUBCASE("trivial subgroup") {
    auto g = fold(std::vector<Word>{}, 3);
    CHECK(g == CoreGraph(3));
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);
    CHECK(rank(g) == 0);
    CHECK(fold_words({"a1 a1^-1"}, 2) == CoreGraph(2));
  }
  SUBCASE("hanging root tail is kept") {
    auto g = fold_words({"a2 a1 a2^-1"}, 2);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edges() == std::vector<Edge>{{0, 2, 1}, {1, 1, 1}});
  }
  SUBCASE("bouquet") {
    for (int d = 1; d <= 4; ++d) {
      std::vector<Word> gens;
      for (int i = 1; i <= d; ++i) {
        gens.push_back(Word{Letter(i, 1)});
      }
      auto g = fold(gens, d);
      CHECK(g.vertex_count() == 1);
      CHECK(rank(g) == static_cast<std::size_t>(d));
      CHECK(is_finite_index(g));
    }
  }
  SUBCASE("index two") {
    auto g = fold_words({"a1 a1", "a2", "a1 a2 a1^-1"}, 2);
    CHECK(g.vertex_count() == 2);
    CHECK(is_finite_index(g));
    CHECK(rank(g) == 3);
    CHECK_FALSE(is_finite_index(sample_core()));
  }
  SUBCASE("rank mismatch") {
    CHECK_THROWS_AS((void)fold(std::vector<Word>{parse_reduce("a3", 3)}, 2),
                    RankError);
  }
}

TEST_CASE("membership") {
  auto g = sample_core();
  CHECK(membership(w2("a1 a2 a1^-1"), g));
  CHECK(membership(Word{}, g));
  CHECK_FALSE(membership(w2("a1"), g));
  CHECK(membership(w2("a1 a2 a2 a2 a1^-1"), g));
  CHECK(membership(w2("a1 a1 a1 a2 a2 a1^-1 a1^-1 a1 a2^-1 a1^-1"), g));
  CHECK_FALSE(membership(w2("a2"), g));
}

TEST_CASE("free basis and tree paths") {
  auto g     = sample_core();
  auto basis = free_basis(g);
  CHECK(basis.size() == rank(g));
  CHECK(fold(basis, 2) == g);
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    auto p = tree_path(g, v);
    CHECK(trace(p, g) == SchreierLocus{v, {}});
  }
  CHECK(free_basis(CoreGraph(2)).empty());
}

TEST_CASE("from_edges") {
  // an unfolded wedge of a1 a2 and a1 a2^-1 plus a stray component
  std::vector<Edge> edges{{0, 1, 1}, {1, 2, 0}, {0, 1, 2}, {0, 2, 2}, {3, 1, 3}};
  auto g = from_edges(2, 4, 0, edges);
  CHECK(g == fold_words({"a1 a2", "a1 a2^-1"}, 2));

  // rerooting renumbers canonically
  auto f  = sample_core();
  auto fe = f.edges();
  CHECK(from_edges(2, 5, 0, fe) == f);
  auto r = from_edges(2, 5, 2, fe);
  CHECK(r.vertex_count() == 4);  // the old root becomes a leaf and goes
  CHECK(rank(r) == 2);

  CHECK_THROWS_AS((void)from_edges(2, 2, 0, std::vector<Edge>{{0, 3, 1}}),
                  GraphFormatError);
  CHECK_THROWS_AS((void)from_edges(2, 2, 0, std::vector<Edge>{{0, 1, 2}}),
                  GraphFormatError);
  CHECK_THROWS_AS((void)from_edges(2, 2, 5, std::vector<Edge>{}),
                  GraphFormatError);
}

TEST_CASE("trace") {
  auto g = sample_core();
  CHECK(trace(w2("a1 a1"), g) == SchreierLocus{2, {}});
  CHECK(trace(w2("a2"), g) == SchreierLocus{0, {Letter(2, 1).ordinal()}});
  SchreierLocus l{3, {0, 2}};
  CHECK(trace(Word{}, g, l) == l);
  // leaving and coming back
  CHECK(trace(w2("a2 a2^-1 a1"), g) == SchreierLocus{1, {}});
  auto out = trace(w2("a1 a1 a1 a1 a2"), g);
  CHECK(out.base == 3);
  CHECK(out.excursion == std::vector<int>{0, 2});
  CHECK(trace(w2("a2^-1 a1^-1"), g, out) == SchreierLocus{3, {}});
}

TEST_CASE("balls_isomorphic") {
  auto g = sample_core();
  SchreierLocus root{};
  SchreierLocus b{1, {}};
  CHECK(balls_isomorphic(g, root, root, 7));
  CHECK(balls_isomorphic(g, b, b, 7));
  // a loop lies inside the radius-0 ball
  CHECK_FALSE(balls_isomorphic(g, root, b, 0));
  CHECK(balls_isomorphic(g, root, SchreierLocus{2, {}}, 0));
  CHECK_FALSE(balls_isomorphic(g, root, SchreierLocus{2, {}}, 1));

  auto c4 = fold_words({"a1 a1 a1 a1"}, 2);
  REQUIRE(c4.vertex_count() == 4);
  CHECK(balls_isomorphic(c4, SchreierLocus{1, {}}, SchreierLocus{3, {}}, 5));
  CHECK(balls_isomorphic(c4, SchreierLocus{0, {}}, SchreierLocus{2, {}}, 50));

  // far out in a hanging tree every ball is a tree ball
  auto far1 = trace(w2("a2 a2 a2 a2 a2"), g);
  auto far2 = trace(w2("a2^-1 a2^-1 a2^-1 a2^-1 a2^-1"), g);
  // the a2-loop at B is 6 steps from both
  CHECK(balls_isomorphic(g, far1, far2, 5));
  CHECK_FALSE(balls_isomorphic(g, far1, far2, 6));
  CHECK(balls_isomorphic(g, far1, CoreGraph(2), root, 5));
  CHECK_FALSE(balls_isomorphic(g, far1, CoreGraph(2), root, 6));

  // two graphs
  CHECK(balls_isomorphic(g, root, sample_core(), root, 20));
  CHECK_FALSE(balls_isomorphic(g, root, c4, root, 1));
}

TEST_CASE("property: fold confluence") {
  std::mt19937 rng(21);
  for (int t = 0; t < 100; ++t) {
    int  d    = 1 + t % 3;
    auto gens = oracle::random_generators(rng, d, 4, 8);
    auto want = fold(gens, d);
    REQUIRE(satisfies_invariants(want));
    for (int s = 0; s < 100; ++s) {
      std::shuffle(gens.begin(), gens.end(), rng);
      if (s % 2 == 1) {
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        auto& w = gens[pick(rng)];
        w       = inverse(w);
      }
      REQUIRE(fold(gens, d) == want);
    }
    // membership agrees with pairwise folding
    auto naive = oracle::naive_fold(gens, d);
    for (auto const& w : oracle::reduced_sequences(d, 5)) {
      REQUIRE(naive.accepts(w) == membership(Word(w), want));
    }
  }
}

TEST_CASE("property: membership agrees with closed-path enumeration") {
  std::mt19937 rng(22);
  auto const   words = oracle::reduced_words(2, 8);
  for (int t = 0; t < 40; ++t) {
    std::vector<Word> gens;
    std::size_t       total = 0;
    for (;;) {
      auto w = oracle::random_word(rng, 2, 1, 5);
      if (total + w.size() > 10) {
        break;
      }
      total += w.size();
      gens.push_back(w);
    }
    auto g = fold(gens, 2);
    std::set<Word> by_membership;
    for (auto const& w : words) {
      if (membership(w, g)) {
        by_membership.insert(w);
      }
    }
    auto graph = oracle::from_core(g);
    std::set<Word> by_paths;
    for (auto const& w : oracle::reduced_sequences(2, 8)) {
      if (graph.accepts(w)) {
        by_paths.insert(Word(w));
      }
    }
    CHECK(by_membership == by_paths);
    CHECK(BigInt(by_paths.size()) == cycle_counts(g, 8)[8]);
  }
}

TEST_CASE("property: conjugation equivariance") {
  std::mt19937 rng(23);
  for (int t = 0; t < 200; ++t) {
    int  d    = 2 + t % 2;
    auto gens = oracle::random_generators(rng, d, 3, 6);
    auto h    = oracle::random_word(rng, d, 1, 4);
    std::vector<Word> conj;
    for (auto const& w : gens) {
      conj.push_back(conjugate(w, h));
    }
    auto g  = fold(gens, d);
    auto gh = fold(conj, d);
    CHECK(rank(g) == rank(gh));
    for (int k = 0; k < 20; ++k) {
      Word w = oracle::random_word(rng, d, 0, 6);
      if (k % 2 == 0) {
        // bias towards members
        w = concat(gens[static_cast<std::size_t>(k) % gens.size()], w);
        w = concat(w, inverse(oracle::random_word(rng, d, 0, 1)));
      }
      CHECK(membership(w, g) == membership(conjugate(w, h), gh));
    }
    for (auto const& w : free_basis(g)) {
      CHECK(membership(conjugate(w, h), gh));
    }
    auto landing = trace(inverse(h), g);
    if (landing.in_core() && g.valency(CoreGraph::root()) >= 2) {
      CHECK(gh.vertex_count() == g.vertex_count());
      CHECK(gh.edge_count() == g.edge_count());
      auto fe = g.edges();
      CHECK(from_edges(d, g.vertex_count(), landing.base, fe) == gh);
    }
  }
}

TEST_CASE("property: ball isomorphism") {
  std::mt19937 rng(24);
  for (int t = 0; t < 60; ++t) {
    int  d = 2;
    auto g = fold(oracle::random_generators(rng, d, 3, 5), d);
    std::vector<SchreierLocus> loci;
    for (int k = 0; k < 5; ++k) {
      loci.push_back(trace(oracle::random_word(rng, d, 0, 5), g));
    }
    // include vertices of the core, which are the interesting ones
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()) && v < 4; ++v) {
      loci.push_back({v, {}});
    }
    for (std::size_t R = 0; R <= 3; ++R) {
      for (auto const& a : loci) {
        CHECK(balls_isomorphic(g, a, a, R));
        for (auto const& b : loci) {
          bool ab = balls_isomorphic(g, a, b, R);
          CHECK(ab == balls_isomorphic(g, b, a, R));
          CHECK(ab == oracle::naive_balls_isomorphic(g, a, g, b, R));
          if (ab) {
            for (std::size_t r = 0; r < R; ++r) {
              CHECK(balls_isomorphic(g, a, b, r));
            }
            for (auto const& c : loci) {
              if (balls_isomorphic(g, b, c, R)) {
                CHECK(balls_isomorphic(g, a, c, R));
              }
            }
          }
        }
      }
    }
  }
}
