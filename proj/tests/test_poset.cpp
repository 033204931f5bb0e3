#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nclat/poset.hpp"
#include "nclat/rng.hpp"

using namespace nclat;

namespace {

FinitePoset chain(int n) {
  std::vector<std::string> elems;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    elems.push_back("c" + std::to_string(i));
    for (int j = i; j < n; ++j) leq[i][j] = true;
  }
  return make_poset(std::move(elems), std::move(leq));
}

FinitePoset antichain(int n) {
  std::vector<std::string> elems;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    elems.push_back("a" + std::to_string(i));
    leq[i][i] = true;
  }
  return make_poset(std::move(elems), std::move(leq));
}

// random poset: reachability order of a random DAG on the index order
FinitePoset random_poset(int n, Rng& rng) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < 0.3) leq[i][j] = true;
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  std::vector<std::string> elems;
  for (int i = 0; i < n; ++i) elems.push_back("p" + std::to_string(i));
  return make_poset(std::move(elems), std::move(leq));
}

OpenCover twopoint_cover() {
  OpenCover c;
  c.points = {"x", "y"};
  c.sets = {{"O1", {"x", "y"}}, {"O2", {"y"}}};
  return c;
}

OpenCover overlap_cover() {
  OpenCover c;
  c.points = {"p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9"};
  c.sets = {{"O1", {"p1", "p2", "p3", "p4", "p5", "p6"}},
            {"O2", {"p4", "p5", "p6", "p7", "p8", "p9"}}};
  return c;
}

OpenCover disjoint_cover() {
  OpenCover c;
  c.points = {"p1", "p2", "p3", "p4"};
  c.sets = {{"O1", {"p1", "p2"}}, {"O2", {"p3", "p4"}}};
  return c;
}

}  // namespace

TEST_CASE("poset construction validates the axioms") {
  // missing reflexivity
  CHECK_THROWS_AS(make_poset({"a"}, {{false}}), std::invalid_argument);
  // broken antisymmetry
  CHECK_THROWS_AS(make_poset({"a", "b"}, {{true, true}, {true, true}}),
                  std::invalid_argument);
  // broken transitivity
  CHECK_THROWS_AS(make_poset({"a", "b", "c"}, {{true, true, false},
                                               {false, true, true},
                                               {false, false, true}}),
                  std::invalid_argument);
  // shape mismatch
  CHECK_THROWS_AS(make_poset({"a", "b"}, {{true}}), std::invalid_argument);
}

TEST_CASE("two point cover quotient is the ideal inclusion order") {
  QuotientResult q = quotient_from_cover(twopoint_cover());
  REQUIRE(q.poset.size() == 2);
  int cx = q.class_of.at("x");
  int cy = q.class_of.at("y");
  CHECK(cx != cy);
  // x lies only in O1, y in both: x specializes to y
  CHECK(q.poset.leq[cx][cy]);
  CHECK_FALSE(q.poset.leq[cy][cx]);
  CHECK(q.patterns[cx] == std::set<std::string>{"O1"});
  CHECK(q.patterns[cy] == std::set<std::string>{"O1", "O2"});
  CHECK(is_t0(q.poset));
  CHECK_FALSE(is_hausdorff(q.poset));
  CHECK(is_isomorphic(q.poset, two_point_ideal_poset()));
}

TEST_CASE("two ideal poset orders inclusion upward") {
  FinitePoset p = two_point_ideal_poset();
  REQUIRE(p.size() == 2);
  CHECK(p.leq[0][1]);
  CHECK_FALSE(p.leq[1][0]);
  CHECK(is_t0(p));
  CHECK_FALSE(is_hausdorff(p));
  CHECK_FALSE(is_discrete(p));
}

TEST_CASE("overlapping cover yields three classes with the overlap on top") {
  QuotientResult q = quotient_from_cover(overlap_cover());
  REQUIRE(q.poset.size() == 3);
  int a = q.class_of.at("p1");  // O1 only
  int b = q.class_of.at("p5");  // both
  int c = q.class_of.at("p9");  // O2 only
  CHECK(q.class_of.at("p2") == a);
  CHECK(q.class_of.at("p4") == b);
  CHECK(q.class_of.at("p6") == b);
  CHECK(q.class_of.at("p8") == c);
  // brute force over the patterns: singles sit below the double class
  CHECK(q.poset.leq[a][b]);
  CHECK(q.poset.leq[c][b]);
  CHECK_FALSE(q.poset.leq[b][a]);
  CHECK_FALSE(q.poset.leq[b][c]);
  CHECK_FALSE(q.poset.leq[a][c]);
  CHECK_FALSE(q.poset.leq[c][a]);
  CHECK(is_t0(q.poset));
  CHECK_FALSE(is_hausdorff(q.poset));

  // independent reconstruction straight from subset inclusion of patterns
  for (std::size_t u = 0; u < q.poset.size(); ++u) {
    for (std::size_t v = 0; v < q.poset.size(); ++v) {
      bool subset = std::includes(q.patterns[v].begin(), q.patterns[v].end(),
                                  q.patterns[u].begin(), q.patterns[u].end());
      CHECK(q.poset.leq[u][v] == subset);
    }
  }
}

TEST_CASE("disjoint cover quotient is discrete and hausdorff") {
  QuotientResult q = quotient_from_cover(disjoint_cover());
  REQUIRE(q.poset.size() == 2);
  CHECK(is_t0(q.poset));
  CHECK(is_hausdorff(q.poset));
  CHECK(is_discrete(q.poset));
}

TEST_CASE("quotienting the induced cover changes nothing") {
  for (const OpenCover& cover : {twopoint_cover(), overlap_cover(), disjoint_cover()}) {
    QuotientResult first = quotient_from_cover(cover);
    OpenCover reduced = induced_cover(cover);
    QuotientResult second = quotient_from_cover(reduced);
    CHECK(second.poset.size() == first.poset.size());
    CHECK(is_isomorphic(first.poset, second.poset));
  }
}

TEST_CASE("cover validation rejects malformed input") {
  OpenCover empty;
  CHECK_THROWS_AS(quotient_from_cover(empty), std::invalid_argument);

  OpenCover stray = twopoint_cover();
  stray.sets[0].second.insert("z");  // member that is not a point
  CHECK_THROWS_AS(quotient_from_cover(stray), std::invalid_argument);

  OpenCover uncovered = twopoint_cover();
  uncovered.points.push_back("w");  // w lies in no set
  CHECK_THROWS_AS(quotient_from_cover(uncovered), std::invalid_argument);

  OpenCover dup = twopoint_cover();
  dup.points.push_back("x");
  CHECK_THROWS_AS(quotient_from_cover(dup), std::invalid_argument);
}

TEST_CASE("hausdorff coincides with discreteness for these orders") {
  Rng rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    FinitePoset p = random_poset(2 + static_cast<int>(rng.uniform_int(0, 5)), rng);
    CHECK(is_hausdorff(p) == is_discrete(p));
    CHECK(is_t0(p));  // an order relation is t0 by construction
  }
  CHECK(is_hausdorff(antichain(4)));
  CHECK(is_discrete(antichain(4)));
  CHECK_FALSE(is_hausdorff(chain(3)));
}

TEST_CASE("cover relations reduce transitivity") {
  FinitePoset c = chain(4);
  std::vector<std::pair<int, int>> cov = cover_relations(c);
  REQUIRE(cov.size() == 3);  // the three consecutive steps only
  for (const auto& [u, v] : cov) CHECK(v == u + 1);
}

TEST_CASE("hasse rendering shows covering edges only") {
  std::string dot = hasse_dot(chain(3));
  CHECK(dot.find("digraph") != std::string::npos);
  int edges = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos;
       pos = dot.find("->", pos + 2))
    ++edges;
  CHECK(edges == 2);
  CHECK(hasse_dot(chain(3)) == dot);  // deterministic
}

TEST_CASE("isomorphism test separates shapes and accepts relabelings") {
  CHECK_FALSE(is_isomorphic(chain(3), antichain(3)));
  CHECK_FALSE(is_isomorphic(chain(3), chain(4)));

  // relabeled and permuted chain
  FinitePoset p = make_poset({"hi", "mid", "lo"}, {{true, false, false},
                                                   {true, true, false},
                                                   {true, true, true}});
  CHECK(is_isomorphic(p, chain(3)));

  // same size, different shape: two points under a top vs a chain
  FinitePoset v = make_poset({"a", "b", "c"}, {{true, false, true},
                                               {false, true, true},
                                               {false, false, true}});
  CHECK_FALSE(is_isomorphic(v, chain(3)));
}
