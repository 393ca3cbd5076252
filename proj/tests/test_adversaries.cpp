#include <algorithm>
#include <set>

#include "doctest.h"
#include "mbgame/adversaries.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/oracle.hpp"

using namespace mbgame;

namespace {

std::set<std::pair<Vertex, Vertex>> edges_of(const GameState& s, const std::vector<ElementId>& ids) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (ElementId e : ids) out.insert(s.graph()->endpoints(e));
  return out;
}

std::size_t maker_edges(const GameState& s) { return s.claims(Side::Maker); }

}  // namespace

TEST_CASE("isolator on an empty K4 with q=3 takes every edge at vertex 0") {
  GameState s = complete_board(4);
  IsolatorBreaker b(3);
  auto plan = b.play(s, {});
  CHECK(edges_of(s, plan.claims) == std::set<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}, {0, 3}});
}

TEST_CASE("isolator targets the vertex with least Maker degree") {
  GameState s = complete_board(5);
  for (Vertex v : {1, 2, 3, 4}) s.claim(Side::Maker, s.edge(0, v));
  s.claim(Side::Maker, s.edge(1, 2));
  s.claim(Side::Maker, s.edge(3, 4));
  // degrees: 0→4, 1,2,3,4→2; all free edges are at 1..4; lowest such vertex is 1
  IsolatorBreaker b(1);
  auto plan = b.play(s, {});
  REQUIRE(plan.claims.size() == 1);
  CHECK(s.graph()->endpoints(plan.claims[0]) == std::pair<Vertex, Vertex>{1, 3});
}

TEST_CASE("delayer answers (1,2),(2,3) with (1,3)") {
  GameState s = complete_board(5);
  s.claim(Side::Maker, s.edge(1, 2));
  s.claim(Side::Maker, s.edge(2, 3));
  auto e = triangle_delayer_move(s, 2, 3);
  REQUIRE(e);
  CHECK(s.graph()->endpoints(*e) == std::pair<Vertex, Vertex>{1, 3});

  TriangleDelayer d;
  const std::vector<ElementId> last{s.edge(2, 3)};
  auto plan = d.play(s, TurnContext{last, true, 1});
  REQUIRE(plan.claims.size() == 1);
  CHECK(plan.claims[0] == s.edge(1, 3));
}

TEST_CASE("delayer falls back to the lowest free edge") {
  GameState s = complete_board(4);
  s.claim(Side::Maker, s.edge(2, 3));
  auto e = triangle_delayer_move(s, 2, 3);
  REQUIRE(e);
  CHECK(*e == s.lowest_free());
}

TEST_CASE("random breaker claims q distinct free elements, reproducibly") {
  GameState s = complete_board(7);
  for (ElementId e = 0; e < 10; ++e) s.claim(Side::Maker, e);
  RandomBreaker a(3, 42), b(3, 42), c(3, 43);
  auto pa = a.play(s, {}), pb = b.play(s, {}), pc = c.play(s, {});
  CHECK(pa.claims == pb.claims);
  CHECK(pa.claims.size() == 3);
  std::set<ElementId> u(pa.claims.begin(), pa.claims.end());
  CHECK(u.size() == 3);
  for (ElementId e : pa.claims) CHECK(s.is_free(e));
  CHECK((pa.claims != pc.claims));
}

TEST_CASE("max-degree breaker piles onto its busiest vertex") {
  GameState s = complete_board(6);
  s.claim(Side::Breaker, s.edge(2, 0));
  s.claim(Side::Breaker, s.edge(2, 1));
  s.claim(Side::Maker, s.edge(4, 5));
  s.claim(Side::Maker, s.edge(3, 4));
  MaxDegreeBreaker b(1);
  auto plan = b.play(s, {});
  REQUIRE(plan.claims.size() == 1);
  CHECK(s.graph()->endpoints(plan.claims[0]) == std::pair<Vertex, Vertex>{2, 4});
}

TEST_CASE("breaker registry") {
  for (const auto& n : breaker_names()) {
    auto b = make_breaker(n, 2, 1);
    REQUIRE(b);
    CHECK(b->side() == Side::Breaker);
    GameState s = complete_board(6);
    auto plan = b->play(s, {});
    CHECK(plan.claims.size() <= 2);
    for (ElementId e : plan.claims) CHECK(s.is_free(e));
  }
  CHECK_THROWS_AS(make_breaker("nope", 1, 0), GameError);
}

TEST_CASE("triangle makers against the delayer keep the degree-3 property") {
  for (const auto& name : triangle_maker_names())
    for (int n : {6, 9}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto maker = make_triangle_maker(name, seed);
        TriangleDelayer d;
        GameState fin = complete_board(n);
        GameOptions opt;
        opt.first = Side::Maker;
        auto t = run_game(complete_board(n), Bias(1, 1), *maker, d, maker_goal_check(*maker), opt, &fin);
        CHECK(triangle_invariant_check(fin));
        if (t.outcome.kind == Outcome::Kind::MakerWin) {
          CHECK(has_triangle_factor(fin));
          CHECK(maker_edges(fin) >= static_cast<std::size_t>((7 * n + 5) / 6));
        }
      }
    }
}

TEST_CASE("has_triangle_factor") {
  GameState s = complete_board(6);
  CHECK_FALSE(has_triangle_factor(s));
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}})
    s.claim(Side::Maker, s.edge(u, v));
  CHECK_FALSE(has_triangle_factor(s));
  s.claim(Side::Maker, s.edge(3, 5));
  CHECK(has_triangle_factor(s));
  CHECK_FALSE(has_triangle_factor(complete_board(5)));
}
